#include "core/cloud_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace lcorrupt {

namespace {

struct VoxelKey {
  std::int64_t x, y, z;
  bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(k.x));
    h = mix64(h ^ static_cast<std::uint64_t>(k.y));
    h = mix64(h ^ static_cast<std::uint64_t>(k.z));
    return static_cast<std::size_t>(h);
  }
};

VoxelKey voxel_key(const Point& p, double voxel_size) {
  return {static_cast<std::int64_t>(std::floor(p.x / voxel_size)),
          static_cast<std::int64_t>(std::floor(p.y / voxel_size)),
          static_cast<std::int64_t>(std::floor(p.z / voxel_size))};
}

}  // namespace

PointCloud voxel_downsample(const PointCloud& cloud, double voxel_size) {
  if (!(voxel_size > 0.0)) {
    throw invalid_argument_error("voxel_downsample: voxel_size must be > 0");
  }

  struct Accumulator {
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    int count = 0;
  };
  std::unordered_map<VoxelKey, Accumulator, VoxelKeyHash> voxels;
  voxels.reserve(cloud.size());
  for (const Point& p : cloud.points) {
    auto& acc = voxels[voxel_key(p, voxel_size)];
    acc.sum += p.position();
    acc.count += 1;
  }

  struct Best {
    double dist2 = 0.0;
    int index = -1;
  };
  std::unordered_map<VoxelKey, Best, VoxelKeyHash> representative;
  representative.reserve(voxels.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point& p = cloud.points[i];
    const VoxelKey key = voxel_key(p, voxel_size);
    const auto& acc = voxels.at(key);
    const Eigen::Vector3d centroid = acc.sum / static_cast<double>(acc.count);
    const double d2 = (p.position() - centroid).squaredNorm();
    auto [it, inserted] = representative.try_emplace(key, Best{d2, static_cast<int>(i)});
    if (!inserted && d2 < it->second.dist2) {
      it->second = Best{d2, static_cast<int>(i)};
    }
  }

  std::vector<int> kept;
  kept.reserve(representative.size());
  for (const auto& [key, best] : representative) kept.push_back(best.index);
  std::sort(kept.begin(), kept.end());

  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.beam_count = cloud.beam_count;
  out.points.reserve(kept.size());
  for (int i : kept) out.points.push_back(cloud.points[static_cast<std::size_t>(i)]);
  return out;
}

PointCloud infer_layers(const PointCloud& cloud, int beam_count) {
  if (cloud.empty()) throw empty_input_error("infer_layers: empty cloud");
  if (beam_count < 1) throw invalid_argument_error("infer_layers: beam_count must be >= 1");

  double lo = elevation_angle(cloud.points.front());
  double hi = lo;
  for (const Point& p : cloud.points) {
    const double e = elevation_angle(p);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }

  PointCloud out = cloud;
  out.beam_count = beam_count;
  const double span = hi - lo;
  for (Point& p : out.points) {
    if (span <= 0.0) {
      p.layer = 0;
      continue;
    }
    const double t = (elevation_angle(p) - lo) / span;
    p.layer = std::clamp(static_cast<int>(t * beam_count), 0, beam_count - 1);
  }
  return out;
}

}  // namespace lcorrupt
