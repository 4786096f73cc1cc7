#include "core/odometry.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <utility>

#include "core/cloud_ops.hpp"
#include "core/kdtree.hpp"

namespace lcorrupt {

namespace {

constexpr int kMinCorrespondences = 6;
constexpr std::size_t kMinPointsAfterDownsample = 10;

std::vector<Eigen::Vector3d> positions_of(const PointCloud& cloud) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(cloud.size());
  for (const Point& p : cloud.points) out.push_back(p.position());
  return out;
}

// One Huber-weighted Kabsch update from correspondences (a_i -> b_i).
Pose icp_align(const std::vector<Eigen::Vector3d>& source, const KdTree& target_tree,
               const Pose& init, const OdometryConfig& cfg) {
  Pose pose = init;
  std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> pairs;
  pairs.reserve(source.size());

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    pairs.clear();
    for (const Eigen::Vector3d& s : source) {
      const Eigen::Vector3d a = pose.apply(s);
      const int nn = target_tree.nearest_within(a, cfg.max_corr_dist);
      if (nn >= 0) pairs.emplace_back(a, target_tree.point(nn));
    }
    if (static_cast<int>(pairs.size()) < kMinCorrespondences) {
      throw RegistrationError("registration failed: " + std::to_string(pairs.size()) +
                                  " correspondences, need " +
                                  std::to_string(kMinCorrespondences),
                              pose, static_cast<int>(pairs.size()));
    }

    double weight_sum = 0.0;
    Eigen::Vector3d mean_a = Eigen::Vector3d::Zero();
    Eigen::Vector3d mean_b = Eigen::Vector3d::Zero();
    std::vector<double> weights;
    weights.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      const double r = (a - b).norm();
      const double w = r <= cfg.robust_delta ? 1.0 : cfg.robust_delta / r;
      weights.push_back(w);
      weight_sum += w;
      mean_a += w * a;
      mean_b += w * b;
    }
    mean_a /= weight_sum;
    mean_b /= weight_sum;

    Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      cross += weights[i] * (pairs[i].first - mean_a) * (pairs[i].second - mean_b).transpose();
    }

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d vut = svd.matrixV() * svd.matrixU().transpose();
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = vut.determinant() < 0 ? -1.0 : 1.0;
    Pose update;
    update.rotation = svd.matrixV() * flip * svd.matrixU().transpose();
    update.translation = mean_b - update.rotation * mean_a;

    pose = compose(update, pose);
    pose.rotation = orthonormalized(pose.rotation);
    if (update.translation.norm() < cfg.convergence_eps) break;
  }
  return pose;
}

}  // namespace

void OdometryConfig::validate() const {
  if (!(voxel_size > 0.0)) throw invalid_argument_error("odometry: voxel_size must be > 0");
  if (!(max_corr_dist > 0.0)) throw invalid_argument_error("odometry: max_corr_dist must be > 0");
  if (max_iterations < 1) throw invalid_argument_error("odometry: max_iterations must be >= 1");
  if (!(convergence_eps > 0.0)) {
    throw invalid_argument_error("odometry: convergence_eps must be > 0");
  }
  if (!(robust_delta > 0.0)) throw invalid_argument_error("odometry: robust_delta must be > 0");
}

Pose register_frames(const PointCloud& source, const PointCloud& target, const Pose& init,
                     const OdometryConfig& cfg) {
  cfg.validate();
  const PointCloud source_ds = voxel_downsample(source, cfg.voxel_size);
  const PointCloud target_ds = voxel_downsample(target, cfg.voxel_size);
  if (source_ds.size() < kMinPointsAfterDownsample ||
      target_ds.size() < kMinPointsAfterDownsample) {
    throw too_few_points_error("register: fewer than " +
                               std::to_string(kMinPointsAfterDownsample) +
                               " points after voxel downsampling");
  }
  const KdTree target_tree(positions_of(target_ds));
  return icp_align(positions_of(source_ds), target_tree, init, cfg);
}

OdometryResult run_odometry(const std::vector<PointCloud>& frames, const OdometryConfig& cfg) {
  cfg.validate();
  if (frames.size() < 2) throw invalid_argument_error("odometry needs at least 2 frames");

  OdometryResult result;
  result.trajectory.append(0, Pose::identity());

  PointCloud prev_ds = voxel_downsample(frames[0], cfg.voxel_size);
  Pose prev_rel = Pose::identity();

  for (std::size_t k = 1; k < frames.size(); ++k) {
    PointCloud cur_ds = voxel_downsample(frames[k], cfg.voxel_size);
    const Pose init = cfg.use_constant_velocity ? prev_rel : Pose::identity();

    Pose rel_pose = init;
    bool ok = prev_ds.size() >= kMinPointsAfterDownsample &&
              cur_ds.size() >= kMinPointsAfterDownsample;
    if (ok) {
      try {
        const KdTree prev_tree(positions_of(prev_ds));
        rel_pose = icp_align(positions_of(cur_ds), prev_tree, init, cfg);
      } catch (const RegistrationError&) {
        rel_pose = init;
        ok = false;
      }
    }
    if (!ok) result.flagged_frames.push_back(static_cast<std::int64_t>(k));

    const Pose world = compose(result.trajectory.entries.back().pose, rel_pose);
    result.trajectory.append(static_cast<std::int64_t>(k), world);
    prev_rel = rel_pose;
    prev_ds = std::move(cur_ds);
  }
  return result;
}

}  // namespace lcorrupt
