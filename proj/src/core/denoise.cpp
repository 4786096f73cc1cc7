#include "core/denoise.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>
#include <vector>

#include "core/error.hpp"
#include "core/kdtree.hpp"

namespace lcorrupt {

namespace {

constexpr double kDegenerateVariance = 1e-18;

// Smallest-eigenvector normal from the given neighbour indices; empty when
// the neighbourhood is degenerate. Oriented toward the sensor at the origin.
std::optional<Eigen::Vector3d> normal_from_neighbours(const PointCloud& cloud,
                                                      const std::vector<int>& neighbours,
                                                      const Eigen::Vector3d& at) {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (int idx : neighbours) {
    mean += cloud.points[static_cast<std::size_t>(idx)].position();
  }
  mean /= static_cast<double>(neighbours.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (int idx : neighbours) {
    const Eigen::Vector3d d = cloud.points[static_cast<std::size_t>(idx)].position() - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(neighbours.size());
  if (cov.trace() < kDegenerateVariance) return std::nullopt;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  Eigen::Vector3d normal = solver.eigenvectors().col(0);
  if (normal.dot(at) > 0.0) normal = -normal;
  return normal;
}

double gaussian(double x, double sigma) { return std::exp(-(x * x) / (2.0 * sigma * sigma)); }

}  // namespace

void BilateralParams::validate() const {
  if (!(radius > 0.0)) throw invalid_argument_error("bilateral filter: radius must be > 0");
  if (!(sigma_d > 0.0) || !(sigma_n > 0.0)) {
    throw invalid_argument_error("bilateral filter: sigma_d and sigma_n must be > 0");
  }
  if (iterations < 1) throw invalid_argument_error("bilateral filter: iterations must be >= 1");
  if (normal_k < 3) throw invalid_argument_error("bilateral filter: normal_k must be >= 3");
}

Eigen::Vector3d estimate_normal(const PointCloud& cloud, std::size_t index, int k) {
  if (index >= cloud.size()) throw invalid_argument_error("estimate_normal: index out of range");
  if (k < 3) throw invalid_argument_error("estimate_normal: k must be >= 3");
  if (cloud.size() < static_cast<std::size_t>(k)) {
    throw too_few_points_error("estimate_normal: cloud smaller than k");
  }
  const KdTree tree(cloud);
  const Eigen::Vector3d at = cloud.points[index].position();
  const auto normal = normal_from_neighbours(cloud, tree.knn(at, k), at);
  if (!normal) throw invalid_argument_error("estimate_normal: degenerate neighbourhood");
  return *normal;
}

PointCloud bilateral_filter(const PointCloud& cloud, const BilateralParams& params) {
  params.validate();
  if (cloud.empty()) throw empty_input_error("bilateral filter: empty cloud");

  PointCloud current = cloud;
  const int k = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(params.normal_k), cloud.size()));

  for (int iter = 0; iter < params.iterations; ++iter) {
    const KdTree tree(current);
    PointCloud next = current;
    for (std::size_t i = 0; i < current.size(); ++i) {
      const Eigen::Vector3d p = current.points[i].position();

      std::vector<int> in_radius = tree.radius_search(p, params.radius);
      std::erase(in_radius, static_cast<int>(i));
      if (in_radius.empty()) continue;

      std::optional<Eigen::Vector3d> normal;
      if (k >= 3) normal = normal_from_neighbours(current, tree.knn(p, k), p);
      if (!normal) continue;

      double weight_sum = 0.0;
      double offset_sum = 0.0;
      for (int idx : in_radius) {
        const Eigen::Vector3d q = current.points[static_cast<std::size_t>(idx)].position();
        const double offset = normal->dot(q - p);
        const double w = gaussian((q - p).norm(), params.sigma_d) * gaussian(offset, params.sigma_n);
        weight_sum += w;
        offset_sum += w * offset;
      }
      if (weight_sum <= 0.0) continue;

      const Eigen::Vector3d moved = p + (offset_sum / weight_sum) * (*normal);
      next.points[i].x = moved.x();
      next.points[i].y = moved.y();
      next.points[i].z = moved.z();
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace lcorrupt
