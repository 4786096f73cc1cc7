#pragma once

#include <Eigen/Core>

#include "core/types.hpp"

namespace lcorrupt {

// Point-cloud bilateral filter: each point moves along its estimated normal
// by a distance- and offset-weighted average of its neighbours' signed
// offsets. Smooths noise while the normal weight preserves sharp structure.
struct BilateralParams {
  double radius = 0.5;    // neighbourhood radius in meters
  double sigma_d = 0.25;  // spatial Gaussian width
  double sigma_n = 0.05;  // normal-offset Gaussian width
  int iterations = 1;
  int normal_k = 20;  // neighbours used for normal estimation

  void validate() const;
};

// PCA normal from the k nearest neighbours (the point itself included),
// oriented toward the sensor at the origin. Throws if the neighbourhood is
// degenerate (all points coincident) or k exceeds the cloud size.
Eigen::Vector3d estimate_normal(const PointCloud& cloud, std::size_t index, int k);

// Runs `iterations` passes; each pass recomputes neighbourhoods and normals
// from the previous pass's positions and updates all points from that same
// snapshot. Points with no neighbour inside `radius` (or with a degenerate
// neighbourhood) stay put. Intensities and layers are untouched; the point
// count and order never change, and no point moves farther than `radius`.
PointCloud bilateral_filter(const PointCloud& cloud, const BilateralParams& params);

}  // namespace lcorrupt
