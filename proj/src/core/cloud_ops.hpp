#pragma once

#include "core/types.hpp"

namespace lcorrupt {

// Keeps at most one point per occupied voxel: the input point closest to the
// centroid of the points that share its voxel (ties to the lowest index).
// Survivors keep their relative input order. voxel_size must be > 0.
PointCloud voxel_downsample(const PointCloud& cloud, double voxel_size);

// Assigns every point a layer index by uniform binning of its elevation
// angle between the cloud's min and max elevation. Deterministic; throws on
// an empty cloud or beam_count < 1. The returned cloud has beam_count set.
PointCloud infer_layers(const PointCloud& cloud, int beam_count);

}  // namespace lcorrupt
