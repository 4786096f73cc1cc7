#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace lcorrupt {

// Rigid SE(3) transform. rotation is kept orthonormal with det +1;
// orthonormalize() projects a drifted matrix back onto SO(3).
struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Pose identity() { return {}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
};

Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& a);

// Relative motion from frame a to frame b: b (-) a = a^-1 * b.
Pose rel(const Pose& a, const Pose& b);

// Rotation angle in [0, pi]; the trace argument is clamped so numerically
// drifted rotations near identity return 0 instead of NaN.
double rotation_angle(const Eigen::Matrix3d& rotation);

// Nearest rotation matrix in the Frobenius sense (SVD projection).
Eigen::Matrix3d orthonormalized(const Eigen::Matrix3d& m);

// max |R^T R - I| and |det R - 1| both below tol.
bool is_valid_rotation(const Eigen::Matrix3d& rotation, double tol = 1e-9);

// Applies a rigid transform to every point; intensity and layer unchanged.
PointCloud transform_cloud(const PointCloud& cloud, const Pose& pose);

struct TrajectoryEntry {
  std::int64_t frame_id = 0;
  Pose pose;
};

// Ordered pose sequence with strictly increasing frame ids.
struct Trajectory {
  std::vector<TrajectoryEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  const TrajectoryEntry& operator[](std::size_t i) const { return entries[i]; }

  void append(std::int64_t frame_id, const Pose& pose);

  // Index of the entry with the given frame id, or -1.
  int find(std::int64_t frame_id) const;
};

}  // namespace lcorrupt
