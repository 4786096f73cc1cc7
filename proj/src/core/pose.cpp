#include "core/pose.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace lcorrupt {

Pose compose(const Pose& a, const Pose& b) {
  Pose out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

Pose inverse(const Pose& a) {
  Pose out;
  out.rotation = a.rotation.transpose();
  out.translation = -(out.rotation * a.translation);
  return out;
}

Pose rel(const Pose& a, const Pose& b) { return compose(inverse(a), b); }

double rotation_angle(const Eigen::Matrix3d& rotation) {
  const double c = std::clamp((rotation.trace() - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

Eigen::Matrix3d orthonormalized(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

bool is_valid_rotation(const Eigen::Matrix3d& rotation, double tol) {
  const Eigen::Matrix3d gram = rotation.transpose() * rotation;
  const double ortho_err = (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho_err < tol && std::abs(rotation.determinant() - 1.0) < tol;
}

PointCloud transform_cloud(const PointCloud& cloud, const Pose& pose) {
  PointCloud out = cloud;
  for (Point& p : out.points) p.set_position(pose.apply(p.position()));
  return out;
}

void Trajectory::append(std::int64_t frame_id, const Pose& pose) {
  if (!entries.empty() && frame_id <= entries.back().frame_id) {
    throw invalid_argument_error("Trajectory: frame ids must be strictly increasing");
  }
  entries.push_back({frame_id, pose});
}

int Trajectory::find(std::int64_t frame_id) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), frame_id,
      [](const TrajectoryEntry& e, std::int64_t id) { return e.frame_id < id; });
  if (it == entries.end() || it->frame_id != frame_id) return -1;
  return static_cast<int>(it - entries.begin());
}

}  // namespace lcorrupt
