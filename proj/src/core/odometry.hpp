#pragma once

#include <cstdint>
#include <vector>

#include "core/error.hpp"
#include "core/pose.hpp"
#include "core/types.hpp"

namespace lcorrupt {

// Frame-to-frame point-to-point ICP: voxel subsampling, fixed-radius nearest
// neighbour correspondences, Huber-weighted closed-form rigid updates, and a
// constant-velocity motion prediction. Deliberately minimal: no adaptive
// threshold, no motion compensation, no map.
struct OdometryConfig {
  double voxel_size = 0.5;
  double max_corr_dist = 1.0;
  int max_iterations = 50;
  double convergence_eps = 1e-4;  // stop when the update translation is below this
  double robust_delta = 0.5;      // Huber kernel width
  bool use_constant_velocity = true;

  void validate() const;
};

// Thrown when registration cannot proceed (fewer than 6 correspondences).
// Carries the pose of the last completed iteration so callers can fall back.
class RegistrationError : public Error {
 public:
  RegistrationError(const std::string& what, const Pose& last_pose, int correspondences)
      : Error(ErrorCode::registration_failure, what),
        last_pose_(last_pose),
        correspondences_(correspondences) {}

  const Pose& last_pose() const { return last_pose_; }
  int correspondences() const { return correspondences_; }

 private:
  Pose last_pose_;
  int correspondences_;
};

// Aligns source onto target, returning the source->target pose. Both clouds
// must keep at least 10 points after voxel downsampling.
Pose register_frames(const PointCloud& source, const PointCloud& target, const Pose& init,
                     const OdometryConfig& cfg);

struct OdometryResult {
  Trajectory trajectory;                     // frame ids are positions in the input sequence
  std::vector<std::int64_t> flagged_frames;  // frames where registration failed
};

// Runs the full pipeline over >= 2 frames: pose[0] = identity, each frame
// registered against the previous one, initialized by constant-velocity
// prediction when enabled. Failed registrations fall back to the prediction
// and are flagged.
OdometryResult run_odometry(const std::vector<PointCloud>& frames, const OdometryConfig& cfg);

}  // namespace lcorrupt
