#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/pose.hpp"

namespace lcorrupt {

// Relative pose error over a set of frame pairs. For a pair (i, j) the error
// pose is the discrepancy between the estimated and ground-truth relative
// motions: E = rel(gt_i, gt_j)^-1 * rel(est_i, est_j). Translation error is
// ||translation(E)||, rotation error is the angle of rotation(E) in radians.
struct RpePairError {
  std::int64_t i = 0;
  std::int64_t j = 0;
  double trans_err = 0.0;  // meters
  double rot_err = 0.0;    // radians
};

struct RpeReport {
  double rpe_trans = 0.0;  // mean over pairs, meters
  double rpe_rot = 0.0;    // mean over pairs, radians
  std::vector<RpePairError> per_pair;
  std::optional<double> drift_percent;  // filled by segment-mode evaluation
};

using FramePair = std::pair<std::int64_t, std::int64_t>;

// Consecutive-frame pairs (id_k, id_k+1) of a trajectory.
std::vector<FramePair> consecutive_pairs(const Trajectory& trajectory);

// Both trajectories must contain every frame id in pairs; pairs must be
// non-empty.
RpeReport rpe(const Trajectory& est, const Trajectory& gt, const std::vector<FramePair>& pairs);

inline std::vector<double> default_drift_lengths() {
  return {100, 200, 300, 400, 500, 600, 700, 800};
}

// KITTI-style percentage drift: for every start frame and segment length L,
// the segment ends at the first frame where the accumulated ground-truth
// path length reaches L; the relative-pose translation error over that
// segment, divided by its actual path length, is averaged over all segments
// and returned as a percentage. Throws when the ground-truth path is shorter
// than the smallest length.
double kitti_drift(const Trajectory& est, const Trajectory& gt,
                   const std::vector<double>& lengths = default_drift_lengths());

}  // namespace lcorrupt
