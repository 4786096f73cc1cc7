#include "core/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace lcorrupt {

namespace {

const Pose& pose_at(const Trajectory& t, std::int64_t frame_id, const char* which) {
  const int idx = t.find(frame_id);
  if (idx < 0) {
    throw invalid_argument_error(std::string(which) + " trajectory is missing frame " +
                                 std::to_string(frame_id));
  }
  return t.entries[static_cast<std::size_t>(idx)].pose;
}

Pose error_pose(const Trajectory& est, const Trajectory& gt, std::int64_t i, std::int64_t j) {
  const Pose est_rel = rel(pose_at(est, i, "estimated"), pose_at(est, j, "estimated"));
  const Pose gt_rel = rel(pose_at(gt, i, "ground-truth"), pose_at(gt, j, "ground-truth"));
  return compose(inverse(gt_rel), est_rel);
}

}  // namespace

std::vector<FramePair> consecutive_pairs(const Trajectory& trajectory) {
  std::vector<FramePair> pairs;
  if (trajectory.size() < 2) return pairs;
  pairs.reserve(trajectory.size() - 1);
  for (std::size_t k = 0; k + 1 < trajectory.size(); ++k) {
    pairs.emplace_back(trajectory[k].frame_id, trajectory[k + 1].frame_id);
  }
  return pairs;
}

RpeReport rpe(const Trajectory& est, const Trajectory& gt, const std::vector<FramePair>& pairs) {
  if (pairs.empty()) throw empty_input_error("rpe: empty pair set");

  RpeReport report;
  report.per_pair.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const Pose e = error_pose(est, gt, i, j);
    RpePairError entry;
    entry.i = i;
    entry.j = j;
    entry.trans_err = e.translation.norm();
    entry.rot_err = rotation_angle(e.rotation);
    report.per_pair.push_back(entry);
    report.rpe_trans += entry.trans_err;
    report.rpe_rot += entry.rot_err;
  }
  report.rpe_trans /= static_cast<double>(pairs.size());
  report.rpe_rot /= static_cast<double>(pairs.size());
  return report;
}

double kitti_drift(const Trajectory& est, const Trajectory& gt,
                   const std::vector<double>& lengths) {
  if (gt.size() < 2) throw invalid_argument_error("kitti_drift: ground truth too short");
  if (lengths.empty()) throw invalid_argument_error("kitti_drift: empty length set");

  // Accumulated ground-truth path length up to each frame.
  std::vector<double> cumulative(gt.size(), 0.0);
  for (std::size_t k = 1; k < gt.size(); ++k) {
    cumulative[k] =
        cumulative[k - 1] + (gt[k].pose.translation - gt[k - 1].pose.translation).norm();
  }
  const double min_length = *std::min_element(lengths.begin(), lengths.end());
  if (cumulative.back() < min_length) {
    throw invalid_argument_error("kitti_drift: path length " +
                                 std::to_string(cumulative.back()) +
                                 " m is shorter than the smallest segment length");
  }

  double error_sum = 0.0;
  std::size_t segments = 0;
  for (std::size_t start = 0; start < gt.size(); ++start) {
    for (const double length : lengths) {
      const double target = cumulative[start] + length;
      const auto it = std::lower_bound(cumulative.begin() + static_cast<std::ptrdiff_t>(start) + 1,
                                       cumulative.end(), target);
      if (it == cumulative.end()) continue;
      const std::size_t end = static_cast<std::size_t>(it - cumulative.begin());
      const double actual = cumulative[end] - cumulative[start];
      if (actual <= 0.0) continue;
      const Pose e = error_pose(est, gt, gt[start].frame_id, gt[end].frame_id);
      error_sum += e.translation.norm() / actual;
      ++segments;
    }
  }
  if (segments == 0) {
    throw invalid_argument_error("kitti_drift: no segment reaches the requested lengths");
  }
  return 100.0 * error_sum / static_cast<double>(segments);
}

}  // namespace lcorrupt
