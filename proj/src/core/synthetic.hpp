#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/pose.hpp"
#include "core/types.hpp"

namespace lcorrupt {

// One simulated scan plus the ground-truth sensor->world pose it was taken
// from. Points are in the sensor frame; layer is the beam index.
struct SyntheticFrame {
  PointCloud cloud;
  Pose pose;
};

// Procedural desk-scale stand-in for a driving dataset. Scene "corridor":
// flat ground, two parallel walls, pillars scattered along the track; a
// 64-beam scanner pattern with millimetre range dither; constant forward
// motion with a gentle yaw. Deterministic per seed. The relative pose
// between consecutive frames is the same for every step. frames must be
// >= 2; the corridor geometry suits sequences up to a few hundred frames.
std::vector<SyntheticFrame> generate_synthetic_sequence(const std::string& scene, int frames,
                                                        std::uint64_t seed);

// Ground-truth trajectory of a generated sequence (frame ids 0..n-1).
Trajectory ground_truth(const std::vector<SyntheticFrame>& frames);

// Clouds only, in sequence order.
std::vector<PointCloud> clouds_of(const std::vector<SyntheticFrame>& frames);

}  // namespace lcorrupt
