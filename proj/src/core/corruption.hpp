#pragma once

#include "core/severity_profile.hpp"
#include "core/types.hpp"

namespace lcorrupt {

// The 13 non-weather corruptions plus the dispatcher over all 18 kinds.
//
// Every operation returns a new cloud, never mutates its input, and is a
// pure function of (cloud, spec, profile): the same spec.seed always yields
// bitwise-identical output. Operations that only reposition points preserve
// count, order, intensity and layer.

// Adds per-axis Gaussian displacement of scale sigma(severity) to every point.
PointCloud gaussian_noise_ccs(const PointCloud& cloud, const CorruptionSpec& spec,
                              const SeverityProfile& profile);

// Per-axis displacement uniform in [-amplitude(severity), amplitude(severity)].
PointCloud uniform_noise_ccs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile);

// Displaces round(fraction * N) randomly chosen points by magnitude * (+-1)
// independently per axis; every other point is untouched.
PointCloud impulse_noise_ccs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile);

// Range-only variants: the point moves along its ray, the unit direction is
// preserved exactly and the new range is clamped at 0.
PointCloud gaussian_noise_scs(const PointCloud& cloud, const CorruptionSpec& spec,
                              const SeverityProfile& profile);
PointCloud uniform_noise_scs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile);
PointCloud impulse_noise_scs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile);

// Appends round(add_fraction * N) points uniform in the cloud's bounding box,
// intensity 0. Originals stay untouched as an order-preserved prefix.
PointCloud background_noise(const PointCloud& cloud, const CorruptionSpec& spec,
                            const SeverityProfile& profile);

// Appends one jittered copy (per-axis uniform in [-jitter, jitter]) of each
// of round(fraction * N) randomly chosen source points.
PointCloud upsample(const PointCloud& cloud, const CorruptionSpec& spec,
                    const SeverityProfile& profile);

// For clusters(severity) random seed points, interpolates interp_points new
// points inside the seed's neighborhood-NN set (random-pair midpoints).
PointCloud local_density_increase(const PointCloud& cloud, const CorruptionSpec& spec,
                                  const SeverityProfile& profile);

// For clusters(severity) random seed points, removes a random remove_count
// subset of each seed's neighborhood-NN set; overlaps collapse.
PointCloud local_density_decrease(const PointCloud& cloud, const CorruptionSpec& spec,
                                  const SeverityProfile& profile);

// Removes the union of the neighborhood-NN sets of clusters(severity) seeds.
PointCloud cutout(const PointCloud& cloud, const CorruptionSpec& spec,
                  const SeverityProfile& profile);

// Keeps a uniform random subset of round((1 - delete_fraction) * N) points.
PointCloud beam_deletion(const PointCloud& cloud, const CorruptionSpec& spec,
                         const SeverityProfile& profile);

// Deletes all points of layers(severity) randomly chosen layers. Runs
// infer_layers first when the cloud carries no layer indices.
PointCloud layer_deletion(const PointCloud& cloud, const CorruptionSpec& spec,
                          const SeverityProfile& profile);

// Dispatches to the operation for spec.kind (weather kinds included).
PointCloud corrupt(const PointCloud& cloud, const CorruptionSpec& spec,
                   const SeverityProfile& profile);

}  // namespace lcorrupt
