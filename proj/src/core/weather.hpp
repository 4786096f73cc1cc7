#pragma once

#include "core/severity_profile.hpp"
#include "core/types.hpp"

namespace lcorrupt {

// Parametric weather stand-ins: exponential two-way attenuation, Bernoulli
// droplet scatter and a wet-ground reflectance model. These approximate the
// behaviour of full physical simulators; they are not calibrated against
// them (see README). All operations are pure and seed-deterministic, never
// add points, and never increase a surviving point's intensity.

enum class PrecipitationMode { rain, snow };

// Attenuates every return by exp(-2 * attenuation * range), drops returns
// whose intensity falls below intensity_floor (or randomly with drop_prob),
// and with probability scatter_prob replaces a return by a droplet echo on
// the same ray at a range uniform in (0, min(range, scatter_range_max)].
PointCloud simulate_precipitation(const PointCloud& cloud, const CorruptionSpec& spec,
                                  const SeverityProfile& profile, PrecipitationMode mode);

// Same decay/drop scheme with fog rows; droplet echoes land near the sensor
// at a range uniform in (0, halo_max].
PointCloud simulate_fog(const PointCloud& cloud, const CorruptionSpec& spec,
                        const SeverityProfile& profile);

// Points with |z - ground_z| <= ground_band are ground: each is dropped with
// probability wet_drop_prob, otherwise its intensity is scaled by
// wet_factor. Non-ground points pass through untouched.
PointCloud wet_ground(const PointCloud& cloud, const CorruptionSpec& spec,
                      const SeverityProfile& profile);

}  // namespace lcorrupt
