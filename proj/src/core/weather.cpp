#include "core/weather.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/params.hpp"
#include "core/rng.hpp"

namespace lcorrupt {

namespace {

using detail::resolve_param;

struct DecayParams {
  double attenuation = 0;
  double scatter_prob = 0;
  double drop_prob = 0;
  double intensity_floor = 0;
};

DecayParams decay_params(const CorruptionSpec& spec, const SeverityProfile& profile) {
  DecayParams d;
  d.attenuation = resolve_param(spec, profile, "attenuation");
  d.scatter_prob = resolve_param(spec, profile, "scatter_prob");
  d.drop_prob = resolve_param(spec, profile, "drop_prob");
  d.intensity_floor = resolve_param(spec, profile, "intensity_floor");
  return d;
}

// Half-open (0, hi]: 1 - uniform() lies in (0, 1].
double uniform_half_open(Rng& rng, double hi) { return hi * (1.0 - rng.uniform()); }

// Shared attenuation / drop / scatter pass. scatter_max(range) gives the
// upper bound of the droplet-echo range for a return at that range; a bound
// <= 0 (or a zero-range return, whose ray direction is undefined) disables
// scattering for that point. Draw order per point that survives the
// intensity floor: one uniform for the random drop, one for the scatter
// decision, then one more for the echo range when scattering.
template <typename ScatterMax>
PointCloud decay_pass(const PointCloud& cloud, const DecayParams& d, std::uint64_t seed,
                      ScatterMax scatter_max) {
  Rng rng(seed);
  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.beam_count = cloud.beam_count;
  out.points.reserve(cloud.size());
  for (const Point& p : cloud.points) {
    const double range = p.range();
    const double attenuated = p.intensity * std::exp(-2.0 * d.attenuation * range);
    if (attenuated < d.intensity_floor) continue;
    if (rng.uniform() < d.drop_prob) continue;
    Point kept = p;
    kept.intensity = static_cast<float>(attenuated);
    if (rng.uniform() < d.scatter_prob) {
      const double hi = scatter_max(range);
      if (range > 0.0 && hi > 0.0) {
        kept = displace_range(kept, uniform_half_open(rng, hi) - range);
      }
    }
    out.points.push_back(kept);
  }
  return out;
}

void check_mode(CorruptionKind kind, PrecipitationMode mode) {
  const bool rain_kind = kind == CorruptionKind::rain || kind == CorruptionKind::rain_wg;
  const bool snow_kind = kind == CorruptionKind::snow || kind == CorruptionKind::snow_wg;
  const bool ok = (mode == PrecipitationMode::rain && rain_kind) ||
                  (mode == PrecipitationMode::snow && snow_kind);
  if (!ok) {
    throw invalid_argument_error("precipitation mode does not match corruption kind " +
                                 std::string(kind_name(kind)));
  }
}

}  // namespace

PointCloud simulate_precipitation(const PointCloud& cloud, const CorruptionSpec& spec,
                                  const SeverityProfile& profile, PrecipitationMode mode) {
  validate_spec(spec);
  check_mode(spec.kind, mode);
  const DecayParams d = decay_params(spec, profile);
  const double range_max = resolve_param(spec, profile, "scatter_range_max");
  return decay_pass(cloud, d, spec.seed,
                    [range_max](double range) { return std::min(range, range_max); });
}

PointCloud simulate_fog(const PointCloud& cloud, const CorruptionSpec& spec,
                        const SeverityProfile& profile) {
  validate_spec(spec);
  if (spec.kind != CorruptionKind::fog) {
    throw invalid_argument_error("simulate_fog requires a fog spec");
  }
  const DecayParams d = decay_params(spec, profile);
  const double halo_max = resolve_param(spec, profile, "halo_max");
  return decay_pass(cloud, d, spec.seed, [halo_max](double) { return halo_max; });
}

PointCloud wet_ground(const PointCloud& cloud, const CorruptionSpec& spec,
                      const SeverityProfile& profile) {
  validate_spec(spec);
  if (spec.kind != CorruptionKind::rain_wg && spec.kind != CorruptionKind::snow_wg) {
    throw invalid_argument_error("wet_ground requires a rain_wg or snow_wg spec");
  }
  const double ground_z = resolve_param(spec, profile, "ground_z");
  const double ground_band = resolve_param(spec, profile, "ground_band");
  const double drop_prob = resolve_param(spec, profile, "wet_drop_prob");
  const double wet_factor = resolve_param(spec, profile, "wet_factor");

  Rng rng(spec.seed);
  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.beam_count = cloud.beam_count;
  out.points.reserve(cloud.size());
  for (const Point& p : cloud.points) {
    if (std::abs(p.z - ground_z) > ground_band) {
      out.points.push_back(p);
      continue;
    }
    if (rng.uniform() < drop_prob) continue;
    Point kept = p;
    kept.intensity = static_cast<float>(kept.intensity * wet_factor);
    out.points.push_back(kept);
  }
  return out;
}

}  // namespace lcorrupt
