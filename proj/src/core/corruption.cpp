#include "core/corruption.hpp"

#include <cmath>
#include <unordered_set>

#include "core/cloud_ops.hpp"
#include "core/error.hpp"
#include "core/kdtree.hpp"
#include "core/params.hpp"
#include "core/rng.hpp"
#include "core/weather.hpp"

namespace lcorrupt {

namespace {

double resolve(const CorruptionSpec& spec, const SeverityProfile& profile, const char* name) {
  return detail::resolve_param(spec, profile, name);
}

int resolve_count(const CorruptionSpec& spec, const SeverityProfile& profile, const char* name) {
  return static_cast<int>(std::llround(resolve(spec, profile, name)));
}

int round_fraction(double fraction, std::size_t n) {
  return static_cast<int>(std::llround(fraction * static_cast<double>(n)));
}

PointCloud remove_indices(const PointCloud& cloud, const std::vector<char>& removed) {
  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.beam_count = cloud.beam_count;
  out.points.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!removed[i]) out.points.push_back(cloud.points[i]);
  }
  return out;
}

void require_at_least(const PointCloud& cloud, std::size_t n, const char* op) {
  if (cloud.size() < n) {
    throw too_few_points_error(std::string(op) + ": cloud has " + std::to_string(cloud.size()) +
                               " points, needs at least " + std::to_string(n));
  }
}

}  // namespace

PointCloud gaussian_noise_ccs(const PointCloud& cloud, const CorruptionSpec& spec,
                              const SeverityProfile& profile) {
  validate_spec(spec);
  const double sigma = resolve(spec, profile, "sigma");
  Rng rng(spec.seed);
  PointCloud out = cloud;
  for (Point& p : out.points) {
    p.x += rng.normal() * sigma;
    p.y += rng.normal() * sigma;
    p.z += rng.normal() * sigma;
  }
  return out;
}

PointCloud uniform_noise_ccs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile) {
  validate_spec(spec);
  const double amplitude = resolve(spec, profile, "amplitude");
  Rng rng(spec.seed);
  PointCloud out = cloud;
  for (Point& p : out.points) {
    p.x += rng.uniform(-amplitude, amplitude);
    p.y += rng.uniform(-amplitude, amplitude);
    p.z += rng.uniform(-amplitude, amplitude);
  }
  return out;
}

PointCloud impulse_noise_ccs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile) {
  validate_spec(spec);
  const double fraction = resolve(spec, profile, "fraction");
  const double magnitude = resolve(spec, profile, "magnitude");
  Rng rng(spec.seed);
  const std::vector<int> affected =
      random_subset(static_cast<int>(cloud.size()), round_fraction(fraction, cloud.size()), rng);
  PointCloud out = cloud;
  for (int idx : affected) {
    Point& p = out.points[static_cast<std::size_t>(idx)];
    p.x += rng.sign() * magnitude;
    p.y += rng.sign() * magnitude;
    p.z += rng.sign() * magnitude;
  }
  return out;
}

PointCloud gaussian_noise_scs(const PointCloud& cloud, const CorruptionSpec& spec,
                              const SeverityProfile& profile) {
  validate_spec(spec);
  const double sigma = resolve(spec, profile, "sigma");
  Rng rng(spec.seed);
  PointCloud out = cloud;
  for (Point& p : out.points) p = displace_range(p, rng.normal() * sigma);
  return out;
}

PointCloud uniform_noise_scs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile) {
  validate_spec(spec);
  const double amplitude = resolve(spec, profile, "amplitude");
  Rng rng(spec.seed);
  PointCloud out = cloud;
  for (Point& p : out.points) p = displace_range(p, rng.uniform(-amplitude, amplitude));
  return out;
}

PointCloud impulse_noise_scs(const PointCloud& cloud, const CorruptionSpec& spec,
                             const SeverityProfile& profile) {
  validate_spec(spec);
  const double fraction = resolve(spec, profile, "fraction");
  const double magnitude = resolve(spec, profile, "magnitude");
  Rng rng(spec.seed);
  const std::vector<int> affected =
      random_subset(static_cast<int>(cloud.size()), round_fraction(fraction, cloud.size()), rng);
  PointCloud out = cloud;
  for (int idx : affected) {
    Point& p = out.points[static_cast<std::size_t>(idx)];
    p = displace_range(p, rng.sign() * magnitude);
  }
  return out;
}

PointCloud background_noise(const PointCloud& cloud, const CorruptionSpec& spec,
                            const SeverityProfile& profile) {
  validate_spec(spec);
  if (cloud.empty()) throw empty_input_error("background_noise: empty cloud");
  const double add_fraction = resolve(spec, profile, "add_fraction");
  const int n_add = round_fraction(add_fraction, cloud.size());
  const BoundingBox box = bounding_box(cloud);
  Rng rng(spec.seed);
  PointCloud out = cloud;
  out.points.reserve(cloud.size() + static_cast<std::size_t>(n_add));
  for (int i = 0; i < n_add; ++i) {
    Point p;
    p.x = rng.uniform(box.min_corner.x(), box.max_corner.x());
    p.y = rng.uniform(box.min_corner.y(), box.max_corner.y());
    p.z = rng.uniform(box.min_corner.z(), box.max_corner.z());
    p.intensity = 0.0f;  // spurious returns carry no calibrated reflectance
    out.points.push_back(p);
  }
  return out;
}

PointCloud upsample(const PointCloud& cloud, const CorruptionSpec& spec,
                    const SeverityProfile& profile) {
  validate_spec(spec);
  if (cloud.empty()) throw empty_input_error("upsample: empty cloud");
  const double fraction = resolve(spec, profile, "fraction");
  const double jitter = resolve(spec, profile, "jitter");
  Rng rng(spec.seed);
  const std::vector<int> sources =
      random_subset(static_cast<int>(cloud.size()), round_fraction(fraction, cloud.size()), rng);
  PointCloud out = cloud;
  out.points.reserve(cloud.size() + sources.size());
  for (int idx : sources) {
    Point p = cloud.points[static_cast<std::size_t>(idx)];
    p.x += rng.uniform(-jitter, jitter);
    p.y += rng.uniform(-jitter, jitter);
    p.z += rng.uniform(-jitter, jitter);
    out.points.push_back(p);
  }
  return out;
}

PointCloud local_density_increase(const PointCloud& cloud, const CorruptionSpec& spec,
                                  const SeverityProfile& profile) {
  validate_spec(spec);
  const int neighborhood = resolve_count(spec, profile, "neighborhood");
  const int clusters = resolve_count(spec, profile, "clusters");
  const int interp_points = resolve_count(spec, profile, "interp_points");
  require_at_least(cloud, static_cast<std::size_t>(neighborhood), "local_density_increase");

  Rng rng(spec.seed);
  const std::vector<int> seeds = random_subset(static_cast<int>(cloud.size()), clusters, rng);
  PointCloud out = cloud;
  if (clusters == 0 || interp_points == 0) return out;

  KdTree tree(cloud);
  out.points.reserve(cloud.size() +
                     static_cast<std::size_t>(clusters) * static_cast<std::size_t>(interp_points));
  for (int seed_idx : seeds) {
    const std::vector<int> nn =
        tree.knn(cloud.points[static_cast<std::size_t>(seed_idx)].position(), neighborhood);
    for (int j = 0; j < interp_points; ++j) {
      // Random distinct pair inside the neighborhood; midpoint interpolation.
      const int a = static_cast<int>(rng.uniform_int(nn.size()));
      int b = static_cast<int>(rng.uniform_int(nn.size() - 1));
      if (b >= a) ++b;
      const Point& pa = cloud.points[static_cast<std::size_t>(nn[a])];
      const Point& pb = cloud.points[static_cast<std::size_t>(nn[b])];
      Point mid;
      mid.x = 0.5 * (pa.x + pb.x);
      mid.y = 0.5 * (pa.y + pb.y);
      mid.z = 0.5 * (pa.z + pb.z);
      mid.intensity = 0.5f * (pa.intensity + pb.intensity);
      out.points.push_back(mid);
    }
  }
  return out;
}

PointCloud local_density_decrease(const PointCloud& cloud, const CorruptionSpec& spec,
                                  const SeverityProfile& profile) {
  validate_spec(spec);
  const int neighborhood = resolve_count(spec, profile, "neighborhood");
  const int clusters = resolve_count(spec, profile, "clusters");
  const int remove_count = resolve_count(spec, profile, "remove_count");
  require_at_least(cloud, static_cast<std::size_t>(neighborhood), "local_density_decrease");
  if (remove_count > neighborhood) {
    throw invalid_argument_error("local_density_decrease: remove_count exceeds neighborhood");
  }

  Rng rng(spec.seed);
  const std::vector<int> seeds = random_subset(static_cast<int>(cloud.size()), clusters, rng);
  if (clusters == 0) return cloud;

  KdTree tree(cloud);
  std::vector<char> removed(cloud.size(), 0);
  for (int seed_idx : seeds) {
    const std::vector<int> nn =
        tree.knn(cloud.points[static_cast<std::size_t>(seed_idx)].position(), neighborhood);
    const std::vector<int> pick = random_subset(neighborhood, remove_count, rng);
    for (int j : pick) removed[static_cast<std::size_t>(nn[static_cast<std::size_t>(j)])] = 1;
  }
  return remove_indices(cloud, removed);
}

PointCloud cutout(const PointCloud& cloud, const CorruptionSpec& spec,
                  const SeverityProfile& profile) {
  validate_spec(spec);
  const int neighborhood = resolve_count(spec, profile, "neighborhood");
  const int clusters = resolve_count(spec, profile, "clusters");
  require_at_least(cloud, static_cast<std::size_t>(neighborhood), "cutout");

  Rng rng(spec.seed);
  const std::vector<int> seeds = random_subset(static_cast<int>(cloud.size()), clusters, rng);
  if (clusters == 0) return cloud;

  KdTree tree(cloud);
  std::vector<char> removed(cloud.size(), 0);
  for (int seed_idx : seeds) {
    const std::vector<int> nn =
        tree.knn(cloud.points[static_cast<std::size_t>(seed_idx)].position(), neighborhood);
    for (int idx : nn) removed[static_cast<std::size_t>(idx)] = 1;
  }
  return remove_indices(cloud, removed);
}

PointCloud beam_deletion(const PointCloud& cloud, const CorruptionSpec& spec,
                         const SeverityProfile& profile) {
  validate_spec(spec);
  const double delete_fraction = resolve(spec, profile, "delete_fraction");
  const int keep = round_fraction(1.0 - delete_fraction, cloud.size());
  Rng rng(spec.seed);
  const std::vector<int> survivors = random_subset(static_cast<int>(cloud.size()), keep, rng);
  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.beam_count = cloud.beam_count;
  out.points.reserve(survivors.size());
  for (int idx : survivors) out.points.push_back(cloud.points[static_cast<std::size_t>(idx)]);
  return out;
}

PointCloud layer_deletion(const PointCloud& cloud, const CorruptionSpec& spec,
                          const SeverityProfile& profile) {
  validate_spec(spec);
  const int delete_layers = resolve_count(spec, profile, "layers");
  if (delete_layers == 0) return cloud;

  const PointCloud* source = &cloud;
  PointCloud inferred;
  if (!cloud.has_layers()) {
    inferred = infer_layers(cloud, cloud.beam_count);  // throws on empty cloud
    source = &inferred;
  }

  Rng rng(spec.seed);
  const std::vector<int> doomed = random_subset(source->beam_count, delete_layers, rng);
  std::unordered_set<int> doomed_set(doomed.begin(), doomed.end());
  std::vector<char> removed(source->size(), 0);
  for (std::size_t i = 0; i < source->size(); ++i) {
    if (doomed_set.count(source->points[i].layer)) removed[i] = 1;
  }
  return remove_indices(*source, removed);
}

PointCloud corrupt(const PointCloud& cloud, const CorruptionSpec& spec,
                   const SeverityProfile& profile) {
  validate_spec(spec);
  switch (spec.kind) {
    case CorruptionKind::rain:
      return simulate_precipitation(cloud, spec, profile, PrecipitationMode::rain);
    case CorruptionKind::snow:
      return simulate_precipitation(cloud, spec, profile, PrecipitationMode::snow);
    case CorruptionKind::rain_wg:
      return wet_ground(simulate_precipitation(cloud, spec, profile, PrecipitationMode::rain),
                        spec, profile);
    case CorruptionKind::snow_wg:
      return wet_ground(simulate_precipitation(cloud, spec, profile, PrecipitationMode::snow),
                        spec, profile);
    case CorruptionKind::fog:
      return simulate_fog(cloud, spec, profile);
    case CorruptionKind::bg_noise:
      return background_noise(cloud, spec, profile);
    case CorruptionKind::upsample:
      return upsample(cloud, spec, profile);
    case CorruptionKind::uni_noise:
      return uniform_noise_ccs(cloud, spec, profile);
    case CorruptionKind::gau_noise:
      return gaussian_noise_ccs(cloud, spec, profile);
    case CorruptionKind::imp_noise:
      return impulse_noise_ccs(cloud, spec, profile);
    case CorruptionKind::uni_noise_rad:
      return uniform_noise_scs(cloud, spec, profile);
    case CorruptionKind::gau_noise_rad:
      return gaussian_noise_scs(cloud, spec, profile);
    case CorruptionKind::imp_noise_rad:
      return impulse_noise_scs(cloud, spec, profile);
    case CorruptionKind::local_inc:
      return local_density_increase(cloud, spec, profile);
    case CorruptionKind::local_dec:
      return local_density_decrease(cloud, spec, profile);
    case CorruptionKind::beam_del:
      return beam_deletion(cloud, spec, profile);
    case CorruptionKind::layer_del:
      return layer_deletion(cloud, spec, profile);
    case CorruptionKind::cutout:
      return cutout(cloud, spec, profile);
  }
  throw unknown_kind_error("corrupt: unhandled kind ordinal " +
                           std::to_string(static_cast<int>(spec.kind)));
}

}  // namespace lcorrupt
