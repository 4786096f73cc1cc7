#include "core/synthetic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace lcorrupt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double deg(double d) { return d * kPi / 180.0; }

// The scene is a closed annular hall: a flat floor and ceiling between a
// central core cylinder and an outer wall, with the sensor orbiting the core
// at constant speed. The ring shape is what makes a clean sequence cleanly
// trackable by a frame-to-frame matcher:
//   - the track never crosses a wall, so there are no doorway transitions
//     where the visible set changes violently between frames;
//   - there are no free-standing obstacles, so no occlusion shadows sweep
//     across far surfaces as the sensor moves (a shadow edge is pinned to the
//     viewpoint, and the strip it reveals each frame exists in only one frame
//     of a pair, voting coherently against the motion);
//   - every ray terminates on a nearby surface, so the scan coverage is
//     bounded by fixed wall seams or by cylinder silhouettes whose density
//     already fades to zero by obliquity, never by a hard range horizon that
//     travels with the sensor.
constexpr double kSensorHeight = 1.73;
// Ceiling at exactly twice the sensor height: the upward beam fan then
// mirrors the downward one, and residual up/down coverage effects cancel in
// both net vertical force and pitch torque.
constexpr double kCeilingHeight = 2.0 * kSensorHeight;
constexpr double kCoreRadius = 4.5;
constexpr double kOuterRadius = 11.0;
constexpr double kOrbitRadius = 8.0;

// World-locked surface relief. Perfectly smooth planes are useless to a
// point-to-point subject: rescanned from a shifted viewpoint they look
// identical in the sensor frame, so correspondences on them systematically
// vote for zero motion. The floor and ceiling carry centimetre relief; the
// walls carry much deeper corrugation because they are the only surfaces
// whose texture gradients resist sliding along the direction of travel.
constexpr double kGroundReliefAmp = 0.35;
constexpr double kGroundReliefScale = 1.2;
constexpr double kWallReliefAmp = 0.35;
constexpr double kWallReliefScale = 2.0;

// Scanner: 64 beams, three elevation banks.
constexpr int kBeams = 64;
constexpr int kDownBeams = 29;
constexpr int kUpBeams = 27;
constexpr int kMidBeams = kBeams - kDownBeams - kUpBeams;
// Ground rings are redrawn every frame, area-uniform over the annulus
// between the two radii: a stationary random ring process has no repeating
// ladder to lock onto, and a uniform 2D density has no radial gradient. A
// density gradient is itself a bias source: it is pinned to the viewpoint,
// and nearest-neighbour matches in a gradient lean systematically toward
// the denser side, which for a sensor-centered falloff means backward.
constexpr double kRingAreaLo = 1.0;
constexpr double kRingAreaHi = 5.8;
// Per-ray ring dither, several times the mean ring-to-ring gap. It smears
// every scan line over its neighbors (a dense 1D curve lets matches slide
// along it, so curve ensembles from two viewpoints vote to stay concentric,
// resisting the motion) and its box convolution tapers the coverage edges
// (a hard edge sheds a one-sided rim of unmatched points every frame).
constexpr double kRingDither = 0.7;
static_assert((kRingAreaHi + 0.5 * kRingDither) * (kRingAreaHi + 0.5 * kRingDither) <
              kOrbitRadius * kOrbitRadius - kCoreRadius * kCoreRadius);
// The dithered outer ring edge stays short of the core tangent distance
// sqrt(orbit^2 - core^2) ~ 6.61, so no ground or ceiling ray ever slips past
// the core into the far half of the hall, where its landing patch would be
// clipped by a viewpoint-locked occlusion edge.
// Shallow mid rows sweep only the outward half of the azimuth circle, where
// every ray meets the outer wall within the tangent chord and never escapes
// past the core. The window edges coincide with grazing incidence on the
// wall, so the coverage boundary fades by obliquity instead of cutting off.
constexpr double kMidBankMin = deg(-8.0);
constexpr double kMidBankMax = deg(8.0);
constexpr int kAzimuthSteps = 640;
constexpr double kAzimuthSpan = 2.0 * kPi;
constexpr double kAzimuthDither = 6.0;
constexpr double kNearClip = 0.5;
constexpr double kFarClip = 40.0;
constexpr double kRangeDither = 0.003;

// Motion: constant speed along a circle concentric with the hall, heading
// tangent to the track. In the world frame of frame 0 the sensor starts at
// the origin heading +x with the hall center on its left.
constexpr double kStep = 0.5;

// Surface reflectance stand-ins.
constexpr float kGroundIntensity = 0.3f;
constexpr float kCeilingIntensity = 0.45f;
constexpr float kOuterIntensity = 0.5f;
constexpr float kCoreIntensity = 0.8f;

constexpr std::uint64_t kSceneSalt = 0x1b56c4e9ea36a9c5ull;
constexpr std::uint64_t kGroundReliefSalt = 0x9fb21c651e98df25ull;
constexpr std::uint64_t kOuterReliefSalt = 0x7c6dd7a25f5a9e31ull;
constexpr std::uint64_t kCoreReliefSalt = 0xd3f8a90c17b64e87ull;
constexpr std::uint64_t kCeilReliefSalt = 0x21d8f3b79ac04e65ull;

enum class Surface { ground, ceiling, core, outer };

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  float intensity = 0;
  Surface surface = Surface::ground;
};

void consider(Hit& best, double t, float intensity, Surface surface) {
  if (t > kNearClip && t < best.t) best = {t, intensity, surface};
}

double lattice_value(std::uint64_t salt, std::int64_t iu, std::int64_t iv) {
  const std::uint64_t h =
      mix64(salt ^ mix64(static_cast<std::uint64_t>(iu) * 0x9e3779b97f4a7c15ull ^
                         static_cast<std::uint64_t>(iv) * 0xc2b2ae3d27d4eb4full));
  return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

double smooth01(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise(std::uint64_t salt, double u, double v) {
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const auto iu = static_cast<std::int64_t>(fu);
  const auto iv = static_cast<std::int64_t>(fv);
  const double su = smooth01(u - fu);
  const double sv = smooth01(v - fv);
  const double v00 = lattice_value(salt, iu, iv);
  const double v10 = lattice_value(salt, iu + 1, iv);
  const double v01 = lattice_value(salt, iu, iv + 1);
  const double v11 = lattice_value(salt, iu + 1, iv + 1);
  const double lo = v00 + (v10 - v00) * su;
  const double hi = v01 + (v11 - v01) * su;
  return lo + (hi - lo) * sv;
}

double relief(std::uint64_t salt, double u, double v, double scale, double amp) {
  const double base = value_noise(salt, u / scale, v / scale);
  const double detail = value_noise(mix64(salt), 2.0 * u / scale + 17.31, 2.0 * v / scale + 9.17);
  return amp * (base + 0.5 * detail) / 1.5;
}

Eigen::Matrix3d yaw_rotation(double yaw) {
  Eigen::Matrix3d r;
  r << std::cos(yaw), -std::sin(yaw), 0, std::sin(yaw), std::cos(yaw), 0, 0, 0, 1;
  return r;
}

// Hall center in the frame-0 world frame.
const Eigen::Vector2d kHallCenter(0.0, kOrbitRadius);

// First intersection with a vertical cylinder around the hall center.
// The caller is outside the core and inside the outer wall, so the core uses
// the near quadratic root and the outer wall the far one. No height check is
// needed: both cylinders span floor to ceiling, and any crossing outside
// that band is preceded by a closer floor or ceiling hit.
double cylinder_hit(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double radius,
                    bool from_inside) {
  const double ox = o.x() - kHallCenter.x();
  const double oy = o.y() - kHallCenter.y();
  const double qa = d.x() * d.x() + d.y() * d.y();
  if (qa <= 0.0) return -1.0;
  const double qb = 2.0 * (ox * d.x() + oy * d.y());
  const double qc = ox * ox + oy * oy - radius * radius;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return -1.0;
  const double root = std::sqrt(disc);
  return from_inside ? (-qb + root) / (2.0 * qa) : (-qb - root) / (2.0 * qa);
}

PointCloud scan(const Pose& pose, Rng& rng, std::int64_t frame_id) {
  PointCloud cloud;
  cloud.frame_id = frame_id;
  cloud.beam_count = kBeams;
  cloud.points.reserve(static_cast<std::size_t>(kBeams) * kAzimuthSteps);

  const Eigen::Vector3d origin = pose.translation;
  const double azimuth_step = kAzimuthSpan / kAzimuthSteps;
  const double mid_step = (kMidBankMax - kMidBankMin) / (kMidBeams - 1);
  // Jitter the whole scan grid per frame. Without this, consecutive scans of
  // smooth surfaces reproduce the same sensor-frame pattern (rings on the
  // ground, curtains on walls) and a point-to-point subject can lock onto the
  // pattern instead of the world, biasing motion estimates toward zero.
  const double azimuth_phase = rng.uniform() * azimuth_step;
  std::vector<double> base_ring(kBeams, 0.0);
  const double lo2 = kRingAreaLo * kRingAreaLo;
  const double hi2 = kRingAreaHi * kRingAreaHi;
  for (int beam = 0; beam < kBeams; ++beam) {
    const double u = rng.uniform();
    if (beam < kDownBeams + kUpBeams) base_ring[beam] = std::sqrt(lo2 + u * (hi2 - lo2));
  }
  for (int beam = 0; beam < kBeams; ++beam) {
    const bool mid = beam >= kDownBeams + kUpBeams;
    const int row = beam - kDownBeams - kUpBeams;
    for (int a = 0; a < kAzimuthSteps; ++a) {
      const double u2 = rng.uniform();
      const double u3 = rng.uniform();
      double elev;
      if (mid) {
        elev = kMidBankMin + mid_step * row + (u2 - 0.5) * mid_step * 2.4;
      } else {
        const double ring = base_ring[beam] + (u2 - 0.5) * kRingDither;
        elev = beam < kDownBeams ? -std::atan2(kSensorHeight, ring)
                                 : std::atan2(kCeilingHeight - kSensorHeight, ring);
      }
      const double ce = std::cos(elev);
      const double se = std::sin(elev);
      // Per-ray azimuth dither, several columns wide. A vertical fan plane
      // cuts a vertical wall in a straight vertical line, so a column-shared
      // jitter still paints 1D curtains on the walls, and curtain ensembles
      // lock angularly the same way undithered rings lock radially.
      const double full =
          -kPi + azimuth_phase + a * azimuth_step + (u3 - 0.5) * azimuth_step * kAzimuthDither;
      // Mid rows compress the sweep into the outward (right-hand) half
      // circle; the hall center sits on the sensor's left.
      const double azimuth = mid ? 0.5 * full - 0.5 * kPi : full;
      const Eigen::Vector3d dir_sensor(ce * std::cos(azimuth), ce * std::sin(azimuth), se);
      const Eigen::Vector3d d = pose.rotation * dir_sensor;

      Hit best;
      if (d.z() < 0.0) consider(best, -origin.z() / d.z(), kGroundIntensity, Surface::ground);
      if (d.z() > 0.0) {
        consider(best, (kCeilingHeight - origin.z()) / d.z(), kCeilingIntensity,
                 Surface::ceiling);
      }
      consider(best, cylinder_hit(origin, d, kCoreRadius, false), kCoreIntensity, Surface::core);
      consider(best, cylinder_hit(origin, d, kOuterRadius, true), kOuterIntensity,
               Surface::outer);

      if (best.t > kFarClip) continue;
      Eigen::Vector3d w = origin + best.t * d;
      switch (best.surface) {
        case Surface::ground:
          w.z() = relief(kGroundReliefSalt, w.x(), w.y(), kGroundReliefScale, kGroundReliefAmp);
          break;
        case Surface::ceiling:
          w.z() = kCeilingHeight -
                  relief(kCeilReliefSalt, w.x(), w.y(), kGroundReliefScale, kGroundReliefAmp);
          break;
        case Surface::core:
        case Surface::outer: {
          // Corrugate the wall along arc length and height. The displacement
          // is radial and applied after the nominal-cylinder intersection, so
          // it textures the surface without creating occluders.
          const double nx = (w.x() - kHallCenter.x());
          const double ny = (w.y() - kHallCenter.y());
          const double theta = std::atan2(ny, nx);
          const bool is_core = best.surface == Surface::core;
          const double nominal = is_core ? kCoreRadius : kOuterRadius;
          const double carve = relief(is_core ? kCoreReliefSalt : kOuterReliefSalt,
                                      theta * nominal, w.z(), kWallReliefScale, kWallReliefAmp);
          const double radius = is_core ? nominal - carve : nominal + carve;
          w.x() = kHallCenter.x() + radius * std::cos(theta);
          w.y() = kHallCenter.y() + radius * std::sin(theta);
          break;
        }
      }
      Eigen::Vector3d v = pose.rotation.transpose() * (w - origin);
      const double range = v.norm();
      v *= (range + rng.normal() * kRangeDither) / range;
      Point point;
      point.x = v.x();
      point.y = v.y();
      point.z = v.z();
      point.intensity = best.intensity;
      point.layer = beam;
      cloud.points.push_back(point);
    }
  }
  return cloud;
}

}  // namespace

std::vector<SyntheticFrame> generate_synthetic_sequence(const std::string& scene, int frames,
                                                        std::uint64_t seed) {
  if (scene != "corridor") throw invalid_argument_error("unknown synthetic scene: " + scene);
  if (frames < 2) throw invalid_argument_error("synthetic sequence needs at least 2 frames");

  std::vector<SyntheticFrame> out;
  out.reserve(static_cast<std::size_t>(frames));
  const double dtheta = kStep / kOrbitRadius;
  for (int k = 0; k < frames; ++k) {
    const double theta = k * dtheta;
    SyntheticFrame frame;
    frame.pose.rotation = yaw_rotation(theta);
    frame.pose.translation =
        Eigen::Vector3d(kHallCenter.x() + kOrbitRadius * std::sin(theta),
                        kHallCenter.y() - kOrbitRadius * std::cos(theta), kSensorHeight);

    Rng rng(mix64(mix64(seed ^ kSceneSalt) ^ static_cast<std::uint64_t>(k)));
    frame.cloud = scan(frame.pose, rng, k);
    out.push_back(std::move(frame));
  }
  return out;
}

Trajectory ground_truth(const std::vector<SyntheticFrame>& frames) {
  Trajectory t;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    t.append(static_cast<std::int64_t>(k), frames[k].pose);
  }
  return t;
}

std::vector<PointCloud> clouds_of(const std::vector<SyntheticFrame>& frames) {
  std::vector<PointCloud> clouds;
  clouds.reserve(frames.size());
  for (const SyntheticFrame& f : frames) clouds.push_back(f.cloud);
  return clouds;
}

}  // namespace lcorrupt
