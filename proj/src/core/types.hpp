#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace lcorrupt {

constexpr int kNoLayer = -1;
constexpr int kDefaultBeamCount = 64;

// One LiDAR return in the sensor Cartesian frame. Positions are meters,
// intensity is unitless reflectance in [0, 1], layer is the beam/ring index
// or kNoLayer when unknown.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  float intensity = 0.0f;
  std::int32_t layer = kNoLayer;

  Point() = default;
  Point(double px, double py, double pz, float i = 0.0f, std::int32_t l = kNoLayer)
      : x(px), y(py), z(pz), intensity(i), layer(l) {}

  Eigen::Vector3d position() const { return {x, y, z}; }
  void set_position(const Eigen::Vector3d& p) {
    x = p.x();
    y = p.y();
    z = p.z();
  }
  double range() const { return position().norm(); }

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z && a.intensity == b.intensity &&
           a.layer == b.layer;
  }
};

// Spherical coordinates: range >= 0 meters, azimuth in (-pi, pi], polar angle
// measured from the +z axis in [0, pi].
struct SphericalPoint {
  double range = 0.0;
  double azimuth = 0.0;
  double polar = 0.0;
};

// One frame of points. Operations never mutate a cloud in place; they return
// new clouds, and any operation that neither adds nor removes points keeps
// the index order.
struct PointCloud {
  std::vector<Point> points;
  std::int64_t frame_id = 0;
  int beam_count = kDefaultBeamCount;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
  Point& operator[](std::size_t i) { return points[i]; }

  bool has_layers() const;

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.frame_id == b.frame_id && a.beam_count == b.beam_count && a.points == b.points;
  }
};

struct BoundingBox {
  Eigen::Vector3d min_corner = Eigen::Vector3d::Zero();
  Eigen::Vector3d max_corner = Eigen::Vector3d::Zero();

  bool contains(const Eigen::Vector3d& p) const {
    return (p.array() >= min_corner.array()).all() && (p.array() <= max_corner.array()).all();
  }
};

// Axis-aligned bounding box of the cloud. Throws on an empty cloud.
BoundingBox bounding_box(const PointCloud& cloud);

SphericalPoint to_spherical(const Point& p);
Point to_cartesian(const SphericalPoint& s);

// Moves a point along its ray by delta_range, clamping the new range at 0.
// Intensity and layer are preserved; the unit direction never changes.
Point displace_range(const Point& p, double delta_range);

// Elevation angle above the x/y plane, in radians.
double elevation_angle(const Point& p);

}  // namespace lcorrupt
