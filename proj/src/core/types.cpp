#include "core/types.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace lcorrupt {

bool PointCloud::has_layers() const {
  return !points.empty() &&
         std::all_of(points.begin(), points.end(), [](const Point& p) { return p.layer >= 0; });
}

BoundingBox bounding_box(const PointCloud& cloud) {
  if (cloud.empty()) {
    throw empty_input_error("bounding_box: empty cloud");
  }
  BoundingBox box;
  box.min_corner = cloud.points.front().position();
  box.max_corner = box.min_corner;
  for (const Point& p : cloud.points) {
    box.min_corner = box.min_corner.cwiseMin(p.position());
    box.max_corner = box.max_corner.cwiseMax(p.position());
  }
  return box;
}

SphericalPoint to_spherical(const Point& p) {
  SphericalPoint s;
  s.range = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  if (s.range == 0.0) {
    return s;  // azimuth and polar are 0 by convention at the origin
  }
  s.azimuth = std::atan2(p.y, p.x);
  s.polar = std::acos(std::clamp(p.z / s.range, -1.0, 1.0));
  return s;
}

Point to_cartesian(const SphericalPoint& s) {
  Point p;
  const double sin_polar = std::sin(s.polar);
  p.x = s.range * sin_polar * std::cos(s.azimuth);
  p.y = s.range * sin_polar * std::sin(s.azimuth);
  p.z = s.range * std::cos(s.polar);
  return p;
}

Point displace_range(const Point& p, double delta_range) {
  const double r = p.range();
  if (r == 0.0) {
    return p;  // no direction to move along
  }
  const double new_r = std::max(0.0, r + delta_range);
  const double scale = new_r / r;
  Point out = p;
  out.x *= scale;
  out.y *= scale;
  out.z *= scale;
  return out;
}

double elevation_angle(const Point& p) { return std::atan2(p.z, std::hypot(p.x, p.y)); }

}  // namespace lcorrupt
