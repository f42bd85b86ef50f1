#include "lunarbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lunarbeam/error.hpp"

namespace lunarbeam {

double tilt_angle(double source_height, double panel_height, double distance) {
  if (!(distance > 0.0)) {
    throw InvalidGeometry("distance must be positive, got " + std::to_string(distance));
  }
  return std::atan((panel_height - source_height) / distance);
}

double ScenarioGeometry::tilt() const {
  return tilt_angle(source_height, panel_height, distance);
}

void ScenarioGeometry::validate() const {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidGeometry(std::string(name) + " must be positive and finite");
    }
  };
  require_positive(distance, "geometry.distance");
  require_positive(source_height, "geometry.source_height");
  require_positive(panel_height, "geometry.panel_height");
  require_positive(panel_length, "geometry.panel_length");
  require_positive(panel_width, "geometry.panel_width");
}

double separation(const PathPoint& src, const PathPoint& dst) {
  const double dx = dst.x - src.x;
  const double dy = dst.y - src.y;
  const double dz = dst.z - src.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double source_ground_height(const ScenarioGeometry& geom, double y0) {
  return y0 * std::cos(geom.tilt()) + geom.source_height;
}

double panel_ground_height(const ScenarioGeometry& geom, double y) {
  return y * std::cos(geom.tilt()) + geom.panel_height;
}

double path_height(const PathPoint& src, const PathPoint& dst, const ScenarioGeometry& geom,
                   double arclength) {
  const double length = separation(src, dst);
  const double h_src = source_ground_height(geom, src.y);
  if (length == 0.0) {
    if (arclength > 0.0) {
      throw DomainError("path_height: zero-length ray with positive arclength");
    }
    return h_src;
  }
  if (!(arclength >= 0.0 && arclength <= length)) {
    throw DomainError("path_height: arclength outside [0, R]");
  }
  const double h_dst = panel_ground_height(geom, dst.y);
  return h_src + (h_dst - h_src) * (arclength / length);
}

double min_path_height(const PathPoint& src, const PathPoint& dst, const ScenarioGeometry& geom) {
  return std::min(source_ground_height(geom, src.y), panel_ground_height(geom, dst.y));
}

}  // namespace lunarbeam
