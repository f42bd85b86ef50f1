#include "lunarbeam/source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lunarbeam/error.hpp"

namespace lunarbeam {

double LaserSource::zeta() const {
  const double ratio = aperture_radius / waist;
  return 1.0 / std::sqrt(-std::expm1(-2.0 * ratio * ratio));
}

double LaserSource::peak_field() const {
  return zeta() * std::sqrt(4.0 * power * impedance / (std::numbers::pi * waist * waist));
}

double LaserSource::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

void LaserSource::validate() const {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(name) + " must be positive and finite");
    }
  };
  require_positive(power, "laser.power");
  require_positive(waist, "laser.waist");
  require_positive(aperture_radius, "laser.aperture_radius");
  require_positive(wavelength, "laser.wavelength");
  require_positive(impedance, "laser.impedance");
}

double aperture_field(const LaserSource& laser, double x0, double y0) {
  const double r2 = x0 * x0 + y0 * y0;
  if (r2 >= laser.aperture_radius * laser.aperture_radius) {
    return 0.0;
  }
  return laser.peak_field() * std::exp(-r2 / (laser.waist * laser.waist));
}

double ApertureGrid::power(double impedance) const {
  double total = 0.0;
  for (const auto& node : nodes) {
    total += node.weight * node.field * node.field;
  }
  return total / (2.0 * impedance);
}

namespace {

struct Overlap {
  double area = 0.0;
  double moment_x = 0.0;
  double moment_y = 0.0;
};

// Area and first moments of [x0,x1]x[y0,y1] intersected with the disk r < radius.
void accumulate_overlap(double x0, double x1, double y0, double y1, double radius, int depth,
                        Overlap& out) {
  const double r2 = radius * radius;
  const double far_x = std::max(std::abs(x0), std::abs(x1));
  const double far_y = std::max(std::abs(y0), std::abs(y1));
  const double near_x = (x0 <= 0.0 && x1 >= 0.0) ? 0.0 : std::min(std::abs(x0), std::abs(x1));
  const double near_y = (y0 <= 0.0 && y1 >= 0.0) ? 0.0 : std::min(std::abs(y0), std::abs(y1));
  const double area = (x1 - x0) * (y1 - y0);
  const double cx = 0.5 * (x0 + x1);
  const double cy = 0.5 * (y0 + y1);

  if (far_x * far_x + far_y * far_y <= r2) {
    out.area += area;
    out.moment_x += area * cx;
    out.moment_y += area * cy;
    return;
  }
  if (near_x * near_x + near_y * near_y >= r2) {
    return;
  }
  if (depth == 0) {
    if (cx * cx + cy * cy < r2) {
      out.area += area;
      out.moment_x += area * cx;
      out.moment_y += area * cy;
    }
    return;
  }
  accumulate_overlap(x0, cx, y0, cy, radius, depth - 1, out);
  accumulate_overlap(cx, x1, y0, cy, radius, depth - 1, out);
  accumulate_overlap(x0, cx, cy, y1, radius, depth - 1, out);
  accumulate_overlap(cx, x1, cy, y1, radius, depth - 1, out);
}

constexpr int kSubdivisionDepth = 10;

}  // namespace

ApertureGrid build_aperture_grid(const LaserSource& laser, int resolution,
                                 double power_tolerance) {
  if (resolution < 8) {
    throw DomainError("aperture resolution must be >= 8, got " + std::to_string(resolution));
  }
  laser.validate();
  const double radius = laser.aperture_radius;
  const double cell = 2.0 * radius / resolution;

  ApertureGrid grid;
  grid.resolution = resolution;
  grid.cell_size = cell;
  grid.nodes.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int iy = 0; iy < resolution; ++iy) {
    const double y0 = -radius + iy * cell;
    for (int ix = 0; ix < resolution; ++ix) {
      const double x0 = -radius + ix * cell;
      Overlap overlap;
      accumulate_overlap(x0, x0 + cell, y0, y0 + cell, radius, kSubdivisionDepth, overlap);
      if (overlap.area <= 0.0) {
        continue;
      }
      ApertureNode node;
      node.x = overlap.moment_x / overlap.area;
      node.y = overlap.moment_y / overlap.area;
      node.weight = overlap.area;
      node.field = aperture_field(laser, node.x, node.y);
      grid.nodes.push_back(node);
    }
  }

  const double discrete = grid.power(laser.impedance);
  const double rel = std::abs(discrete - laser.power) / laser.power;
  if (rel > power_tolerance) {
    throw NumericalError("resolution error: aperture resolution " + std::to_string(resolution) +
                         " carries " + std::to_string(discrete) + " W of " +
                         std::to_string(laser.power) + " W (relative error " +
                         std::to_string(rel) + ")");
  }
  return grid;
}

ApertureGrid single_node_grid(const LaserSource& laser) {
  laser.validate();
  ApertureGrid grid;
  grid.resolution = 1;
  grid.cell_size = 2.0 * laser.aperture_radius;
  grid.nodes.push_back({0.0, 0.0, std::numbers::pi * laser.aperture_radius * laser.aperture_radius,
                        laser.peak_field()});
  return grid;
}

}  // namespace lunarbeam
