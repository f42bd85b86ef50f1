#include "lunarbeam/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "lunarbeam/error.hpp"
#include "lunarbeam/parallel.hpp"
#include "lunarbeam/phase.hpp"

namespace lunarbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Propagator::Propagator(const LaserSource& laser, const ScenarioGeometry& geom,
                       std::optional<DustModel> dust, ApertureGrid grid)
    : laser_(laser), geom_(geom), dust_(std::move(dust)), grid_(std::move(grid)) {
  laser_.validate();
  geom_.validate();
  if (dust_) dust_->validate();
  if (grid_.nodes.empty()) {
    throw DomainError("aperture grid has no nodes");
  }

  const std::size_t n = grid_.nodes.size();
  node_x_.resize(n);
  node_y_.resize(n);
  node_amp_.resize(n);
  height_index_.resize(n);
  std::map<double, std::size_t> heights;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = grid_.nodes[i];
    node_x_[i] = node.x;
    node_y_[i] = node.y;
    node_amp_[i] = node.weight * node.field / laser_.wavelength;
    const double h = source_ground_height(geom_, node.y);
    if (!(h > 0.0)) {
      throw TerrainError("aperture node at y0 = " + std::to_string(node.y) +
                         " m lies below ground");
    }
    auto [it, inserted] = heights.try_emplace(node.y, 0);
    if (inserted) {
      it->second = source_heights_.size();
      source_heights_.push_back(h);
    }
    height_index_[i] = it->second;
  }

  // exp(-j k D) with k D reduced modulo 2 pi exactly: fmod is exact in IEEE arithmetic.
  const double carrier_phase = kTwoPi * (std::fmod(geom_.distance, laser_.wavelength) / laser_.wavelength);
  carrier_ = std::polar(1.0, -carrier_phase);
}

void Propagator::field_row(double y, std::span<const double> xs,
                           std::span<std::complex<double>> out) const {
  if (out.size() != xs.size()) {
    throw DomainError("field_row: output span size mismatch");
  }
  const double d = geom_.distance;
  const double k = laser_.wavenumber();

  detail::KernelRow row;
  row.node_x = node_x_;
  row.node_y = node_y_;
  row.wavenumber_vacuum = k;
  row.distance = d;

  std::vector<double> amp;
  std::vector<double> wavenumber;
  std::vector<double> phase0;
  std::vector<double> extinction;
  if (dust_) {
    const double h_dst = panel_ground_height(geom_, y);
    if (!(h_dst > 0.0)) {
      throw TerrainError("destination row y = " + std::to_string(y) + " m lies below ground");
    }
    std::vector<ComplexPhase> rates(source_heights_.size());
    for (std::size_t u = 0; u < rates.size(); ++u) {
      rates[u] = medium_phase_rate(*dust_, source_heights_[u], h_dst, laser_.wavelength);
    }
    const std::size_t n = node_x_.size();
    amp.resize(n);
    wavenumber.resize(n);
    phase0.resize(n);
    extinction.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const ComplexPhase& rate = rates[height_index_[i]];
      amp[i] = node_amp_[i] * std::exp(-rate.im * d);
      wavenumber[i] = k + rate.re;
      phase0[i] = std::fmod(rate.re * d, kTwoPi);
      extinction[i] = rate.im;
    }
    row.amp = amp;
    row.wavenumber = wavenumber;
    row.phase0 = phase0;
    row.extinction = extinction;
    row.dusty = true;
  } else {
    row.amp = node_amp_;
  }

  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::complex<double> sum = detail::sum_node_contributions(row, xs[i], y);
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
      throw NumericalError("non-finite field at (" + std::to_string(xs[i]) + ", " +
                           std::to_string(y) + ")");
    }
    out[i] = sum * carrier_;
  }
}

std::complex<double> Propagator::field(double x, double y) const {
  std::complex<double> out;
  field_row(y, std::span<const double>(&x, 1), std::span<std::complex<double>>(&out, 1));
  return out;
}

double Propagator::irradiance(double x, double y) const {
  return irradiance_at_point(field(x, y), laser_.impedance);
}

std::complex<double> field_at_point(const ApertureGrid& grid, const PathPoint& dst,
                                    const ScenarioGeometry& geom,
                                    const std::optional<DustModel>& dust, const LaserSource& laser) {
  if (dst.z != geom.distance) {
    throw DomainError("field_at_point: destination must lie in the plane z = D");
  }
  const Propagator propagator(laser, geom, dust, grid);
  return propagator.field(dst.x, dst.y);
}

double irradiance_at_point(std::complex<double> field, double impedance) {
  return std::norm(field) / (2.0 * impedance);
}

double rayleigh_range(const LaserSource& laser) {
  return std::numbers::pi * laser.waist * laser.waist / laser.wavelength;
}

double beam_radius(const LaserSource& laser, double z) {
  const double ratio = z / rayleigh_range(laser);
  return laser.waist * std::sqrt(1.0 + ratio * ratio);
}

double free_space_gaussian_irradiance(const LaserSource& laser, double x, double y, double z) {
  if (!(z >= 0.0)) throw DomainError("free_space_gaussian_irradiance: z must be >= 0");
  const double w = beam_radius(laser, z);
  return 2.0 * laser.power / (std::numbers::pi * w * w) * std::exp(-2.0 * (x * x + y * y) / (w * w));
}

int sampling_rule_resolution(const LaserSource& laser, double distance, double rho_max) {
  if (!(distance > 0.0) || !(rho_max > 0.0)) {
    throw DomainError("sampling rule needs positive distance and offset");
  }
  const double spacing = (std::numbers::pi / 4.0) * distance / (laser.wavenumber() * rho_max);
  return static_cast<int>(std::ceil(2.0 * laser.aperture_radius / spacing));
}

double IrradianceMap::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

IrradianceMap compute_irradiance_map(const Propagator& propagator, MapExtent extent,
                                     int resolution, int workers) {
  if (resolution < 2) throw DomainError("map resolution must be >= 2");
  if (!(extent.half_x > 0.0) || !(extent.half_y > 0.0)) {
    throw DomainError("map extent must be positive");
  }
  IrradianceMap map;
  map.extent = extent;
  const auto n = static_cast<std::size_t>(resolution);
  map.xs.resize(n);
  map.ys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Symmetric about zero by construction: x_i = -x_{n-1-i} exactly.
    const double t = (2.0 * static_cast<double>(i) - static_cast<double>(n - 1)) / static_cast<double>(n - 1);
    map.xs[i] = extent.half_x * t;
    map.ys[i] = extent.half_y * t;
  }
  map.values.resize(n * n);
  const double eta = propagator.laser().impedance;
  parallel_for(n, workers, [&](std::size_t iy) {
    std::vector<std::complex<double>> fields(n);
    propagator.field_row(map.ys[iy], map.xs, fields);
    for (std::size_t ix = 0; ix < n; ++ix) {
      map.values[iy * n + ix] = irradiance_at_point(fields[ix], eta);
    }
  });

  map.meta.aperture_resolution = propagator.grid().resolution;
  map.meta.resolution = resolution;
  map.meta.distance = propagator.geometry().distance;
  if (propagator.dust()) {
    map.meta.dust_enabled = true;
    map.meta.diameter = propagator.dust()->diameter;
    map.meta.cext = propagator.dust()->cext;
  }
  return map;
}

IrradianceMap compute_irradiance_map(const Scenario& scenario, MapExtent extent, int resolution) {
  scenario.validate();
  int aperture = scenario.numerics.aperture_resolution;
  if (aperture <= 0) {
    const double rho_max = std::hypot(extent.half_x, extent.half_y) + scenario.laser.aperture_radius;
    aperture = std::max(scenario.numerics.min_aperture_resolution,
                        sampling_rule_resolution(scenario.laser, scenario.geometry.distance, rho_max));
    aperture = std::min(aperture, scenario.numerics.max_aperture_resolution);
  }
  const Propagator propagator(scenario.laser, scenario.geometry, scenario.active_dust(),
                              build_aperture_grid(scenario.laser, aperture));
  return compute_irradiance_map(propagator, extent, resolution, scenario.numerics.workers);
}

}  // namespace lunarbeam
