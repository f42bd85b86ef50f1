#include "lunarbeam/receiver.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

#include "lunarbeam/error.hpp"
#include "lunarbeam/parallel.hpp"
#include "lunarbeam/quadrature.hpp"
#include "lunarbeam/summation.hpp"
#include "lunarbeam/sweeps.hpp"

namespace lunarbeam {

double integrate_panel(const Propagator& propagator, int order, int workers) {
  const auto& geom = propagator.geometry();
  const GaussLegendre gx = gauss_legendre(order, -0.5 * geom.panel_length, 0.5 * geom.panel_length);
  const GaussLegendre gy = gauss_legendre(order, -0.5 * geom.panel_width, 0.5 * geom.panel_width);

  // Fold x: keep the non-negative half, doubling the weight of mirrored nodes.
  const auto n = static_cast<std::size_t>(order);
  std::vector<double> xs;
  std::vector<double> wx;
  for (std::size_t i = n / 2; i < n; ++i) {
    const bool centre = (n % 2 == 1) && i == n / 2;
    xs.push_back(gx.nodes[i]);
    wx.push_back(centre ? gx.weights[i] : 2.0 * gx.weights[i]);
  }

  const double eta = propagator.laser().impedance;
  std::vector<double> row_power(n);
  parallel_for(n, workers, [&](std::size_t j) {
    std::vector<std::complex<double>> fields(xs.size());
    propagator.field_row(gy.nodes[j], xs, fields);
    std::vector<double> terms(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      terms[i] = wx[i] * irradiance_at_point(fields[i], eta);
    }
    row_power[j] = gy.weights[j] * pairwise_sum_inplace(terms);
  });
  return pairwise_sum_inplace(row_power);
}

PanelIntegration integrate_panel_adaptive(const Propagator& propagator, int initial_order,
                                          int max_order, double target_rel, int workers) {
  PanelIntegration current{integrate_panel(propagator, initial_order, workers), initial_order};
  std::vector<double> history;
  for (int order = 2 * initial_order; order <= max_order; order *= 2) {
    const double power = integrate_panel(propagator, order, workers);
    const double rel = std::abs(power - current.power) / std::max(std::abs(power), 1e-300);
    history.push_back(rel);
    current = {power, order, rel, current.power};
    if (rel < target_rel || power == 0.0) {
      return current;
    }
  }
  throw ConvergenceError(
      fmt::format("panel quadrature did not converge to {} by order {} (last two iterates {} W)",
                  target_rel, max_order, current.power),
      history);
}

MapExtent shift_window(const Scenario& scenario) {
  return {0.5 * scenario.numerics.shift_window * scenario.geometry.panel_length,
          0.5 * scenario.numerics.shift_window * scenario.geometry.panel_width};
}

PanelResult panel_power(const Scenario& scenario, const NumericsSettings& settings) {
  scenario.validate();
  const auto& numerics = scenario.numerics;
  const auto dust = scenario.active_dust();
  const Propagator propagator(scenario.laser, scenario.geometry, dust,
                              build_aperture_grid(scenario.laser, settings.aperture_resolution));

  PanelResult result;
  result.distance = scenario.geometry.distance;
  result.source_height = scenario.geometry.source_height;
  result.panel_height = scenario.geometry.panel_height;
  if (dust) {
    result.diameter = dust->diameter;
    result.cext = dust->cext;
  }
  result.settings = settings;
  if (settings.panel_order > 0) {
    result.power = integrate_panel(propagator, settings.panel_order, numerics.workers);
  } else {
    const PanelIntegration integration = integrate_panel_adaptive(
        propagator, numerics.initial_panel_order, numerics.max_panel_order, numerics.target_rel,
        numerics.workers);
    result.power = integration.power;
    result.settings.panel_order = integration.order;
    result.converged_rel_change = integration.rel_change;
  }
  result.efficiency = result.power / scenario.laser.power;

  if (numerics.compute_shift) {
    const MapExtent window = shift_window(scenario);
    const double rho_max = std::hypot(window.half_x, window.half_y) + scenario.laser.aperture_radius;
    const int map_aperture = std::min(
        numerics.max_aperture_resolution,
        std::max(settings.aperture_resolution,
                 sampling_rule_resolution(scenario.laser, scenario.geometry.distance, rho_max)));
    const IrradianceMap map =
        map_aperture == settings.aperture_resolution
            ? compute_irradiance_map(propagator, window, numerics.map_resolution, numerics.workers)
            : compute_irradiance_map(
                  Propagator(scenario.laser, scenario.geometry, dust,
                             build_aperture_grid(scenario.laser, map_aperture)),
                  window, numerics.map_resolution, numerics.workers);
    result.shift_y = beam_shift(map, window);
    result.peak_y = peak_location(map);
  }
  return result;
}

PanelResult panel_power(const Scenario& scenario) {
  scenario.validate();
  NumericsSettings settings{scenario.numerics.aperture_resolution, scenario.numerics.panel_order};
  double converged = std::numeric_limits<double>::quiet_NaN();
  if (settings.aperture_resolution <= 0) {
    const ConvergedSettings c = converge(scenario, scenario.numerics.target_rel);
    settings.aperture_resolution = c.settings.aperture_resolution;
    if (settings.panel_order <= 0) settings.panel_order = c.settings.panel_order;
    converged = c.rel_change;
  }
  PanelResult result = panel_power(scenario, settings);
  if (!std::isnan(converged)) {
    result.converged_rel_change = std::isnan(result.converged_rel_change)
                                      ? converged
                                      : std::max(converged, result.converged_rel_change);
  }
  return result;
}

double beam_shift(const IrradianceMap& map, MapExtent window) {
  std::vector<double> weight;
  std::vector<double> moment;
  for (std::size_t iy = 0; iy < map.ys.size(); ++iy) {
    if (std::abs(map.ys[iy]) > window.half_y * (1.0 + 1e-12)) continue;
    for (std::size_t ix = 0; ix < map.xs.size(); ++ix) {
      if (std::abs(map.xs[ix]) > window.half_x * (1.0 + 1e-12)) continue;
      const double value = map.at(ix, iy);
      weight.push_back(value);
      moment.push_back(value * map.ys[iy]);
    }
  }
  const double total = pairwise_sum_inplace(weight);
  if (!(total > 0.0)) {
    throw NumericalError("beam_shift: degenerate map, no irradiance inside the window");
  }
  return pairwise_sum_inplace(moment) / total;
}

double peak_location(const IrradianceMap& map) {
  if (map.values.empty()) throw NumericalError("peak_location: empty map");
  std::size_t best = 0;
  for (std::size_t i = 1; i < map.values.size(); ++i) {
    if (map.values[i] > map.values[best]) best = i;
  }
  const std::size_t nx = map.xs.size();
  const std::size_t iy = best / nx;
  const std::size_t ix = best % nx;
  double y = map.ys[iy];
  if (iy > 0 && iy + 1 < map.ys.size()) {
    const double below = map.at(ix, iy - 1);
    const double centre = map.at(ix, iy);
    const double above = map.at(ix, iy + 1);
    const double curvature = below - 2.0 * centre + above;
    if (curvature < 0.0) {
      const double step = map.ys[iy + 1] - map.ys[iy];
      y += 0.5 * step * (below - above) / curvature;
    }
  }
  return y;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.10g}", value);
}

std::string panel_csv_header() {
  return "D,h0,hp,d_p,C_ext,power_W,efficiency,shift_y_m,peak_y_m,converged_rel_change";
}

std::string to_csv_row(const PanelResult& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", format_number(r.distance),
                     format_number(r.source_height), format_number(r.panel_height),
                     format_number(r.diameter), format_number(r.cext), format_number(r.power),
                     format_number(r.efficiency), format_number(r.shift_y),
                     format_number(r.peak_y), format_number(r.converged_rel_change));
}

}  // namespace lunarbeam
