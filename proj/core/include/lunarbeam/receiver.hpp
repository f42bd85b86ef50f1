#pragma once

#include <limits>
#include <string>

#include "lunarbeam/diffraction.hpp"
#include "lunarbeam/scenario.hpp"

namespace lunarbeam {

/// Discretisation actually used for one panel evaluation.
struct NumericsSettings {
  int aperture_resolution = 0;  ///< aperture samples per axis
  int panel_order = 0;          ///< Gauss-Legendre nodes per panel axis; 0 = adaptive
};

struct PanelResult {
  double distance = 0.0;
  double source_height = 0.0;
  double panel_height = 0.0;
  double diameter = 0.0;  ///< 0 when dust is disabled
  double cext = 0.0;      ///< 0 when dust is disabled
  double power = 0.0;     ///< [W]
  double efficiency = 0.0;
  double shift_y = std::numeric_limits<double>::quiet_NaN();  ///< irradiance centroid [m]
  double peak_y = std::numeric_limits<double>::quiet_NaN();   ///< irradiance maximum [m]
  double converged_rel_change = std::numeric_limits<double>::quiet_NaN();
  NumericsSettings settings;
};

struct PanelIntegration {
  double power = 0.0;
  int order = 0;
  double rel_change = std::numeric_limits<double>::quiet_NaN();
  double coarse_power = 0.0;  ///< estimate at order / 2
};

/// Tensor Gauss-Legendre rule of the given order over the panel. The x axis is
/// folded onto x >= 0 (the medium only varies with height).
double integrate_panel(const Propagator& propagator, int order, int workers);

/// Doubles the order from `initial_order` until two successive estimates
/// differ by less than `target_rel`; returns the finer one.
PanelIntegration integrate_panel_adaptive(const Propagator& propagator, int initial_order,
                                          int max_order, double target_rel, int workers);

/// Received power with aperture resolution picked by the convergence
/// controller (unless numerics.aperture_resolution fixes it) and adaptive
/// panel order (unless numerics.panel_order fixes it).
PanelResult panel_power(const Scenario& scenario);

/// Received power with a given aperture resolution; panel order adaptive when
/// settings.panel_order is 0.
PanelResult panel_power(const Scenario& scenario, const NumericsSettings& settings);

/// y of the irradiance-weighted centroid over |x| <= half_x, |y| <= half_y.
/// Throws NumericalError when the window holds no power.
double beam_shift(const IrradianceMap& map, MapExtent window);

/// y of the irradiance maximum, refined by a parabola through the
/// neighbouring samples of the peak column.
double peak_location(const IrradianceMap& map);

/// Beam-shift window for a scenario: shift_window times the panel size.
MapExtent shift_window(const Scenario& scenario);

std::string panel_csv_header();
std::string to_csv_row(const PanelResult& result);

/// Formats a number for CSV output; identical inputs give identical bytes.
std::string format_number(double value);

}  // namespace lunarbeam
