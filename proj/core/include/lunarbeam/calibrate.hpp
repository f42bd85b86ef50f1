#pragma once

#include "lunarbeam/scenario.hpp"

namespace lunarbeam {

struct CalibrationResult {
  double cext = 0.0;      ///< fitted extinction cross-section [m^2]
  double power = 0.0;     ///< panel power at the fitted value [W]
  int evaluations = 0;
};

/// Bisection on C_ext (0.1 % relative) so that the panel power of `scenario`
/// equals `reference_power`. The scenario's dust model supplies everything
/// but C_ext. Numerics are settled once on the dust-free geometry and held
/// fixed, which keeps the power strictly monotone in C_ext.
/// CalibrationError reports the bracket when the target is out of reach.
CalibrationResult calibrate_cext(const Scenario& scenario, double reference_power);

/// Fills dust.model.cext according to dust.cext_source: Mie for "mie", a
/// calibration against dust.calibration for "calibrated", unchanged for
/// "explicit". Scenarios without dust are returned unchanged.
Scenario resolve_cext(const Scenario& scenario);

/// C_ext for another diameter, keeping the configured source: Mie directly for
/// "mie", otherwise the resolved value rescaled by the Mie size dependence.
double cext_for_diameter(const Scenario& resolved, double diameter);

}  // namespace lunarbeam
