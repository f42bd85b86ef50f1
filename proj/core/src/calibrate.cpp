#include "lunarbeam/calibrate.hpp"

#include <fmt/format.h>

#include <cmath>

#include "lunarbeam/error.hpp"
#include "lunarbeam/mie.hpp"
#include "lunarbeam/phase.hpp"
#include "lunarbeam/receiver.hpp"
#include "lunarbeam/sweeps.hpp"

namespace lunarbeam {

namespace {

constexpr double kRelTolerance = 1e-3;
constexpr double kMaxCext = 1e-8;  // m^2, far beyond any grain considered here

}  // namespace

CalibrationResult calibrate_cext(const Scenario& scenario, double reference_power) {
  if (!scenario.dust.enabled) {
    throw ValidationError("calibrate_cext: dust must be enabled");
  }
  if (!(reference_power > 0.0 && reference_power < scenario.laser.power)) {
    throw DomainError(fmt::format("calibrate_cext: reference power {} W outside (0, P0)",
                                  reference_power));
  }

  Scenario clear = scenario;
  clear.dust.enabled = false;
  clear.numerics.compute_shift = false;
  const ConvergedSettings converged = converge(clear, clear.numerics.target_rel);
  const NumericsSettings settings = converged.settings;

  Scenario trial = scenario;
  trial.numerics.compute_shift = false;
  // The cext source is irrelevant while fitting; the value is set explicitly.
  trial.dust.cext_source = CextSource::explicit_value;
  CalibrationResult result;
  auto power_at = [&](double cext) {
    trial.dust.model.cext = cext;
    ++result.evaluations;
    return panel_power(trial, settings).power;
  };

  const double clear_power = power_at(0.0);
  if (reference_power >= clear_power * (1.0 - kRelTolerance)) {
    if (std::abs(reference_power - clear_power) <= kRelTolerance * reference_power) {
      result.cext = 0.0;
      result.power = clear_power;
      return result;
    }
    throw CalibrationError(
        fmt::format("calibrate_cext: reference {} W exceeds the dust-free power {} W", reference_power,
                    clear_power),
        0.0, 0.0);
  }

  // First guess from the center ray: the beam loses roughly exp(-2 C int N).
  Scenario unit = scenario;
  unit.dust.model.cext = 1.0;
  const double column = medium_phase({0.0, 0.0, 0.0}, {0.0, 0.0, scenario.geometry.distance},
                                     scenario.geometry, unit.dust.model, scenario.laser.wavelength)
                            .im;
  double hi = column > 0.0 ? std::log(clear_power / reference_power) / (2.0 * column) : 1e-14;
  double lo = 0.0;
  double hi_power = power_at(hi);
  while (hi_power > reference_power) {
    lo = hi;
    hi *= 4.0;
    if (hi > kMaxCext) {
      throw CalibrationError(
          fmt::format("calibrate_cext: reference {} W not reached with C_ext up to {} m^2",
                      reference_power, kMaxCext),
          lo, hi);
    }
    hi_power = power_at(hi);
  }

  while (hi - lo > kRelTolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    if (power_at(mid) > reference_power) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.cext = 0.5 * (lo + hi);
  result.power = power_at(result.cext);
  return result;
}

Scenario resolve_cext(const Scenario& scenario) {
  Scenario resolved = scenario;
  if (!scenario.dust.enabled) return resolved;
  auto& model = resolved.dust.model;
  switch (scenario.dust.cext_source) {
    case CextSource::mie:
      model.cext = mie_extinction_cross_section(model.diameter, scenario.laser.wavelength,
                                                model.particle_index);
      break;
    case CextSource::calibrated: {
      Scenario reference = scenario;
      reference.geometry.distance = scenario.dust.calibration.distance;
      reference.geometry.source_height = scenario.dust.calibration.source_height;
      reference.validate();
      model.cext = calibrate_cext(reference, scenario.dust.calibration.efficiency *
                                                 scenario.laser.power)
                       .cext;
      break;
    }
    case CextSource::explicit_value:
      break;
    case CextSource::unset:
      throw ValidationError(
          "dust.cext_source must be set when dust is enabled: one of \"mie\", \"calibrated\", "
          "\"explicit\"");
  }
  return resolved;
}

double cext_for_diameter(const Scenario& resolved, double diameter) {
  const auto& model = resolved.dust.model;
  const double lambda = resolved.laser.wavelength;
  const double target = mie_extinction_cross_section(diameter, lambda, model.particle_index);
  if (resolved.dust.cext_source == CextSource::mie) return target;
  if (diameter == model.diameter) return model.cext;
  const double reference = mie_extinction_cross_section(model.diameter, lambda, model.particle_index);
  return model.cext * target / reference;
}

}  // namespace lunarbeam
