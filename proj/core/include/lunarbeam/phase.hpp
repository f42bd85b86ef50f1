#pragma once

#include "lunarbeam/dust.hpp"
#include "lunarbeam/geometry.hpp"

namespace lunarbeam {

/// Accumulated complex phase along a straight ray.
/// `re` is the optical phase in radians, `im` the field-extinction exponent:
/// the field carried by the ray is scaled by exp(-im).
struct ComplexPhase {
  double re = 0.0;
  double im = 0.0;
};

/// The part of the phase contributed by the medium only, i.e. the full
/// phase minus the vacuum term 2 pi R / lambda. Evaluated in closed form:
/// the ray height is linear in arclength, so the path integral of N reduces
/// to R times the mean of N over the height interval the ray spans.
ComplexPhase medium_phase(const PathPoint& src, const PathPoint& dst,
                          const ScenarioGeometry& geom, const DustModel& dust, double wavelength);

/// Full phase 2 pi R / lambda + medium contribution. Throws TerrainError if
/// the ray reaches the ground.
ComplexPhase cumulative_phase(const PathPoint& src, const PathPoint& dst,
                              const ScenarioGeometry& geom, const DustModel& dust,
                              double wavelength);

/// Vacuum phase, no medium.
ComplexPhase cumulative_phase(const PathPoint& src, const PathPoint& dst, double wavelength);

/// Adaptive Gauss-Kronrod evaluation of the same path integral, sampling the
/// index pointwise along the ray. Used as an oracle for the closed form.
ComplexPhase medium_phase_quadrature(const PathPoint& src, const PathPoint& dst,
                                     const ScenarioGeometry& geom, const DustModel& dust,
                                     double wavelength, double tolerance);

ComplexPhase cumulative_phase_quadrature(const PathPoint& src, const PathPoint& dst,
                                         const ScenarioGeometry& geom, const DustModel& dust,
                                         double wavelength, double tolerance);

/// Per-meter medium phase rate for a ray spanning ground heights [h_src, h_dst]:
/// multiply by the ray length to obtain medium_phase. Shared with the
/// diffraction kernel, which needs it per (source node, destination row).
ComplexPhase medium_phase_rate(const DustModel& dust, double h_src, double h_dst,
                               double wavelength);

}  // namespace lunarbeam
