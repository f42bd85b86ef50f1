#include "lunarbeam/phase.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

#include "lunarbeam/error.hpp"

namespace lunarbeam {

namespace {

void require_clearance(const PathPoint& src, const PathPoint& dst, const ScenarioGeometry& geom) {
  const double clearance = min_path_height(src, dst, geom);
  if (!(clearance > 0.0)) {
    throw TerrainError("ray intersects terrain (minimum height " + std::to_string(clearance) +
                       " m)");
  }
}

}  // namespace

ComplexPhase medium_phase_rate(const DustModel& dust, double h_src, double h_dst,
                               double wavelength) {
  const double mean_n = mean_density(dust, h_src, h_dst);
  const double k = 2.0 * std::numbers::pi / wavelength;
  return {k * (dust.particle_index - 1.0) * dust.particle_volume() * mean_n, dust.cext * mean_n};
}

ComplexPhase medium_phase(const PathPoint& src, const PathPoint& dst,
                          const ScenarioGeometry& geom, const DustModel& dust, double wavelength) {
  require_clearance(src, dst, geom);
  const double length = separation(src, dst);
  const ComplexPhase rate = medium_phase_rate(dust, source_ground_height(geom, src.y),
                                              panel_ground_height(geom, dst.y), wavelength);
  return {rate.re * length, rate.im * length};
}

ComplexPhase cumulative_phase(const PathPoint& src, const PathPoint& dst,
                              const ScenarioGeometry& geom, const DustModel& dust,
                              double wavelength) {
  const ComplexPhase medium = medium_phase(src, dst, geom, dust, wavelength);
  const ComplexPhase vacuum = cumulative_phase(src, dst, wavelength);
  return {vacuum.re + medium.re, medium.im};
}

ComplexPhase cumulative_phase(const PathPoint& src, const PathPoint& dst, double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  return {2.0 * std::numbers::pi * separation(src, dst) / wavelength, 0.0};
}

ComplexPhase medium_phase_quadrature(const PathPoint& src, const PathPoint& dst,
                                     const ScenarioGeometry& geom, const DustModel& dust,
                                     double wavelength, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
  require_clearance(src, dst, geom);
  const double length = separation(src, dst);
  if (length == 0.0) {
    return {};
  }
  using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr unsigned max_depth = 40;
  const double k = 2.0 * std::numbers::pi / wavelength;

  // The index has kinks where the ray crosses the ceiling and the floor;
  // integrate each smooth piece separately.
  const double h_src = source_ground_height(geom, src.y);
  const double h_dst = panel_ground_height(geom, dst.y);
  std::vector<double> cuts{0.0, length};
  for (const double level : {dust.ceiling, dust.floor}) {
    if ((h_src - level) * (h_dst - level) < 0.0) {
      cuts.push_back(length * (level - h_src) / (h_dst - h_src));
    }
  }
  std::sort(cuts.begin(), cuts.end());

  auto integrate = [&](auto&& integrand, const char* part) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (!(cuts[i + 1] > cuts[i])) continue;
      double error = 0.0;
      double l1 = 0.0;
      const double value = Integrator::integrate(integrand, cuts[i], cuts[i + 1], max_depth,
                                                 tolerance, &error, &l1);
      if (!std::isfinite(value) || error > tolerance * l1 + 1e-300) {
        throw NumericalError(std::string("phase quadrature did not converge for ") + part +
                             " part (error estimate " + std::to_string(error) + ")");
      }
      total += value;
    }
    return total;
  };

  const double re = integrate(
      [&](double s) { return k * real_index_excess(dust, path_height(src, dst, geom, s)); },
      "real");
  const double im = integrate(
      [&](double s) { return k * imag_index(dust, path_height(src, dst, geom, s), wavelength); },
      "imaginary");
  return {re, im};
}

ComplexPhase cumulative_phase_quadrature(const PathPoint& src, const PathPoint& dst,
                                         const ScenarioGeometry& geom, const DustModel& dust,
                                         double wavelength, double tolerance) {
  const ComplexPhase medium =
      medium_phase_quadrature(src, dst, geom, dust, wavelength, tolerance);
  return {cumulative_phase(src, dst, wavelength).re + medium.re, medium.im};
}

}  // namespace lunarbeam
