#include "lunarbeam/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lunarbeam/diffraction.hpp"
#include "lunarbeam/dust.hpp"
#include "lunarbeam/mie.hpp"
#include "lunarbeam/phase.hpp"
#include "lunarbeam/source.hpp"

namespace lunarbeam {

namespace {

double rel_error(double value, double reference) {
  if (reference == 0.0) return std::abs(value);
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace

PhaseComparison compare_phase_oracle(int rays, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> height(0.01, 20.0);
  std::uniform_real_distribution<double> log_length(std::log(10.0), std::log(5e4));
  std::uniform_real_distribution<double> log_cext(std::log(1e-16), std::log(1e-12));
  std::uniform_real_distribution<double> diameter(20e-9, 400e-9);

  PhaseComparison out;
  out.rays = rays;
  for (int i = 0; i < rays; ++i) {
    ScenarioGeometry geom;
    geom.source_height = height(rng);
    geom.panel_height = height(rng);
    geom.distance = std::exp(log_length(rng));
    DustModel dust;
    dust.diameter = diameter(rng);
    dust.cext = std::exp(log_cext(rng));
    const PathPoint src{0.0, 0.0, 0.0};
    const PathPoint dst{0.0, 0.0, geom.distance};
    const ComplexPhase exact = medium_phase(src, dst, geom, dust, 1064e-9);
    const ComplexPhase quad = medium_phase_quadrature(src, dst, geom, dust, 1064e-9, 1e-12);
    out.max_rel_re = std::max(out.max_rel_re, rel_error(exact.re, quad.re));
    out.max_rel_im = std::max(out.max_rel_im, rel_error(exact.im, quad.im));
  }
  return out;
}

double on_axis_gaussian_error(double multiple) {
  LaserSource laser;
  laser.aperture_radius = 3.0 * laser.waist;
  const double z = multiple * rayleigh_range(laser);
  ScenarioGeometry geom;
  geom.distance = z;
  const int resolution =
      std::max(64, sampling_rule_resolution(laser, z, laser.aperture_radius));
  const ApertureGrid grid = build_aperture_grid(laser, resolution);
  const auto field = field_at_point(grid, {0.0, 0.0, z}, geom, std::nullopt, laser);
  const double engine = irradiance_at_point(field, laser.impedance);
  return rel_error(engine, free_space_gaussian_irradiance(laser, 0.0, 0.0, z));
}

std::vector<OracleCheck> run_oracle_suite(int rays, std::uint64_t seed) {
  std::vector<OracleCheck> checks;
  auto add = [&](std::string name, double value, double limit) {
    checks.push_back({std::move(name), value, limit, value <= limit});
  };

  const PhaseComparison phase = compare_phase_oracle(rays, seed);
  add("phase_real_closed_form_vs_quadrature", phase.max_rel_re, 1e-9);
  add("phase_imag_closed_form_vs_quadrature", phase.max_rel_im, 1e-9);

  for (const double multiple : {1.0, 2.0, 4.0, 7.0}) {
    add("on_axis_gaussian_z" + std::to_string(static_cast<int>(multiple)) + "zR",
        on_axis_gaussian_error(multiple), 1e-2);
  }

  const double wavelength = 1064e-9;
  const std::complex<double> index{1.733, 0.0};
  for (const double d : {50e-9, 175e-9, 0.3 * wavelength / std::numbers::pi}) {
    add("mie_vs_rayleigh_d" + std::to_string(static_cast<int>(std::round(d * 1e9))) + "nm",
        rel_error(mie_extinction_cross_section(d, wavelength, index),
                  rayleigh_cross_section(d, wavelength, index.real())),
        0.10);
  }
  for (const double d : {175e-9, 250e-9, 2e-6}) {
    const double base = mie_scattering(d, wavelength, index).c_ext;
    const double extended = mie_scattering(d, wavelength, index, 20).c_ext;
    add("mie_series_extension_d" + std::to_string(static_cast<int>(std::round(d * 1e9))) + "nm",
        rel_error(base, extended), 1e-8);
  }

  ScenarioGeometry flat;
  flat.distance = 5000.0;
  DustModel dust;
  dust.cext = 1e-14;
  const ComplexPhase horizontal = medium_phase({0, 0, 0}, {0, 0, flat.distance}, flat, dust, wavelength);
  add("horizontal_ray_constant_density",
      rel_error(horizontal.im, dust.cext * particle_density(dust, 2.0) * flat.distance), 1e-12);
  return checks;
}

}  // namespace lunarbeam
