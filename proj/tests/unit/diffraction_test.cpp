#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "lunarbeam/diffraction.hpp"
#include "lunarbeam/validation.hpp"

using namespace lunarbeam;

TEST(Irradiance, PointValues) {
  EXPECT_EQ(irradiance_at_point({0.0, 0.0}, 377.0), 0.0);
  EXPECT_NEAR(irradiance_at_point({1.4898e4, 0.0}, 377.0), 294363.9310344828, 1e-8);
  LaserSource l;
  EXPECT_NEAR(irradiance_at_point({l.peak_field(), 0.0}, 377.0), 294504.7993865535, 1e-8);
  const std::complex<double> e{1200.0, -3400.0};
  EXPECT_EQ(irradiance_at_point(e, 377.0), irradiance_at_point(std::conj(e), 377.0));
}

TEST(FreeSpace, GaussianReference) {
  LaserSource l;
  EXPECT_NEAR(rayleigh_range(l), 7381.56, 0.01);
  EXPECT_NEAR(beam_radius(l, 50000.0), 0.3423526058273195, 1e-13);
  EXPECT_NEAR(free_space_gaussian_irradiance(l, 0, 0, 0), 254647.9089470325, 1e-8);
  const double w = beam_radius(l, 50000.0);
  const double fraction = std::pow(std::erf(std::sqrt(2.0) * 0.25 / w), 2);
  EXPECT_NEAR(fraction, 0.7324663756277120, 1e-12);
}

TEST(FreeSpace, EngineMatchesGaussianOnAxis) {
  for (double m : {1.0, 2.0, 4.0, 7.0}) EXPECT_LT(on_axis_gaussian_error(m), 0.01) << m;
}

TEST(Propagator, OpaqueMediumKillsField) {
  LaserSource l;
  ScenarioGeometry g;
  DustModel d;
  d.cext = 1e-9;
  const Propagator p(l, g, d, build_aperture_grid(l, 16));
  EXPECT_LT(std::abs(p.field(0.0, 0.0)), 1e-100);
}

TEST(Propagator, IrradianceLinearInPower) {
  LaserSource l;
  ScenarioGeometry g;
  DustModel d;
  d.cext = 2e-14;
  const Propagator a(l, g, d, build_aperture_grid(l, 24));
  l.power *= 2.0;
  const Propagator b(l, g, d, build_aperture_grid(l, 24));
  for (double y : {-0.1, 0.0, 0.07}) {
    EXPECT_NEAR(b.irradiance(0.03, y) / a.irradiance(0.03, y), 2.0, 1e-13);
  }
}

TEST(Propagator, SingleNodeIsCenterRay) {
  LaserSource l;
  ScenarioGeometry g;
  DustModel d;
  d.cext = 1e-14;
  const ApertureGrid grid = single_node_grid(l);
  const Propagator p(l, g, d, grid);
  const Propagator vac(l, g, std::nullopt, grid);
  // Ratio of intensities is the Beer-Lambert factor of the center ray.
  const double ratio = p.irradiance(0, 0) / vac.irradiance(0, 0);
  EXPECT_NEAR(ratio, std::exp(-2.0 * d.cext * particle_density(d, 2.0) * g.distance), 1e-12);
}

TEST(Propagator, FieldRowMatchesPointwise) {
  LaserSource l;
  ScenarioGeometry g;
  g.source_height = 4.0;
  DustModel d;
  d.cext = 3e-14;
  const Propagator p(l, g, d, build_aperture_grid(l, 20));
  const std::vector<double> xs{-0.2, 0.0, 0.13};
  std::vector<std::complex<double>> row(xs.size());
  p.field_row(0.05, xs, row);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(row[i], p.field(xs[i], 0.05));
    const auto ref = field_at_point(p.grid(), {xs[i], 0.05, g.distance}, g, d, l);
    EXPECT_NEAR(std::abs(row[i] - ref), 0.0, 1e-9 * std::abs(ref));
  }
}

TEST(Map, DustFreeMaximumAtCenter) {
  Scenario s;
  const IrradianceMap map = compute_irradiance_map(s, {0.5, 0.5}, 21);
  std::size_t best = 0;
  for (std::size_t i = 1; i < map.values.size(); ++i) {
    if (map.values[i] > map.values[best]) best = i;
  }
  EXPECT_EQ(map.xs[best % map.xs.size()], 0.0);
  EXPECT_EQ(map.ys[best / map.xs.size()], 0.0);
}

TEST(Map, DustShiftsMaximumUpward) {
  Scenario s;
  s.geometry.distance = 50000.0;
  s.dust.enabled = true;
  s.dust.cext_source = CextSource::explicit_value;
  s.dust.model.diameter = 250e-9;
  s.dust.model.cext = 2.7e-13;
  const IrradianceMap map = compute_irradiance_map(s, {0.75, 0.75}, 31);
  std::size_t best = 0;
  for (std::size_t i = 1; i < map.values.size(); ++i) {
    if (map.values[i] > map.values[best]) best = i;
  }
  EXPECT_GT(map.ys[best / map.xs.size()], 0.0);
}

TEST(Map, SymmetricInX) {
  Scenario s;
  s.geometry.source_height = 6.0;
  s.dust.enabled = true;
  s.dust.cext_source = CextSource::explicit_value;
  s.dust.model.cext = 5e-14;
  const IrradianceMap map = compute_irradiance_map(s, {0.4, 0.3}, 17);
  const std::size_t nx = map.xs.size();
  const double peak = map.max_value();
  for (std::size_t iy = 0; iy < map.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      EXPECT_EQ(map.xs[ix], -map.xs[nx - 1 - ix]);
      EXPECT_LE(std::abs(map.at(ix, iy) - map.at(nx - 1 - ix, iy)), 1e-9 * peak);
    }
  }
}

TEST(SamplingRule, ScalesWithDistance) {
  LaserSource l;
  EXPECT_GE(sampling_rule_resolution(l, 1000.0, 0.4), 5 * sampling_rule_resolution(l, 5000.0, 0.4) - 5);
  EXPECT_LE(sampling_rule_resolution(l, 50000.0, 0.4), sampling_rule_resolution(l, 20000.0, 0.4));
}
