#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lunarbeam/dust.hpp"
#include "lunarbeam/error.hpp"
#include "lunarbeam/phase.hpp"
#include "lunarbeam/validation.hpp"

using namespace lunarbeam;

namespace {
constexpr double kLambda = 1064e-9;

DustModel dust_with(double cext, double diameter = 175e-9) {
  DustModel d;
  d.cext = cext;
  d.diameter = diameter;
  return d;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(Phase, VacuumAboveCeiling) {
  ScenarioGeometry g;
  g.source_height = 10.0;
  g.panel_height = 15.0;
  const PathPoint src{0, 0, 0};
  const PathPoint dst{0, 0, g.distance};
  const ComplexPhase p = cumulative_phase(src, dst, g, dust_with(1e-14), kLambda);
  EXPECT_DOUBLE_EQ(p.re, 2.0 * std::numbers::pi * separation(src, dst) / kLambda);
  EXPECT_EQ(p.im, 0.0);
}

TEST(Phase, DustFreeLimit) {
  ScenarioGeometry g;
  const ComplexPhase p =
      medium_phase({0, 0, 0}, {0, 0, g.distance}, g, dust_with(0.0, 1e-15), kLambda);
  EXPECT_EQ(p.im, 0.0);
  EXPECT_LT(p.re, 1e-20);
}

TEST(Phase, HorizontalRayConstantDensity) {
  ScenarioGeometry g;
  const DustModel d = dust_with(7.3e-16);
  const ComplexPhase p = medium_phase({0, 0, 0}, {0, 0, g.distance}, g, d, kLambda);
  EXPECT_NEAR(p.im, d.cext * particle_density(d, 2.0) * g.distance, 1e-15 * p.im);
  const ComplexPhase q =
      medium_phase_quadrature({0, 0, 0}, {0, 0, g.distance}, g, d, kLambda, 1e-12);
  EXPECT_LT(rel(q.im, p.im), 1e-12);
}

TEST(Phase, QuadratureAgreesWithClosedForm) {
  const PhaseComparison cmp = compare_phase_oracle(200, 7);
  EXPECT_LE(cmp.max_rel_re, 1e-9);
  EXPECT_LE(cmp.max_rel_im, 1e-9);
}

TEST(Phase, QuadratureVacuumPath) {
  ScenarioGeometry g;
  g.source_height = 9.0;
  g.panel_height = 12.0;
  const PathPoint src{0, 0, 0};
  const PathPoint dst{0, 0, g.distance};
  const ComplexPhase q = cumulative_phase_quadrature(src, dst, g, dust_with(1e-14), kLambda, 1e-10);
  EXPECT_DOUBLE_EQ(q.re, 2.0 * std::numbers::pi * separation(src, dst) / kLambda);
  EXPECT_EQ(q.im, 0.0);
}

TEST(Phase, PathReversalSymmetry) {
  // Reversed ray: the old panel becomes the source.
  ScenarioGeometry fwd;
  fwd.source_height = 12.0;
  fwd.panel_height = 1.5;
  fwd.distance = 3000.0;
  ScenarioGeometry back = fwd;
  back.source_height = fwd.panel_height;
  back.panel_height = fwd.source_height;
  const DustModel d = dust_with(3e-14);
  const ComplexPhase a = cumulative_phase({0, 0.02, 0}, {0, -0.1, fwd.distance}, fwd, d, kLambda);
  const ComplexPhase b = cumulative_phase({0, -0.1, 0}, {0, 0.02, back.distance}, back, d, kLambda);
  EXPECT_NEAR(a.re, b.re, 1e-12 * a.re);
  EXPECT_NEAR(a.im, b.im, 1e-13 * a.im);
}

TEST(Phase, Additivity) {
  // A 10 km ray from 12 m down to 2 m, split at its midpoint height of 7 m.
  const DustModel d = dust_with(4e-14);
  ScenarioGeometry whole;
  whole.source_height = 12.0;
  whole.panel_height = 2.0;
  whole.distance = 10000.0;
  ScenarioGeometry first = whole;
  first.panel_height = 7.0;
  first.distance = 5000.0;
  ScenarioGeometry second = whole;
  second.source_height = 7.0;
  second.distance = 5000.0;
  const ComplexPhase w = medium_phase({0, 0, 0}, {0, 0, whole.distance}, whole, d, kLambda);
  const ComplexPhase a = medium_phase({0, 0, 0}, {0, 0, first.distance}, first, d, kLambda);
  const ComplexPhase b = medium_phase({0, 0, 0}, {0, 0, second.distance}, second, d, kLambda);
  EXPECT_NEAR(a.im + b.im, w.im, 1e-10 * w.im);
  EXPECT_NEAR(a.re + b.re, w.re, 1e-10 * w.re);
}

TEST(Phase, Monotonicity) {
  ScenarioGeometry g;
  g.source_height = 5.0;
  const PathPoint src{0, 0, 0};
  const PathPoint dst{0, 0, g.distance};
  const ComplexPhase lo = medium_phase(src, dst, g, dust_with(1e-14), kLambda);
  const ComplexPhase hi = medium_phase(src, dst, g, dust_with(2e-14), kLambda);
  EXPECT_GT(hi.im, lo.im);
  EXPECT_EQ(hi.re, lo.re);
  const ComplexPhase big = medium_phase(src, dst, g, dust_with(1e-14, 250e-9), kLambda);
  EXPECT_GT(big.re, lo.re);
  EXPECT_EQ(big.im, lo.im);
}

TEST(Phase, ContinuousAcrossCeiling) {
  const DustModel d = dust_with(5e-14);
  auto im_at = [&](double h0) {
    ScenarioGeometry g;
    g.source_height = h0;
    return medium_phase({0, 0, 0}, {0, 0, g.distance}, g, d, kLambda).im;
  };
  const double below = im_at(8.68 - 1e-9);
  const double above = im_at(8.68 + 1e-9);
  EXPECT_NEAR(below, above, 1e-8 * below);
}

TEST(Phase, TerrainIntersection) {
  ScenarioGeometry g;
  EXPECT_THROW(medium_phase({0, -2.5, 0}, {0, 0, g.distance}, g, dust_with(1e-14), kLambda),
               TerrainError);
}
