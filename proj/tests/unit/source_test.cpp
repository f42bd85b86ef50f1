#include <gtest/gtest.h>

#include <cmath>

#include "lunarbeam/error.hpp"
#include "lunarbeam/source.hpp"

using namespace lunarbeam;

TEST(Source, TruncationFactorAndPeakField) {
  LaserSource l;
  EXPECT_NEAR(l.zeta(), 1.075415102530026, 1e-14);
  EXPECT_NEAR(l.peak_field(), 14901.56430504735, 1e-9);
  EXPECT_NEAR(aperture_field(l, 0.0, 0.0), l.peak_field(), 1e-12);
}

TEST(Source, ZeroOutsideAperture) {
  LaserSource l;
  EXPECT_EQ(aperture_field(l, 0.05, 0.0), 0.0);
  EXPECT_EQ(aperture_field(l, 0.04, 0.04), 0.0);
}

TEST(Source, GaussianProfileAtWaist) {
  LaserSource l;
  l.aperture_radius = 0.06;
  EXPECT_NEAR(aperture_field(l, l.waist, 0.0) / aperture_field(l, 0.0, 0.0), std::exp(-1.0), 1e-15);
}

TEST(Source, DiscretePowerWithinTolerance) {
  LaserSource l;
  const ApertureGrid grid = build_aperture_grid(l, 32);
  EXPECT_GE(grid.power(l.impedance), 995.0);
  EXPECT_LE(grid.power(l.impedance), 1005.0);
}

TEST(Source, RefinementReducesPowerError) {
  LaserSource l;
  double previous = INFINITY;
  for (int res : {8, 16, 32, 64, 128}) {
    const double err = std::abs(build_aperture_grid(l, res, 1.0).power(l.impedance) - l.power);
    EXPECT_LT(err, previous) << res;
    previous = err;
  }
}

TEST(Source, GridSymmetricInX) {
  LaserSource l;
  const ApertureGrid grid = build_aperture_grid(l, 24);
  double moment = 0.0;
  for (const auto& n : grid.nodes) moment += n.x * n.weight * n.field;
  EXPECT_NEAR(moment, 0.0, 1e-12);
}

TEST(Source, SingleNodeGrid) {
  LaserSource l;
  const ApertureGrid g = single_node_grid(l);
  ASSERT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(g.nodes[0].x, 0.0);
  EXPECT_EQ(g.nodes[0].y, 0.0);
}

TEST(Source, Errors) {
  LaserSource l;
  EXPECT_THROW(build_aperture_grid(l, 4), DomainError);
  EXPECT_THROW(build_aperture_grid(l, 8, 1e-12), NumericalError);
  l.waist = -1.0;
  EXPECT_THROW(l.validate(), ValidationError);
}
