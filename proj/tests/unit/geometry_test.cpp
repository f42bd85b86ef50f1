#include <gtest/gtest.h>

#include <cmath>

#include "lunarbeam/error.hpp"
#include "lunarbeam/geometry.hpp"

using namespace lunarbeam;

TEST(Geometry, TiltZeroForEqualHeights) { EXPECT_EQ(tilt_angle(2.0, 2.0, 5000.0), 0.0); }

TEST(Geometry, TiltValues) {
  EXPECT_NEAR(tilt_angle(12.0, 2.0, 5000.0), -1.99999733333973e-3, 1e-15);
  EXPECT_NEAR(tilt_angle(10.0, 2.0, 50000.0), -1.59999998634667e-4, 1e-16);
  ScenarioGeometry g;
  g.source_height = 12.0;
  EXPECT_DOUBLE_EQ(g.tilt(), tilt_angle(12.0, 2.0, 5000.0));
}

TEST(Geometry, Separation) {
  EXPECT_EQ(separation({0, 0, 0}, {0, 0, 5000}), 5000.0);
  EXPECT_NEAR(separation({0.05, 0, 0}, {0, 0, 5000}), 5000.00000025, 1e-9);
  EXPECT_EQ(separation({0, 0, 0}, {0, 0, 0}), 0.0);
}

TEST(Geometry, SeparationAtLeastAxialGap) {
  for (double x : {0.0, 0.1, -3.0}) {
    for (double y : {0.0, 0.2, -0.7}) {
      EXPECT_GE(separation({x, y, 0}, {0, 0, 1234.5}), 1234.5);
    }
  }
}

TEST(Geometry, PathHeightEndpoints) {
  ScenarioGeometry g;
  g.source_height = 12.0;
  const PathPoint src{0, 0, 0};
  const PathPoint dst{0, 0, g.distance};
  EXPECT_DOUBLE_EQ(path_height(src, dst, g, 0.0), 12.0);
  EXPECT_NEAR(path_height(src, dst, g, separation(src, dst)), 2.0, 1e-12);
}

TEST(Geometry, PathHeightMidpoint) {
  ScenarioGeometry g;
  const PathPoint src{0, 0.05, 0};
  const PathPoint dst{0, 0, g.distance};
  EXPECT_NEAR(path_height(src, dst, g, 0.5 * separation(src, dst)), 2.025, 1e-12);
}

TEST(Geometry, PathHeightRejectsOutOfRange) {
  ScenarioGeometry g;
  const PathPoint src{0, 0, 0};
  const PathPoint dst{0, 0, g.distance};
  EXPECT_THROW(path_height(src, dst, g, -1.0), DomainError);
  EXPECT_THROW(path_height(src, dst, g, g.distance + 1.0), DomainError);
  EXPECT_THROW(path_height(src, src, g, 1.0), DomainError);
}

TEST(Geometry, MinPathHeightIsEndpointMinimum) {
  ScenarioGeometry g;
  EXPECT_NEAR(min_path_height({0, 0.05, 0}, {0, 0, g.distance}, g), 2.0, 1e-12);
  g.source_height = 12.0;
  EXPECT_NEAR(min_path_height({0, 0, 0}, {0, 0, g.distance}, g), 2.0, 1e-12);
  g.source_height = 2.0;
  EXPECT_NEAR(min_path_height({0, 0, 0}, {0, 0, g.distance}, g), 2.0, 1e-12);
}

TEST(Geometry, ValidateRejectsBadDimensions) {
  ScenarioGeometry g;
  g.distance = 0.0;
  EXPECT_THROW(g.validate(), InvalidGeometry);
  g = {};
  g.panel_length = -0.1;
  EXPECT_THROW(g.validate(), InvalidGeometry);
  g = {};
  EXPECT_NO_THROW(g.validate());
}
