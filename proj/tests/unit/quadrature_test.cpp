#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "lunarbeam/error.hpp"
#include "lunarbeam/parallel.hpp"
#include "lunarbeam/quadrature.hpp"
#include "lunarbeam/summation.hpp"

using namespace lunarbeam;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const GaussLegendre rule = gauss_legendre(6, -1.0, 3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::pow(rule.nodes[i], 11);
  }
  // integral of x^11 over [-1, 3] = (3^12 - 1) / 12
  EXPECT_NEAR(sum, (std::pow(3.0, 12) - 1.0) / 12.0, 1e-8);
}

TEST(GaussLegendre, SymmetricNodes) {
  for (int order : {1, 2, 7, 64}) {
    const GaussLegendre rule = gauss_legendre(order, -0.25, 0.25);
    for (int i = 0; i < order; ++i) {
      EXPECT_EQ(rule.nodes[i], -rule.nodes[order - 1 - i]);
      EXPECT_EQ(rule.weights[i], rule.weights[order - 1 - i]);
    }
    EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 0.5, 1e-14);
  }
  EXPECT_THROW(gauss_legendre(0, 0.0, 1.0), DomainError);
}

TEST(PairwiseSum, MatchesExactSum) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(PairwiseSum, SmallErrorOnIllConditionedInput) {
  std::vector<double> v(1 << 20, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 0.1 * (1 << 20), 1e-9);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(257, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(50, 3, [](std::size_t i) {
      if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}
