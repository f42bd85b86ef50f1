#include "lunarbeam/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lunarbeam/error.hpp"
#include "lunarbeam/summation.hpp"

namespace lunarbeam {

double pairwise_sum_inplace(std::span<double> values) {
  std::size_t n = values.size();
  if (n == 0) return 0.0;
  double* v = values.data();
  // Fold the upper half onto the lower half until one value is left. Each
  // value passes through at most ceil(log2 n) additions.
  while (n > 1) {
    if (n % 2 == 1) {
      v[0] += v[n - 1];
      --n;
    }
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] += v[i + half];
    n = half;
  }
  return v[0];
}

double pairwise_sum(std::span<const double> values) {
  std::vector<double> scratch(values.begin(), values.end());
  return pairwise_sum_inplace(scratch);
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) {
  std::vector<double> re(values.size());
  std::vector<double> im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  return {pairwise_sum_inplace(re), pairwise_sum_inplace(im)};
}

GaussLegendre gauss_legendre(int order, double lo, double hi) {
  if (order < 1) {
    throw DomainError("Gauss-Legendre order must be >= 1, got " + std::to_string(order));
  }
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const int pairs = (order + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (order == 1) {
      t = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    const auto lo_idx = static_cast<std::size_t>(i);
    const auto hi_idx = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo_idx] = mid - half * t;
    rule.nodes[hi_idx] = mid + half * t;
    rule.weights[lo_idx] = half * w;
    rule.weights[hi_idx] = half * w;
  }
  if (order % 2 == 1) {
    rule.nodes[static_cast<std::size_t>(order / 2)] = mid;
  }
  return rule;
}

}  // namespace lunarbeam
