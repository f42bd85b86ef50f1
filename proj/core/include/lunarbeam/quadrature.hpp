#pragma once

#include <vector>

namespace lunarbeam {

/// Gauss-Legendre rule mapped onto [lo, hi]; nodes ascending and mirror
/// symmetric about the interval midpoint.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order, double lo, double hi);

}  // namespace lunarbeam
