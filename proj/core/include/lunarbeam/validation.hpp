#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lunarbeam {

struct OracleCheck {
  std::string name;
  double value = 0.0;  ///< measured error or ratio
  double limit = 0.0;
  bool passed = false;
};

/// Closed-form phase against adaptive quadrature over `rays` random rays
/// (heights 0.01-20 m, lengths 10 m - 50 km). Returns the worst relative
/// error of the real excess and of the imaginary part.
struct PhaseComparison {
  double max_rel_re = 0.0;
  double max_rel_im = 0.0;
  int rays = 0;
};
PhaseComparison compare_phase_oracle(int rays, std::uint64_t seed);

/// Relative deviation of the on-axis irradiance of the element-sum engine
/// (r_a = 3 w0, no dust) from the untruncated Gaussian at z = multiple * z_R.
double on_axis_gaussian_error(double multiple);

/// The built-in oracle suite run by `lunarbeam validate`.
std::vector<OracleCheck> run_oracle_suite(int rays = 1000, std::uint64_t seed = 20240611);

}  // namespace lunarbeam
