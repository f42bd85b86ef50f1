#include "lunarbeam/mie.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lunarbeam/error.hpp"

namespace lunarbeam {

MieResult mie_scattering(double diameter, double wavelength, std::complex<double> index,
                         int extra_terms) {
  if (!(diameter > 0.0) || !(wavelength > 0.0)) {
    throw DomainError("mie: diameter and wavelength must be positive");
  }
  if (!(index.real() > 0.0) || index.imag() < 0.0) {
    throw DomainError("mie: index must have positive real part and non-negative imaginary part");
  }
  if (extra_terms < 0) {
    throw DomainError("mie: extra_terms must be non-negative");
  }

  const double x = std::numbers::pi * diameter / wavelength;
  const std::complex<double> mx = index * x;
  const int nstop = static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0)) + extra_terms;
  const int nmx = std::max(nstop, static_cast<int>(std::ceil(std::abs(mx)))) + 16;

  // Downward recurrence for D_n(mx) = psi_n'(mx) / psi_n(mx).
  std::vector<std::complex<double>> log_deriv(static_cast<std::size_t>(nmx) + 1);
  log_deriv[static_cast<std::size_t>(nmx)] = 0.0;
  for (int n = nmx; n >= 1; --n) {
    const std::complex<double> ratio = static_cast<double>(n) / mx;
    log_deriv[static_cast<std::size_t>(n - 1)] = ratio - 1.0 / (log_deriv[static_cast<std::size_t>(n)] + ratio);
  }

  // Riccati-Bessel functions of the real argument, upward.
  double psi_prev = std::cos(x);
  double psi_curr = std::sin(x);
  double chi_prev = -std::sin(x);
  double chi_curr = std::cos(x);
  std::complex<double> xi_curr(psi_curr, -chi_curr);

  double ext_sum = 0.0;
  double sca_sum = 0.0;
  double last_term = 0.0;
  for (int n = 1; n <= nstop; ++n) {
    const double dn = static_cast<double>(n);
    const double psi = (2.0 * dn - 1.0) * psi_curr / x - psi_prev;
    const double chi = (2.0 * dn - 1.0) * chi_curr / x - chi_prev;
    const std::complex<double> xi(psi, -chi);
    const std::complex<double> dlog = log_deriv[static_cast<std::size_t>(n)];

    const std::complex<double> fa = dlog / index + dn / x;
    const std::complex<double> fb = index * dlog + dn / x;
    const std::complex<double> an = (fa * psi - psi_curr) / (fa * xi - xi_curr);
    const std::complex<double> bn = (fb * psi - psi_curr) / (fb * xi - xi_curr);

    last_term = (2.0 * dn + 1.0) * (an + bn).real();
    ext_sum += last_term;
    sca_sum += (2.0 * dn + 1.0) * (std::norm(an) + std::norm(bn));

    psi_prev = psi_curr;
    psi_curr = psi;
    chi_prev = chi_curr;
    chi_curr = chi;
    xi_curr = xi;
  }

  if (!std::isfinite(ext_sum) || !std::isfinite(sca_sum)) {
    throw NumericalError("mie: series diverged (x = " + std::to_string(x) +
                         ", terms = " + std::to_string(nstop) + ")");
  }
  if (nstop > 3 && std::abs(last_term) > 1e-6 * std::abs(ext_sum) + 1e-14) {
    throw NumericalError("mie: series not converged after " + std::to_string(nstop) +
                         " terms (last/total = " + std::to_string(last_term / ext_sum) + ")");
  }

  MieResult result;
  result.size_parameter = x;
  result.terms = nstop;
  result.q_ext = 2.0 / (x * x) * ext_sum;
  result.q_sca = 2.0 / (x * x) * sca_sum;
  const double geometric = std::numbers::pi * 0.25 * diameter * diameter;
  result.c_ext = result.q_ext * geometric;
  result.c_sca = result.q_sca * geometric;
  return result;
}

double mie_extinction_cross_section(double diameter, double wavelength,
                                    std::complex<double> index) {
  return mie_scattering(diameter, wavelength, index).c_ext;
}

}  // namespace lunarbeam
