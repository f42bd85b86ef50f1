#pragma once

#include <complex>

namespace lunarbeam {

/// Efficiencies and cross-sections of a homogeneous sphere.
struct MieResult {
  double size_parameter = 0.0;  ///< x = pi d / lambda
  double q_ext = 0.0;
  double q_sca = 0.0;
  double c_ext = 0.0;  ///< [m^2]
  double c_sca = 0.0;  ///< [m^2]
  int terms = 0;       ///< number of partial waves summed
};

/// Lorenz-Mie solution for a sphere of relative index `index` (imaginary part
/// >= 0 means absorbing). The series length defaults to the Wiscombe bound
/// ceil(x + 4 x^(1/3) + 2); `extra_terms` appends partial waves beyond it.
///
/// The logarithmic derivative D_n(mx) is obtained by downward recurrence
/// started well above the series length, so the result is stable for the
/// small and moderate size parameters used for regolith grains.
MieResult mie_scattering(double diameter, double wavelength, std::complex<double> index,
                         int extra_terms = 0);

double mie_extinction_cross_section(double diameter, double wavelength,
                                    std::complex<double> index);

}  // namespace lunarbeam
