#pragma once

namespace lunarbeam {

/// Height-stratified dust medium.
///
/// Particle density follows N(h) = -A ln(h/H) below the ceiling H and is zero
/// above it. Below `floor` the density is held at N(floor) so that rays that
/// graze the surface stay finite.
struct DustModel {
  double diameter = 175e-9;          ///< particle diameter [m]
  double cext = 0.0;                 ///< extinction cross-section [m^2]
  double particle_index = 1.733;     ///< bulk refractive index of a grain
  double density_coefficient = 4.166e8;  ///< A [m^-3]
  double ceiling = 8.68;             ///< H [m]
  double floor = 1e-3;               ///< clamp height [m]

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  /// Volume of a single grain, (4 pi / 3) (d/2)^3.
  double particle_volume() const;
};

/// Particles per cubic meter at height h.
double particle_density(const DustModel& dust, double h);

/// Real part of the effective index: 1 + (m_p - 1) N(h) V_p.
double real_index(const DustModel& dust, double h);

/// real_index(h) - 1 without the cancellation; the excess is ~1e-12.
double real_index_excess(const DustModel& dust, double h);

/// Imaginary part of the effective index: C_ext N(h) lambda / (2 pi).
double imag_index(const DustModel& dust, double h, double wavelength);

/// Signed integral of N(h) dh from h_a to h_b, exact piecewise antiderivative.
double density_integral(const DustModel& dust, double h_a, double h_b);

/// Average of N over the height interval [h_a, h_b] (either order).
/// Equals N(h_a) when the interval is degenerate.
double mean_density(const DustModel& dust, double h_a, double h_b);

/// Small-particle scattering cross-section for a sphere of real index m.
double rayleigh_cross_section(double diameter, double wavelength, double index);

}  // namespace lunarbeam
