#include "lunarbeam/dust.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lunarbeam/error.hpp"

namespace lunarbeam {

namespace {

void require_height(double h) {
  if (!(h > 0.0)) {
    throw DomainError("height must be positive, got " + std::to_string(h));
  }
}

// Antiderivative of -A ln(h/H) on the unclamped band, shifted so that it
// vanishes at the ceiling. With t = h/H - 1 it is A H (t - (1 + t) log1p(t)),
// which goes like -A H t^2 / 2 near the ceiling; the series keeps full
// relative precision there.
double band_antiderivative(const DustModel& dust, double h) {
  const double t = (h - dust.ceiling) / dust.ceiling;
  double g = 0.0;
  if (std::abs(t) < 0.1) {
    double power = t;
    for (int n = 2; n < 24; ++n) {
      power *= -t;
      g += power / (n * (n - 1.0));
    }
  } else {
    g = t - (1.0 + t) * std::log1p(t);
  }
  return dust.density_coefficient * dust.ceiling * g;
}

// Integral of N over [lo, hi] with lo <= hi, both inside a single band.
double band_integral(const DustModel& dust, double lo, double hi) {
  const double width = hi - lo;
  if (width <= 0.0) {
    return 0.0;
  }
  const double mid = 0.5 * (lo + hi);
  // Difference of antiderivatives cancels badly for narrow intervals; the
  // midpoint expansion is exact to O(width^5) there.
  if (width < 1e-4 * mid) {
    const double n_mid = -dust.density_coefficient * std::log(mid / dust.ceiling);
    const double n_dd = dust.density_coefficient / (mid * mid);
    return width * (n_mid + width * width * n_dd / 24.0);
  }
  return band_antiderivative(dust, hi) - band_antiderivative(dust, lo);
}

double ordered_integral(const DustModel& dust, double lo, double hi) {
  const double clamp_density = -dust.density_coefficient * std::log(dust.floor / dust.ceiling);
  double total = 0.0;
  // Clamped layer below the floor.
  if (lo < dust.floor) {
    total += clamp_density * (std::min(hi, dust.floor) - lo);
  }
  // Logarithmic band [floor, ceiling).
  const double band_lo = std::max(lo, dust.floor);
  const double band_hi = std::min(hi, dust.ceiling);
  if (band_hi > band_lo) {
    total += band_integral(dust, band_lo, band_hi);
  }
  return total;
}

}  // namespace

void DustModel::validate() const {
  if (!(diameter > 0.0)) throw DomainError("dust.diameter must be positive");
  if (!(diameter <= 10e-6)) throw DomainError("dust.diameter must not exceed 10 um");
  if (!(cext >= 0.0)) throw DomainError("dust.cext must be non-negative");
  if (!(particle_index >= 1.0)) throw DomainError("dust.particle_index must be >= 1");
  if (!(density_coefficient > 0.0)) throw DomainError("dust.density_coefficient must be positive");
  if (!(ceiling > 0.0)) throw DomainError("dust.ceiling must be positive");
  if (!(floor > 0.0 && floor < ceiling)) throw DomainError("dust.floor must lie in (0, ceiling)");
}

double DustModel::particle_volume() const {
  const double radius = 0.5 * diameter;
  return 4.0 * std::numbers::pi / 3.0 * radius * radius * radius;
}

double particle_density(const DustModel& dust, double h) {
  require_height(h);
  if (h >= dust.ceiling) {
    return 0.0;
  }
  const double clamped = std::max(h, dust.floor);
  return -dust.density_coefficient * std::log(clamped / dust.ceiling);
}

double real_index_excess(const DustModel& dust, double h) {
  return (dust.particle_index - 1.0) * particle_density(dust, h) * dust.particle_volume();
}

double real_index(const DustModel& dust, double h) {
  return 1.0 + real_index_excess(dust, h);
}

double imag_index(const DustModel& dust, double h, double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  return dust.cext * particle_density(dust, h) * wavelength / (2.0 * std::numbers::pi);
}

double density_integral(const DustModel& dust, double h_a, double h_b) {
  require_height(h_a);
  require_height(h_b);
  if (h_a <= h_b) {
    return ordered_integral(dust, h_a, h_b);
  }
  return -ordered_integral(dust, h_b, h_a);
}

double mean_density(const DustModel& dust, double h_a, double h_b) {
  const double lo = std::min(h_a, h_b);
  const double hi = std::max(h_a, h_b);
  if (hi == lo) {
    return particle_density(dust, lo);
  }
  require_height(lo);
  return ordered_integral(dust, lo, hi) / (hi - lo);
}

double rayleigh_cross_section(double diameter, double wavelength, double index) {
  if (!(diameter > 0.0) || !(wavelength > 0.0) || !(index > 0.0)) {
    throw DomainError("rayleigh_cross_section: inputs must be positive");
  }
  const double m2 = index * index;
  const double polar = (m2 - 1.0) / (m2 + 2.0);
  const double d2 = diameter * diameter;
  const double lambda2 = wavelength * wavelength;
  return 2.0 / 3.0 * std::pow(std::numbers::pi, 5) * d2 * d2 * d2 / (lambda2 * lambda2) *
         polar * polar;
}

}  // namespace lunarbeam
