#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "lunarbeam/dust.hpp"
#include "lunarbeam/geometry.hpp"
#include "lunarbeam/scenario.hpp"
#include "lunarbeam/source.hpp"

namespace lunarbeam {

/// Element-sum propagator from the aperture to the plane z = D.
///
/// Each aperture node radiates a spherical wavelet E0 dA exp(-j Phi) / (lambda R)
/// where Phi is the complex cumulative phase of the straight ray to the
/// destination. The vacuum term k*D common to every ray is reduced modulo 2 pi
/// exactly (fmod of D by lambda) and only the excess path R - D enters the
/// per-node phase, which keeps the fractional phase at full precision even
/// when k*R ~ 1e11 rad.
///
/// The medium contribution of a ray is R times a rate that depends only on
/// the two end heights, so it is tabulated once per destination row.
class Propagator {
 public:
  Propagator(const LaserSource& laser, const ScenarioGeometry& geom,
             std::optional<DustModel> dust, ApertureGrid grid);

  /// Fields at (xs[i], y, D). `out` must have xs.size() elements.
  void field_row(double y, std::span<const double> xs, std::span<std::complex<double>> out) const;

  std::complex<double> field(double x, double y) const;
  double irradiance(double x, double y) const;

  const LaserSource& laser() const { return laser_; }
  const ScenarioGeometry& geometry() const { return geom_; }
  const std::optional<DustModel>& dust() const { return dust_; }
  const ApertureGrid& grid() const { return grid_; }

 private:
  LaserSource laser_;
  ScenarioGeometry geom_;
  std::optional<DustModel> dust_;
  ApertureGrid grid_;

  // Structure-of-arrays copy of the grid for the kernel.
  std::vector<double> node_x_;
  std::vector<double> node_y_;
  std::vector<double> node_amp_;  // dA E0 / lambda
  // Distinct source ground heights and the node -> height index map.
  std::vector<double> source_heights_;
  std::vector<std::size_t> height_index_;
  std::complex<double> carrier_;  // exp(-j k D), reduced exactly
};

/// Field at one destination point in the plane z = D (dst.z must equal D).
std::complex<double> field_at_point(const ApertureGrid& grid, const PathPoint& dst,
                                    const ScenarioGeometry& geom,
                                    const std::optional<DustModel>& dust, const LaserSource& laser);

/// |E|^2 / (2 eta).
double irradiance_at_point(std::complex<double> field, double impedance);

/// Rayleigh range pi w0^2 / lambda.
double rayleigh_range(const LaserSource& laser);

/// Untruncated Gaussian beam radius w0 sqrt(1 + (z/z_R)^2).
double beam_radius(const LaserSource& laser, double z);

/// Closed-form irradiance of an untruncated Gaussian beam in vacuum.
double free_space_gaussian_irradiance(const LaserSource& laser, double x, double y, double z);

/// Half-widths of a rectangular destination window centered on the panel.
struct MapExtent {
  double half_x = 0.0;
  double half_y = 0.0;
};

struct MapMeta {
  int aperture_resolution = 0;
  int resolution = 0;
  bool dust_enabled = false;
  double diameter = 0.0;
  double cext = 0.0;
  double distance = 0.0;
};

/// Irradiance sampled on a uniform grid of the destination plane.
/// `values` is row-major with y outer: values[iy * xs.size() + ix].
struct IrradianceMap {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;
  MapExtent extent;
  MapMeta meta;

  double at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
  double max_value() const;
};

/// Evaluates every grid point directly (no symmetry folding). The result does
/// not depend on numerics.workers.
IrradianceMap compute_irradiance_map(const Scenario& scenario, MapExtent extent, int resolution);

/// Same, reusing an existing propagator.
IrradianceMap compute_irradiance_map(const Propagator& propagator, MapExtent extent,
                                     int resolution, int workers);

/// Smallest aperture resolution meeting the oscillation bound
/// k * spacing * rho_max / R_min <= pi / 4.
int sampling_rule_resolution(const LaserSource& laser, double distance, double rho_max);

namespace detail {

/// Per-row inputs of the element-sum kernel.
struct KernelRow {
  std::span<const double> node_x;
  std::span<const double> node_y;
  std::span<const double> amp;          // dA E0 / lambda, extinction over D applied
  std::span<const double> wavenumber;   // k plus the medium phase rate (dusty only)
  std::span<const double> phase0;       // medium phase over D modulo 2 pi (dusty only)
  std::span<const double> extinction;   // medium extinction rate (dusty only)
  double wavenumber_vacuum = 0.0;
  double distance = 0.0;
  bool dusty = false;
};

/// Sum over nodes of amp exp(-j Phi) / R with the carrier k*D removed.
std::complex<double> sum_node_contributions(const KernelRow& row, double x, double y);

}  // namespace detail

}  // namespace lunarbeam
