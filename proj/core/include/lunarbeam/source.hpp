#pragma once

#include <vector>

namespace lunarbeam {

/// Collimated truncated-Gaussian emitter with a flat wavefront at the aperture.
struct LaserSource {
  double power = 1000.0;           ///< P0 [W]
  double waist = 0.05;             ///< 1/e^2 intensity radius w0 [m]
  double aperture_radius = 0.05;   ///< hard-edge radius r_a [m]
  double wavelength = 1064e-9;     ///< [m]
  double impedance = 377.0;        ///< wave impedance eta [ohm]

  /// Truncation normalisation (1 - exp(-2 r_a^2 / w0^2))^(-1/2); the emitted
  /// power through the aperture is then P0 for any r_a.
  double zeta() const;

  /// On-axis aperture field amplitude [V/m].
  double peak_field() const;

  double wavenumber() const;

  void validate() const;
};

/// Aperture field amplitude (real, in phase) at (x0, y0); zero outside the aperture.
double aperture_field(const LaserSource& laser, double x0, double y0);

struct ApertureNode {
  double x = 0.0;
  double y = 0.0;
  double weight = 0.0;  ///< area element dA [m^2]
  double field = 0.0;   ///< E0 at (x, y) [V/m]
};

/// Discretisation of the aperture disk.
///
/// Square cells of side 2 r_a / resolution tile the disk. Interior cells get a
/// node at the cell center with the full cell area; cells cut by the rim get
/// their overlap area and a node at the overlap centroid, both found by
/// recursive subdivision. Nodes are ordered row-major (y outer, x inner).
struct ApertureGrid {
  std::vector<ApertureNode> nodes;
  int resolution = 0;
  double cell_size = 0.0;

  /// Discrete emitted power sum(dA |E0|^2) / (2 eta).
  double power(double impedance) const;
};

/// Throws DomainError for resolution < 8 and NumericalError ("resolution
/// error") when the discrete power misses P0 by more than `power_tolerance`.
ApertureGrid build_aperture_grid(const LaserSource& laser, int resolution,
                                 double power_tolerance = 5e-3);

/// One node at the aperture center carrying the whole aperture area.
/// Propagating it reproduces the single center-to-center ray geometry.
ApertureGrid single_node_grid(const LaserSource& laser);

}  // namespace lunarbeam
