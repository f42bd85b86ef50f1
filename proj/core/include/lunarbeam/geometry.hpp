#pragma once

namespace lunarbeam {

/// Placement of source and panel. All lengths in meters.
///
/// The canonical frame is tilted: z runs along the line joining the aperture
/// center to the panel center, y is the in-plane transverse axis pointing
/// away from the ground and x is horizontal. Ground heights are only ever
/// recovered through the linear height relation in `path_height`.
struct ScenarioGeometry {
  double distance = 5000.0;      ///< center-to-center source->panel distance
  double source_height = 2.0;    ///< aperture center above ground
  double panel_height = 2.0;     ///< panel center above ground
  double panel_length = 0.5;     ///< panel extent along x
  double panel_width = 0.5;      ///< panel extent along y

  /// Inclination of the optical axis, negative when the panel sits lower.
  double tilt() const;

  /// Throws InvalidGeometry on non-positive dimensions or heights.
  void validate() const;
};

/// A point in the tilted frame. Source points live in z = 0, panel points in z = D.
struct PathPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double tilt_angle(double source_height, double panel_height, double distance);

double separation(const PathPoint& src, const PathPoint& dst);

/// Ground height of a point of the source plane at transverse offset y0.
double source_ground_height(const ScenarioGeometry& geom, double y0);

/// Ground height of a point of the destination plane at transverse offset y.
double panel_ground_height(const ScenarioGeometry& geom, double y);

/// Height above ground after travelling `arclength` meters from `src` toward `dst`.
double path_height(const PathPoint& src, const PathPoint& dst, const ScenarioGeometry& geom,
                   double arclength);

/// Lowest ground height reached on the straight ray src->dst.
double min_path_height(const PathPoint& src, const PathPoint& dst, const ScenarioGeometry& geom);

}  // namespace lunarbeam
