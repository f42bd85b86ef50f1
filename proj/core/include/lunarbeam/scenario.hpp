#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lunarbeam/dust.hpp"
#include "lunarbeam/geometry.hpp"
#include "lunarbeam/source.hpp"

namespace lunarbeam {

/// Where the extinction cross-section of the dust comes from.
enum class CextSource {
  unset,
  mie,             ///< Lorenz-Mie for a sphere of the configured diameter and index
  calibrated,      ///< fitted so a reference geometry hits a reference efficiency
  explicit_value,  ///< taken verbatim from dust.cext
};

std::string_view to_string(CextSource source);
std::optional<CextSource> parse_cext_source(std::string_view text);

/// Reference point for the calibrated C_ext mode.
struct CalibrationTarget {
  double distance = 5000.0;
  double source_height = 12.0;
  double efficiency = 0.91;
};

struct DustSettings {
  bool enabled = false;
  DustModel model;
  CextSource cext_source = CextSource::unset;
  CalibrationTarget calibration;
};

struct Numerics {
  double target_rel = 1e-3;          ///< convergence target for panel power
  int aperture_resolution = 0;       ///< samples per axis; 0 = convergence controller
  int panel_order = 0;               ///< Gauss-Legendre order per axis; 0 = adaptive
  int min_aperture_resolution = 16;
  int max_aperture_resolution = 1280;
  int initial_panel_order = 16;
  int max_panel_order = 512;
  int map_resolution = 64;           ///< irradiance map samples per axis
  double shift_window = 3.0;         ///< beam-shift window, multiple of panel size
  bool compute_shift = true;
  int workers = 1;
};

struct OutputSettings {
  std::string directory = ".";
};

/// A complete experiment. Defaults reproduce the reference link: 1 kW at
/// 1064 nm, 5 cm waist behind a 10 cm aperture, 0.5 m square panel at 2 m.
struct Scenario {
  LaserSource laser;
  ScenarioGeometry geometry;
  DustSettings dust;
  Numerics numerics;
  OutputSettings output;

  /// The dust model to propagate through, or nothing when dust is off.
  std::optional<DustModel> active_dust() const;

  /// Throws ValidationError (or a subclass) naming the offending field.
  void validate() const;
};

}  // namespace lunarbeam
