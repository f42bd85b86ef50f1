#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lunarbeam/diffraction.hpp"
#include "lunarbeam/receiver.hpp"
#include "lunarbeam/scenario.hpp"

namespace lunarbeam {

/// Outcome of the convergence controller.
struct ConvergedSettings {
  NumericsSettings settings;
  double rel_change = 0.0;      ///< |P(2n) - P(n)| / P(2n) at the accepted level
  double power = 0.0;           ///< panel power at the accepted settings [W]
  int rule_resolution = 0;      ///< resolution demanded by the sampling rule
  std::vector<double> history;  ///< relative change of every aperture doubling
};

/// Starts at the oscillation-aware sampling rule (clamped to the configured
/// minimum), settles the panel order there, then doubles the aperture
/// resolution until the panel power moves by less than `target_rel`. The
/// returned resolution and panel order are the coarser of their last
/// compared pairs.
/// ConvergenceError carries the history when the resolution ceiling is hit.
ConvergedSettings converge(const Scenario& scenario, double target_rel);

/// Beer-Lambert baseline: P0 exp(-2 Im Phi) for the single ray joining the
/// aperture center to the panel center. No diffraction.
double center_to_center_power(const Scenario& scenario);

enum class SweepKind {
  distance,
  height_map,
  panel_height,
  particle_size,
  irradiance_maps,
  fig4_comparison,
};

std::string_view to_string(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view text);

/// One swept parameter. Recognised names: distance, source_height,
/// panel_height, diameter (a diameter of 0 disables the dust).
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

struct SweepSpec {
  SweepKind kind = SweepKind::distance;
  std::vector<SweepAxis> axes;  ///< first axis varies slowest
  Scenario base;
};

/// Inclusive arithmetic range; the last value is `stop` when it lies on the grid.
std::vector<double> linear_range(double start, double stop, double step);

/// The default grid for a figure-style experiment. Fixed parameters of the
/// experiment (source height 10 m and distance 50 km for the panel-height
/// sweep, source height 2 m for the map set) are applied on top of `base`.
SweepSpec default_sweep_spec(SweepKind kind, const Scenario& base);

/// Throws ValidationError for empty axes, unknown names or out-of-range values.
void validate_sweep(const SweepSpec& spec);

struct SweepRow {
  std::vector<double> axis_values;
  std::string series;  ///< fig4_comparison curve name, empty otherwise
  std::optional<PanelResult> result;
  std::string error;   ///< set when the cell failed
};

struct SweepResult {
  SweepKind kind = SweepKind::distance;
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;  ///< grid order, never completion order
  std::vector<IrradianceMap> maps;  ///< irradiance_maps only, aligned with rows
  std::string resolved_config;  ///< canonical JSON of the base after C_ext resolution
  std::string config_hash;      ///< hash of resolved_config without workers/output
  std::string code_version;
  double wall_seconds = 0.0;
};

/// Evaluates every grid point. Cells run concurrently on numerics.workers
/// threads; the rows and every byte of the CSV are independent of that count.
/// A failing cell is recorded in its row; the sweep itself fails only when
/// every cell fails.
SweepResult run_sweep(const SweepSpec& spec);

std::string sweep_csv(const SweepResult& result);

/// Writes <kind>.csv, <kind>_manifest.txt and, for map sweeps, one
/// CSV + PGM + scale sidecar per map into `directory`.
void write_sweep_outputs(const SweepResult& result, const SweepSpec& spec,
                         const std::filesystem::path& directory);

/// Version string embedded in manifests.
std::string_view code_version();

}  // namespace lunarbeam
