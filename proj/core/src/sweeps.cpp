#include "lunarbeam/sweeps.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "lunarbeam/calibrate.hpp"
#include "lunarbeam/config.hpp"
#include "lunarbeam/error.hpp"
#include "lunarbeam/export.hpp"
#include "lunarbeam/parallel.hpp"
#include "lunarbeam/phase.hpp"

#ifndef LUNARBEAM_VERSION
#define LUNARBEAM_VERSION "unknown"
#endif

namespace lunarbeam {

std::string_view code_version() { return LUNARBEAM_VERSION; }

ConvergedSettings converge(const Scenario& scenario, double target_rel) {
  if (!(target_rel > 0.0 && target_rel <= 0.05)) {
    throw DomainError("converge: target_rel must lie in (0, 0.05]");
  }
  scenario.validate();
  const auto& numerics = scenario.numerics;
  const auto& geom = scenario.geometry;
  const double rho_max =
      std::hypot(0.5 * geom.panel_length, 0.5 * geom.panel_width) + scenario.laser.aperture_radius;

  ConvergedSettings out;
  out.rule_resolution = sampling_rule_resolution(scenario.laser, geom.distance, rho_max);
  int resolution = std::max(out.rule_resolution, numerics.min_aperture_resolution);
  if (resolution > numerics.max_aperture_resolution) {
    throw ConvergenceError(
        fmt::format("converge: sampling rule needs {} samples per axis, ceiling is {}", resolution,
                    numerics.max_aperture_resolution),
        {});
  }

  auto make = [&](int res) {
    return Propagator(scenario.laser, geom, scenario.active_dust(),
                      build_aperture_grid(scenario.laser, res));
  };

  int order = numerics.panel_order;
  double power = 0.0;
  if (order > 0) {
    power = integrate_panel(make(resolution), order, numerics.workers);
  } else {
    const PanelIntegration first = integrate_panel_adaptive(
        make(resolution), numerics.initial_panel_order, numerics.max_panel_order, target_rel,
        numerics.workers);
    // Gauss-Legendre converges geometrically, so the coarser order of the
    // accepted pair is already well inside the tolerance.
    order = first.order / 2;
    power = first.coarse_power;
  }

  while (true) {
    const int finer = 2 * resolution;
    if (finer > numerics.max_aperture_resolution) {
      throw ConvergenceError(
          fmt::format("converge: aperture resolution ceiling {} reached at D = {} m without a "
                      "relative change below {}",
                      numerics.max_aperture_resolution, geom.distance, target_rel),
          out.history);
    }
    const double finer_power = integrate_panel(make(finer), order, numerics.workers);
    const double rel = std::abs(finer_power - power) / std::max(std::abs(finer_power), 1e-300);
    out.history.push_back(rel);
    if (rel < target_rel) {
      out.settings = {resolution, order};
      out.rel_change = rel;
      out.power = power;
      return out;
    }
    resolution = finer;
    power = finer_power;
  }
}

double center_to_center_power(const Scenario& scenario) {
  scenario.validate();
  const auto dust = scenario.active_dust();
  if (!dust) return scenario.laser.power;
  const PathPoint src{0.0, 0.0, 0.0};
  const PathPoint dst{0.0, 0.0, scenario.geometry.distance};
  const ComplexPhase phase =
      medium_phase(src, dst, scenario.geometry, *dust, scenario.laser.wavelength);
  return scenario.laser.power * std::exp(-2.0 * phase.im);
}

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::distance: return "distance";
    case SweepKind::height_map: return "height_map";
    case SweepKind::panel_height: return "panel_height";
    case SweepKind::particle_size: return "particle_size";
    case SweepKind::irradiance_maps: return "irradiance_maps";
    case SweepKind::fig4_comparison: return "fig4_comparison";
  }
  return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view text) {
  for (const auto kind : {SweepKind::distance, SweepKind::height_map, SweepKind::panel_height,
                          SweepKind::particle_size, SweepKind::irradiance_maps,
                          SweepKind::fig4_comparison}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::vector<double> linear_range(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) {
    throw ValidationError("range needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = start + static_cast<double>(i) * step;
  }
  return values;
}

SweepSpec default_sweep_spec(SweepKind kind, const Scenario& base) {
  SweepSpec spec;
  spec.kind = kind;
  spec.base = base;
  const auto distances = linear_range(1000.0, 50000.0, 1000.0);
  const auto heights = linear_range(2.0, 12.0, 0.5);
  switch (kind) {
    case SweepKind::distance:
    case SweepKind::fig4_comparison:
      spec.axes = {{"distance", distances}};
      break;
    case SweepKind::height_map:
      spec.axes = {{"source_height", heights}, {"distance", distances}};
      break;
    case SweepKind::panel_height:
      spec.base.geometry.source_height = 10.0;
      spec.base.geometry.distance = 50000.0;
      spec.axes = {{"panel_height", heights}};
      break;
    case SweepKind::particle_size: {
      std::vector<double> diameters = linear_range(0.0, 300e-9, 25e-9);
      spec.axes = {{"distance", {5000.0, 20000.0, 50000.0}}, {"diameter", diameters}};
      break;
    }
    case SweepKind::irradiance_maps:
      spec.base.geometry.source_height = 2.0;
      spec.axes = {{"distance", {5000.0, 20000.0, 50000.0}}, {"diameter", {175e-9, 250e-9}}};
      break;
  }
  return spec;
}

namespace {

bool known_axis(const std::string& name) {
  return name == "distance" || name == "source_height" || name == "panel_height" ||
         name == "diameter";
}

void apply_axis(Scenario& cell, const Scenario& resolved_base, const std::string& name,
                double value) {
  if (name == "distance") {
    cell.geometry.distance = value;
  } else if (name == "source_height") {
    cell.geometry.source_height = value;
  } else if (name == "panel_height") {
    cell.geometry.panel_height = value;
  } else if (name == "diameter") {
    if (value == 0.0) {
      cell.dust.enabled = false;
    } else {
      cell.dust.model.diameter = value;
      if (cell.dust.enabled) {
        cell.dust.model.cext = cext_for_diameter(resolved_base, value);
      }
    }
  }
}

std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

// Index tuple of every grid point, first axis slowest.
std::vector<std::vector<std::size_t>> grid_points(const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<std::size_t>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : points) {
      for (std::size_t i = 0; i < axis.values.size(); ++i) {
        auto p = prefix;
        p.push_back(i);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

}  // namespace

void validate_sweep(const SweepSpec& spec) {
  if (spec.axes.empty()) throw ValidationError("sweep has no axes");
  for (const auto& axis : spec.axes) {
    if (!known_axis(axis.name)) throw ValidationError("unknown sweep axis \"" + axis.name + "\"");
    if (axis.values.empty()) throw ValidationError("sweep axis \"" + axis.name + "\" is empty");
    for (const double v : axis.values) {
      if (!std::isfinite(v)) throw ValidationError("non-finite value on axis " + axis.name);
      if (axis.name == "distance" && !(v > 0.0 && v <= 100e3)) {
        throw ValidationError("sweep distances must lie in (0, 100 km]");
      }
      if ((axis.name == "source_height" || axis.name == "panel_height") && !(v > 0.0)) {
        throw ValidationError("sweep heights must be positive");
      }
      if (axis.name == "diameter" && !(v >= 0.0 && v <= 10e-6)) {
        throw ValidationError("sweep diameters must lie in [0, 10 um]");
      }
    }
  }
  spec.base.validate();
  if (spec.kind == SweepKind::fig4_comparison &&
      (!spec.base.dust.enabled || spec.base.dust.cext_source == CextSource::unset)) {
    throw ValidationError(
        "fig4_comparison requires dust with an explicit C_ext source: one of \"mie\", "
        "\"calibrated\", \"explicit\"");
  }
}

SweepResult run_sweep(const SweepSpec& spec) {
  const auto started = std::chrono::steady_clock::now();
  validate_sweep(spec);
  const Scenario base = resolve_cext(spec.base);
  const int workers = base.numerics.workers;

  SweepResult result;
  result.kind = spec.kind;
  result.code_version = std::string(code_version());
  result.resolved_config = to_config_json(base);
  result.config_hash = hex_hash(config_hash(base));
  for (const auto& axis : spec.axes) result.axis_names.push_back(axis.name);

  const auto points = grid_points(spec.axes);
  std::vector<Scenario> cells;
  std::vector<std::vector<double>> cell_axes;
  for (const auto& point : points) {
    Scenario cell = base;
    std::vector<double> values;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const double v = spec.axes[a].values[point[a]];
      apply_axis(cell, base, spec.axes[a].name, v);
      values.push_back(v);
    }
    cell.numerics.workers = 1;
    if (spec.kind == SweepKind::irradiance_maps) cell.numerics.compute_shift = true;
    cells.push_back(std::move(cell));
    cell_axes.push_back(std::move(values));
  }

  // Numerics are settled once per distance on the dust-free geometry, so all
  // cells at one distance share an identical discretisation.
  std::map<double, std::size_t> distance_slot;
  std::vector<Scenario> probes;
  for (const auto& cell : cells) {
    // An invalid cell fails on its own; it must not set the numerics for others.
    try {
      cell.validate();
    } catch (const Error&) {
      continue;
    }
    if (distance_slot.try_emplace(cell.geometry.distance, probes.size()).second) {
      Scenario probe = cell;
      probe.dust.enabled = false;
      probe.numerics.compute_shift = false;
      probes.push_back(std::move(probe));
    }
  }
  std::vector<std::optional<ConvergedSettings>> settings(probes.size());
  std::vector<std::string> settings_error(probes.size());
  parallel_for(probes.size(), workers, [&](std::size_t i) {
    try {
      settings[i] = converge(probes[i], probes[i].numerics.target_rel);
    } catch (const Error& e) {
      settings_error[i] = e.what();
    }
  });

  const bool fig4 = spec.kind == SweepKind::fig4_comparison;
  const std::size_t per_cell = fig4 ? 3 : 1;
  result.rows.resize(cells.size() * per_cell);
  if (spec.kind == SweepKind::irradiance_maps) result.maps.resize(cells.size());

  parallel_for(cells.size(), workers, [&](std::size_t c) {
    const Scenario& cell = cells[c];
    for (std::size_t s = 0; s < per_cell; ++s) {
      SweepRow& row = result.rows[c * per_cell + s];
      row.axis_values = cell_axes[c];
      if (fig4) row.series = s == 0 ? "center_to_center" : s == 1 ? "diffraction_no_dust" : "diffraction_dust";
    }
    try {
      cell.validate();
      const std::size_t slot = distance_slot.at(cell.geometry.distance);
      if (!settings[slot]) throw NumericalError(settings_error[slot]);
      const ConvergedSettings& conv = *settings[slot];
      auto evaluate = [&](const Scenario& scenario) {
        PanelResult r = panel_power(scenario, conv.settings);
        r.converged_rel_change = conv.rel_change;
        return r;
      };
      if (fig4) {
        PanelResult c2c;
        c2c.distance = cell.geometry.distance;
        c2c.source_height = cell.geometry.source_height;
        c2c.panel_height = cell.geometry.panel_height;
        c2c.diameter = cell.dust.model.diameter;
        c2c.cext = cell.dust.model.cext;
        c2c.power = center_to_center_power(cell);
        c2c.efficiency = c2c.power / cell.laser.power;
        result.rows[c * 3].result = c2c;
        Scenario clear = cell;
        clear.dust.enabled = false;
        result.rows[c * 3 + 1].result = evaluate(clear);
        result.rows[c * 3 + 2].result = evaluate(cell);
      } else {
        result.rows[c].result = evaluate(cell);
        if (spec.kind == SweepKind::irradiance_maps) {
          result.maps[c] = compute_irradiance_map(cell, shift_window(cell), cell.numerics.map_resolution);
        }
      }
    } catch (const Error& e) {
      for (std::size_t s = 0; s < per_cell; ++s) {
        SweepRow& row = result.rows[c * per_cell + s];
        if (!row.result) row.error = e.what();
      }
    }
  });

  const auto failed = static_cast<std::size_t>(std::count_if(
      result.rows.begin(), result.rows.end(), [](const SweepRow& r) { return !r.result; }));
  if (failed == result.rows.size()) {
    throw NumericalError(fmt::format("sweep failed: all {} cells failed; first error: {}", failed,
                                     result.rows.empty() ? "" : result.rows.front().error));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string text;
  for (const auto& name : result.axis_names) {
    text += name;
    text += ',';
  }
  if (result.kind == SweepKind::fig4_comparison) text += "series,";
  text += panel_csv_header();
  text += ",status\n";
  for (const auto& row : result.rows) {
    for (const double v : row.axis_values) {
      text += format_number(v);
      text += ',';
    }
    if (result.kind == SweepKind::fig4_comparison) {
      text += row.series;
      text += ',';
    }
    if (row.result) {
      text += to_csv_row(*row.result);
      text += ",ok\n";
    } else {
      for (int i = 0; i < 10; ++i) text += "nan,";
      text += "error: " + sanitize(row.error) + "\n";
    }
  }
  return text;
}

void write_sweep_outputs(const SweepResult& result, const SweepSpec& spec,
                         const std::filesystem::path& directory) {
  const std::string stem(to_string(result.kind));
  write_text_file(directory / (stem + ".csv"), sweep_csv(result));

  std::vector<std::string> map_files;
  for (std::size_t i = 0; i < result.maps.size(); ++i) {
    if (!result.rows[i].result || result.maps[i].values.empty()) continue;
    const auto& r = *result.rows[i].result;
    const std::string name =
        fmt::format("map_D{:.0f}m_d{:.0f}nm", r.distance, r.diameter * 1e9);
    write_map_csv(result.maps[i], directory / (name + ".csv"));
    write_map_pgm(result.maps[i], directory / (name + ".pgm"));
    map_files.push_back(name);
  }

  std::string manifest = fmt::format(
      "kind={}\ncode_version={}\nconfig_hash={}\nwall_seconds={:.3f}\nworkers={}\ncells={}\n",
      stem, result.code_version, result.config_hash, result.wall_seconds,
      spec.base.numerics.workers, result.rows.size());
  for (std::size_t a = 0; a < spec.axes.size(); ++a) {
    manifest += fmt::format("axis.{}={} values from {} to {}\n", spec.axes[a].name,
                            spec.axes[a].values.size(), format_number(spec.axes[a].values.front()),
                            format_number(spec.axes[a].values.back()));
  }
  for (const auto& name : map_files) manifest += "map=" + name + "\n";
  manifest += "config=\n" + result.resolved_config;
  write_text_file(directory / (stem + "_manifest.txt"), manifest);
}

}  // namespace lunarbeam
