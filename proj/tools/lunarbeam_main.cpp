// lunarbeam: command-line driver for the beaming simulator.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lunarbeam/calibrate.hpp"
#include "lunarbeam/config.hpp"
#include "lunarbeam/error.hpp"
#include "lunarbeam/export.hpp"
#include "lunarbeam/mie.hpp"
#include "lunarbeam/receiver.hpp"
#include "lunarbeam/sweeps.hpp"
#include "lunarbeam/validation.hpp"

namespace lb = lunarbeam;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;
constexpr const char* kOutputEnv = "LUNARBEAM_OUTPUT_DIR";

struct ScenarioFlags {
  std::string config = "default";
  std::optional<double> distance;
  std::optional<double> source_height;
  std::optional<double> panel_height;
  std::optional<double> diameter;
  std::optional<double> cext;
  std::optional<std::string> cext_source;
  bool dust = false;
  bool no_dust = false;
  std::optional<int> workers;
  std::optional<int> aperture_resolution;
  std::optional<int> panel_order;
  bool no_shift = false;
  std::optional<std::string> output;
  std::vector<std::string> settings;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--config", f.config, "JSON config file, or \"default\"");
  app->add_option("--distance", f.distance, "source-panel distance D [m]");
  app->add_option("--source-height", f.source_height, "source height h0 [m]");
  app->add_option("--panel-height", f.panel_height, "panel height hp [m]");
  app->add_option("--diameter", f.diameter, "dust diameter [m]; 0 disables dust");
  app->add_option("--cext", f.cext, "extinction cross-section [m^2] (implies --cext-source explicit)");
  app->add_option("--cext-source", f.cext_source, "mie | calibrated | explicit");
  auto* dust = app->add_flag("--dust", f.dust, "enable dust");
  app->add_flag("--no-dust", f.no_dust, "disable dust")->excludes(dust);
  app->add_option("--workers", f.workers, "worker threads");
  app->add_option("--aperture-resolution", f.aperture_resolution, "aperture samples per axis (0 = auto)");
  app->add_option("--panel-order", f.panel_order, "panel Gauss-Legendre order (0 = adaptive)");
  app->add_flag("--no-shift", f.no_shift, "skip the beam-shift map");
  app->add_option("--output", f.output, "output directory");
  app->add_option("--set", f.settings, "override a config key: key=value")->take_all();
}

lb::Scenario build_scenario(const ScenarioFlags& f) {
  lb::Scenario s = f.config == "default" ? lb::Scenario{} : lb::load_scenario(f.config);
  for (const auto& kv : f.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw lb::ValidationError("--set expects key=value, got \"" + kv + "\"");
    lb::apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (f.distance) s.geometry.distance = *f.distance;
  if (f.source_height) s.geometry.source_height = *f.source_height;
  if (f.panel_height) s.geometry.panel_height = *f.panel_height;
  if (f.diameter) {
    if (*f.diameter == 0.0) {
      s.dust.enabled = false;
    } else {
      s.dust.model.diameter = *f.diameter;
    }
  }
  if (f.cext) {
    s.dust.model.cext = *f.cext;
    s.dust.cext_source = lb::CextSource::explicit_value;
    s.dust.enabled = true;
  }
  if (f.cext_source) {
    const auto parsed = lb::parse_cext_source(*f.cext_source);
    if (!parsed) {
      throw lb::ValidationError("--cext-source must be one of \"mie\", \"calibrated\", \"explicit\"");
    }
    s.dust.cext_source = *parsed;
    s.dust.enabled = true;
  }
  if (f.dust) s.dust.enabled = true;
  if (f.no_dust || (f.diameter && *f.diameter == 0.0)) s.dust.enabled = false;
  if (f.workers) s.numerics.workers = *f.workers;
  if (f.aperture_resolution) s.numerics.aperture_resolution = *f.aperture_resolution;
  if (f.panel_order) s.numerics.panel_order = *f.panel_order;
  if (f.no_shift) s.numerics.compute_shift = false;
  if (f.output) {
    s.output.directory = *f.output;
  } else if (s.output.directory == ".") {
    if (const char* env = std::getenv(kOutputEnv); env && *env) s.output.directory = env;
  }
  s.validate();
  return s;
}

std::filesystem::path prepare_output(const lb::Scenario& s) {
  const std::filesystem::path dir = s.output.directory;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw lb::IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

int run_simulate(const ScenarioFlags& f) {
  const lb::Scenario s = lb::resolve_cext(build_scenario(f));
  const lb::PanelResult r = lb::panel_power(s);
  std::cout << lb::panel_csv_header() << '\n' << lb::to_csv_row(r) << '\n';
  return 0;
}

int run_sweep(const ScenarioFlags& f, const std::string& kind_text, bool quick) {
  const auto kind = lb::parse_sweep_kind(kind_text);
  if (!kind) throw lb::ValidationError("unknown sweep kind \"" + kind_text + "\"");
  const lb::Scenario base = build_scenario(f);
  lb::SweepSpec spec = lb::default_sweep_spec(*kind, base);
  if (quick) {
    // Every fifth grid value, keeping the end points.
    for (auto& axis : spec.axes) {
      std::vector<double> thinned;
      for (std::size_t i = 0; i < axis.values.size(); i += 5) thinned.push_back(axis.values[i]);
      if (thinned.back() != axis.values.back()) thinned.push_back(axis.values.back());
      axis.values = std::move(thinned);
    }
  }
  const lb::SweepResult result = lb::run_sweep(spec);
  const auto dir = prepare_output(base);
  lb::write_sweep_outputs(result, spec, dir);
  std::size_t failed = 0;
  for (const auto& row : result.rows) failed += row.result ? 0 : 1;
  std::cerr << fmt::format("{} rows ({} failed) written to {} in {:.1f} s\n", result.rows.size(),
                           failed, dir.string(), result.wall_seconds);
  return 0;
}

int run_map(const ScenarioFlags& f, std::optional<double> half_x, std::optional<double> half_y,
            std::optional<int> resolution, const std::string& name) {
  const lb::Scenario s = lb::resolve_cext(build_scenario(f));
  lb::MapExtent extent = lb::shift_window(s);
  if (half_x) extent.half_x = *half_x;
  if (half_y) extent.half_y = *half_y;
  if (!(extent.half_x > 0.0 && extent.half_y > 0.0)) {
    throw lb::ValidationError("map half-widths must be positive");
  }
  const int res = resolution.value_or(s.numerics.map_resolution);
  if (res < 2) throw lb::ValidationError("map resolution must be at least 2");
  const lb::IrradianceMap map = lb::compute_irradiance_map(s, extent, res);
  const auto dir = prepare_output(s);
  lb::write_map_csv(map, dir / (name + ".csv"));
  lb::write_map_pgm(map, dir / (name + ".pgm"));
  std::cout << fmt::format("max_irradiance_w_per_m2,{}\nshift_y_m,{}\npeak_y_m,{}\n",
                           lb::format_number(map.max_value()),
                           lb::format_number(lb::beam_shift(map, extent)),
                           lb::format_number(lb::peak_location(map)));
  return 0;
}

int run_mie(double diameter, double wavelength, double index, double index_imag) {
  if (!(diameter > 0.0 && wavelength > 0.0 && index > 0.0 && index_imag >= 0.0)) {
    throw lb::ValidationError("mie needs diameter > 0, wavelength > 0, index > 0, index-imag >= 0");
  }
  const lb::MieResult r = lb::mie_scattering(diameter, wavelength, {index, index_imag});
  std::cout << "diameter,wavelength,size_parameter,q_ext,q_sca,C_ext,C_sca\n"
            << fmt::format("{},{},{},{},{},{},{}\n", lb::format_number(diameter),
                           lb::format_number(wavelength), lb::format_number(r.size_parameter),
                           lb::format_number(r.q_ext), lb::format_number(r.q_sca),
                           lb::format_number(r.c_ext), lb::format_number(r.c_sca));
  return 0;
}

int run_calibrate(ScenarioFlags f) {
  lb::Scenario s = build_scenario(f);
  s.dust.enabled = true;
  s.dust.cext_source = lb::CextSource::calibrated;
  s.validate();
  const lb::Scenario resolved = lb::resolve_cext(s);
  std::cout << "diameter,target_distance,target_source_height,target_efficiency,C_ext\n"
            << fmt::format("{},{},{},{},{}\n", lb::format_number(s.dust.model.diameter),
                           lb::format_number(s.dust.calibration.distance),
                           lb::format_number(s.dust.calibration.source_height),
                           lb::format_number(s.dust.calibration.efficiency),
                           lb::format_number(resolved.dust.model.cext));
  return 0;
}

int run_validate(int rays) {
  bool ok = true;
  for (const auto& check : lb::run_oracle_suite(rays)) {
    std::cout << fmt::format("{} {} value={:.3e} limit={:.1e}\n", check.passed ? "PASS" : "FAIL",
                             check.name, check.value, check.limit);
    ok = ok && check.passed;
  }
  return ok ? 0 : kExitNumerical;
}

int exit_code(const lb::Error& e) {
  switch (e.kind()) {
    case lb::ErrorKind::validation: return kExitValidation;
    case lb::ErrorKind::numerical: return kExitNumerical;
    case lb::ErrorKind::io: return kExitIo;
  }
  return kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lunar laser power-beaming simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lb::code_version()));

  ScenarioFlags simulate_flags;
  auto* simulate = app.add_subcommand("simulate", "received panel power, one CSV row on stdout");
  add_scenario_flags(simulate, simulate_flags);

  ScenarioFlags sweep_flags;
  std::string sweep_kind = "distance";
  bool quick = false;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV + manifest");
  add_scenario_flags(sweep, sweep_flags);
  sweep->add_option("--kind", sweep_kind,
                    "distance | height_map | panel_height | particle_size | irradiance_maps | "
                    "fig4_comparison");
  sweep->add_flag("--quick", quick, "every fifth grid value only");

  ScenarioFlags map_flags;
  std::optional<double> half_x;
  std::optional<double> half_y;
  std::optional<int> map_resolution;
  std::string map_name = "irradiance";
  auto* map = app.add_subcommand("map", "irradiance map as CSV matrix and 16-bit PGM");
  add_scenario_flags(map, map_flags);
  map->add_option("--half-x", half_x, "window half-width in x [m]");
  map->add_option("--half-y", half_y, "window half-height in y [m]");
  map->add_option("--resolution", map_resolution, "samples per axis");
  map->add_option("--name", map_name, "output file stem");

  double mie_diameter = 175e-9;
  double mie_wavelength = 1064e-9;
  double mie_index = 1.733;
  double mie_index_imag = 0.0;
  auto* mie = app.add_subcommand("mie", "Mie cross-sections as CSV");
  mie->add_option("--diameter", mie_diameter, "sphere diameter [m]");
  mie->add_option("--wavelength", mie_wavelength, "wavelength [m]");
  mie->add_option("--index", mie_index, "real refractive index");
  mie->add_option("--index-imag", mie_index_imag, "absorptive part of the index (>= 0)");

  ScenarioFlags calibrate_flags;
  std::optional<double> target_distance;
  std::optional<double> target_height;
  std::optional<double> target_efficiency;
  auto* calibrate = app.add_subcommand("calibrate", "fit C_ext to a reference efficiency");
  add_scenario_flags(calibrate, calibrate_flags);
  calibrate->add_option("--target-distance", target_distance, "reference distance [m]");
  calibrate->add_option("--target-source-height", target_height, "reference source height [m]");
  calibrate->add_option("--target-efficiency", target_efficiency, "reference efficiency (0-1)");

  int rays = 1000;
  auto* validate = app.add_subcommand("validate", "run the built-in oracle checks");
  validate->add_option("--rays", rays, "random rays for the phase comparison")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*simulate) return run_simulate(simulate_flags);
    if (*sweep) return run_sweep(sweep_flags, sweep_kind, quick);
    if (*map) return run_map(map_flags, half_x, half_y, map_resolution, map_name);
    if (*mie) return run_mie(mie_diameter, mie_wavelength, mie_index, mie_index_imag);
    if (*calibrate) {
      if (target_distance) calibrate_flags.settings.push_back(fmt::format("dust.calibration.distance={}", *target_distance));
      if (target_height) calibrate_flags.settings.push_back(fmt::format("dust.calibration.source_height={}", *target_height));
      if (target_efficiency) calibrate_flags.settings.push_back(fmt::format("dust.calibration.efficiency={}", *target_efficiency));
      return run_calibrate(calibrate_flags);
    }
    if (*validate) return run_validate(rays);
  } catch (const lb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
