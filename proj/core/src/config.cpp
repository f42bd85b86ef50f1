#include "lunarbeam/config.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lunarbeam/error.hpp"

namespace lunarbeam {

using nlohmann::json;

std::string_view to_string(CextSource source) {
  switch (source) {
    case CextSource::mie: return "mie";
    case CextSource::calibrated: return "calibrated";
    case CextSource::explicit_value: return "explicit";
    case CextSource::unset: break;
  }
  return "unset";
}

std::optional<CextSource> parse_cext_source(std::string_view text) {
  if (text == "mie") return CextSource::mie;
  if (text == "calibrated") return CextSource::calibrated;
  if (text == "explicit") return CextSource::explicit_value;
  if (text == "unset") return CextSource::unset;
  return std::nullopt;
}

std::optional<DustModel> Scenario::active_dust() const {
  if (!dust.enabled) return std::nullopt;
  return dust.model;
}

void Scenario::validate() const {
  laser.validate();
  const double cos_tilt = [&] {
    try {
      return std::cos(geometry.tilt());
    } catch (const Error&) {
      return 1.0;
    }
  }();
  if (!(geometry.panel_height - 0.5 * geometry.panel_width * cos_tilt > 0.0)) {
    throw TerrainError(fmt::format(
        "panel below minimum height: geometry.panel_height = {} m leaves the panel edge at or "
        "below ground",
        geometry.panel_height));
  }
  if (!(geometry.source_height - laser.aperture_radius * cos_tilt > 0.0)) {
    throw TerrainError(fmt::format(
        "source below minimum height: geometry.source_height = {} m leaves the aperture rim at or "
        "below ground",
        geometry.source_height));
  }
  geometry.validate();
  if (geometry.distance > 100e3) {
    throw InvalidGeometry("geometry.distance must not exceed 100 km");
  }
  if (dust.enabled) {
    dust.model.validate();
    if (dust.cext_source == CextSource::unset) {
      throw ValidationError(
          "dust.cext_source must be set when dust is enabled: one of \"mie\", \"calibrated\", "
          "\"explicit\"");
    }
    if (dust.cext_source == CextSource::calibrated) {
      const auto& c = dust.calibration;
      if (!(c.distance > 0.0) || !(c.source_height > 0.0) ||
          !(c.efficiency > 0.0 && c.efficiency < 1.0)) {
        throw ValidationError(
            "dust.calibration: distance and source_height must be positive, efficiency in (0, 1)");
      }
    }
  }
  const auto& n = numerics;
  if (!(n.target_rel > 0.0 && n.target_rel <= 0.05)) {
    throw ValidationError("numerics.target_rel must lie in (0, 0.05]");
  }
  if (n.aperture_resolution != 0 && n.aperture_resolution < 8) {
    throw ValidationError("numerics.aperture_resolution must be 0 (auto) or >= 8");
  }
  if (n.panel_order < 0) throw ValidationError("numerics.panel_order must be >= 0");
  if (n.min_aperture_resolution < 8 || n.max_aperture_resolution < n.min_aperture_resolution) {
    throw ValidationError("numerics.min/max_aperture_resolution must satisfy 8 <= min <= max");
  }
  if (n.initial_panel_order < 2 || n.max_panel_order < n.initial_panel_order) {
    throw ValidationError("numerics.initial/max_panel_order must satisfy 2 <= initial <= max");
  }
  if (n.map_resolution < 2) throw ValidationError("numerics.map_resolution must be >= 2");
  if (!(n.shift_window >= 1.0)) throw ValidationError("numerics.shift_window must be >= 1");
  if (n.workers < 1) throw ValidationError("numerics.workers must be >= 1");
}

namespace {

struct Field {
  std::function<json(const Scenario&)> get;
  std::function<void(Scenario&, const json&)> set;
};

template <typename T>
T expect(const json& value, const std::string& key) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!value.is_boolean()) throw ValidationError(key + " expects a boolean");
    return value.get<bool>();
  } else if constexpr (std::is_same_v<T, int>) {
    if (!value.is_number_integer()) throw ValidationError(key + " expects an integer");
    return value.get<int>();
  } else if constexpr (std::is_same_v<T, double>) {
    if (!value.is_number()) throw ValidationError(key + " expects a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ValidationError(key + " must be finite");
    return v;
  } else {
    if (!value.is_string()) throw ValidationError(key + " expects a string");
    return value.get<std::string>();
  }
}

template <typename T, typename Access>
Field field(std::string key, Access access) {
  return Field{
      [access](const Scenario& s) { return json(access(s)); },
      [access, key](Scenario& s, const json& v) { access(s) = expect<T>(v, key); }};
}

const std::map<std::string, Field>& registry() {
  static const std::map<std::string, Field> fields = [] {
    std::map<std::string, Field> f;
    auto add_d = [&](const std::string& key, auto access) { f.emplace(key, field<double>(key, access)); };
    auto add_i = [&](const std::string& key, auto access) { f.emplace(key, field<int>(key, access)); };
    auto add_b = [&](const std::string& key, auto access) { f.emplace(key, field<bool>(key, access)); };

    add_d("laser.power", [](auto& s) -> auto& { return s.laser.power; });
    add_d("laser.waist", [](auto& s) -> auto& { return s.laser.waist; });
    add_d("laser.aperture_radius", [](auto& s) -> auto& { return s.laser.aperture_radius; });
    add_d("laser.wavelength", [](auto& s) -> auto& { return s.laser.wavelength; });
    add_d("laser.impedance", [](auto& s) -> auto& { return s.laser.impedance; });

    add_d("geometry.distance", [](auto& s) -> auto& { return s.geometry.distance; });
    add_d("geometry.source_height", [](auto& s) -> auto& { return s.geometry.source_height; });
    add_d("geometry.panel_height", [](auto& s) -> auto& { return s.geometry.panel_height; });
    add_d("geometry.panel_length", [](auto& s) -> auto& { return s.geometry.panel_length; });
    add_d("geometry.panel_width", [](auto& s) -> auto& { return s.geometry.panel_width; });

    add_b("dust.enabled", [](auto& s) -> auto& { return s.dust.enabled; });
    add_d("dust.diameter", [](auto& s) -> auto& { return s.dust.model.diameter; });
    add_d("dust.cext", [](auto& s) -> auto& { return s.dust.model.cext; });
    add_d("dust.particle_index", [](auto& s) -> auto& { return s.dust.model.particle_index; });
    add_d("dust.density_coefficient",
          [](auto& s) -> auto& { return s.dust.model.density_coefficient; });
    add_d("dust.ceiling", [](auto& s) -> auto& { return s.dust.model.ceiling; });
    add_d("dust.floor", [](auto& s) -> auto& { return s.dust.model.floor; });
    add_d("dust.calibration.distance", [](auto& s) -> auto& { return s.dust.calibration.distance; });
    add_d("dust.calibration.source_height",
          [](auto& s) -> auto& { return s.dust.calibration.source_height; });
    add_d("dust.calibration.efficiency",
          [](auto& s) -> auto& { return s.dust.calibration.efficiency; });
    f.emplace("dust.cext_source",
              Field{[](const Scenario& s) { return json(std::string(to_string(s.dust.cext_source))); },
                    [](Scenario& s, const json& v) {
                      const auto text = expect<std::string>(v, "dust.cext_source");
                      const auto parsed = parse_cext_source(text);
                      if (!parsed) {
                        throw ValidationError("dust.cext_source must be one of \"mie\", "
                                              "\"calibrated\", \"explicit\" (got \"" + text + "\")");
                      }
                      s.dust.cext_source = *parsed;
                    }});

    add_d("numerics.target_rel", [](auto& s) -> auto& { return s.numerics.target_rel; });
    add_i("numerics.aperture_resolution",
          [](auto& s) -> auto& { return s.numerics.aperture_resolution; });
    add_i("numerics.panel_order", [](auto& s) -> auto& { return s.numerics.panel_order; });
    add_i("numerics.min_aperture_resolution",
          [](auto& s) -> auto& { return s.numerics.min_aperture_resolution; });
    add_i("numerics.max_aperture_resolution",
          [](auto& s) -> auto& { return s.numerics.max_aperture_resolution; });
    add_i("numerics.initial_panel_order",
          [](auto& s) -> auto& { return s.numerics.initial_panel_order; });
    add_i("numerics.max_panel_order", [](auto& s) -> auto& { return s.numerics.max_panel_order; });
    add_i("numerics.map_resolution", [](auto& s) -> auto& { return s.numerics.map_resolution; });
    add_d("numerics.shift_window", [](auto& s) -> auto& { return s.numerics.shift_window; });
    add_b("numerics.compute_shift", [](auto& s) -> auto& { return s.numerics.compute_shift; });
    add_i("numerics.workers", [](auto& s) -> auto& { return s.numerics.workers; });

    f.emplace("output.directory",
              Field{[](const Scenario& s) { return json(s.output.directory); },
                    [](Scenario& s, const json& v) {
                      s.output.directory = expect<std::string>(v, "output.directory");
                    }});
    return f;
  }();
  return fields;
}

void set_field(Scenario& scenario, const std::string& key, const json& value) {
  const auto& fields = registry();
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw ValidationError("unknown configuration key \"" + key + "\"");
  }
  it->second.set(scenario, value);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Scenario parse_and_validate(std::string_view config_text) {
  Scenario scenario;
  if (config_text.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    json doc;
    try {
      doc = json::parse(config_text.begin(), config_text.end());
    } catch (const json::parse_error& e) {
      // nlohmann reports the byte just past the offending token.
      const auto [line, column] = line_column(config_text, e.byte > 0 ? e.byte - 1 : 0);
      throw ValidationError(fmt::format("config parse error at line {}, column {}: {}", line,
                                        column, e.what()));
    }
    if (!doc.is_object()) {
      throw ValidationError("configuration must be a JSON object of dotted keys");
    }
    for (const auto& [key, value] : doc.items()) {
      set_field(scenario, key, value);
    }
  }
  scenario.validate();
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read configuration file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_and_validate(buffer.str());
}

void apply_setting(Scenario& scenario, std::string_view key, std::string_view value) {
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = std::string(value);
  }
  set_field(scenario, std::string(key), parsed);
}

std::string to_config_json(const Scenario& scenario) {
  json doc = json::object();
  for (const auto& [key, f] : registry()) {
    doc[key] = f.get(scenario);
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [key, f] : registry()) keys.push_back(key);
  return keys;
}

std::uint64_t config_hash(const Scenario& scenario) {
  // Worker count and output location do not change any result.
  Scenario canonical = scenario;
  canonical.numerics.workers = Numerics{}.workers;
  canonical.output = OutputSettings{};
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_config_json(canonical)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex_hash(std::uint64_t hash) { return fmt::format("{:016x}", hash); }

bool operator==(const Scenario& a, const Scenario& b) {
  for (const auto& [key, f] : registry()) {
    if (f.get(a) != f.get(b)) return false;
  }
  return true;
}

}  // namespace lunarbeam
