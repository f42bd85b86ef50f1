#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lunarbeam/scenario.hpp"

namespace lunarbeam {

/// Parses a configuration document and returns the fully resolved scenario.
///
/// The document is a single JSON object with flat dotted keys mirroring the
/// scenario fields ("laser.power", "geometry.distance", "dust.enabled", ...).
/// All quantities are SI base units. Omitted keys keep their defaults; an
/// empty document yields the default scenario. Unknown keys, type mismatches
/// and constraint violations raise ValidationError naming the field; syntax
/// errors report line and column.
Scenario parse_and_validate(std::string_view config_text);

/// Reads and parses a file; IoError if it cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Sets one field from its textual value (JSON literal or bare string).
/// Does not validate the scenario as a whole.
void apply_setting(Scenario& scenario, std::string_view key, std::string_view value);

/// Canonical serialisation: every key, sorted, shortest round-trip numbers.
/// parse_and_validate(to_config_json(s)) reproduces s exactly.
std::string to_config_json(const Scenario& scenario);

/// Every recognised configuration key, sorted.
std::vector<std::string> config_keys();

/// FNV-1a 64 of the canonical serialisation, ignoring numerics.workers and
/// output.directory.
std::uint64_t config_hash(const Scenario& scenario);

std::string hex_hash(std::uint64_t hash);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace lunarbeam
