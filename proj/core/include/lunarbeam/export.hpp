#pragma once

#include <filesystem>
#include <string_view>

#include "lunarbeam/diffraction.hpp"

namespace lunarbeam {

/// Matrix CSV: the header row holds the x coordinates (first cell "y\x"),
/// each following row starts with its y coordinate. Rows ascend in y.
void write_map_csv(const IrradianceMap& map, const std::filesystem::path& path);

/// 16-bit binary PGM (P5, maxval 65535, big-endian), scaled so the map
/// maximum is 65535. The top image row is the largest y. The W/m^2 per count
/// scale is written to `<path>.scale.txt`.
void write_map_pgm(const IrradianceMap& map, const std::filesystem::path& path);

/// Path of the sidecar written by write_map_pgm.
std::filesystem::path pgm_scale_path(const std::filesystem::path& pgm_path);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace lunarbeam
