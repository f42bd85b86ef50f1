#include "lunarbeam/export.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

#include "lunarbeam/error.hpp"
#include "lunarbeam/receiver.hpp"

namespace lunarbeam {

namespace {

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  auto out = open_output(path, std::ios::out | std::ios::trunc | std::ios::binary);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  finish(out, path);
}

void write_map_csv(const IrradianceMap& map, const std::filesystem::path& path) {
  std::string text = "y\\x";
  for (const double x : map.xs) {
    text += ',';
    text += format_number(x);
  }
  text += '\n';
  for (std::size_t iy = 0; iy < map.ys.size(); ++iy) {
    text += format_number(map.ys[iy]);
    for (std::size_t ix = 0; ix < map.xs.size(); ++ix) {
      text += ',';
      text += format_number(map.at(ix, iy));
    }
    text += '\n';
  }
  write_text_file(path, text);
}

std::filesystem::path pgm_scale_path(const std::filesystem::path& pgm_path) {
  return std::filesystem::path(pgm_path.string() + ".scale.txt");
}

void write_map_pgm(const IrradianceMap& map, const std::filesystem::path& path) {
  constexpr double kMaxCount = 65535.0;
  const double peak = map.max_value();
  const double scale = peak > 0.0 ? peak / kMaxCount : 0.0;

  auto out = open_output(path, std::ios::out | std::ios::trunc | std::ios::binary);
  out << "P5\n" << map.xs.size() << ' ' << map.ys.size() << "\n65535\n";
  for (std::size_t row = 0; row < map.ys.size(); ++row) {
    const std::size_t iy = map.ys.size() - 1 - row;
    for (std::size_t ix = 0; ix < map.xs.size(); ++ix) {
      const double count = scale > 0.0 ? std::round(map.at(ix, iy) / scale) : 0.0;
      const auto value = static_cast<std::uint16_t>(std::clamp(count, 0.0, kMaxCount));
      const char bytes[2] = {static_cast<char>(value >> 8), static_cast<char>(value & 0xff)};
      out.write(bytes, 2);
    }
  }
  finish(out, path);

  write_text_file(pgm_scale_path(path),
                  fmt::format("# irradiance [W/m^2] = count * scale\n"
                              "scale_w_per_m2_per_count={}\n"
                              "max_irradiance_w_per_m2={}\n"
                              "x_half_extent_m={}\n"
                              "y_half_extent_m={}\n"
                              "width={}\nheight={}\n",
                              format_number(scale), format_number(peak),
                              format_number(map.extent.half_x), format_number(map.extent.half_y),
                              map.xs.size(), map.ys.size()));
}

}  // namespace lunarbeam
