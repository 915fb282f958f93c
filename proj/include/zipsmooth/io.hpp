// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_IO_HPP
#define ZIPSMOOTH_IO_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zipsmooth/attractor.hpp"
#include "zipsmooth/verification.hpp"
#include "zipsmooth/zipper.hpp"

namespace zipsmooth {

struct MapConfig {
  std::vector<std::vector<double>> linear;  // n x n, row-major
  std::vector<double> translation;

  friend bool operator==(const MapConfig&, const MapConfig&) = default;
};

// JSON schema:
//   {
//     "dimension": n,
//     "maps": [{"linear": [[...], ...], "translation": [...]}, ...],
//     "vertices": [[...], ...],            // m + 1 points
//     "signature": [0, 1, ...],            // m bits
//     "lineNodes": [0, ..., 1],            // optional, default uniform
//     "contraction": "per-map" | "eventual"  // optional, default per-map
//   }
// Unknown keys are rejected.
struct ZipperConfig {
  std::size_t dimension = 0;
  std::vector<MapConfig> maps;
  std::vector<std::vector<double>> vertices;
  std::vector<int> signature;
  std::optional<std::vector<double>> line_nodes;
  ContractionMode contraction = ContractionMode::PerMap;

  friend bool operator==(const ZipperConfig&, const ZipperConfig&) = default;
};

// Throws ParseError (with line and column for syntax errors, or the name
// of an unknown key) and ShapeError naming the offending field.
ZipperConfig parse_config(std::string_view text);
std::string serialize_config(const ZipperConfig& config);

ZipperConfig to_config(const Zipper& zipper, const LineZipper& line);
ValidationReport check_config(const ZipperConfig& config);
ZipperSystem load_system(const ZipperConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

// Header t,x1,...,xd (t only when params are present), one row per point,
// '\n' line endings.
std::string csv_text(const Polyline& polyline);
void export_csv(const Polyline& polyline, const std::filesystem::path& path);

struct RenderSpec {
  std::size_t depth = 12;
  double width = 800.0;
  double height = 800.0;
  double stroke_width = 1.0;  // in output pixels
  // Column pair to draw, counting the t column first when params exist.
  // Defaults to the first two columns.
  std::optional<std::array<std::size_t, 2>> projection;
};

// SVG 1.1 document with a single <polyline>, y axis pointing up.
std::string svg_text(const Polyline& polyline, const RenderSpec& spec);
void export_svg(const Polyline& polyline, const RenderSpec& spec,
                const std::filesystem::path& path);

std::string reports_json(std::span<const VerificationReport> reports);
std::string validation_json(const ValidationReport& report);

}  // namespace zipsmooth

#endif
