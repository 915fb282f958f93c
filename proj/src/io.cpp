// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "zipsmooth/error.hpp"

namespace zipsmooth {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void shape_error(const std::string& field,
                              const std::string& what) {
  throw Error(ErrorCode::ShapeError, field + ": " + what);
}

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key()))
      throw Error(ErrorCode::ParseError,
                  "unknown key \"" + item.key() + "\"" +
                      (where.empty() ? "" : " in " + where));
  }
}

double number_at(const json& value, const std::string& field) {
  if (!value.is_number()) shape_error(field, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) shape_error(field, "non-finite number");
  return x;
}

std::vector<double> number_array(const json& value, std::size_t expected,
                                 const std::string& field) {
  if (!value.is_array()) shape_error(field, "expected an array");
  if (value.size() != expected)
    shape_error(field, "expected " + std::to_string(expected) +
                           " entries, got " + std::to_string(value.size()));
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t k = 0; k < value.size(); ++k)
    out.push_back(number_at(value[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  // nlohmann reports the 1-based position of the last byte read.
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const char* contraction_name(ContractionMode mode) {
  return mode == ContractionMode::Eventual ? "eventual" : "per-map";
}

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

}  // namespace

ZipperConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": invalid JSON");
  }
  if (!root.is_object())
    throw Error(ErrorCode::ParseError, "top level must be an object");
  reject_unknown(root,
                 {"dimension", "maps", "vertices", "signature", "lineNodes",
                  "contraction"},
                 "");

  for (const char* key : {"dimension", "maps", "vertices", "signature"})
    if (!root.contains(key)) shape_error(key, "missing");

  ZipperConfig config;
  const json& dim = root["dimension"];
  if (!dim.is_number_integer() || dim.get<long long>() < 1)
    shape_error("dimension", "expected a positive integer");
  config.dimension = dim.get<std::size_t>();
  const std::size_t n = config.dimension;

  const json& maps = root["maps"];
  if (!maps.is_array() || maps.empty())
    shape_error("maps", "expected a non-empty array");
  const std::size_t m = maps.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::string where = "maps[" + std::to_string(i) + "]";
    const json& entry = maps[i];
    if (!entry.is_object()) shape_error(where, "expected an object");
    reject_unknown(entry, {"linear", "translation"}, where);
    if (!entry.contains("linear")) shape_error(where + ".linear", "missing");
    if (!entry.contains("translation"))
      shape_error(where + ".translation", "missing");
    MapConfig map;
    const json& linear = entry["linear"];
    if (!linear.is_array() || linear.size() != n)
      shape_error(where + ".linear",
                  "expected " + std::to_string(n) + " rows");
    for (std::size_t r = 0; r < n; ++r)
      map.linear.push_back(number_array(
          linear[r], n, where + ".linear[" + std::to_string(r) + "]"));
    map.translation =
        number_array(entry["translation"], n, where + ".translation");
    config.maps.push_back(std::move(map));
  }

  const json& vertices = root["vertices"];
  if (!vertices.is_array() || vertices.size() != m + 1)
    shape_error("vertices",
                "expected " + std::to_string(m + 1) + " points");
  for (std::size_t j = 0; j <= m; ++j)
    config.vertices.push_back(number_array(
        vertices[j], n, "vertices[" + std::to_string(j) + "]"));

  const json& signature = root["signature"];
  if (!signature.is_array() || signature.size() != m)
    shape_error("signature", "expected " + std::to_string(m) + " bits");
  for (const json& bit : signature) {
    if (!bit.is_number_integer() ||
        (bit.get<long long>() != 0 && bit.get<long long>() != 1))
      shape_error("signature", "entries must be 0 or 1");
    config.signature.push_back(bit.get<int>());
  }

  if (root.contains("lineNodes"))
    config.line_nodes = number_array(root["lineNodes"], m + 1, "lineNodes");

  if (root.contains("contraction")) {
    const json& mode = root["contraction"];
    if (mode == "per-map")
      config.contraction = ContractionMode::PerMap;
    else if (mode == "eventual")
      config.contraction = ContractionMode::Eventual;
    else
      shape_error("contraction", "expected \"per-map\" or \"eventual\"");
  }
  return config;
}

std::string serialize_config(const ZipperConfig& config) {
  ordered_json root;
  root["dimension"] = config.dimension;
  ordered_json maps = ordered_json::array();
  for (const MapConfig& map : config.maps) {
    ordered_json entry;
    entry["linear"] = map.linear;
    entry["translation"] = map.translation;
    maps.push_back(std::move(entry));
  }
  root["maps"] = std::move(maps);
  root["vertices"] = config.vertices;
  root["signature"] = config.signature;
  if (config.line_nodes) root["lineNodes"] = *config.line_nodes;
  if (config.contraction != ContractionMode::PerMap)
    root["contraction"] = contraction_name(config.contraction);
  return root.dump(2) + "\n";
}

ZipperConfig to_config(const Zipper& zipper, const LineZipper& line) {
  require_compatible(zipper, line);
  ZipperConfig config;
  const std::size_t n = zipper.dimension();
  config.dimension = n;
  for (const AffineMap& map : zipper.maps()) {
    MapConfig entry;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<double> row(n);
      for (std::size_t c = 0; c < n; ++c) row[c] = map.linear(r, c);
      entry.linear.push_back(std::move(row));
    }
    const auto t = map.translation.values();
    entry.translation.assign(t.begin(), t.end());
    config.maps.push_back(std::move(entry));
  }
  for (const Vector& v : zipper.vertices()) {
    const auto values = v.values();
    config.vertices.emplace_back(values.begin(), values.end());
  }
  for (std::size_t i = 0; i < zipper.size(); ++i)
    config.signature.push_back(zipper.signature()[i]);
  config.line_nodes = line.nodes();
  config.contraction = zipper.options().contraction;
  return config;
}

namespace {

struct RawSystem {
  std::vector<AffineMap> maps;
  std::vector<Vector> vertices;
  Signature signature;
  ZipperOptions options;
};

RawSystem raw_system(const ZipperConfig& config) {
  RawSystem raw;
  for (const MapConfig& map : config.maps)
    raw.maps.emplace_back(Matrix::from_rows(map.linear),
                          Vector(map.translation));
  for (const auto& v : config.vertices) raw.vertices.emplace_back(v);
  raw.signature = Signature(config.signature);
  raw.options.contraction = config.contraction;
  return raw;
}

}  // namespace

ValidationReport check_config(const ZipperConfig& config) {
  RawSystem raw = raw_system(config);
  return Zipper::check(raw.maps, raw.vertices, raw.signature, raw.options);
}

ZipperSystem load_system(const ZipperConfig& config) {
  RawSystem raw = raw_system(config);
  Zipper zipper = Zipper::validate(std::move(raw.maps),
                                   std::move(raw.vertices), raw.signature,
                                   raw.options);
  LineZipper line = config.line_nodes
                        ? LineZipper::build(*config.line_nodes, raw.signature)
                        : LineZipper::uniform(raw.signature);
  require_compatible(zipper, line);
  return ZipperSystem{std::move(zipper), std::move(line)};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

namespace {

// Rows of (t, x1, ..., xd), t only when params are present.
std::size_t column_count(const Polyline& polyline) {
  return polyline.dimension() + (polyline.params ? 1 : 0);
}

double column(const Polyline& polyline, std::size_t row, std::size_t col) {
  if (polyline.params) {
    if (col == 0) return (*polyline.params)[row];
    --col;
  }
  return polyline.points[row][col];
}

}  // namespace

std::string csv_text(const Polyline& polyline) {
  if (polyline.params && polyline.params->size() != polyline.size())
    throw Error(ErrorCode::DimensionMismatch,
                "params and points differ in length");
  std::string out;
  if (polyline.params) out += "t";
  for (std::size_t k = 1; k <= polyline.dimension(); ++k) {
    if (!out.empty()) out += ',';
    out += "x" + std::to_string(k);
  }
  out += '\n';
  const std::size_t cols = column_count(polyline);
  for (std::size_t r = 0; r < polyline.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) out += ',';
      out += format_number(column(polyline, r, c));
    }
    out += '\n';
  }
  return out;
}

void export_csv(const Polyline& polyline, const std::filesystem::path& path) {
  write_text_file(path, csv_text(polyline));
}

std::string svg_text(const Polyline& polyline, const RenderSpec& spec) {
  if (!(spec.width > 0.0) || !(spec.height > 0.0) ||
      !(spec.stroke_width > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "width, height and stroke width must be positive");
  if (polyline.points.empty())
    throw Error(ErrorCode::DegenerateInput, "empty polyline");
  const std::size_t cols = column_count(polyline);
  std::array<std::size_t, 2> axes{0, 1};
  if (spec.projection) axes = *spec.projection;
  if (cols < 2 || axes[0] >= cols || axes[1] >= cols || axes[0] == axes[1])
    throw Error(ErrorCode::DimensionUnsupported,
                "cannot draw columns " + std::to_string(axes[0]) + "," +
                    std::to_string(axes[1]) + " of " + std::to_string(cols));

  double lo[2] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  for (std::size_t r = 0; r < polyline.size(); ++r)
    for (int a = 0; a < 2; ++a) {
      const double v = column(polyline, r, axes[a]);
      lo[a] = std::min(lo[a], v);
      hi[a] = std::max(hi[a], v);
    }
  double span[2];
  for (int a = 0; a < 2; ++a) {
    span[a] = hi[a] - lo[a];
    if (!(span[a] > 0.0)) span[a] = std::max(1.0, std::abs(hi[a]));
  }
  const double mx = 0.05 * span[0];
  const double my = 0.05 * span[1];
  const double vb_x = lo[0] - mx;
  const double vb_y = -(hi[1] + my);  // y is flipped
  const double vb_w = span[0] + 2.0 * mx;
  const double vb_h = span[1] + 2.0 * my;
  // preserveAspectRatio meet: user units per pixel is the larger ratio.
  const double scale = std::min(spec.width / vb_w, spec.height / vb_h);
  const double stroke = spec.stroke_width / scale;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         format_number(spec.width) + "\" height=\"" +
         format_number(spec.height) + "\" viewBox=\"" + format_number(vb_x) +
         " " + format_number(vb_y) + " " + format_number(vb_w) + " " +
         format_number(vb_h) + "\">\n";
  out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" +
         format_number(stroke) +
         "\" stroke-linejoin=\"round\" points=\"";
  for (std::size_t r = 0; r < polyline.size(); ++r) {
    if (r > 0) out += ' ';
    out += format_number(column(polyline, r, axes[0]));
    out += ',';
    out += format_number(-column(polyline, r, axes[1]));
  }
  out += "\"/>\n</svg>\n";
  return out;
}

void export_svg(const Polyline& polyline, const RenderSpec& spec,
                const std::filesystem::path& path) {
  write_text_file(path, svg_text(polyline, spec));
}

std::string reports_json(std::span<const VerificationReport> reports) {
  ordered_json root;
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const VerificationReport& r : reports) {
    ordered_json entry;
    entry["check"] = r.check_name;
    entry["passed"] = r.passed;
    entry["max_error"] = r.max_error;
    entry["tolerance"] = r.tolerance;
    entry["samples"] = r.samples;
    ordered_json details = ordered_json::array();
    for (const SampleError& d : r.details)
      details.push_back(ordered_json{{"t", d.t}, {"error", d.error}});
    entry["details"] = std::move(details);
    ordered_json metrics = ordered_json::object();
    for (const Metric& m : r.metrics) metrics[m.name] = m.value;
    entry["metrics"] = std::move(metrics);
    list.push_back(std::move(entry));
    all = all && r.passed;
  }
  root["passed"] = all;
  root["reports"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string validation_json(const ValidationReport& report) {
  ordered_json root;
  root["ok"] = report.ok();
  root["max_vertex_error"] = report.max_vertex_error;
  root["contraction_factors"] = report.contraction_factors;
  root["contraction_word_length"] = report.contraction_word_length;
  root["contraction_rate"] = report.contraction_rate;
  ordered_json issues = ordered_json::array();
  for (const VertexIssue& v : report.vertex_issues) {
    ordered_json entry;
    entry["map"] = v.map_index;
    entry["endpoint"] = v.at_end ? "last" : "first";
    entry["expected_vertex"] = v.expected_vertex;
    entry["observed"] = vector_json(v.observed);
    entry["expected"] = vector_json(v.expected);
    entry["error"] = v.error;
    issues.push_back(std::move(entry));
  }
  root["vertex_issues"] = std::move(issues);
  root["shape_issues"] = report.shape_issues;
  root["contraction_issues"] = report.contraction_issues;
  return root.dump(2) + "\n";
}

}  // namespace zipsmooth
