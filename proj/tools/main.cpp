// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through zipsmooth.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zipsmooth/zipsmooth.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for any library failure; carries the status for the exit code.
struct Failure : std::runtime_error {
  zs_status status;
  Failure(zs_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
};

void check(zs_status status) {
  if (status != ZS_OK)
    throw Failure(status, zs_last_error());  // already prefixed with the code
}

int exit_code(zs_status status) {
  switch (status) {
    case ZS_INVALID_ARGUMENT:
    case ZS_INVALID_CONFIG:
    case ZS_PARSE_ERROR:
    case ZS_SHAPE_ERROR:
    case ZS_OUT_OF_DOMAIN:
    case ZS_IO_ERROR:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

struct SystemDeleter {
  void operator()(zs_system* s) const { zs_system_free(s); }
};
struct LiftDeleter {
  void operator()(zs_lift* l) const { zs_lift_free(l); }
};
struct PolylineDeleter {
  void operator()(zs_polyline* p) const { zs_polyline_free(p); }
};
struct StringDeleter {
  void operator()(char* s) const { zs_string_free(s); }
};
using SystemPtr = std::unique_ptr<zs_system, SystemDeleter>;
using LiftPtr = std::unique_ptr<zs_lift, LiftDeleter>;
using PolylinePtr = std::unique_ptr<zs_polyline, PolylineDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Where a subcommand gets its zipper from.
struct Source {
  std::string config;
  std::string example1;
  std::string example2;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("config", src.config, "zipper config (JSON)");
  auto* e1 = cmd->add_option("--example1", src.example1,
                             "preset: p=<v> or q1=<v>,y1=<v>,y2=<v>");
  auto* e2 = cmd->add_option("--example2", src.example2, "preset: h=<v>");
  e1->excludes(e2);
}

std::map<std::string, double> key_values(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("preset", "expected key=value, got " + item);
    const std::string key = item.substr(0, eq);
    try {
      std::size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(key);
      out[key] = v;
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("preset", "bad number for " + key);
    }
  }
  return out;
}

double take(std::map<std::string, double>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw CLI::ValidationError("preset", "missing " + key);
  const double v = it->second;
  kv.erase(it);
  return v;
}

void no_leftovers(const std::map<std::string, double>& kv) {
  if (!kv.empty())
    throw CLI::ValidationError("preset", "unknown key " + kv.begin()->first);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(ZS_IO_ERROR, "IoError: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Failure(ZS_IO_ERROR, "IoError: cannot write " + path);
}

SystemPtr load(const Source& src) {
  const int given = !src.config.empty() + !src.example1.empty() +
                    !src.example2.empty();
  if (given != 1)
    throw CLI::ValidationError(
        "source", "give exactly one of <config>, --example1, --example2");
  zs_system* raw = nullptr;
  if (!src.example1.empty()) {
    auto kv = key_values(src.example1);
    if (kv.contains("p")) {
      const double p = take(kv, "p");
      no_leftovers(kv);
      check(zs_system_example1(p, &raw));
    } else {
      const double q1 = take(kv, "q1");
      const double y1 = take(kv, "y1");
      const double y2 = take(kv, "y2");
      no_leftovers(kv);
      check(zs_system_example1_general(q1, y1, y2, &raw));
    }
  } else if (!src.example2.empty()) {
    auto kv = key_values(src.example2);
    const double h = take(kv, "h");
    no_leftovers(kv);
    check(zs_system_example2(h, &raw));
  } else {
    const std::string text = read_file(src.config);
    char* report = nullptr;
    const zs_status status = zs_system_from_json(text.c_str(), &raw, &report);
    if (report) {
      std::cerr << report;
      zs_string_free(report);
    }
    check(status);
  }
  return SystemPtr(raw);
}

std::vector<double> buffer_for(const zs_system* s) {
  return std::vector<double>(zs_system_dimension(s));
}

// Moves the zipper so that z_0 = 0 when needed and reports the shift on
// stderr. Returns the shift (zero when nothing moved).
std::vector<double> normalize(SystemPtr& system) {
  std::vector<double> shift = buffer_for(system.get());
  zs_system* moved = nullptr;
  check(zs_system_normalize(system.get(), &moved, shift.data()));
  SystemPtr owned(moved);
  bool nonzero = false;
  for (double v : shift) nonzero = nonzero || v != 0.0;
  if (nonzero) {
    std::cerr << "normalized: translated by "
              << ordered_json(shift).dump() << "\n";
    system = std::move(owned);
  }
  return shift;
}

void print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth self-affine lifts of self-similar zippers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zipsmooth 0.1.0");

  Source src;
  double t = 0.0;
  double tol = 1e-9;
  std::string out_path;
  std::size_t depth = 12;
  std::string svg_path;
  std::string csv_path;
  bool lifted = false;
  std::vector<int> project;
  std::size_t chaos = 0;
  std::uint64_t seed = 1;
  double width = 800.0;
  double height = 800.0;
  double stroke = 1.0;
  std::string suite = "all";
  double q1 = 0.0, x1 = 0.0, g1 = 0.0, g2 = 0.0;
  std::optional<double> q2;

  auto* validate = app.add_subcommand("validate", "check zipper conditions");
  add_source(validate, src);

  auto* eval_f = app.add_subcommand("eval-f", "evaluate f(t)");
  add_source(eval_f, src);
  eval_f->add_option("--t", t, "parameter in [0, 1]")->required();
  eval_f->add_option("--tol", tol, "error tolerance");

  auto* eval_g = app.add_subcommand("eval-g", "evaluate g(t) = int_0^t f");
  add_source(eval_g, src);
  eval_g->add_option("--t", t, "parameter in [0, 1]")->required();
  eval_g->add_option("--tol", tol, "error tolerance");

  auto* lift = app.add_subcommand("lift", "emit the lifted zipper as config");
  add_source(lift, src);
  lift->add_option("--out", out_path, "output JSON path")->required();

  auto* render = app.add_subcommand("render", "draw the graph of f or g");
  add_source(render, src);
  render->add_option("--depth", depth, "refinement depth")
      ->check(CLI::Range(0, 30));
  render->add_option("--svg", svg_path, "SVG output path");
  render->add_option("--csv", csv_path, "CSV output path");
  render->add_flag("--lifted", lifted, "draw the lifted zipper (graph of g)");
  render->add_option("--project", project, "two column indices to draw")
      ->expected(2)
      ->delimiter(',');
  render->add_option("--chaos", chaos,
                     "chaos-game point count instead of refinement");
  render->add_option("--seed", seed, "chaos-game seed");
  render->add_option("--width", width, "pixels")->check(CLI::PositiveNumber);
  render->add_option("--height", height, "pixels")->check(CLI::PositiveNumber);
  render->add_option("--stroke", stroke, "stroke width in pixels")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run numerical checks");
  add_source(verify, src);
  verify->add_option("--suite", suite, "all|feq|quad|deriv|tangent|contraction")
      ->check(CLI::IsMember(
          {"all", "feq", "quad", "deriv", "tangent", "contraction"}));

  auto* design = app.add_subcommand(
      "inverse-design", "vertex values from prescribed integrals");
  design->add_option("--q1", q1, "first node ratio")->required();
  design->add_option("--q2", q2, "second node ratio (default 1 - q1)");
  design->add_option("--x1", x1, "inner node")->required();
  design->add_option("--g1", g1, "target g(x1)")->required();
  design->add_option("--g2", g2, "target g(1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*validate) {
      const int given = !src.config.empty() + !src.example1.empty() +
                        !src.example2.empty();
      if (given == 1 && !src.config.empty()) {
        const std::string text = read_file(src.config);
        int ok = 0;
        char* report = nullptr;
        check(zs_validate_json(text.c_str(), &ok, &report));
        StringPtr guard(report);
        std::cout << report;
        return ok ? 0 : kExitFailure;
      }
      SystemPtr system = load(src);
      char* report = nullptr;
      check(zs_system_validation_json(system.get(), &report));
      StringPtr guard(report);
      std::cout << report;
      return 0;
    }

    if (*eval_f) {
      SystemPtr system = load(src);
      std::vector<double> value = buffer_for(system.get());
      double bound = 0.0;
      check(zs_eval_f(system.get(), t, tol, value.data(), &bound));
      print({{"t", t}, {"value", value}, {"error_bound", bound}});
      return 0;
    }

    if (*eval_g) {
      SystemPtr system = load(src);
      const std::vector<double> shift = normalize(system);
      zs_lift* raw = nullptr;
      check(zs_lift_create(system.get(), &raw));
      LiftPtr l(raw);
      std::vector<double> value = buffer_for(system.get());
      double bound = 0.0;
      check(zs_eval_g(system.get(), l.get(), t, tol, value.data(), &bound));
      // Back to the original coordinates: int_0^t (f_0 - shift) = g - t shift.
      for (std::size_t k = 0; k < value.size(); ++k) value[k] -= t * shift[k];
      print({{"t", t}, {"value", value}, {"error_bound", bound}});
      return 0;
    }

    if (*lift) {
      SystemPtr system = load(src);
      normalize(system);
      zs_lift* raw = nullptr;
      check(zs_lift_create(system.get(), &raw));
      LiftPtr l(raw);
      zs_system* lifted_raw = nullptr;
      check(zs_lift_system(l.get(), &lifted_raw));
      SystemPtr lifted_system(lifted_raw);
      char* json = nullptr;
      check(zs_system_to_json(lifted_system.get(), &json));
      StringPtr guard(json);
      write_file(out_path, json);
      std::vector<double> h = buffer_for(system.get());
      check(zs_lift_h(l.get(), h.data()));
      print({{"h", h}, {"out", out_path}});
      return 0;
    }

    if (*render) {
      if (svg_path.empty() && csv_path.empty())
        throw CLI::ValidationError("render", "give --svg and/or --csv");
      SystemPtr system = load(src);
      zs_polyline* raw = nullptr;
      if (chaos > 0) {
        if (lifted) {
          normalize(system);
          zs_lift* lraw = nullptr;
          check(zs_lift_create(system.get(), &lraw));
          LiftPtr l(lraw);
          zs_system* sraw = nullptr;
          check(zs_lift_system(l.get(), &sraw));
          SystemPtr lifted_system(sraw);
          check(zs_chaos_game(lifted_system.get(), chaos, seed, &raw));
        } else {
          check(zs_chaos_game(system.get(), chaos, seed, &raw));
        }
      } else {
        if (lifted) normalize(system);
        check(zs_render(system.get(), depth, lifted ? 1 : 0, &raw));
      }
      PolylinePtr polyline(raw);
      if (!csv_path.empty())
        check(zs_polyline_write_csv(polyline.get(), csv_path.c_str()));
      if (!svg_path.empty()) {
        const int a0 = project.empty() ? -1 : project[0];
        const int a1 = project.empty() ? -1 : project[1];
        check(zs_polyline_write_svg(polyline.get(), svg_path.c_str(), width,
                                    height, stroke, a0, a1));
      }
      return 0;
    }

    if (*verify) {
      SystemPtr system = load(src);
      char* report = nullptr;
      int passed = 0;
      check(zs_verify(system.get(), suite.c_str(), &report, &passed));
      StringPtr guard(report);
      std::cout << report;
      return passed ? 0 : kExitFailure;
    }

    if (*design) {
      const double q2v = q2.value_or(1.0 - q1);
      double y1 = 0.0, y2 = 0.0;
      check(zs_inverse_design(q1, q2v, x1, g1, g2, &y1, &y2));
      zs_system* raw = nullptr;
      check(zs_system_example1_general(q1, y1, y2, &raw));
      SystemPtr system(raw);
      char* json = nullptr;
      check(zs_system_to_json(system.get(), &json));
      StringPtr guard(json);
      print({{"y1", y1},
             {"y2", y2},
             {"config", ordered_json::parse(json)}});
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
