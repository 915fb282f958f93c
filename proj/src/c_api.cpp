// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/zipsmooth.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "zipsmooth/attractor.hpp"
#include "zipsmooth/error.hpp"
#include "zipsmooth/examples.hpp"
#include "zipsmooth/io.hpp"
#include "zipsmooth/parametrization.hpp"
#include "zipsmooth/smoothing.hpp"
#include "zipsmooth/verification.hpp"
#include "zipsmooth/zipper.hpp"

struct zs_system {
  zipsmooth::ZipperSystem value;
};

struct zs_lift {
  zipsmooth::SmoothLift value;
  zipsmooth::LineZipper line;
};

struct zs_polyline {
  zipsmooth::Polyline value;
};

namespace {

thread_local std::string last_error;

zs_status fail(zs_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body, mapping exceptions onto status codes.
template <typename F>
zs_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return ZS_OK;
  } catch (const zipsmooth::Error& e) {
    return fail(static_cast<zs_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ZS_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(ZS_INTERNAL_ERROR, e.what());
  }
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void require(bool condition, const char* what) {
  if (!condition)
    throw zipsmooth::Error(zipsmooth::ErrorCode::InvalidArgument, what);
}

void copy_out(const zipsmooth::Vector& v, double* out) {
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
}

zs_system* wrap(zipsmooth::ZipperSystem system) {
  return new zs_system{std::move(system)};
}

}  // namespace

extern "C" {

const char* zs_last_error(void) { return last_error.c_str(); }

const char* zs_status_name(zs_status status) {
  if (status == ZS_OK) return "Ok";
  if (status == ZS_INTERNAL_ERROR) return "InternalError";
  return zipsmooth::to_string(static_cast<zipsmooth::ErrorCode>(status));
}

void zs_string_free(char* text) { std::free(text); }

zs_status zs_system_from_json(const char* json, zs_system** out,
                              char** report_json) {
  if (report_json) *report_json = nullptr;
  return guarded([&] {
    require(json && out, "null argument");
    *out = nullptr;
    const auto config = zipsmooth::parse_config(json);
    try {
      *out = wrap(zipsmooth::load_system(config));
    } catch (const zipsmooth::ZipperViolationError& e) {
      if (report_json)
        *report_json = duplicate(zipsmooth::validation_json(e.report()));
      throw;
    }
  });
}

zs_status zs_system_example1(double p, zs_system** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = wrap(zipsmooth::build_example1(zipsmooth::Example1Config{p}));
  });
}

zs_status zs_system_example1_general(double q1, double y1, double y2,
                                     zs_system** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = wrap(zipsmooth::build_example1(
        zipsmooth::Example1General{q1, y1, y2}));
  });
}

zs_status zs_system_example2(double h, zs_system** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = wrap(zipsmooth::build_example2(zipsmooth::Example2Config{h}));
  });
}

void zs_system_free(zs_system* system) { delete system; }

size_t zs_system_dimension(const zs_system* system) {
  return system ? system->value.zipper.dimension() : 0;
}

size_t zs_system_map_count(const zs_system* system) {
  return system ? system->value.zipper.size() : 0;
}

zs_status zs_system_to_json(const zs_system* system, char** json) {
  return guarded([&] {
    require(system && json, "null argument");
    *json = duplicate(zipsmooth::serialize_config(
        zipsmooth::to_config(system->value.zipper, system->value.line)));
  });
}

zs_status zs_system_validation_json(const zs_system* system, char** json) {
  return guarded([&] {
    require(system && json, "null argument");
    const auto& z = system->value.zipper;
    const auto report = zipsmooth::Zipper::check(z.maps(), z.vertices(),
                                                 z.signature(), z.options());
    *json = duplicate(zipsmooth::validation_json(report));
  });
}

zs_status zs_validate_json(const char* json, int* ok, char** report_json) {
  return guarded([&] {
    require(json && ok && report_json, "null argument");
    *report_json = nullptr;
    const auto config = zipsmooth::parse_config(json);
    auto report = zipsmooth::check_config(config);
    if (report.ok() && config.line_nodes) {
      // Node problems are reported like shape problems.
      try {
        zipsmooth::LineZipper::build(*config.line_nodes,
                                     zipsmooth::Signature(config.signature));
      } catch (const zipsmooth::Error& e) {
        report.shape_issues.push_back(std::string("lineNodes: ") + e.what());
      }
    }
    *ok = report.ok() ? 1 : 0;
    *report_json = duplicate(zipsmooth::validation_json(report));
  });
}

zs_status zs_system_normalize(const zs_system* system, zs_system** out,
                              double* translation) {
  return guarded([&] {
    require(system && out, "null argument");
    auto normalized = zipsmooth::normalize_zipper(system->value.zipper);
    if (translation) copy_out(normalized.translation, translation);
    *out = wrap(zipsmooth::ZipperSystem{std::move(normalized.zipper),
                                        system->value.line});
  });
}

zs_status zs_eval_f(const zs_system* system, double t, double tol,
                    double* value, double* error_bound) {
  return guarded([&] {
    require(system && value, "null argument");
    zipsmooth::EvalOptions options;
    options.tol = tol;
    const auto r = zipsmooth::eval_f(t, system->value.zipper,
                                     system->value.line, options);
    copy_out(r.value, value);
    if (error_bound) *error_bound = r.error_bound;
  });
}

zs_status zs_lift_create(const zs_system* system, zs_lift** out) {
  return guarded([&] {
    require(system && out, "null argument");
    *out = new zs_lift{
        zipsmooth::make_lift(system->value.zipper, system->value.line),
        system->value.line};
  });
}

void zs_lift_free(zs_lift* lift) { delete lift; }

zs_status zs_lift_h(const zs_lift* lift, double* h) {
  return guarded([&] {
    require(lift && h, "null argument");
    copy_out(lift->value.h, h);
  });
}

zs_status zs_lift_system(const zs_lift* lift, zs_system** out) {
  return guarded([&] {
    require(lift && out, "null argument");
    *out = wrap(zipsmooth::ZipperSystem{lift->value.lifted, lift->line});
  });
}

zs_status zs_eval_g(const zs_system* system, const zs_lift* lift, double t,
                    double tol, double* value, double* error_bound) {
  return guarded([&] {
    require(system && lift && value, "null argument");
    zipsmooth::EvalOptions options;
    options.tol = tol;
    const auto r = zipsmooth::eval_g(t, system->value.zipper,
                                     system->value.line, lift->value, options);
    copy_out(r.value, value);
    if (error_bound) *error_bound = r.error_bound;
  });
}

zs_status zs_render(const zs_system* system, size_t depth, int lifted,
                    zs_polyline** out) {
  return guarded([&] {
    require(system && out, "null argument");
    const auto& sys = system->value;
    zipsmooth::Polyline raw;
    if (lifted) {
      const auto lift = zipsmooth::make_lift(sys.zipper, sys.line);
      raw = zipsmooth::refine(lift.lifted, depth);
    } else {
      raw = zipsmooth::refine(zipsmooth::product_zipper(sys.zipper, sys.line),
                              depth);
    }
    *out = new zs_polyline{zipsmooth::graph_polyline(raw)};
  });
}

zs_status zs_chaos_game(const zs_system* system, size_t count, uint64_t seed,
                        zs_polyline** out) {
  return guarded([&] {
    require(system && out, "null argument");
    zipsmooth::Polyline p;
    p.points = zipsmooth::chaos_game(system->value.zipper, count, seed);
    *out = new zs_polyline{std::move(p)};
  });
}

void zs_polyline_free(zs_polyline* polyline) { delete polyline; }

size_t zs_polyline_size(const zs_polyline* polyline) {
  return polyline ? polyline->value.size() : 0;
}

size_t zs_polyline_dimension(const zs_polyline* polyline) {
  return polyline ? polyline->value.dimension() : 0;
}

int zs_polyline_has_params(const zs_polyline* polyline) {
  return polyline && polyline->value.params ? 1 : 0;
}

double zs_polyline_mesh_bound(const zs_polyline* polyline) {
  return polyline ? polyline->value.mesh_bound : 0.0;
}

zs_status zs_polyline_row(const zs_polyline* polyline, size_t index,
                          double* row) {
  return guarded([&] {
    require(polyline && row, "null argument");
    const auto& p = polyline->value;
    if (index >= p.size())
      throw zipsmooth::Error(zipsmooth::ErrorCode::OutOfDomain,
                             "row index out of range");
    std::size_t k = 0;
    if (p.params) row[k++] = (*p.params)[index];
    for (std::size_t c = 0; c < p.dimension(); ++c)
      row[k++] = p.points[index][c];
  });
}

zs_status zs_polyline_write_csv(const zs_polyline* polyline,
                                const char* path) {
  return guarded([&] {
    require(polyline && path, "null argument");
    zipsmooth::export_csv(polyline->value, path);
  });
}

zs_status zs_polyline_write_svg(const zs_polyline* polyline, const char* path,
                                double width, double height,
                                double stroke_width, int axis0, int axis1) {
  return guarded([&] {
    require(polyline && path, "null argument");
    zipsmooth::RenderSpec spec;
    spec.width = width;
    spec.height = height;
    spec.stroke_width = stroke_width;
    if (axis0 >= 0 || axis1 >= 0) {
      require(axis0 >= 0 && axis1 >= 0, "both axes must be given");
      spec.projection = std::array<std::size_t, 2>{
          static_cast<std::size_t>(axis0), static_cast<std::size_t>(axis1)};
    }
    zipsmooth::export_svg(polyline->value, spec, path);
  });
}

zs_status zs_verify(const zs_system* system, const char* suite,
                    char** report_json, int* all_passed) {
  return guarded([&] {
    require(system && report_json && all_passed, "null argument");
    *report_json = nullptr;
    const auto which = zipsmooth::parse_suite(suite ? suite : "all");
    const auto reports = zipsmooth::run_suite(system->value, which);
    bool all = true;
    for (const auto& r : reports) all = all && r.passed;
    *all_passed = all ? 1 : 0;
    *report_json = duplicate(zipsmooth::reports_json(reports));
  });
}

zs_status zs_inverse_design(double q1, double q2, double x1, double g1,
                            double g2, double* y1, double* y2) {
  return guarded([&] {
    require(y1 && y2, "null argument");
    const auto v = zipsmooth::inverse_design(q1, q2, x1, g1, g2);
    *y1 = v.y1;
    *y2 = v.y2;
  });
}

}  // extern "C"
