// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/examples.hpp"

#include <cmath>
#include <string>

#include "zipsmooth/error.hpp"

namespace zipsmooth {

namespace {

AffineMap scalar_map(double slope, double offset) {
  Matrix linear(1);
  linear(0, 0) = slope;
  return AffineMap(std::move(linear), Vector{offset});
}

}  // namespace

double Example1General::closed_form_h() const {
  return y1 * q2() / (1.0 - p1() * q1 - p2() * q2());
}

ZipperSystem build_example1(const Example1Config& config) {
  const double p = config.p;
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::InvalidConfig,
                "p must lie in (0, 1), got " + std::to_string(p));
  std::vector<AffineMap> maps{scalar_map(p, 0.0), scalar_map(1.0 - p, p)};
  std::vector<Vector> vertices{Vector{0.0}, Vector{p}, Vector{1.0}};
  return ZipperSystem{
      Zipper::validate(std::move(maps), std::move(vertices), {0, 0}),
      LineZipper::build({0.0, 0.5, 1.0}, {0, 0})};
}

ZipperSystem build_example1(const Example1General& config) {
  if (!(config.q1 > 0.0 && config.q1 < 1.0))
    throw Error(ErrorCode::InvalidConfig, "q1 must lie in (0, 1)");
  if (!(config.y1 > 0.0 && config.y1 < config.y2))
    throw Error(ErrorCode::InvalidConfig, "need 0 < y1 < y2");
  std::vector<AffineMap> maps{scalar_map(config.p1(), 0.0),
                              scalar_map(config.p2(), config.y1)};
  std::vector<Vector> vertices{Vector{0.0}, Vector{config.y1},
                               Vector{config.y2}};
  return ZipperSystem{
      Zipper::validate(std::move(maps), std::move(vertices), {0, 0}),
      LineZipper::build({0.0, config.q1, 1.0}, {0, 0})};
}

double Example2Config::p() const { return std::sqrt(h * h + 0.25); }
double Example2Config::alpha() const { return std::atan(2.0 * h); }

ZipperSystem build_example2(const Example2Config& config) {
  const double h = config.h;
  if (!(h > 0.0 && h < std::sqrt(3.0) / 2.0))
    throw Error(ErrorCode::InvalidConfig,
                "h must lie in (0, sqrt(3)/2), got " + std::to_string(h));
  const double p = config.p();
  const double c = std::cos(config.alpha());
  const double s = std::sin(config.alpha());
  if (std::abs(p * c - 0.5) > 1e-12)
    throw Error(ErrorCode::InvalidConfig, "p cos(alpha) drifted from 1/2");

  const Matrix rot_a{{c, -s}, {s, c}};
  const Matrix rot_b{{c, s}, {-s, c}};
  std::vector<AffineMap> maps{AffineMap(p * rot_a, Vector{0.0, 0.0}),
                              AffineMap(p * rot_b, Vector{0.5, h})};
  std::vector<Vector> vertices{Vector{0.0, 0.0}, Vector{0.5, h},
                               Vector{1.0, 0.0}};
  return ZipperSystem{
      Zipper::validate(std::move(maps), std::move(vertices), {0, 0}),
      LineZipper::build({0.0, 0.5, 1.0}, {0, 0})};
}

Vector example2_derived_constant(const ZipperSystem& system,
                                 const SmoothLift& lift) {
  return lift.node_integrals.at(1) - 0.5 * system.zipper.vertex(1);
}

Vector example2_printed_constant(const Example2Config& config) {
  const double p = config.p();
  const double c = std::cos(config.alpha());
  const double s = std::sin(config.alpha());
  const double denom = 1.0 - p * c;
  const Matrix rot_a{{c, -s}, {s, c}};
  return (0.5 * p) * (rot_a * Vector{1.0 / (2.0 * denom), config.h / denom});
}

}  // namespace zipsmooth
