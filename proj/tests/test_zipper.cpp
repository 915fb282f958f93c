// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "zipsmooth/error.hpp"
#include "zipsmooth/examples.hpp"
#include "zipsmooth/random.hpp"
#include "zipsmooth/zipper.hpp"

using namespace zipsmooth;

namespace {

AffineMap scalar(double slope, double offset) {
  return AffineMap(Matrix{{slope}}, Vector{offset});
}

std::vector<AffineMap> interval_pair(double p) {
  return {scalar(p, 0.0), scalar(1.0 - p, p)};
}

ErrorCode code_of(auto&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("interval pair with matching vertices validates") {
  const Zipper z = Zipper::validate(interval_pair(0.3),
                                    {Vector{0.0}, Vector{0.3}, Vector{1.0}},
                                    {0, 0});
  CHECK(z.size() == 2);
  CHECK(z.dimension() == 1);
  CHECK(z.contraction_factors()[0] == doctest::Approx(0.3));
  CHECK(z.contraction_factors()[1] == doctest::Approx(0.7));
  CHECK(z.max_contraction() == doctest::Approx(0.7));
  // |z_m - z_0| / (1 - 0.7)
  CHECK(z.diameter_bound() == doctest::Approx(1.0 / 0.3));
}

TEST_CASE("wrong middle vertex is reported at the first map's far end") {
  const auto report = Zipper::check(interval_pair(0.3),
                                    {Vector{0.0}, Vector{0.5}, Vector{1.0}},
                                    {0, 0});
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const VertexIssue& issue : report.vertex_issues) {
    if (issue.map_index == 0 && issue.at_end) {
      found = true;
      CHECK(issue.expected_vertex == 1);
      CHECK(issue.observed[0] == doctest::Approx(0.3));
      CHECK(issue.expected[0] == doctest::Approx(0.5));
      CHECK(issue.error == doctest::Approx(0.2));
    }
  }
  CHECK(found);

  try {
    (void)Zipper::validate(interval_pair(0.3),
                           {Vector{0.0}, Vector{0.5}, Vector{1.0}}, {0, 0});
    FAIL("expected a violation");
  } catch (const ZipperViolationError& e) {
    CHECK(e.code() == ErrorCode::ZipperViolation);
    CHECK_FALSE(e.report().vertex_issues.empty());
  }
}

TEST_CASE("rotation example validates") {
  const ZipperSystem sys = build_example2({0.5});
  CHECK(sys.zipper.size() == 2);
  CHECK(sys.zipper.contraction_factors()[0] ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const Vector z1 = apply(sys.zipper.map(0), Vector{1.0, 0.0});
  CHECK(z1[0] == doctest::Approx(0.5));
  CHECK(z1[1] == doctest::Approx(0.5));
  const Vector z2 = apply(sys.zipper.map(1), Vector{1.0, 0.0});
  CHECK(z2[0] == doctest::Approx(1.0));
  CHECK(std::abs(z2[1]) < 1e-12);
}

TEST_CASE("shape problems are collected, not thrown one by one") {
  const auto report = Zipper::check(interval_pair(0.3),
                                    {Vector{0.0}, Vector{0.3}}, {0});
  CHECK_FALSE(report.ok());
  CHECK(report.shape_issues.size() >= 2);
}

TEST_CASE("a non-contracting map is reported") {
  const auto report =
      Zipper::check({scalar(1.0, 0.0)}, {Vector{0.0}, Vector{1.0}}, {0});
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.contraction_issues.empty());
}

TEST_CASE("vertex tolerance: accepted exactly when the perturbation fits") {
  Xoshiro256 rng(21);
  const double tol = 1e-9;
  const ZipperSystem base = build_example2({0.5});
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const double delta = 2.0 * tol * rng.uniform();
    if (std::abs(delta - tol) < 0.01 * tol) continue;
    const double angle = 2.0 * M_PI * rng.uniform();
    std::vector<Vector> vertices = base.zipper.vertices();
    vertices[1] += Vector{delta * std::cos(angle), delta * std::sin(angle)};
    ZipperOptions options;
    options.tolerance = tol;
    const auto report = Zipper::check(base.zipper.maps(), vertices,
                                      base.zipper.signature(), options);
    CHECK(report.ok() == (delta <= tol));
    (report.ok() ? accepted : rejected) += 1;
  }
  CHECK(accepted > 50);
  CHECK(rejected > 50);
}

TEST_CASE("line zipper maps") {
  const LineZipper line = LineZipper::build({0.0, 0.5, 1.0}, {0, 0});
  CHECK(line.forward(0, 0.4) == doctest::Approx(0.2));
  CHECK(line.forward(1, 0.4) == doctest::Approx(0.7));
  CHECK(line.ratio(0) == 0.5);

  const LineZipper flipped = LineZipper::build({0.0, 0.5, 1.0}, {1, 0});
  CHECK(flipped.forward(0, 0.0) == 0.5);
  CHECK(flipped.forward(0, 1.0) == 0.0);
  CHECK(flipped.forward(0, 0.4) == doctest::Approx(0.3));
  CHECK(flipped.inverse(0, 0.25) == doctest::Approx(0.5));
  CHECK(flipped.forward(1, 0.4) == doctest::Approx(0.7));

  // the line zipper is a zipper in its own right
  const Zipper z = flipped.as_zipper();
  CHECK(z.size() == 2);

  CHECK(code_of([] { LineZipper::build({0.0, 1.0}, {0}); }) ==
        ErrorCode::NotContracting);
  CHECK(code_of([] { LineZipper::build({0.0, 0.6, 0.5, 1.0}, {0, 0, 0}); }) ==
        ErrorCode::InvalidNodes);
  CHECK(code_of([] { LineZipper::build({0.1, 0.5, 1.0}, {0, 0}); }) ==
        ErrorCode::InvalidNodes);
  CHECK(code_of([] { LineZipper::build({0.0, 0.5, 1.0}, {0}); }) ==
        ErrorCode::CountMismatch);
}

TEST_CASE("similarity decomposition") {
  const ZipperSystem sys = build_example2({0.5});
  const Vector b = sys.zipper.last_vertex();
  for (std::size_t i = 0; i < 2; ++i) {
    const auto d = decompose(sys.zipper, i);
    CHECK(d.sign == 1);
    CHECK(d.offset == sys.zipper.vertex(i));
    const Vector image = d.linear_part * b;
    CHECK(distance(image, sys.zipper.vertex(i + 1) - sys.zipper.vertex(i)) <=
          1e-9);
  }

  // reversed first map on the line
  const LineZipper flipped = LineZipper::build({0.0, 0.5, 1.0}, {1, 0});
  const auto d = decompose(flipped.as_zipper(), 0);
  CHECK(d.sign == -1);
  CHECK(d.offset[0] == 0.5);
  CHECK(d.linear_part(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("normalize_zipper") {
  const Zipper z = build_example1(Example1Config{0.3}).zipper;
  const NormalizedZipper same = normalize_zipper(z);
  CHECK(same.translation == Vector{0.0});
  CHECK(same.zipper.vertices() == z.vertices());

  std::vector<AffineMap> shifted_maps;
  for (const AffineMap& m : z.maps())
    shifted_maps.emplace_back(m.linear,
                              m.translation + Vector{2.0} - m.linear * Vector{2.0});
  const Zipper shifted = Zipper::validate(
      shifted_maps, {Vector{2.0}, Vector{2.3}, Vector{3.0}}, {0, 0});
  const NormalizedZipper n = normalize_zipper(shifted);
  CHECK(n.translation[0] == -2.0);
  CHECK(n.zipper.vertex(0)[0] == 0.0);
  CHECK(n.zipper.vertex(1)[0] == doctest::Approx(0.3));
  CHECK(n.zipper.vertex(2)[0] == doctest::Approx(1.0));

  // idempotent
  const NormalizedZipper twice = normalize_zipper(n.zipper);
  CHECK(twice.translation == Vector{0.0});
  CHECK(twice.zipper.vertices() == n.zipper.vertices());

  // translating back reproduces the old vertices
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(n.zipper.vertex(j) - n.translation == shifted.vertex(j));
}

TEST_CASE("normalize_zipper in the plane") {
  const Zipper z = build_example2({0.5}).zipper;
  std::vector<AffineMap> maps;
  const Vector s{1.0, 1.0};
  for (const AffineMap& m : z.maps())
    maps.emplace_back(m.linear, m.translation + s - m.linear * s);
  std::vector<Vector> vertices;
  for (const Vector& v : z.vertices()) vertices.push_back(v + s);
  const NormalizedZipper n =
      normalize_zipper(Zipper::validate(maps, vertices, {0, 0}));
  CHECK(n.translation == Vector{-1.0, -1.0});
  CHECK(distance(n.zipper.vertex(1), Vector{0.5, 0.5}) <= 1e-15);
  CHECK(distance(n.zipper.vertex(2), Vector{1.0, 0.0}) <= 1e-15);
}

TEST_CASE("product zipper of the interval example") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  const Zipper prod = product_zipper(sys.zipper, sys.line);
  CHECK(prod.dimension() == 2);
  const Vector a = apply(prod.map(0), Vector{1.0, 1.0});
  CHECK(a[0] == doctest::Approx(0.5));
  CHECK(a[1] == doctest::Approx(0.3));
  const Vector b = apply(prod.map(1), Vector{1.0, 1.0});
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(1.0));
  const Vector c = apply(prod.map(1), Vector{0.0, 0.0});
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(0.3));
  CHECK(prod.vertex(1) == Vector{0.5, 0.3});
}

TEST_CASE("product zipper of the rotation example lives in R^3") {
  const ZipperSystem sys = build_example2({0.5});
  const Zipper prod = product_zipper(sys.zipper, sys.line);
  CHECK(prod.dimension() == 3);
  CHECK(prod.vertex(1) == Vector{0.5, 0.5, 0.5});
}

TEST_CASE("product zipper rejects mismatched line zippers") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  CHECK(code_of([&] {
          product_zipper(sys.zipper, LineZipper::uniform({0, 1}));
        }) == ErrorCode::SignatureMismatch);
  CHECK(code_of([&] {
          product_zipper(sys.zipper, LineZipper::uniform({0, 0, 0}));
        }) == ErrorCode::CountMismatch);
}

TEST_CASE("product zippers of random valid interval zippers validate") {
  Xoshiro256 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    // random strictly increasing vertices and nodes; random signature
    std::vector<double> ys{0.0}, ts{0.0};
    for (std::size_t j = 0; j < m; ++j) {
      ys.push_back(ys.back() + 0.1 + rng.uniform());
      ts.push_back(ts.back() + 0.1 + rng.uniform());
    }
    for (auto& y : ys) y /= ys.back();
    for (auto& t : ts) t /= ts.back();
    std::vector<int> bits;
    std::vector<AffineMap> maps;
    std::vector<Vector> vertices;
    for (double y : ys) vertices.push_back(Vector{y});
    for (std::size_t i = 0; i < m; ++i) {
      const int e = static_cast<int>(rng.below(2));
      bits.push_back(e);
      const double len = ys[i + 1] - ys[i];
      maps.push_back(e ? scalar(-len, ys[i + 1]) : scalar(len, ys[i]));
    }
    const Signature sig(bits);
    const Zipper z = Zipper::validate(maps, vertices, sig);
    const LineZipper line = LineZipper::build(ts, sig);
    const Zipper prod = product_zipper(z, line);
    CHECK(prod.size() == m);
  }
}

TEST_CASE("max_word_norms") {
  const std::vector<Matrix> family{Matrix{{0.1, 1.2}, {0.0, 0.1}},
                                   0.5 * Matrix::identity(2)};
  const auto norms = max_word_norms(family, 2);
  REQUIRE(norms.size() == 2);
  CHECK(norms[0] > 1.0);
  CHECK(norms[1] < 1.0);
  CHECK(code_of([&] {
          std::vector<Matrix> many(10, 0.5 * Matrix::identity(1));
          max_word_norms(many, 7);
        }) == ErrorCode::CombinatorialBudget);
}
