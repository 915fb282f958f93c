// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "zipsmooth/attractor.hpp"
#include "zipsmooth/error.hpp"
#include "zipsmooth/examples.hpp"
#include "zipsmooth/smoothing.hpp"

using namespace zipsmooth;

TEST_CASE("depth 0 is the chord and depth 1 the vertex polyline") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  const Polyline p0 = refine(sys.zipper, 0, &sys.line);
  REQUIRE(p0.size() == 2);
  CHECK(p0.points[0] == Vector{0.0});
  CHECK(p0.points[1] == Vector{1.0});
  CHECK(*p0.params == std::vector<double>{0.0, 1.0});

  const Polyline p1 = refine(sys.zipper, 1, &sys.line);
  REQUIRE(p1.size() == 3);
  CHECK(p1.points[1][0] == doctest::Approx(0.3));
  CHECK(*p1.params == std::vector<double>{0.0, 0.5, 1.0});

  const Polyline p4 = refine(sys.zipper, 4);
  CHECK(p4.size() == 17);
  CHECK_FALSE(p4.params.has_value());
}

TEST_CASE("reversed maps keep the traversal ordered") {
  const Signature sig{1, 0};
  const Zipper z = Zipper::validate(
      {AffineMap(Matrix{{-0.4}}, Vector{0.4}),
       AffineMap(Matrix{{0.6}}, Vector{0.4})},
      {Vector{0.0}, Vector{0.4}, Vector{1.0}}, sig);
  const LineZipper line = LineZipper::uniform(sig);
  for (std::size_t depth = 1; depth <= 8; ++depth) {
    const Polyline p = refine(z, depth, &line);
    CHECK(p.points.front() == z.first_vertex());
    CHECK(p.points.back() == z.last_vertex());
    const auto& t = *p.params;
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] > t[k - 1]);
  }
}

TEST_CASE("params of the rotation example match the vertices at nodes") {
  const ZipperSystem sys = build_example2({0.5});
  const Polyline p = refine(sys.zipper, 6, &sys.line);
  CHECK(p.size() == 65);
  const auto& t = *p.params;
  for (std::size_t k = 0; k < t.size(); ++k)
    CHECK(t[k] == doctest::Approx(static_cast<double>(k) / 64.0));
}

TEST_CASE("mesh bound is non-increasing and certifies the residual") {
  for (double hp : {0.1, 0.5, 0.8}) {
    const ZipperSystem sys = build_example2({hp});
    double previous = INFINITY;
    for (std::size_t depth = 0; depth <= 12; ++depth) {
      const double b = mesh_bound(sys.zipper, depth);
      CHECK(b <= previous);
      previous = b;
    }
    for (std::size_t depth : {4, 8, 12}) {
      const Polyline p = refine(sys.zipper, depth);
      CHECK(p.mesh_bound == mesh_bound(sys.zipper, depth));
      CHECK(hausdorff_residual(p, sys.zipper) <= 2.0 * p.mesh_bound);
    }
  }
}

TEST_CASE("polyline converges to the chaos-game attractor") {
  const ZipperSystem sys = build_example2({0.3});
  const auto cloud = chaos_game(sys.zipper, 20000, 5);
  double previous = INFINITY;
  for (std::size_t depth : {2, 5, 8, 11}) {
    const Polyline p = refine(sys.zipper, depth);
    // every polyline point lies on the attractor, so only one direction
    // of the distance is large; the other is bounded by the cloud density
    const double d = hausdorff_distance(p.points, cloud);
    CHECK(d <= p.mesh_bound + 0.02);
    CHECK(d <= previous + 1e-12);
    previous = d;
  }
}

TEST_CASE("chaos game is deterministic in the seed") {
  const ZipperSystem sys = build_example2({0.5});
  const auto a = chaos_game(sys.zipper, 1000, 9);
  const auto b = chaos_game(sys.zipper, 1000, 9);
  const auto c = chaos_game(sys.zipper, 1000, 10);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == 1000);
}

TEST_CASE("chaos game of constant maps visits only their images") {
  // zero linear parts: every S_i is constant; allowed because the zipper
  // condition still holds for two maps pinned to the same midpoint
  const Zipper z = Zipper::validate(
      {AffineMap(Matrix{{0.0}}, Vector{0.5}), AffineMap(Matrix{{0.0}}, Vector{0.5})},
      {Vector{0.5}, Vector{0.5}, Vector{0.5}}, {0, 0});
  for (const Vector& v : chaos_game(z, 100, 3)) CHECK(v == Vector{0.5});
}

TEST_CASE("hausdorff distance examples") {
  const std::vector<Vector> a{Vector{0.0}, Vector{1.0}};
  const std::vector<Vector> b{Vector{0.0}, Vector{1.0}, Vector{3.0}};
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, b) == 2.0);
  CHECK(hausdorff_distance(b, a) == 2.0);
}

TEST_CASE("refine respects the point budget") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  RefineOptions options;
  options.max_points = 100;
  CHECK_THROWS_AS(refine(sys.zipper, 10, nullptr, options), Error);
  RefineOptions shallow;
  shallow.max_depth = 3;
  try {
    (void)refine(sys.zipper, 4, nullptr, shallow);
    FAIL("expected DepthCap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthCap);
  }
}

TEST_CASE("product zipper params are strictly increasing") {
  const ZipperSystem sys = build_example2({0.5});
  const Zipper product = product_zipper(sys.zipper, sys.line);
  const Polyline graph = graph_polyline(refine(product, 9));
  REQUIRE(graph.params.has_value());
  const auto& t = *graph.params;
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] > t[k - 1]);
  CHECK(graph.dimension() == 2);
}

TEST_CASE("lifted polyline lies on the graph of g") {
  const ZipperSystem sys = build_example1(Example1Config{0.5});
  const SmoothLift lift = make_lift(sys.zipper, sys.line);
  const Polyline graph = graph_polyline(refine(lift.lifted, 7));
  for (std::size_t k = 0; k < graph.size(); ++k) {
    const double t = (*graph.params)[k];
    CHECK(graph.points[k][0] == doctest::Approx(0.5 * t * t).epsilon(1e-12));
  }
}
