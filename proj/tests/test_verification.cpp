// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zipsmooth/error.hpp"
#include "zipsmooth/examples.hpp"
#include "zipsmooth/verification.hpp"

using namespace zipsmooth;

namespace {

// polygonal zipper on the line through the given vertices, uniform nodes
ZipperSystem polygon(std::vector<double> ys) {
  std::vector<AffineMap> maps;
  std::vector<Vector> vertices;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i)
    maps.emplace_back(Matrix{{ys[i + 1] - ys[i]}}, Vector{ys[i]});
  for (double y : ys) vertices.push_back(Vector{y});
  const Signature sig = Signature::zeros(maps.size());
  return {Zipper::validate(maps, vertices, sig), LineZipper::uniform(sig)};
}

double metric(const VerificationReport& r, std::string_view name) {
  for (const Metric& m : r.metrics)
    if (m.name == name) return m.value;
  FAIL("missing metric " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("quadrature of the identity") {
  const ZipperSystem sys = build_example1(Example1Config{0.5});
  const Vector q = quadrature_g(1.0, sys.zipper, sys.line, std::size_t{1} << 14);
  CHECK(std::abs(q[0] - 0.5) <= 1e-6);
}

TEST_CASE("quadrature of the p = 0.3 curve") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  const Vector q = quadrature_g(1.0, sys.zipper, sys.line, std::size_t{1} << 10);
  CHECK(std::abs(q[0] - 0.3) <= 2e-3);
  const Vector r = quadrature_g(0.7, sys.zipper, sys.line, std::size_t{1} << 12);
  CHECK(std::abs(r[0] - oracle::example1_g(0.3, 0.7)) <= 1e-4);
  CHECK_THROWS_AS(quadrature_g(1.2, sys.zipper, sys.line, 8), Error);
  CHECK_THROWS_AS(quadrature_g(0.5, sys.zipper, sys.line, 0), Error);
}

TEST_CASE("quadrature error need not shrink monotonically off the dyadic grid") {
  // Kept as a record: the midpoint error at t = 0.7 grows from 256 to 512
  // panels (about 6.9e-7 to 8.6e-7) although it does shrink overall.
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  const double exact = oracle::example1_g(0.3, 0.7);
  double errors[2];
  for (int k = 0; k < 2; ++k) {
    const std::size_t n = std::size_t{1} << (8 + k);
    errors[k] = std::abs(quadrature_g(0.7, sys.zipper, sys.line, n)[0] - exact);
  }
  CHECK(errors[1] > errors[0]);
  CHECK(errors[1] < 1e-6);
  CHECK(errors[1] < 1.3 * errors[0]);
}

TEST_CASE("functional equations hold on the shipped grid") {
  for (double p : {0.1, 0.3, 0.5}) {
    const ZipperSystem sys = build_example1(Example1Config{p});
    const SmoothLift lift = make_lift(sys.zipper, sys.line);
    CHECK(functional_equation_f(sys.zipper, sys.line).passed);
    CHECK(functional_equation_g(sys.zipper, sys.line, lift).passed);
  }
  for (double h : {0.1, 0.3, 0.5, 0.8}) {
    const ZipperSystem sys = build_example2({h});
    const SmoothLift lift = make_lift(sys.zipper, sys.line);
    const auto f = functional_equation_f(sys.zipper, sys.line);
    const auto g = functional_equation_g(sys.zipper, sys.line, lift);
    CHECK(f.passed);
    CHECK(g.passed);
    CHECK(f.samples == 2000);
    CHECK(f.tolerance == 2e-9);
  }
}

TEST_CASE("a wrong lift breaks the g equation") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  SmoothLift lift = make_lift(sys.zipper, sys.line);
  lift.node_integrals[1] = Vector{0.05};
  const auto r = functional_equation_g(sys.zipper, sys.line, lift);
  CHECK_FALSE(r.passed);
  CHECK(r.details.size() <= kReportedOffenders);
  for (std::size_t k = 1; k < r.details.size(); ++k)
    CHECK(r.details[k].error <= r.details[k - 1].error);
}

TEST_CASE("quadrature check") {
  const ZipperSystem half = build_example1(Example1Config{0.5});
  const SmoothLift a = make_lift(half.zipper, half.line);
  CHECK(quadrature_check(half.zipper, half.line, a).passed);

  // p = 0.3 is well inside the final bound but the error is not monotone
  // at t = 0.7 and 0.9, so the check reports a failure
  const ZipperSystem rough = build_example1(Example1Config{0.3});
  const SmoothLift b = make_lift(rough.zipper, rough.line);
  const auto r = quadrature_check(rough.zipper, rough.line, b);
  CHECK_FALSE(r.passed);
  CHECK(metric(r, "max_final_error") < 1e-8);
  CHECK(metric(r, "monotone_breaks") > 0);
}

TEST_CASE("derivative check") {
  for (double p : {0.1, 0.3, 0.5}) {
    const ZipperSystem sys = build_example1(Example1Config{p});
    const SmoothLift lift = make_lift(sys.zipper, sys.line);
    CHECK(derivative_check(sys.zipper, sys.line, lift).passed);
  }
  for (double h : {0.1, 0.3, 0.5}) {
    const ZipperSystem sys = build_example2({h});
    const SmoothLift lift = make_lift(sys.zipper, sys.line);
    CHECK(derivative_check(sys.zipper, sys.line, lift).passed);
  }
}

TEST_CASE("derivative check fails for the roughest rotation example") {
  // Hölder exponent about 0.085 here, well below the assumed 1/2.
  const ZipperSystem sys = build_example2({0.8});
  const SmoothLift lift = make_lift(sys.zipper, sys.line);
  CHECK_FALSE(derivative_check(sys.zipper, sys.line, lift).passed);
}

TEST_CASE("derivative check rejects bad steps") {
  const ZipperSystem sys = build_example1(Example1Config{0.3});
  const SmoothLift lift = make_lift(sys.zipper, sys.line);
  DerivativeOptions none;
  none.deltas.clear();
  CHECK_THROWS_AS(derivative_check(sys.zipper, sys.line, lift, none), Error);
  DerivativeOptions wide;
  wide.deltas = {0.6};
  CHECK_THROWS_AS(derivative_check(sys.zipper, sys.line, lift, wide), Error);
}

TEST_CASE("tangent scan of the parabola") {
  // tangent (1, t) turns smoothly, so the largest step halves exactly
  const ZipperSystem sys = build_example1(Example1Config{0.5});
  const SmoothLift lift = make_lift(sys.zipper, sys.line);
  TangentOptions options;
  options.curve = TangentCurve::Graph;
  const auto r = tangent_scan(sys.zipper, sys.line, lift, options);
  CHECK(r.passed);
  CHECK(metric(r, "doubling_ratio") == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("tangent scan reports a vanishing tangent") {
  const ZipperSystem sys = polygon({0.0, 0.5, 0.0, 0.5, 1.0});
  const SmoothLift lift = make_lift(sys.zipper, sys.line);
  TangentOptions options;
  options.t_min = 0.5;  // first sample sits on the zero of f
  try {
    (void)tangent_scan(sys.zipper, sys.line, lift, options);
    FAIL("expected ZeroTangent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroTangent);
  }
  options.samples = 8;
  CHECK_THROWS_AS(tangent_scan(sys.zipper, sys.line, lift, options), Error);
}

TEST_CASE("eventual contraction needs words of length two") {
  const std::vector<Matrix> maps{Matrix{{0.1, 1.2}, {0.0, 0.1}},
                                 0.5 * Matrix::identity(2)};
  const auto one = eventual_contraction_check(maps, 1);
  CHECK_FALSE(one.passed);
  CHECK(one.max_error == doctest::Approx(1.20828).epsilon(1e-5));
  const auto two = eventual_contraction_check(maps, 2);
  CHECK(two.passed);
  CHECK(metric(two, "word_length") == 2.0);
  CHECK_THROWS_AS(eventual_contraction_check(maps, 0), Error);
  try {
    (void)eventual_contraction_check(maps, 25);
    FAIL("expected CombinatorialBudget");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CombinatorialBudget);
  }
}

TEST_CASE("suite names") {
  CHECK(parse_suite("all") == Suite::All);
  CHECK(parse_suite("feq") == Suite::FunctionalEquations);
  CHECK(parse_suite("quad") == Suite::Quadrature);
  CHECK(parse_suite("deriv") == Suite::Derivative);
  CHECK(parse_suite("tangent") == Suite::Tangent);
  CHECK(parse_suite("contraction") == Suite::Contraction);
  CHECK_THROWS_AS(parse_suite("everything"), Error);
}

TEST_CASE("run_suite normalizes first") {
  // shift the p = 0.5 line zipper by 2; g must still be t^2/2 after the
  // shift is removed, so every check passes
  const ZipperSystem base = build_example1(Example1Config{0.5});
  std::vector<AffineMap> maps;
  for (const AffineMap& m : base.zipper.maps())
    maps.emplace_back(m.linear, m.translation + Vector{2.0} - m.linear * Vector{2.0});
  const ZipperSystem shifted{
      Zipper::validate(maps, {Vector{2.0}, Vector{2.5}, Vector{3.0}}, {0, 0}),
      base.line};
  const auto reports = run_suite(shifted, Suite::FunctionalEquations);
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) CHECK(r.passed);
  const auto contraction = run_suite(shifted, Suite::Contraction);
  REQUIRE(contraction.size() == 1);
  CHECK(contraction[0].passed);
}
