// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zipsmooth/error.hpp"
#include "zipsmooth/geometry.hpp"
#include "zipsmooth/random.hpp"

using namespace zipsmooth;

namespace {

double uniform_in(Xoshiro256& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

Matrix random_matrix(Xoshiro256& rng, std::size_t d) {
  Matrix m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = uniform_in(rng, -1.0, 1.0);
  return m;
}

Vector random_vector(Xoshiro256& rng, std::size_t d) {
  Vector v(d);
  for (std::size_t k = 0; k < d; ++k) v[k] = uniform_in(rng, -1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("apply on identity and the small worked maps") {
  CHECK(apply(AffineMap::identity(2), Vector{0.3, 0.7}) == Vector{0.3, 0.7});

  // lifted first map of the p = 0.3 interval example
  const AffineMap w1(Matrix{{0.5, 0.0}, {0.0, 0.15}}, Vector{0.0, 0.0});
  const Vector y = apply(w1, Vector{1.0, 1.0});
  CHECK(y[0] == doctest::Approx(0.5));
  CHECK(y[1] == doctest::Approx(0.15));

  // rotation by 45 degrees scaled by sqrt(1/2)
  const double p = std::sqrt(0.5);
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  const AffineMap s1(p * Matrix{{c, -s}, {s, c}}, Vector{0.0, 0.0});
  const Vector z = apply(s1, Vector{1.0, 0.0});
  CHECK(z[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("apply rejects mismatched dimensions") {
  try {
    (void)apply(AffineMap::identity(2), Vector{1.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  CHECK_THROWS_AS(AffineMap(Matrix::identity(2), Vector{1.0}), Error);
}

TEST_CASE("compose examples") {
  const AffineMap m(Matrix{{0.2, 0.1}, {-0.3, 0.4}}, Vector{1.0, 2.0});
  CHECK(compose(AffineMap::identity(2), m) == m);

  const AffineMap a(Matrix{{0.3}}, Vector{0.0});
  const AffineMap b(Matrix{{0.5}}, Vector{0.0});
  CHECK(compose(a, b).linear(0, 0) == doctest::Approx(0.15));

  const AffineMap w1(Matrix{{0.5, 0.0}, {0.0, 0.15}}, Vector{0.0, 0.0});
  const AffineMap ww = compose(w1, w1);
  CHECK(ww.linear(0, 0) == doctest::Approx(0.25));
  CHECK(ww.linear(1, 1) == doctest::Approx(0.0225));
  CHECK(ww.linear(0, 1) == 0.0);
  CHECK(ww.linear(1, 0) == 0.0);
  CHECK(ww.translation == Vector{0.0, 0.0});
}

TEST_CASE("compose agrees with nested apply") {
  Xoshiro256 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng.below(4);
    const AffineMap a(random_matrix(rng, d), random_vector(rng, d));
    const AffineMap b(random_matrix(rng, d), random_vector(rng, d));
    const Vector x = random_vector(rng, d);
    const Vector lhs = apply(compose(a, b), x);
    const Vector rhs = apply(a, apply(b, x));
    CHECK(distance(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("solve_linear examples") {
  const Vector x = solve_linear(Matrix{{0.5}}, Vector{0.25});
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(solve_linear(Matrix::identity(3), Vector{1.0, -2.0, 3.0}) ==
        Vector{1.0, -2.0, 3.0});
  try {
    (void)solve_linear(Matrix{{1.0, 1.0}, {1.0, 1.0}}, Vector{1.0, 0.0});
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}

TEST_CASE("solve_linear residual on well-conditioned random systems") {
  Xoshiro256 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng.below(8);
    // diagonally dominant, so the condition number stays small
    Matrix m = random_matrix(rng, d);
    for (std::size_t k = 0; k < d; ++k) m(k, k) += static_cast<double>(d) + 1.0;
    const Vector b = random_vector(rng, d);
    const Vector x = solve_linear(m, b);
    CHECK(distance(m * x, b) <= 1e-12 * (1.0 + b.norm()));
  }
}

TEST_CASE("operator_norm examples") {
  CHECK(operator_norm(Matrix::identity(2)) == doctest::Approx(1.0));
  CHECK(operator_norm(Matrix::diagonal(Vector{0.5, 0.15})) ==
        doctest::Approx(0.5));
  CHECK(operator_norm(Matrix(3)) == 0.0);

  const double expected = oracle::spectral_norm_2x2(0.5, 0.0, 0.15, 0.35);
  CHECK(expected == doctest::Approx(0.537632).epsilon(1e-6));
  CHECK(operator_norm(Matrix{{0.5, 0.0}, {0.15, 0.35}}) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("operator_norm matches the closed form on random 2x2 matrices") {
  Xoshiro256 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix m = random_matrix(rng, 2);
    const double expected =
        oracle::spectral_norm_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    CHECK(operator_norm(m) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("operator_norm bounds every stretch and its witness attains it") {
  Xoshiro256 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + rng.below(4);
    const Matrix m = random_matrix(rng, d);
    const NormEstimate est = operator_norm_estimate(m);
    for (int k = 0; k < 100; ++k) {
      Vector x = random_vector(rng, d);
      x *= 1.0 / x.norm();
      CHECK((m * x).norm() <= est.value * (1.0 + 1e-9));
    }
    CHECK(est.witness.norm() == doctest::Approx(1.0));
    CHECK(std::abs((m * est.witness).norm() - est.value) <= 1e-6);
  }
}

TEST_CASE("start orthogonal to the top direction still finds the norm") {
  // The all-ones start is a singular vector for the smaller value.
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix u{{r, r}, {r, -r}};
  const Matrix m = u * Matrix::diagonal(Vector{0.2, 0.9}) * u;
  CHECK(operator_norm(m) == doctest::Approx(0.9).epsilon(1e-9));
}
