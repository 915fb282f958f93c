// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zipsmooth/error.hpp"

namespace zipsmooth {

namespace {

void require_normalized(const Zipper& zipper) {
  if (zipper.first_vertex().norm() != 0.0)
    throw Error(ErrorCode::NotNormalized,
                "first vertex must be the origin; normalize the zipper first");
}

}  // namespace

Vector solve_h(const Zipper& zipper, const LineZipper& line) {
  require_compatible(zipper, line);
  require_normalized(zipper);
  const std::size_t n = zipper.dimension();
  Matrix system = Matrix::identity(n);
  Vector rhs(n);
  for (std::size_t i = 0; i < zipper.size(); ++i) {
    const SimilarityDecomposition d = decompose(zipper, i);
    const double q = line.ratio(i);
    system -= (d.sign * q) * d.linear_part;
    rhs += q * d.offset;
  }
  return solve_linear(system, rhs);
}

std::vector<Vector> node_integrals(const Zipper& zipper, const LineZipper& line,
                                   const Vector& h) {
  require_compatible(zipper, line);
  require_normalized(zipper);
  if (h.size() != zipper.dimension())
    throw Error(ErrorCode::DimensionMismatch, "h has the wrong dimension");
  std::vector<Vector> g;
  g.reserve(zipper.size() + 1);
  g.push_back(Vector::zeros(zipper.dimension()));
  for (std::size_t i = 0; i < zipper.size(); ++i) {
    const SimilarityDecomposition d = decompose(zipper, i);
    const double q = line.ratio(i);
    Vector step = q * d.offset + static_cast<double>(d.sign) * q * (d.linear_part * h);
    g.push_back(g.back() + step);
  }
  const double drift = distance(g.back(), h);
  if (drift > 1e-10 * (1.0 + h.norm())) {
    throw Error(ErrorCode::SingularSystem,
                "node increments do not sum to g(1); drift " +
                    std::to_string(drift));
  }
  g.back() = h;
  return g;
}

Zipper smooth_zipper(const Zipper& zipper, const LineZipper& line,
                     const Vector& h, const std::vector<Vector>& integrals) {
  require_compatible(zipper, line);
  require_normalized(zipper);
  const std::size_t n = zipper.dimension();
  const std::size_t m = zipper.size();
  if (integrals.size() != m + 1 || h.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "integral data has wrong shape");

  std::vector<AffineMap> maps;
  maps.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SimilarityDecomposition d = decompose(zipper, i);
    const std::size_t k = i + zipper.signature()[i];
    const double scale = d.sign * line.ratio(i);
    Matrix linear(n + 1);
    Vector translation(n + 1);
    linear(0, 0) = scale;
    translation[0] = line.node(k);
    for (std::size_t r = 0; r < n; ++r) {
      translation[r + 1] = integrals[k][r];
      linear(r + 1, 0) = scale * zipper.vertex(k)[r];
      for (std::size_t c = 0; c < n; ++c)
        linear(r + 1, c + 1) = scale * d.sign * d.linear_part(r, c);
    }
    maps.emplace_back(std::move(linear), std::move(translation));
  }
  std::vector<Vector> vertices;
  vertices.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    Vector v(n + 1);
    v[0] = line.node(j);
    for (std::size_t r = 0; r < n; ++r) v[r + 1] = integrals[j][r];
    vertices.push_back(std::move(v));
  }
  ZipperOptions options;
  options.tolerance = zipper.options().tolerance;
  options.contraction = ContractionMode::Eventual;
  options.max_word_length = 8;
  return Zipper::validate(std::move(maps), std::move(vertices),
                          zipper.signature(), options);
}

SmoothLift make_lift(const Zipper& zipper, const LineZipper& line) {
  Vector h = solve_h(zipper, line);
  std::vector<Vector> integrals = node_integrals(zipper, line, h);
  Zipper lifted = smooth_zipper(zipper, line, h, integrals);
  SmoothLift lift{std::move(h),      std::move(integrals), std::move(lifted),
                  zipper.signature(), {},                   {},
                  zipper.diameter_bound()};
  for (std::size_t i = 0; i < zipper.size(); ++i) {
    SimilarityDecomposition d = decompose(zipper, i);
    lift.step_factors.push_back(line.ratio(i) * zipper.contraction_factors()[i]);
    lift.linear_parts.push_back(std::move(d.linear_part));
  }
  return lift;
}

GEvaluation eval_g(double t, const Zipper& zipper, const LineZipper& line,
                   const SmoothLift& lift, const EvalOptions& options) {
  require_compatible(zipper, line);
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::OutOfDomain,
                "parameter " + std::to_string(t) + " outside [0, 1]");
  if (!(options.tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (lift.linear_parts.size() != zipper.size())
    throw Error(ErrorCode::CountMismatch, "lift does not match the zipper");

  const std::size_t n = zipper.dimension();
  const auto& nodes = line.nodes();
  GEvaluation out{Vector::zeros(n), 0.0, 0};
  Matrix prefix = Matrix::identity(n);
  double factor = 1.0;
  double s = t;
  for (;;) {
    if (s == 0.0) return out;
    if (s == 1.0) {
      out.value += prefix * lift.h;
      return out;
    }
    const double tail = std::min(s, 1.0 - s) * lift.sup_f;
    if (factor * tail <= options.tol) {
      if (s >= 0.5) out.value += prefix * lift.h;
      out.error_bound = factor * tail;
      return out;
    }
    if (out.depth >= options.max_depth) {
      throw Error(ErrorCode::ToleranceUnreachable,
                  "tolerance not reached within " +
                      std::to_string(options.max_depth) + " levels");
    }
    const std::size_t i = interval_of(s, line, options.rule);
    const double q = line.ratio(i);
    const Matrix step = q * lift.linear_parts[i];
    Vector constant = lift.node_integrals[i];
    if (line.signature().reversed(i)) {
      constant += (s - nodes[i]) * zipper.vertex(i + 1);
      constant -= step * lift.h;
    } else {
      constant += (s - nodes[i]) * zipper.vertex(i);
    }
    out.value += prefix * constant;
    prefix = prefix * step;
    factor *= lift.step_factors[i];
    s = std::clamp(line.inverse(i, s), 0.0, 1.0);
    ++out.depth;
  }
}

DesignedValues inverse_design(double q1, double q2, double x1, double g1,
                              double g2) {
  for (double v : {q1, q2, x1, g1, g2}) {
    if (!std::isfinite(v))
      throw Error(ErrorCode::DegenerateInput, "inputs must be finite");
  }
  if (!(q1 > 0.0 && q1 < 1.0) || !(q2 > 0.0 && q2 < 1.0))
    throw Error(ErrorCode::DegenerateInput, "ratios must lie in (0, 1)");
  if (std::abs(q1 + q2 - 1.0) > 1e-12)
    throw Error(ErrorCode::DegenerateInput, "ratios must sum to 1");
  if (std::abs(x1 - q1) > 1e-12)
    throw Error(ErrorCode::DegenerateInput, "middle node must equal q1");
  if (g1 == 0.0) throw Error(ErrorCode::DegenerateInput, "g1 must be nonzero");
  DesignedValues y;
  y.y1 = (1.0 / q1 - 1.0 / q2) * g1 + (1.0 / q2 - 1.0) * g2;
  y.y2 = (q1 * g2 / g1) * y.y1;
  return y;
}

}  // namespace zipsmooth
