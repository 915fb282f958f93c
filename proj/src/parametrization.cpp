// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/parametrization.hpp"

#include <cmath>
#include <string>

#include "zipsmooth/error.hpp"

namespace zipsmooth {

namespace {

void require_unit_interval(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::OutOfDomain,
                "parameter " + std::to_string(t) + " outside [0, 1]");
}

// T_i^{-1} can leave [0,1] by an ulp; the descent must not drift out.
double clamp_unit(double s) { return s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s); }

}  // namespace

std::size_t interval_of(double t, const LineZipper& line, NodeRule rule) {
  const auto& nodes = line.nodes();
  const std::size_t m = line.size();
  if (rule == NodeRule::LeftClosed) {
    for (std::size_t i = 0; i + 1 < m; ++i)
      if (t < nodes[i + 1]) return i;
    return m - 1;
  }
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (t <= nodes[i + 1]) return i;
  return m - 1;
}

Address address_of(double t, const LineZipper& line, std::size_t depth,
                   NodeRule rule) {
  require_unit_interval(t);
  Address a;
  a.digits.reserve(depth);
  double s = t;
  for (std::size_t k = 0; k < depth; ++k) {
    const std::size_t i = interval_of(s, line, rule);
    a.digits.push_back(i);
    a.orientation *= line.signature().sign(i);
    s = clamp_unit(line.inverse(i, s));
  }
  a.anchor = s;
  return a;
}

ParamEvaluation eval_f(double t, const Zipper& zipper, const LineZipper& line,
                       const EvalOptions& options) {
  require_compatible(zipper, line);
  require_unit_interval(t);
  if (!(options.tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!(zipper.max_contraction() < 1.0)) {
    throw Error(ErrorCode::NotContracting,
                "eval_f needs every map to contract individually");
  }

  const double radius = zipper.diameter_bound();
  const auto& factors = zipper.contraction_factors();

  std::vector<std::size_t> digits;
  double s = t;
  double factor = 1.0;
  bool exact = false;
  const Vector* anchor = nullptr;
  for (;;) {
    if (s == 0.0) {
      anchor = &zipper.first_vertex();
      exact = true;
      break;
    }
    if (s == 1.0) {
      anchor = &zipper.last_vertex();
      exact = true;
      break;
    }
    if (factor * radius <= options.tol) break;
    if (digits.size() >= options.max_depth) {
      throw Error(ErrorCode::ToleranceUnreachable,
                  "tolerance not reached within " +
                      std::to_string(options.max_depth) + " digits");
    }
    const std::size_t i = interval_of(s, line, options.rule);
    digits.push_back(i);
    factor *= factors[i];
    s = clamp_unit(line.inverse(i, s));
  }
  if (anchor == nullptr)
    anchor = s < 0.5 ? &zipper.first_vertex() : &zipper.last_vertex();

  Vector x = *anchor;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    x = apply(zipper.map(*it), x);
  return ParamEvaluation{std::move(x), exact ? 0.0 : factor * radius,
                         digits.size()};
}

}  // namespace zipsmooth
