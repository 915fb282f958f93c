// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_PARAMETRIZATION_HPP
#define ZIPSMOOTH_PARAMETRIZATION_HPP

#include <cstddef>
#include <vector>

#include "zipsmooth/geometry.hpp"
#include "zipsmooth/zipper.hpp"

namespace zipsmooth {

// How a parameter sitting exactly on an interior node is assigned.
enum class NodeRule {
  LeftClosed,   // t_i belongs to interval i+1 (canonical); t = 1 -> last
  RightClosed,  // t_i belongs to interval i; t = 0 -> first
};

// Interval choices of t under the line zipper, outermost first.
// Digits are zero-based map indices.
struct Address {
  std::vector<std::size_t> digits;
  int orientation = 1;  // product of (-1)^{eps} over the digits
  double anchor = 0.0;  // residual parameter after the digits
};

std::size_t interval_of(double t, const LineZipper& line,
                        NodeRule rule = NodeRule::LeftClosed);

Address address_of(double t, const LineZipper& line, std::size_t depth,
                   NodeRule rule = NodeRule::LeftClosed);

struct EvalOptions {
  double tol = 1e-9;
  std::size_t max_depth = 10000;
  NodeRule rule = NodeRule::LeftClosed;
};

struct ParamEvaluation {
  Vector value;
  double error_bound = 0.0;  // |value - f(t)| <= error_bound
  std::size_t depth = 0;
};

// Linear parametrization f of `zipper` by `line`: f(t_j) = z_j and
// f(T_i(t)) = S_i(f(t)). Requires every map of `zipper` to contract.
ParamEvaluation eval_f(double t, const Zipper& zipper, const LineZipper& line,
                       const EvalOptions& options = {});

}  // namespace zipsmooth

#endif
