// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_SMOOTHING_HPP
#define ZIPSMOOTH_SMOOTHING_HPP

#include <cstddef>
#include <vector>

#include "zipsmooth/geometry.hpp"
#include "zipsmooth/parametrization.hpp"
#include "zipsmooth/zipper.hpp"

namespace zipsmooth {

// Integral data of g(t) = \int_0^t f for a zipper with z_0 = 0, together
// with the self-affine zipper in R^{n+1} whose attractor is the graph
// {(t, g(t))}.
struct SmoothLift {
  Vector h;                          // g(1)
  std::vector<Vector> node_integrals;  // g(t_0), ..., g(t_m)
  Zipper lifted;                     // W_1, ..., W_m on (t, x)
  Signature signature;
  // A_i of the source maps and the scaled norms q_i |A_i| driving eval_g.
  std::vector<Matrix> linear_parts;
  std::vector<double> step_factors;
  double sup_f = 0.0;  // certified bound on |f| over [0, 1]
};

// Solves (Id - sum_i (-1)^{eps_i} q_i A_i) h = sum_i q_i z_{i-1+eps_i}.
// Throws NotNormalized unless z_0 = 0, SingularSystem if not invertible.
Vector solve_h(const Zipper& zipper, const LineZipper& line);

// g(t_0) = 0 and the increments
//   eps_i = 0:  g(t_i) - g(t_{i-1}) = q_i z_{i-1} + q_i A_i h
//   eps_i = 1:  g(t_i) - g(t_{i-1}) = q_i z_i     - q_i A_i h
std::vector<Vector> node_integrals(const Zipper& zipper, const LineZipper& line,
                                   const Vector& h);

// W_i(t, x) = (t_k, g(t_k)) + (-1)^{eps_i} q_i [[1, 0], [z_k, (-1)^{eps_i} A_i]] (t, x)
// with k = i-1+eps_i, validated in eventual-contraction mode.
Zipper smooth_zipper(const Zipper& zipper, const LineZipper& line,
                     const Vector& h, const std::vector<Vector>& integrals);

SmoothLift make_lift(const Zipper& zipper, const LineZipper& line);

struct GEvaluation {
  Vector value;
  double error_bound = 0.0;
  std::size_t depth = 0;
};

// g(t) through the self-affine recursion on the node intervals, stopped
// once the accumulated factor times the bound on the tail is below tol.
GEvaluation eval_g(double t, const Zipper& zipper, const LineZipper& line,
                   const SmoothLift& lift, const EvalOptions& options = {});

struct DesignedValues {
  double y1 = 0.0;
  double y2 = 0.0;
};

// Recovers the two-map vertex values (0, y1, y2) of a signature-(0,0)
// zipper on [0,1] from prescribed integrals g(x1) = g1, g(1) = g2.
DesignedValues inverse_design(double q1, double q2, double x1, double g1,
                              double g2);

}  // namespace zipsmooth

#endif
