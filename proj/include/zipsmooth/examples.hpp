// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_EXAMPLES_HPP
#define ZIPSMOOTH_EXAMPLES_HPP

#include "zipsmooth/geometry.hpp"
#include "zipsmooth/smoothing.hpp"
#include "zipsmooth/zipper.hpp"

namespace zipsmooth {

// Two-map line zipper S_1(x) = p x, S_2(x) = (1 - p) x + p with vertices
// (0, p, 1), parametrized over nodes (0, 1/2, 1) so that f(1/2) = p.
struct Example1Config {
  double p = 0.5;
};

// Generalized two-map family with nodes (0, x1, 1) and vertices
// (0, y1, y2). The map ratios are p_i = (y_i - y_{i-1}) / y2.
struct Example1General {
  double q1 = 0.5;  // = x1
  double y1 = 0.5;
  double y2 = 1.0;

  double q2() const { return 1.0 - q1; }
  double p1() const { return y1 / y2; }
  double p2() const { return (y2 - y1) / y2; }
  // g(1) = y1 q2 / (1 - p1 q1 - p2 q2)
  double closed_form_h() const;
};

ZipperSystem build_example1(const Example1Config& config);
ZipperSystem build_example1(const Example1General& config);

// S_1 = p A, S_2 = p B + (1/2, h) with A, B the rotations by +alpha and
// -alpha, p = sqrt(h^2 + 1/4), alpha = arctan(2h), vertices
// (0,0), (1/2, h), (1,0).
struct Example2Config {
  double h = 0.5;

  double p() const;
  double alpha() const;
};

ZipperSystem build_example2(const Example2Config& config);

// Constant term of the second branch of g for the rotation example,
//   g(t) = (p/2) B g(2t - 1) + c + (t/2, h t)   on [1/2, 1].
// The derived value is g(1/2) - z_1 / 2 from the node integrals.
Vector example2_derived_constant(const ZipperSystem& system,
                                 const SmoothLift& lift);
// The alternative constant (p/2) A (1/(2(1 - p cos a)), h/(1 - p cos a)).
// Not used by any construction; kept for regression comparison.
Vector example2_printed_constant(const Example2Config& config);

}  // namespace zipsmooth

#endif
