// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_VERIFICATION_HPP
#define ZIPSMOOTH_VERIFICATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zipsmooth/geometry.hpp"
#include "zipsmooth/smoothing.hpp"
#include "zipsmooth/zipper.hpp"

namespace zipsmooth {

struct SampleError {
  double t = 0.0;
  double error = 0.0;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

// passed == (max_error <= tolerance). For composite checks max_error is a
// normalized score with tolerance 1; the raw numbers are in metrics.
struct VerificationReport {
  std::string check_name;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = false;
  std::vector<SampleError> details;  // worst offenders first
  std::vector<Metric> metrics;
};

inline constexpr std::size_t kReportedOffenders = 5;

// Composite midpoint rule for \int_0^t f with f from eval_f at tol 1e-10.
Vector quadrature_g(double t, const Zipper& zipper, const LineZipper& line,
                    std::size_t panels);

struct ResidualOptions {
  std::size_t samples = 1000;
  double tol = 1e-9;
  std::uint64_t seed = 1;
};

// |f(T_i(t)) - S_i(f(t))| over random t and every i; tolerance 2 tol.
VerificationReport functional_equation_f(const Zipper& zipper,
                                         const LineZipper& line,
                                         const ResidualOptions& options = {});

// Residual of the node-interval recursion for g over t = 0, t = 1 and
// random t, for every i; tolerance 2 tol.
VerificationReport functional_equation_g(const Zipper& zipper,
                                         const LineZipper& line,
                                         const SmoothLift& lift,
                                         const ResidualOptions& options = {});

struct QuadratureOptions {
  std::vector<double> points{0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                             0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t min_panels = std::size_t{1} << 8;
  std::size_t max_panels = std::size_t{1} << 16;
  double holder = 0.5;
  double slack = 1.05;
  double floor = 1e-9;
};

// eval_g against quadrature_g: final disagreement within
// max(1e-6, 10 sup|f| N^-holder), and non-increasing (with slack) as the
// panel count doubles.
VerificationReport quadrature_check(const Zipper& zipper,
                                    const LineZipper& line,
                                    const SmoothLift& lift,
                                    const QuadratureOptions& options = {});

struct DerivativeOptions {
  std::size_t samples = 100;
  std::vector<double> deltas{1e-4, 1e-6, 1e-8};
  double holder = 0.5;
  double bound_factor = 10.0;
  double slack = 1.5;
  double g_tol = 1e-14;
  double f_tol = 1e-12;
  std::uint64_t seed = 7;
};

// Central differences of g against f.
VerificationReport derivative_check(const Zipper& zipper,
                                    const LineZipper& line,
                                    const SmoothLift& lift,
                                    const DerivativeOptions& options = {});

enum class TangentCurve {
  Projected,  // t -> g(t) in R^n, tangent f(t)
  Graph,      // t -> (t, g(t)) in R^{n+1}, tangent (1, f(t))
};

struct TangentOptions {
  std::size_t samples = 256;
  double t_min = 1.0 / 64.0;
  double min_ratio = 1.8;
  double f_tol = 1e-12;
  TangentCurve curve = TangentCurve::Projected;
};

inline constexpr double kZeroTangent = 1e-12;
// Angular increments at or below this are rounding in the normalization.
inline constexpr double kAngleFloor = 1e-12;

// Unit tangents on [t_min, 1] at `samples` and 2*`samples` points; passes
// when the tangent never vanishes and the largest angle between
// consecutive tangents shrinks by at least min_ratio on doubling.
// Throws ZeroTangent if |f(t)| <= 1e-12 at a sample.
VerificationReport tangent_scan(const Zipper& zipper, const LineZipper& line,
                                const SmoothLift& lift,
                                const TangentOptions& options = {});

// max over words w of length L of |L_w|^(1/L), for L = 1.. until one is
// below 1 - 1e-9. Throws CombinatorialBudget if m^max_length > 1e6.
VerificationReport eventual_contraction_check(std::span<const Matrix> linear,
                                              std::size_t max_word_length);
VerificationReport eventual_contraction_check(const Zipper& zipper,
                                              std::size_t max_word_length);

enum class Suite { All, FunctionalEquations, Quadrature, Derivative, Tangent, Contraction };

// Parses all|feq|quad|deriv|tangent|contraction.
Suite parse_suite(std::string_view name);

// Normalizes the system, lifts it and runs the selected checks with their
// default options. A vanishing tangent is reported as a failed scan.
std::vector<VerificationReport> run_suite(const ZipperSystem& system,
                                          Suite suite);

}  // namespace zipsmooth

#endif
