// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zipsmooth/error.hpp"
#include "zipsmooth/parametrization.hpp"
#include "zipsmooth/random.hpp"

namespace zipsmooth {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

// Keeps the largest few (t, error) pairs, largest first; ties keep the
// earlier sample.
class Offenders {
 public:
  void add(double t, double error) {
    SampleError s{t, error};
    auto pos = std::find_if(worst_.begin(), worst_.end(),
                            [&](const SampleError& o) { return error > o.error; });
    worst_.insert(pos, s);
    if (worst_.size() > kReportedOffenders) worst_.pop_back();
  }
  std::vector<SampleError> take() { return std::move(worst_); }

 private:
  std::vector<SampleError> worst_;
};

void finish(VerificationReport& report, Offenders& offenders) {
  report.details = offenders.take();
  report.passed = report.max_error <= report.tolerance;
}

// Uniform on the 2^-52 grid of [0, 1): for dyadic nodes the forward maps
// are then exact, so a residual never mixes in the input rounding of T_i,
// which a rough f would amplify far past the evaluation tolerance.
double dyadic_sample(Xoshiro256& rng) {
  return static_cast<double>(rng.next() >> 12) * 0x1.0p-52;
}

}  // namespace

Vector quadrature_g(double t, const Zipper& zipper, const LineZipper& line,
                    std::size_t panels) {
  if (panels == 0)
    throw Error(ErrorCode::InvalidArgument, "panels must be positive");
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::OutOfDomain, "parameter outside [0, 1]");
  Vector sum = Vector::zeros(zipper.dimension());
  if (t == 0.0) return sum;
  const double width = t / static_cast<double>(panels);
  EvalOptions options;
  options.tol = 1e-10;
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * width;
    sum += eval_f(mid, zipper, line, options).value;
  }
  return width * sum;
}

VerificationReport functional_equation_f(const Zipper& zipper,
                                         const LineZipper& line,
                                         const ResidualOptions& options) {
  VerificationReport report;
  report.check_name = "functional_equation_f";
  report.tolerance = 2.0 * options.tol;
  EvalOptions eval;
  eval.tol = options.tol;
  Xoshiro256 rng(options.seed);
  Offenders offenders;
  for (std::size_t k = 0; k < options.samples; ++k) {
    const double t = dyadic_sample(rng);
    const Vector ft = eval_f(t, zipper, line, eval).value;
    for (std::size_t i = 0; i < zipper.size(); ++i) {
      const Vector lhs = eval_f(line.forward(i, t), zipper, line, eval).value;
      const double err = distance(lhs, apply(zipper.map(i), ft));
      report.max_error = std::max(report.max_error, err);
      offenders.add(t, err);
      ++report.samples;
    }
  }
  finish(report, offenders);
  return report;
}

VerificationReport functional_equation_g(const Zipper& zipper,
                                         const LineZipper& line,
                                         const SmoothLift& lift,
                                         const ResidualOptions& options) {
  VerificationReport report;
  report.check_name = "functional_equation_g";
  report.tolerance = 2.0 * options.tol;
  EvalOptions eval;
  eval.tol = options.tol;
  Xoshiro256 rng(options.seed);
  Offenders offenders;
  // s = 0 and s = 1 tie the node integrals and h together; away from the
  // ends both sides run through the same recursion.
  for (std::size_t k = 0; k < options.samples + 2; ++k) {
    const double s = k < 2 ? static_cast<double>(k) : dyadic_sample(rng);
    const Vector gs = eval_g(s, zipper, line, lift, eval).value;
    for (std::size_t i = 0; i < zipper.size(); ++i) {
      const double t = line.forward(i, s);
      const double q = line.ratio(i);
      const Matrix step = q * lift.linear_parts[i];
      Vector rhs = lift.node_integrals[i];
      if (line.signature().reversed(i)) {
        rhs += (t - line.node(i)) * zipper.vertex(i + 1);
        rhs += step * (gs - lift.h);
      } else {
        rhs += (t - line.node(i)) * zipper.vertex(i);
        rhs += step * gs;
      }
      const double err = distance(eval_g(t, zipper, line, lift, eval).value, rhs);
      report.max_error = std::max(report.max_error, err);
      offenders.add(t, err);
      ++report.samples;
    }
  }
  finish(report, offenders);
  return report;
}

VerificationReport quadrature_check(const Zipper& zipper,
                                    const LineZipper& line,
                                    const SmoothLift& lift,
                                    const QuadratureOptions& options) {
  if (options.min_panels == 0 || options.max_panels < options.min_panels)
    throw Error(ErrorCode::InvalidArgument, "bad panel range");
  VerificationReport report;
  report.check_name = "quadrature";
  report.tolerance = 1.0;
  const double final_bound =
      std::max(1e-6, 10.0 * lift.sup_f *
                         std::pow(static_cast<double>(options.max_panels),
                                  -options.holder));
  EvalOptions eval;
  eval.tol = 1e-12;
  Offenders offenders;
  double worst_final = 0.0;
  std::size_t monotone_breaks = 0;
  for (double t : options.points) {
    const Vector g = eval_g(t, zipper, line, lift, eval).value;
    double previous = -1.0;
    double score = 0.0;
    double err = 0.0;
    for (std::size_t panels = options.min_panels; panels <= options.max_panels;
         panels *= 2) {
      err = distance(quadrature_g(t, zipper, line, panels), g);
      if (previous >= 0.0 && err > options.slack * previous + options.floor) {
        score = std::max(score, (err - options.floor) / (options.slack * previous));
        ++monotone_breaks;
      }
      previous = err;
      ++report.samples;
    }
    worst_final = std::max(worst_final, err);
    score = std::max(score, err / final_bound);
    report.max_error = std::max(report.max_error, score);
    offenders.add(t, score);
  }
  report.metrics = {{"max_final_error", worst_final},
                    {"final_bound", final_bound},
                    {"monotone_breaks", static_cast<double>(monotone_breaks)}};
  finish(report, offenders);
  return report;
}

VerificationReport derivative_check(const Zipper& zipper,
                                    const LineZipper& line,
                                    const SmoothLift& lift,
                                    const DerivativeOptions& options) {
  if (options.deltas.empty())
    throw Error(ErrorCode::InvalidArgument, "no step sizes given");
  for (std::size_t k = 0; k < options.deltas.size(); ++k) {
    if (!(options.deltas[k] > 0.0) ||
        (k > 0 && !(options.deltas[k] < options.deltas[k - 1])))
      throw Error(ErrorCode::InvalidArgument,
                  "step sizes must be positive and decreasing");
  }
  const double widest = options.deltas.front();
  const double finest = options.deltas.back();
  if (!(widest < 0.5))
    throw Error(ErrorCode::InvalidArgument, "step size too large");

  VerificationReport report;
  report.check_name = "derivative";
  report.tolerance = 1.0;
  const double bound = options.bound_factor * std::pow(finest, options.holder);
  // Rounding and evaluation-tolerance noise of a central difference.
  auto noise = [&](double delta) {
    return 1e-9 + (options.g_tol + 8.0 * kEpsilon * (lift.sup_f + 1.0)) / delta;
  };

  EvalOptions g_eval;
  g_eval.tol = options.g_tol;
  EvalOptions f_eval;
  f_eval.tol = options.f_tol;
  Xoshiro256 rng(options.seed);
  Offenders offenders;
  double worst_finest = 0.0;
  std::size_t monotone_breaks = 0;
  for (std::size_t k = 0; k < options.samples; ++k) {
    const double t = widest + (1.0 - 2.0 * widest) * rng.uniform();
    const Vector ft = eval_f(t, zipper, line, f_eval).value;
    double score = 0.0;
    double previous = -1.0;
    double err = 0.0;
    for (double delta : options.deltas) {
      const Vector plus = eval_g(t + delta, zipper, line, lift, g_eval).value;
      const Vector minus = eval_g(t - delta, zipper, line, lift, g_eval).value;
      err = distance((1.0 / (2.0 * delta)) * (plus - minus), ft);
      if (previous >= 0.0 && err > options.slack * previous + noise(delta)) {
        const double excess = (err - noise(delta)) / (options.slack * previous);
        score = std::max(score, std::isfinite(excess) ? excess : 1e300);
        ++monotone_breaks;
      }
      previous = err;
    }
    worst_finest = std::max(worst_finest, err);
    score = std::max(score, err / bound);
    report.max_error = std::max(report.max_error, score);
    offenders.add(t, score);
    ++report.samples;
  }
  report.metrics = {{"max_error_finest_delta", worst_finest},
                    {"bound", bound},
                    {"monotone_breaks", static_cast<double>(monotone_breaks)}};
  finish(report, offenders);
  return report;
}

namespace {

struct TangentSweep {
  double max_increment = 0.0;
  double at = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
};

TangentSweep sweep_tangents(const Zipper& zipper, const LineZipper& line,
                            const TangentOptions& options, std::size_t count) {
  EvalOptions eval;
  eval.tol = options.f_tol;
  TangentSweep sweep;
  Vector previous;
  const double span = 1.0 - options.t_min;
  for (std::size_t j = 0; j < count; ++j) {
    const double t = j + 1 == count
                         ? 1.0
                         : options.t_min + span * static_cast<double>(j) /
                                               static_cast<double>(count - 1);
    const Vector f = eval_f(t, zipper, line, eval).value;
    Vector tangent;
    if (options.curve == TangentCurve::Graph) {
      std::vector<double> c{1.0};
      c.insert(c.end(), f.values().begin(), f.values().end());
      tangent = Vector(std::move(c));
    } else {
      tangent = f;
    }
    const double speed = tangent.norm();
    if (speed <= kZeroTangent) {
      throw Error(ErrorCode::ZeroTangent,
                  "f vanishes at t = " + std::to_string(t));
    }
    tangent *= 1.0 / speed;
    sweep.min_speed = std::min(sweep.min_speed, speed);
    if (j > 0) {
      const double chord = distance(tangent, previous);
      const double angle = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
      if (angle > sweep.max_increment) {
        sweep.max_increment = angle;
        sweep.at = t;
      }
    }
    previous = std::move(tangent);
  }
  return sweep;
}

}  // namespace

VerificationReport tangent_scan(const Zipper& zipper, const LineZipper& line,
                                const SmoothLift& lift,
                                const TangentOptions& options) {
  (void)lift;
  require_compatible(zipper, line);
  if (options.samples < 16)
    throw Error(ErrorCode::InvalidArgument, "at least 16 samples required");
  if (!(options.t_min > 0.0 && options.t_min < 1.0))
    throw Error(ErrorCode::InvalidArgument, "t_min must lie in (0, 1)");

  const TangentSweep coarse = sweep_tangents(zipper, line, options, options.samples);
  const TangentSweep fine =
      sweep_tangents(zipper, line, options, 2 * options.samples);
  const double ratio = fine.max_increment > 0.0
                           ? coarse.max_increment / fine.max_increment
                           : std::numeric_limits<double>::infinity();

  VerificationReport report;
  report.check_name = "tangent_scan";
  report.tolerance = 1.0;
  report.samples = 3 * options.samples;
  // A tangent field that is constant on the grid (up to rounding in the
  // normalization) trivially passes.
  report.max_error = coarse.max_increment <= kAngleFloor
                         ? 0.0
                         : options.min_ratio / ratio;
  report.details = {{coarse.at, coarse.max_increment}, {fine.at, fine.max_increment}};
  report.metrics = {{"min_speed", std::min(coarse.min_speed, fine.min_speed)},
                    {"max_increment_coarse", coarse.max_increment},
                    {"max_increment_fine", fine.max_increment},
                    {"doubling_ratio", ratio},
                    {"required_ratio", options.min_ratio}};
  report.passed = report.max_error <= report.tolerance;
  return report;
}

VerificationReport eventual_contraction_check(std::span<const Matrix> linear,
                                              std::size_t max_word_length) {
  if (max_word_length == 0)
    throw Error(ErrorCode::InvalidArgument, "word length must be at least 1");
  if (linear.empty()) throw Error(ErrorCode::InvalidArgument, "no maps");
  if (std::pow(static_cast<double>(linear.size()),
               static_cast<double>(max_word_length)) > kWordBudget) {
    throw Error(ErrorCode::CombinatorialBudget,
                std::to_string(linear.size()) + "^" +
                    std::to_string(max_word_length) + " words exceed 1e6");
  }
  VerificationReport report;
  report.check_name = "eventual_contraction";
  report.tolerance = 1.0 - 1e-9;
  report.max_error = std::numeric_limits<double>::infinity();
  std::size_t passed_at = 0;
  for (std::size_t length = 1; length <= max_word_length; ++length) {
    const double worst = max_word_norms(linear, length).back();
    const double rate = std::pow(worst, 1.0 / static_cast<double>(length));
    report.metrics.push_back({"rate_L" + std::to_string(length), rate});
    report.details.push_back({static_cast<double>(length), rate});
    report.samples += static_cast<std::size_t>(
        std::pow(static_cast<double>(linear.size()), static_cast<double>(length)));
    report.max_error = std::min(report.max_error, rate);
    if (rate <= report.tolerance) {
      passed_at = length;
      break;
    }
  }
  report.metrics.push_back({"word_length", static_cast<double>(passed_at)});
  report.passed = report.max_error <= report.tolerance;
  return report;
}

VerificationReport eventual_contraction_check(const Zipper& zipper,
                                              std::size_t max_word_length) {
  std::vector<Matrix> linear;
  for (const auto& map : zipper.maps()) linear.push_back(map.linear);
  return eventual_contraction_check(linear, max_word_length);
}

}  // namespace zipsmooth

namespace zipsmooth {

Suite parse_suite(std::string_view name) {
  if (name == "all") return Suite::All;
  if (name == "feq") return Suite::FunctionalEquations;
  if (name == "quad") return Suite::Quadrature;
  if (name == "deriv") return Suite::Derivative;
  if (name == "tangent") return Suite::Tangent;
  if (name == "contraction") return Suite::Contraction;
  throw Error(ErrorCode::InvalidArgument,
              "unknown suite '" + std::string(name) + "'");
}

std::vector<VerificationReport> run_suite(const ZipperSystem& system,
                                          Suite suite) {
  const NormalizedZipper normalized = normalize_zipper(system.zipper);
  const Zipper& zipper = normalized.zipper;
  const LineZipper& line = system.line;
  const SmoothLift lift = make_lift(zipper, line);
  auto wants = [&](Suite s) { return suite == Suite::All || suite == s; };

  std::vector<VerificationReport> reports;
  if (wants(Suite::FunctionalEquations)) {
    reports.push_back(functional_equation_f(zipper, line));
    reports.push_back(functional_equation_g(zipper, line, lift));
  }
  if (wants(Suite::Quadrature))
    reports.push_back(quadrature_check(zipper, line, lift));
  if (wants(Suite::Derivative))
    reports.push_back(derivative_check(zipper, line, lift));
  if (wants(Suite::Tangent)) {
    try {
      // On the line the projected tangent is just a sign; scan the graph.
      TangentOptions options;
      if (zipper.dimension() == 1) options.curve = TangentCurve::Graph;
      reports.push_back(tangent_scan(zipper, line, lift, options));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroTangent) throw;
      VerificationReport failed;
      failed.check_name = "tangent_scan";
      failed.tolerance = 1.0;
      failed.max_error = std::numeric_limits<double>::infinity();
      failed.metrics = {{"zero_tangent", 1.0}};
      reports.push_back(std::move(failed));
    }
  }
  if (wants(Suite::Contraction))
    reports.push_back(eventual_contraction_check(lift.lifted, 8));
  return reports;
}

}  // namespace zipsmooth
