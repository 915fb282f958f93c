// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/attractor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "zipsmooth/error.hpp"
#include "zipsmooth/random.hpp"

namespace zipsmooth {

namespace {

constexpr std::size_t kExactWordLimit = std::size_t{1} << 16;

// Max norm of words for lengths 0..levels, exact by enumeration.
std::vector<double> exact_word_levels(const Zipper& zipper,
                                      std::size_t levels) {
  std::vector<double> best{1.0};
  std::vector<Matrix> layer{Matrix::identity(zipper.dimension())};
  for (std::size_t k = 1; k <= levels; ++k) {
    std::vector<Matrix> next;
    next.reserve(layer.size() * zipper.size());
    double worst = 0.0;
    for (const Matrix& prefix : layer) {
      for (const auto& map : zipper.maps()) {
        Matrix product = prefix * map.linear;
        worst = std::max(worst, operator_norm(product));
        next.push_back(std::move(product));
      }
    }
    best.push_back(worst);
    layer = std::move(next);
  }
  return best;
}

}  // namespace

double mesh_bound(const Zipper& zipper, std::size_t depth) {
  const std::size_t m = zipper.size();
  std::size_t exact = 0;
  for (std::size_t words = 1; exact < depth && words * m <= kExactWordLimit;
       words *= m)
    ++exact;
  const std::vector<double> levels = exact_word_levels(zipper, exact);
  double best = 1.0;
  for (std::size_t k = 1; k <= depth; ++k) {
    double bound;
    if (k < levels.size()) {
      bound = levels[k];
    } else {
      const std::size_t block = levels.size() - 1;
      bound = std::pow(levels[block], static_cast<double>(k / block)) *
              levels[k % block];
    }
    best = std::min(best, bound);
  }
  return best * zipper.diameter_bound();
}

Polyline refine(const Zipper& zipper, std::size_t depth,
                const LineZipper* line, const RefineOptions& options) {
  if (depth > options.max_depth) {
    throw Error(ErrorCode::DepthCap, "depth " + std::to_string(depth) +
                                         " exceeds cap " +
                                         std::to_string(options.max_depth));
  }
  const std::size_t m = zipper.size();
  if (std::pow(static_cast<double>(m), static_cast<double>(depth)) + 1.0 >
      static_cast<double>(options.max_points)) {
    throw Error(ErrorCode::DepthCap,
                "depth " + std::to_string(depth) + " would exceed " +
                    std::to_string(options.max_points) + " points");
  }
  if (line != nullptr) require_compatible(zipper, *line);

  const Signature& sig = zipper.signature();
  const double junction_tol =
      std::max(1e-9, zipper.options().tolerance);

  std::vector<Vector> points{zipper.first_vertex(), zipper.last_vertex()};
  std::vector<double> params{0.0, 1.0};
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<Vector> next;
    std::vector<double> next_params;
    next.reserve(m * (points.size() - 1) + 1);
    if (line != nullptr) next_params.reserve(next.capacity());
    for (std::size_t i = 0; i < m; ++i) {
      const AffineMap& map = zipper.map(i);
      const std::size_t count = points.size();
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t src = sig.reversed(i) ? count - 1 - j : j;
        Vector image = apply(map, points[src]);
        if (j == 0 && !next.empty()) {
          const double gap = distance(image, next.back());
          if (gap > junction_tol * (1.0 + image.norm())) {
            throw Error(ErrorCode::ZipperViolation,
                        "junction after map " + std::to_string(i) +
                            " misses by " + std::to_string(gap));
          }
          if (line != nullptr &&
              line->forward(i, params[src]) != next_params.back()) {
            throw Error(ErrorCode::ZipperViolation,
                        "junction parameters disagree after map " +
                            std::to_string(i));
          }
          continue;
        }
        next.push_back(std::move(image));
        if (line != nullptr) next_params.push_back(line->forward(i, params[src]));
      }
    }
    points = std::move(next);
    params = std::move(next_params);
  }

  Polyline out;
  out.points = std::move(points);
  if (line != nullptr) out.params = std::move(params);
  out.mesh_bound = mesh_bound(zipper, depth);
  return out;
}

std::vector<Vector> chaos_game(const Zipper& zipper, std::size_t count,
                               std::uint64_t seed) {
  Xoshiro256 rng(seed);
  Vector x = zipper.first_vertex();
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t step = 0; step < kChaosBurnIn + count; ++step) {
    x = apply(zipper.map(rng.below(zipper.size())), x);
    if (step >= kChaosBurnIn) out.push_back(x);
  }
  return out;
}

namespace {

constexpr std::size_t kBruteForceLimit = 100000;

double directed_brute(std::span<const Vector> from, std::span<const Vector> to) {
  double worst = 0.0;
  for (const Vector& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& q : to) {
      double sum = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = p[k] - q[k];
        sum += d * d;
        if (sum >= best) break;
      }
      best = std::min(best, sum);
      if (best <= worst) break;  // cannot raise the running maximum
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

// Uniform buckets over the first (up to) three coordinates. Distances are
// exact in all coordinates; the bucket geometry only prunes the search.
class BucketGrid {
 public:
  explicit BucketGrid(std::span<const Vector> points) : points_(points) {
    axes_ = std::min<std::size_t>(3, points.front().size());
    lo_.fill(std::numeric_limits<double>::infinity());
    std::array<double, 3> hi;
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const Vector& p : points)
      for (std::size_t a = 0; a < axes_; ++a) {
        lo_[a] = std::min(lo_[a], p[a]);
        hi[a] = std::max(hi[a], p[a]);
      }
    double extent = 0.0;
    for (std::size_t a = 0; a < axes_; ++a)
      extent = std::max(extent, hi[a] - lo_[a]);
    const double per_axis = std::pow(static_cast<double>(points.size()),
                                     1.0 / static_cast<double>(axes_));
    cell_ = extent > 0.0 ? extent / std::max(1.0, per_axis) : 1.0;
    for (std::size_t a = 0; a < axes_; ++a)
      span_[a] = static_cast<long>((hi[a] - lo_[a]) / cell_) + 1;
    for (std::size_t idx = 0; idx < points.size(); ++idx)
      buckets_[key(cell_of(points[idx]))].push_back(idx);
  }

  double nearest_squared(const Vector& q) const {
    const auto centre = cell_of(q);
    long reach = 0;
    for (std::size_t a = 0; a < axes_; ++a) {
      reach = std::max(reach, std::abs(centre[a]) + 1);
      reach = std::max(reach, std::abs(centre[a] - span_[a]) + 1);
    }
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0; r <= reach; ++r) {
      visit_ring(centre, r, q, best);
      const double cleared = static_cast<double>(r) * cell_;
      if (best <= cleared * cleared) break;
    }
    return best;
  }

 private:
  using Cell = std::array<long, 3>;

  Cell cell_of(const Vector& p) const {
    Cell c{0, 0, 0};
    for (std::size_t a = 0; a < axes_; ++a)
      c[a] = static_cast<long>(std::floor((p[a] - lo_[a]) / cell_));
    return c;
  }

  static std::int64_t key(const Cell& c) {
    constexpr std::int64_t kOffset = 1 << 20;
    return ((c[0] + kOffset) << 42) ^ ((c[1] + kOffset) << 21) ^ (c[2] + kOffset);
  }

  void scan(const Cell& c, const Vector& q, double& best) const {
    auto it = buckets_.find(key(c));
    if (it == buckets_.end()) return;
    for (std::size_t idx : it->second) {
      const Vector& p = points_[idx];
      double sum = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = p[k] - q[k];
        sum += d * d;
      }
      best = std::min(best, sum);
    }
  }

  void visit_ring(const Cell& centre, long r, const Vector& q,
                  double& best) const {
    const long lo1 = axes_ > 1 ? -r : 0, hi1 = axes_ > 1 ? r : 0;
    const long lo2 = axes_ > 2 ? -r : 0, hi2 = axes_ > 2 ? r : 0;
    for (long a = -r; a <= r; ++a)
      for (long b = lo1; b <= hi1; ++b)
        for (long c = lo2; c <= hi2; ++c) {
          const long cheb = std::max({std::abs(a), std::abs(b), std::abs(c)});
          if (cheb != r) continue;
          scan(Cell{centre[0] + a, centre[1] + b, centre[2] + c}, q, best);
        }
  }

  std::span<const Vector> points_;
  std::size_t axes_ = 1;
  std::array<double, 3> lo_{};
  std::array<long, 3> span_{0, 0, 0};
  double cell_ = 1.0;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

double directed_bucketed(std::span<const Vector> from,
                         std::span<const Vector> to) {
  const BucketGrid grid(to);
  double worst = 0.0;
  for (const Vector& p : from) worst = std::max(worst, grid.nearest_squared(p));
  return std::sqrt(worst);
}

}  // namespace

double hausdorff_distance(std::span<const Vector> a, std::span<const Vector> b) {
  if (a.empty() || b.empty())
    throw Error(ErrorCode::InvalidArgument, "Hausdorff distance of empty set");
  if (a.front().size() != b.front().size())
    throw Error(ErrorCode::DimensionMismatch, "point sets differ in dimension");
  if (a.size() + b.size() <= kBruteForceLimit)
    return std::max(directed_brute(a, b), directed_brute(b, a));
  return std::max(directed_bucketed(a, b), directed_bucketed(b, a));
}

double hausdorff_residual(const Polyline& polyline, const Zipper& zipper) {
  if (polyline.points.empty())
    throw Error(ErrorCode::InvalidArgument, "empty polyline");
  std::vector<Vector> images;
  images.reserve(polyline.size() * zipper.size());
  for (const auto& map : zipper.maps())
    for (const Vector& p : polyline.points) images.push_back(apply(map, p));
  return hausdorff_distance(polyline.points, images);
}

Polyline graph_polyline(const Polyline& polyline) {
  if (polyline.dimension() < 2)
    throw Error(ErrorCode::DimensionUnsupported,
                "graph polyline needs at least two coordinates");
  Polyline out;
  out.mesh_bound = polyline.mesh_bound;
  std::vector<double> params;
  params.reserve(polyline.size());
  out.points.reserve(polyline.size());
  for (const Vector& p : polyline.points) {
    params.push_back(p[0]);
    out.points.emplace_back(
        std::vector<double>(p.values().begin() + 1, p.values().end()));
  }
  out.params = std::move(params);
  return out;
}

}  // namespace zipsmooth
