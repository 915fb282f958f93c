// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_ATTRACTOR_HPP
#define ZIPSMOOTH_ATTRACTOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zipsmooth/geometry.hpp"
#include "zipsmooth/zipper.hpp"

namespace zipsmooth {

// Ordered sample of an attractor curve. Every point lies on the attractor
// and every attractor point lies within mesh_bound of some point.
struct Polyline {
  std::vector<Vector> points;
  std::optional<std::vector<double>> params;
  double mesh_bound = 0.0;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t dimension() const noexcept {
    return points.empty() ? 0 : points.front().size();
  }
};

struct RefineOptions {
  std::size_t max_depth = 30;
  std::size_t max_points = std::size_t{1} << 24;
};

// Depth 0 is the chord (z_0, z_m); depth k+1 concatenates S_1(P), ..., S_m(P)
// with reversed traversal where eps_i = 1 and shared junctions merged, so
// depth 1 is the vertex polyline. With `line`, params are carried along
// through the T_i.
Polyline refine(const Zipper& zipper, std::size_t depth,
                const LineZipper* line = nullptr,
                const RefineOptions& options = {});

// Certified Hausdorff distance between the depth-k polyline and the
// attractor: diameter_bound * max over words w of length <= k of |L_w|,
// taking the smallest value over lengths up to k.
double mesh_bound(const Zipper& zipper, std::size_t depth);

inline constexpr std::size_t kChaosBurnIn = 64;

// Random iteration from z_0 with a 64-step burn-in. Deterministic in seed.
std::vector<Vector> chaos_game(const Zipper& zipper, std::size_t count,
                               std::uint64_t seed);

// Symmetric Hausdorff distance of two finite point sets.
double hausdorff_distance(std::span<const Vector> a, std::span<const Vector> b);

// Hausdorff distance between the points of P and the union of S_i(P).
double hausdorff_residual(const Polyline& polyline, const Zipper& zipper);

// Moves the first coordinate of every point into params; the graph of
// t -> x is then stored as (params, points).
Polyline graph_polyline(const Polyline& polyline);

}  // namespace zipsmooth

#endif
