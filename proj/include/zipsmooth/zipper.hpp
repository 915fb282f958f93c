// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_ZIPPER_HPP
#define ZIPSMOOTH_ZIPPER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zipsmooth/error.hpp"
#include "zipsmooth/geometry.hpp"

namespace zipsmooth {

// Orientation bits of a zipper: bit i is 1 when map i reverses the curve.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<int> bits);
  Signature(std::initializer_list<int> bits)
      : Signature(std::vector<int>(bits)) {}

  static Signature zeros(std::size_t m) {
    return Signature(std::vector<int>(m, 0));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  bool reversed(std::size_t i) const { return bits_[i] != 0; }
  // (-1)^{eps_i}
  int sign(std::size_t i) const { return bits_[i] != 0 ? -1 : 1; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

enum class ContractionMode {
  PerMap,    // every linear part has operator norm < 1
  Eventual,  // all words of some length L <= max_word_length contract
};

struct ZipperOptions {
  double tolerance = 1e-9;
  ContractionMode contraction = ContractionMode::PerMap;
  std::size_t max_word_length = 8;
};

inline constexpr double kContractionMargin = 1e-12;
inline constexpr double kWordBudget = 1e6;

// One failed vertex condition: S_i applied to z_0 (or z_m) missed the
// vertex the signature says it must hit.
struct VertexIssue {
  std::size_t map_index = 0;
  bool at_end = false;  // false: image of z_0, true: image of z_m
  std::size_t expected_vertex = 0;
  Vector observed;
  Vector expected;
  double error = 0.0;
};

struct ValidationReport {
  std::vector<VertexIssue> vertex_issues;
  std::vector<std::string> shape_issues;
  std::vector<std::string> contraction_issues;
  std::vector<double> contraction_factors;  // per-map operator norms
  double max_vertex_error = 0.0;
  // Smallest word length whose products all contract, with the largest
  // product norm at that length. Zero when none was found.
  std::size_t contraction_word_length = 0;
  double contraction_rate = 0.0;

  bool ok() const noexcept {
    return vertex_issues.empty() && shape_issues.empty() &&
           contraction_issues.empty();
  }
  std::string describe() const;
};

class ZipperViolationError : public Error {
 public:
  explicit ZipperViolationError(ValidationReport report)
      : Error(ErrorCode::ZipperViolation, report.describe()),
        report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// Largest operator norm over all products M_{w_1} ... M_{w_L}, for each
// L = 1..max_length. Entry L-1 holds the value for length L.
std::vector<double> max_word_norms(std::span<const Matrix> linear,
                                   std::size_t max_length);

// A validated zipper in R^n. Immutable; construct through validate().
class Zipper {
 public:
  static ValidationReport check(const std::vector<AffineMap>& maps,
                                const std::vector<Vector>& vertices,
                                const Signature& signature,
                                const ZipperOptions& options = {});

  // Throws ZipperViolationError carrying the full report on failure.
  static Zipper validate(std::vector<AffineMap> maps,
                         std::vector<Vector> vertices, Signature signature,
                         const ZipperOptions& options = {});

  std::size_t size() const noexcept { return maps_.size(); }
  std::size_t dimension() const noexcept { return vertices_.front().size(); }
  const std::vector<AffineMap>& maps() const noexcept { return maps_; }
  const AffineMap& map(std::size_t i) const { return maps_.at(i); }
  const std::vector<Vector>& vertices() const noexcept { return vertices_; }
  const Vector& vertex(std::size_t j) const { return vertices_.at(j); }
  const Vector& first_vertex() const { return vertices_.front(); }
  const Vector& last_vertex() const { return vertices_.back(); }
  const Signature& signature() const noexcept { return signature_; }
  const ZipperOptions& options() const noexcept { return options_; }

  const std::vector<double>& contraction_factors() const noexcept {
    return factors_;
  }
  double max_contraction() const noexcept;
  std::size_t contraction_word_length() const noexcept { return word_length_; }
  double contraction_rate() const noexcept { return rate_; }

  // Certified bound on the distance from any attractor point to any
  // vertex: diam(V_L) / (1 - rate_L), where V_L are the endpoint images
  // under words of the contraction word length L.
  double diameter_bound() const noexcept { return diameter_bound_; }

 private:
  Zipper() = default;

  std::vector<AffineMap> maps_;
  std::vector<Vector> vertices_;
  Signature signature_;
  ZipperOptions options_;
  std::vector<double> factors_;
  std::size_t word_length_ = 0;
  double rate_ = 0.0;
  double diameter_bound_ = 0.0;
};

// Zipper on [0,1] with nodes 0 = t_0 < ... < t_m = 1.
class LineZipper {
 public:
  static LineZipper build(std::vector<double> nodes, Signature signature);
  static LineZipper uniform(Signature signature);

  std::size_t size() const noexcept { return ratios_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(std::size_t j) const { return nodes_.at(j); }
  const std::vector<double>& ratios() const noexcept { return ratios_; }
  double ratio(std::size_t i) const { return ratios_.at(i); }
  const Signature& signature() const noexcept { return signature_; }

  // T_i(s), written as a convex combination so that s = 0 and s = 1 land
  // exactly on the nodes.
  double forward(std::size_t i, double s) const;
  // T_i^{-1}(t)
  double inverse(std::size_t i, double t) const;
  AffineMap map(std::size_t i) const;
  Zipper as_zipper() const;

 private:
  LineZipper() = default;

  std::vector<double> nodes_;
  std::vector<double> ratios_;
  Signature signature_;
};

// S_i(z) = offset + sign * A_i z, with offset z_{i-1+eps_i} (one-based).
struct SimilarityDecomposition {
  Vector offset;
  Matrix linear_part;  // A_i
  int sign = 1;        // (-1)^{eps_i}
};

SimilarityDecomposition decompose(const Zipper& zipper, std::size_t i);
std::vector<SimilarityDecomposition> decompose(const Zipper& zipper);

struct NormalizedZipper {
  Zipper zipper;
  Vector translation;  // add to old coordinates to get new ones (-z_0)
};

// Conjugates by the translation x -> x - z_0.
NormalizedZipper normalize_zipper(const Zipper& zipper);

// {T_i x S_i} acting on (t, x), vertices (t_j, z_j).
Zipper product_zipper(const Zipper& spatial, const LineZipper& line);

void require_compatible(const Zipper& zipper, const LineZipper& line);

// A spatial zipper together with the line zipper parametrizing it.
struct ZipperSystem {
  Zipper zipper;
  LineZipper line;
};

}  // namespace zipsmooth

#endif
