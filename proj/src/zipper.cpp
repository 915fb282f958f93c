// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace zipsmooth {

Signature::Signature(std::vector<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "signature entries must be 0 or 1, got " + std::to_string(b));
    }
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (ok()) {
    os << "valid zipper";
    return os.str();
  }
  for (const auto& s : shape_issues) os << "shape: " << s << "; ";
  for (const auto& v : vertex_issues) {
    os << "map " << v.map_index + 1 << " sends "
       << (v.at_end ? "z_m" : "z_0") << " to (";
    for (std::size_t k = 0; k < v.observed.size(); ++k)
      os << (k ? ", " : "") << v.observed[k];
    os << "), expected z_" << v.expected_vertex << " = (";
    for (std::size_t k = 0; k < v.expected.size(); ++k)
      os << (k ? ", " : "") << v.expected[k];
    os << "), error " << v.error << "; ";
  }
  for (const auto& c : contraction_issues) os << "contraction: " << c << "; ";
  std::string out = os.str();
  if (out.size() >= 2) out.resize(out.size() - 2);
  return out;
}

namespace {

double checked_power(std::size_t m, std::size_t length) {
  return std::pow(static_cast<double>(m), static_cast<double>(length));
}

void word_norm_dfs(std::span<const Matrix> linear, const Matrix& prefix,
                   std::size_t depth, std::vector<double>& best) {
  for (const Matrix& mi : linear) {
    Matrix product = prefix * mi;
    best[depth] = std::max(best[depth], operator_norm(product));
    if (depth + 1 < best.size()) word_norm_dfs(linear, product, depth + 1, best);
  }
}

// Endpoint images {S_w(z_0), S_w(z_m)} over all words of the given length.
std::vector<Vector> endpoint_images(const std::vector<AffineMap>& maps,
                                    const Vector& first, const Vector& last,
                                    std::size_t length) {
  std::vector<Vector> level{first, last};
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<Vector> next;
    next.reserve(level.size() * maps.size());
    for (const auto& map : maps)
      for (const auto& v : level) next.push_back(apply(map, v));
    level = std::move(next);
  }
  return level;
}

double point_set_diameter(const std::vector<Vector>& points) {
  double diam = 0.0;
  if (points.size() <= 4096) {
    for (std::size_t a = 0; a < points.size(); ++a)
      for (std::size_t b = a + 1; b < points.size(); ++b)
        diam = std::max(diam, distance(points[a], points[b]));
    return diam;
  }
  // Twice the radius about the first point bounds the diameter.
  for (const auto& p : points) diam = std::max(diam, distance(p, points[0]));
  return 2.0 * diam;
}

}  // namespace

std::vector<double> max_word_norms(std::span<const Matrix> linear,
                                   std::size_t max_length) {
  std::vector<double> best(max_length, 0.0);
  if (linear.empty() || max_length == 0) return best;
  if (checked_power(linear.size(), max_length) > kWordBudget) {
    throw Error(ErrorCode::CombinatorialBudget,
                std::to_string(linear.size()) + "^" +
                    std::to_string(max_length) + " words exceed the budget");
  }
  word_norm_dfs(linear, Matrix::identity(linear.front().size()), 0, best);
  return best;
}

ValidationReport Zipper::check(const std::vector<AffineMap>& maps,
                               const std::vector<Vector>& vertices,
                               const Signature& signature,
                               const ZipperOptions& options) {
  ValidationReport report;
  const std::size_t m = maps.size();
  if (m == 0) report.shape_issues.push_back("at least one map is required");
  if (vertices.size() != m + 1) {
    report.shape_issues.push_back("expected " + std::to_string(m + 1) +
                                  " vertices, got " +
                                  std::to_string(vertices.size()));
  }
  if (signature.size() != m) {
    report.shape_issues.push_back("signature has length " +
                                  std::to_string(signature.size()) +
                                  ", expected " + std::to_string(m));
  }
  if (!report.shape_issues.empty()) return report;

  const std::size_t n = vertices.front().size();
  if (n == 0) report.shape_issues.push_back("dimension must be at least 1");
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (vertices[j].size() != n)
      report.shape_issues.push_back("vertex " + std::to_string(j) +
                                    " has wrong dimension");
    else if (!vertices[j].is_finite())
      report.shape_issues.push_back("vertex " + std::to_string(j) +
                                    " is not finite");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (maps[i].linear.size() != n || maps[i].translation.size() != n)
      report.shape_issues.push_back("map " + std::to_string(i + 1) +
                                    " has wrong dimension");
    else if (!maps[i].linear.is_finite() || !maps[i].translation.is_finite())
      report.shape_issues.push_back("map " + std::to_string(i + 1) +
                                    " is not finite");
  }
  if (!report.shape_issues.empty()) return report;

  const Vector& z0 = vertices.front();
  const Vector& zm = vertices.back();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t eps = signature[i];
    const std::size_t targets[2] = {i + eps, i + 1 - eps};
    const Vector* sources[2] = {&z0, &zm};
    for (int end = 0; end < 2; ++end) {
      Vector image = apply(maps[i], *sources[end]);
      const double err = distance(image, vertices[targets[end]]);
      report.max_vertex_error = std::max(report.max_vertex_error, err);
      if (!(err <= options.tolerance)) {
        report.vertex_issues.push_back(VertexIssue{
            i, end == 1, targets[end], std::move(image),
            vertices[targets[end]], err});
      }
    }
  }

  std::vector<Matrix> linear;
  linear.reserve(m);
  for (const auto& map : maps) {
    linear.push_back(map.linear);
    report.contraction_factors.push_back(operator_norm(map.linear));
  }
  const double per_map =
      *std::max_element(report.contraction_factors.begin(),
                        report.contraction_factors.end());
  if (per_map < 1.0 - kContractionMargin) {
    report.contraction_word_length = 1;
    report.contraction_rate = per_map;
  } else if (options.contraction == ContractionMode::PerMap) {
    for (std::size_t i = 0; i < m; ++i) {
      if (report.contraction_factors[i] >= 1.0 - kContractionMargin) {
        std::ostringstream os;
        os.precision(17);
        os << "map " << i + 1 << " has operator norm "
           << report.contraction_factors[i];
        report.contraction_issues.push_back(os.str());
      }
    }
  } else {
    double best_rooted = per_map;
    for (std::size_t length = 2; length <= options.max_word_length; ++length) {
      if (checked_power(m, length) > kWordBudget) break;
      const double worst = max_word_norms(linear, length).back();
      best_rooted = std::min(best_rooted,
                             std::pow(worst, 1.0 / static_cast<double>(length)));
      if (worst < 1.0 - kContractionMargin) {
        report.contraction_word_length = length;
        report.contraction_rate = worst;
        break;
      }
    }
    if (report.contraction_word_length == 0) {
      std::ostringstream os;
      os.precision(17);
      os << "no word length up to " << options.max_word_length
         << " contracts; best rooted norm " << best_rooted;
      report.contraction_issues.push_back(os.str());
    }
  }
  return report;
}

Zipper Zipper::validate(std::vector<AffineMap> maps,
                        std::vector<Vector> vertices, Signature signature,
                        const ZipperOptions& options) {
  ValidationReport report = check(maps, vertices, signature, options);
  if (!report.ok()) throw ZipperViolationError(std::move(report));

  Zipper z;
  z.maps_ = std::move(maps);
  z.vertices_ = std::move(vertices);
  z.signature_ = std::move(signature);
  z.options_ = options;
  z.factors_ = std::move(report.contraction_factors);
  z.word_length_ = report.contraction_word_length;
  z.rate_ = report.contraction_rate;
  const auto images = endpoint_images(z.maps_, z.vertices_.front(),
                                      z.vertices_.back(), z.word_length_);
  z.diameter_bound_ = point_set_diameter(images) / (1.0 - z.rate_);
  return z;
}

double Zipper::max_contraction() const noexcept {
  return *std::max_element(factors_.begin(), factors_.end());
}

LineZipper LineZipper::build(std::vector<double> nodes, Signature signature) {
  if (nodes.size() < 2)
    throw Error(ErrorCode::InvalidNodes, "need at least two nodes");
  if (nodes.front() != 0.0 || nodes.back() != 1.0)
    throw Error(ErrorCode::InvalidNodes, "nodes must start at 0 and end at 1");
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1]) || !std::isfinite(nodes[j]))
      throw Error(ErrorCode::InvalidNodes,
                  "nodes must be strictly increasing (index " +
                      std::to_string(j) + ")");
  }
  const std::size_t m = nodes.size() - 1;
  if (signature.size() != m) {
    throw Error(ErrorCode::CountMismatch,
                "signature length " + std::to_string(signature.size()) +
                    " does not match " + std::to_string(m) + " intervals");
  }
  if (m == 1) {
    throw Error(ErrorCode::NotContracting,
                "a single interval gives ratio q_1 = 1");
  }
  LineZipper line;
  line.nodes_ = std::move(nodes);
  line.signature_ = std::move(signature);
  line.ratios_.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    line.ratios_.push_back(line.nodes_[i + 1] - line.nodes_[i]);
  return line;
}

LineZipper LineZipper::uniform(Signature signature) {
  const std::size_t m = signature.size();
  if (m == 0) throw Error(ErrorCode::InvalidNodes, "empty signature");
  std::vector<double> nodes(m + 1);
  for (std::size_t j = 0; j <= m; ++j)
    nodes[j] = static_cast<double>(j) / static_cast<double>(m);
  nodes.back() = 1.0;
  return build(std::move(nodes), std::move(signature));
}

double LineZipper::forward(std::size_t i, double s) const {
  const double a = nodes_[i];
  const double b = nodes_[i + 1];
  if (signature_.reversed(i)) return (1.0 - s) * b + s * a;
  return (1.0 - s) * a + s * b;
}

double LineZipper::inverse(std::size_t i, double t) const {
  if (signature_.reversed(i)) return (nodes_[i + 1] - t) / ratios_[i];
  return (t - nodes_[i]) / ratios_[i];
}

AffineMap LineZipper::map(std::size_t i) const {
  const double q = ratios_.at(i);
  Matrix linear(1);
  linear(0, 0) = signature_.sign(i) * q;
  return AffineMap(std::move(linear),
                   Vector{signature_.reversed(i) ? nodes_[i + 1] : nodes_[i]});
}

Zipper LineZipper::as_zipper() const {
  std::vector<AffineMap> maps;
  std::vector<Vector> vertices;
  for (std::size_t i = 0; i < size(); ++i) maps.push_back(map(i));
  for (double t : nodes_) vertices.push_back(Vector{t});
  return Zipper::validate(std::move(maps), std::move(vertices), signature_);
}

SimilarityDecomposition decompose(const Zipper& zipper, std::size_t i) {
  const int sign = zipper.signature().sign(i);
  SimilarityDecomposition d;
  d.sign = sign;
  d.offset = zipper.vertex(i + zipper.signature()[i]);
  d.linear_part = static_cast<double>(sign) * zipper.map(i).linear;
  return d;
}

std::vector<SimilarityDecomposition> decompose(const Zipper& zipper) {
  std::vector<SimilarityDecomposition> out;
  out.reserve(zipper.size());
  for (std::size_t i = 0; i < zipper.size(); ++i)
    out.push_back(decompose(zipper, i));
  return out;
}

NormalizedZipper normalize_zipper(const Zipper& zipper) {
  const Vector shift = zipper.first_vertex();
  std::vector<AffineMap> maps;
  maps.reserve(zipper.size());
  for (const auto& map : zipper.maps()) {
    // x -> S(x + z0) - z0
    maps.emplace_back(map.linear,
                      map.linear * shift + map.translation - shift);
  }
  std::vector<Vector> vertices;
  vertices.reserve(zipper.vertices().size());
  for (const auto& v : zipper.vertices()) vertices.push_back(v - shift);
  vertices.front() = Vector::zeros(shift.size());
  return NormalizedZipper{
      Zipper::validate(std::move(maps), std::move(vertices),
                       zipper.signature(), zipper.options()),
      -shift};
}

void require_compatible(const Zipper& zipper, const LineZipper& line) {
  if (zipper.size() != line.size()) {
    throw Error(ErrorCode::CountMismatch,
                std::to_string(zipper.size()) + " maps vs " +
                    std::to_string(line.size()) + " intervals");
  }
  if (!(zipper.signature() == line.signature()))
    throw Error(ErrorCode::SignatureMismatch,
                "zipper and line zipper signatures differ");
}

Zipper product_zipper(const Zipper& spatial, const LineZipper& line) {
  require_compatible(spatial, line);
  const std::size_t n = spatial.dimension();
  std::vector<AffineMap> maps;
  maps.reserve(spatial.size());
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    const AffineMap ti = line.map(i);
    const AffineMap& si = spatial.map(i);
    Matrix linear(n + 1);
    Vector translation(n + 1);
    linear(0, 0) = ti.linear(0, 0);
    translation[0] = ti.translation[0];
    for (std::size_t r = 0; r < n; ++r) {
      translation[r + 1] = si.translation[r];
      for (std::size_t c = 0; c < n; ++c) linear(r + 1, c + 1) = si.linear(r, c);
    }
    maps.emplace_back(std::move(linear), std::move(translation));
  }
  std::vector<Vector> vertices;
  for (std::size_t j = 0; j <= spatial.size(); ++j) {
    Vector v(n + 1);
    v[0] = line.node(j);
    for (std::size_t r = 0; r < n; ++r) v[r + 1] = spatial.vertex(j)[r];
    vertices.push_back(std::move(v));
  }
  return Zipper::validate(std::move(maps), std::move(vertices),
                          spatial.signature(), spatial.options());
}

}  // namespace zipsmooth
