// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "zipsmooth/error.hpp"

namespace zipsmooth {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace

Vector Vector::filled(std::size_t dimension, double value) {
  return Vector(std::vector<double>(dimension, value));
}

bool Vector::is_finite() const noexcept {
  return std::all_of(c_.begin(), c_.end(),
                     [](double x) { return std::isfinite(x); });
}

double Vector::norm() const noexcept {
  // Scaled to avoid overflow for large inputs; dimensions are tiny.
  double scale = 0.0;
  for (double x : c_) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : c_) {
    const double y = x / scale;
    sum += y * y;
  }
  return scale * std::sqrt(sum);
}

double Vector::dot(const Vector& other) const {
  require_same(size(), other.size(), "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) sum += c_[i] * other.c_[i];
  return sum;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same(size(), other.size(), "vector add");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same(size(), other.size(), "vector subtract");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& x : c_) x *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }

double distance(const Vector& a, const Vector& b) { return (a - b).norm(); }

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : d_(rows.size()) {
  a_.reserve(d_ * d_);
  for (const auto& row : rows) {
    require_same(row.size(), d_, "matrix row length");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t dimension) {
  Matrix m(dimension);
  for (std::size_t i = 0; i < dimension; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_same(rows[r].size(), rows.size(), "matrix row length");
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool Matrix::is_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(),
                     [](double x) { return std::isfinite(x); });
}

Matrix Matrix::transposed() const {
  Matrix t(d_);
  for (std::size_t r = 0; r < d_; ++r)
    for (std::size_t c = 0; c < d_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& x : a_) x *= s;
  return *this;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same(d_, other.d_, "matrix add");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same(d_, other.d_, "matrix subtract");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same(a.size(), b.size(), "matrix product");
  const std::size_t d = a.size();
  Matrix p(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const double ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) p(r, c) += ark * b(k, c);
    }
  return p;
}

Vector operator*(const Matrix& m, const Vector& v) {
  require_same(m.size(), v.size(), "matrix-vector product");
  Vector out(v.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.size(); ++c) sum += m(r, c) * v[c];
    out[r] = sum;
  }
  return out;
}

Matrix operator*(double s, Matrix m) { return m *= s; }
Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

AffineMap::AffineMap(Matrix linear_part, Vector translation_part)
    : linear(std::move(linear_part)), translation(std::move(translation_part)) {
  require_same(linear.size(), translation.size(), "affine map");
}

AffineMap AffineMap::identity(std::size_t dimension) {
  return AffineMap(Matrix::identity(dimension), Vector::zeros(dimension));
}

Vector apply(const AffineMap& map, const Vector& point) {
  require_same(map.dimension(), point.size(), "apply");
  return map.linear * point + map.translation;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  require_same(outer.dimension(), inner.dimension(), "compose");
  return AffineMap(outer.linear * inner.linear,
                   outer.linear * inner.translation + outer.translation);
}

Vector solve_linear(const Matrix& m, const Vector& b) {
  require_same(m.size(), b.size(), "solve_linear");
  const std::size_t n = m.size();
  Matrix a = m;
  Vector x = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < kSingularPivot) {
      throw Error(ErrorCode::SingularSystem,
                  "pivot " + std::to_string(a(pivot, col)) + " in column " +
                      std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      std::swap(x[col], x[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      x[r] -= factor * x[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double sum = x[i];
    for (std::size_t c = i + 1; c < n; ++c) sum -= a(i, c) * x[c];
    x[i] = sum / a(i, i);
  }
  return x;
}

namespace {

constexpr int kMaxPowerIterations = 10000;

NormEstimate power_iteration(const Matrix& gram, Vector v) {
  NormEstimate est;
  double nv = v.norm();
  if (nv == 0.0) return est;
  v *= 1.0 / nv;
  double lambda = 0.0;
  int stable = 0;
  for (int it = 0; it < kMaxPowerIterations; ++it) {
    Vector w = gram * v;
    const double next = v.dot(w);
    const double nw = w.norm();
    if (nw == 0.0) {
      est.value = 0.0;
      est.witness = v;
      return est;
    }
    w *= 1.0 / nw;
    const bool settled = std::abs(next - lambda) <= 1e-15 * std::abs(next);
    lambda = next;
    v = std::move(w);
    stable = settled ? stable + 1 : 0;
    if (stable >= 2) break;
  }
  est.value = std::sqrt(std::max(lambda, 0.0));
  est.witness = std::move(v);
  return est;
}

}  // namespace

NormEstimate operator_norm_estimate(const Matrix& m) {
  const std::size_t d = m.size();
  NormEstimate best;
  best.witness = Vector::zeros(d);
  if (d == 0 || m.max_abs() == 0.0) {
    if (d > 0) best.witness[0] = 1.0;
    return best;
  }
  if (d == 1) {
    best.value = std::abs(m(0, 0));
    best.witness[0] = 1.0;
    return best;
  }
  const Matrix gram = m.transposed() * m;
  best = power_iteration(gram, Vector::filled(d, 1.0));
  for (std::size_t k = 0; k < d; ++k) {
    Vector e(d);
    e[k] = 1.0;
    NormEstimate alt = power_iteration(gram, std::move(e));
    if (alt.value > best.value * (1.0 + 1e-12)) best = std::move(alt);
  }
  return best;
}

double operator_norm(const Matrix& m) { return operator_norm_estimate(m).value; }

}  // namespace zipsmooth
