// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_GEOMETRY_HPP
#define ZIPSMOOTH_GEOMETRY_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace zipsmooth {

// Small dense linear algebra over R^d. Dimensions are expected to stay
// in single digits; everything is stored densely and copied by value.

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dimension) : c_(dimension, 0.0) {}
  Vector(std::initializer_list<double> values) : c_(values) {}
  explicit Vector(std::vector<double> values) : c_(std::move(values)) {}

  static Vector zeros(std::size_t dimension) { return Vector(dimension); }
  static Vector filled(std::size_t dimension, double value);

  std::size_t size() const noexcept { return c_.size(); }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> values() const noexcept { return c_; }

  bool is_finite() const noexcept;
  double norm() const noexcept;
  double dot(const Vector& other) const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> c_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);

double distance(const Vector& a, const Vector& b);

// Square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dimension)
      : d_(dimension), a_(dimension * dimension, 0.0) {}
  // Rows must all have length rows.size().
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t dimension);
  static Matrix diagonal(const Vector& diag);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return d_; }
  double& operator()(std::size_t r, std::size_t c) { return a_[r * d_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return a_[r * d_ + c];
  }

  bool is_finite() const noexcept;
  Matrix transposed() const;
  double max_abs() const noexcept;

  Matrix& operator*=(double s) noexcept;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);
Matrix operator*(double s, Matrix m);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);

// x -> linear * x + translation
struct AffineMap {
  Matrix linear;
  Vector translation;

  AffineMap() = default;
  AffineMap(Matrix linear_part, Vector translation_part);

  static AffineMap identity(std::size_t dimension);

  std::size_t dimension() const noexcept { return translation.size(); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

Vector apply(const AffineMap& map, const Vector& point);

// apply(compose(a, b), x) == apply(a, apply(b, x))
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

inline constexpr double kSingularPivot = 1e-14;

// Gaussian elimination with partial pivoting. Throws SingularSystem when a
// pivot falls below kSingularPivot in magnitude.
Vector solve_linear(const Matrix& m, const Vector& b);

struct NormEstimate {
  double value = 0.0;
  Vector witness;  // unit vector with |M witness| == value (to accuracy)
};

// Spectral norm by power iteration on M^T M. The all-ones vector is the
// primary start; coordinate vectors are tried as well so that a start
// orthogonal to the top singular direction cannot hide it.
NormEstimate operator_norm_estimate(const Matrix& m);
double operator_norm(const Matrix& m);

}  // namespace zipsmooth

#endif
