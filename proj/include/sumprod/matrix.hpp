#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

/// Square d x d matrix over Q, row-major.
class Matrix {
 public:
  /// Zero matrix. Throws DomainError when n is 0.
  explicit Matrix(std::size_t n = 1);
  /// Throws DomainError unless entries.size() == n * n.
  Matrix(std::size_t n, std::vector<Rational> row_major);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Rational> entries);

  std::size_t dim() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  std::span<const Rational> entries() const noexcept { return entries_; }

  bool is_diagonal() const;
  bool is_symmetric() const;
  bool is_zero() const;
  std::vector<Rational> diagonal_entries() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  /// Row-major lexicographic on entries (dimension first).
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) noexcept;

 private:
  std::size_t n_;
  std::vector<Rational> entries_;
};

/// Throw DimensionMismatch.
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const noexcept { return m.hash(); }
};

/// Exact determinant: cofactor expansion up to 4 x 4, Bareiss elimination
/// beyond.
Rational determinant(const Matrix& m);
Rational determinant_cofactor(const Matrix& m);
/// Fraction-free (Bareiss) elimination with row pivoting.
Rational determinant_bareiss(const Matrix& m);

}  // namespace sumprod
