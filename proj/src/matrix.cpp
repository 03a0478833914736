#include "sumprod/matrix.hpp"

#include <utility>

#include "sumprod/errors.hpp"

namespace sumprod {

Matrix::Matrix(std::size_t n) : n_(n), entries_(n * n) {
  if (n == 0) throw DomainError("matrix dimension must be at least 1");
}

Matrix::Matrix(std::size_t n, std::vector<Rational> row_major)
    : n_(n), entries_(std::move(row_major)) {
  if (n == 0) throw DomainError("matrix dimension must be at least 1");
  if (entries_.size() != n * n) {
    throw DomainError("matrix of dimension " + std::to_string(n) + " needs " +
                      std::to_string(n * n) + " entries, got " + std::to_string(entries_.size()));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const Rational> entries) {
  Matrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : entries_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

std::vector<Rational> Matrix::diagonal_entries() const {
  std::vector<Rational> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back((*this)(i, i));
  return out;
}

std::size_t Matrix::hash() const noexcept {
  std::size_t h = n_;
  for (const auto& x : entries_) h = hash_combine(h, x.hash());
  return h;
}

std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) noexcept {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (auto c = a.entries_[i] <=> b.entries_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  std::vector<Rational> out;
  out.reserve(a.entries().size());
  for (std::size_t k = 0; k < a.entries().size(); ++k) out.push_back(a.entries()[k] + b.entries()[k]);
  return Matrix(a.dim(), std::move(out));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  std::vector<Rational> out;
  out.reserve(a.entries().size());
  for (std::size_t k = 0; k < a.entries().size(); ++k) out.push_back(a.entries()[k] - b.entries()[k]);
  return Matrix(a.dim(), std::move(out));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  const std::size_t n = a.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational acc;
      for (std::size_t k = 0; k < n; ++k) {
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i == 0 ? "[" : ", [");
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j != 0) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

namespace {

Rational cofactor_expand(const std::vector<Rational>& m, std::size_t n) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  Rational det;
  std::vector<Rational> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col].is_zero()) continue;
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != col) minor[k++] = m[i * n + j];
      }
    }
    Rational term = m[col] * cofactor_expand(minor, n - 1);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace

Rational determinant_cofactor(const Matrix& m) {
  return cofactor_expand({m.entries().begin(), m.entries().end()}, m.dim());
}

Rational determinant_bareiss(const Matrix& m) {
  const std::size_t n = m.dim();
  std::vector<Rational> a(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };
  Rational previous(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / previous;
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  Rational det = at(n - 1, n - 1);
  return negate ? -det : det;
}

Rational determinant(const Matrix& m) {
  return m.dim() <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

}  // namespace sumprod
