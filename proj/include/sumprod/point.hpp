#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

/// A point of Q^d. The dimension is fixed at construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }

  /// Keeps the listed coordinates, in the given order.
  Point select(std::span<const std::size_t> indices) const;
  /// Concatenation (a, b).
  Point concat(const Point& other) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;
  /// Lexicographic. Points of different dimension compare by dimension first.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) noexcept;

 private:
  std::vector<Rational> coords_;
};

/// Componentwise sum. Throws DimensionMismatch.
Point operator+(const Point& a, const Point& b);
/// Componentwise product. Throws DimensionMismatch.
Point operator*(const Point& a, const Point& b);

std::ostream& operator<<(std::ostream& os, const Point& p);

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept { return p.hash(); }
};

}  // namespace sumprod
