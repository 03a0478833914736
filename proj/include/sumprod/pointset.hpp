#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sumprod/point.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {

/// Finite subset of Q^d, stored as a strictly increasing (lexicographic)
/// sequence of points. May be empty; theorem-facing operations reject that.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 1);

  /// Sorts and deduplicates. Throws DimensionMismatch if a point has the
  /// wrong dimension, DomainError if dim is 0.
  static PointSet from_points(std::size_t dim, std::vector<Point> points);
  /// Caller guarantees strictly increasing points of dimension `dim`.
  static PointSet from_sorted_unique(std::size_t dim, std::vector<Point> points);
  /// One-dimensional set from scalars.
  static PointSet from_values(std::vector<Rational> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::span<const Point> points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool contains(const Point& p) const;
  bool is_subset_of(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::vector<Point> points_;
};

/// A + B. Throws DimensionMismatch or EmptyInput.
PointSet sumset(const PointSet& a, const PointSet& b, const SetOpOptions& options = {});
/// A . B with componentwise products. Throws DimensionMismatch or EmptyInput.
PointSet productset(const PointSet& a, const PointSet& b, const SetOpOptions& options = {});
/// A x B in dimension dim(A) + dim(B). Throws EmptyInput.
PointSet cartesian(const PointSet& a, const PointSet& b);
/// Keeps the given coordinates of every point (result deduplicated).
PointSet project(const PointSet& a, std::span<const std::size_t> coordinates);

struct Growth {
  std::uint64_t sum_size = 0;
  std::uint64_t prod_size = 0;

  std::uint64_t total() const noexcept { return sum_size + prod_size; }
  std::uint64_t max() const noexcept { return sum_size > prod_size ? sum_size : prod_size; }
  friend bool operator==(const Growth&, const Growth&) = default;
};

/// (|A+A|, |A.A|). Throws EmptyInput.
Growth growth(const PointSet& a, const SetOpOptions& options = {});

/// Per-coordinate distinct-value counts and ranges.
struct CoordinateStats {
  std::vector<std::size_t> distinct;
  std::vector<Rational> min;
  std::vector<Rational> max;
};

CoordinateStats coordinate_stats(const PointSet& a);

}  // namespace sumprod
