#include "sumprod/pointset.hpp"

#include <algorithm>
#include <set>

#include "sumprod/detail/pairwise.hpp"
#include "sumprod/errors.hpp"

namespace sumprod {
namespace {

void require_binary(const PointSet& a, const PointSet& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  if (a.empty() || b.empty()) throw EmptyInput(what);
}

}  // namespace

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("point set dimension must be at least 1");
}

PointSet PointSet::from_points(std::size_t dim, std::vector<Point> points) {
  PointSet out(dim);
  for (const auto& p : points) {
    if (p.dim() != dim) throw DimensionMismatch(dim, p.dim());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  out.points_ = std::move(points);
  return out;
}

PointSet PointSet::from_sorted_unique(std::size_t dim, std::vector<Point> points) {
  PointSet out(dim);
  out.points_ = std::move(points);
  return out;
}

PointSet PointSet::from_values(std::vector<Rational> values) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (auto& v : values) pts.push_back(Point({std::move(v)}));
  return from_points(1, std::move(pts));
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return dim_ == other.dim_ &&
         std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

PointSet sumset(const PointSet& a, const PointSet& b, const SetOpOptions& options) {
  require_binary(a, b, "sumset");
  auto pts = detail::pairwise_image<Point, PointHash>(
      a.points(), b.points(), [](const Point& x, const Point& y) { return x + y; }, options);
  return PointSet::from_sorted_unique(a.dim(), std::move(pts));
}

PointSet productset(const PointSet& a, const PointSet& b, const SetOpOptions& options) {
  require_binary(a, b, "productset");
  auto pts = detail::pairwise_image<Point, PointHash>(
      a.points(), b.points(), [](const Point& x, const Point& y) { return x * y; }, options);
  return PointSet::from_sorted_unique(a.dim(), std::move(pts));
}

PointSet cartesian(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw EmptyInput("cartesian");
  std::vector<Point> pts;
  pts.reserve(a.size() * b.size());
  // Lexicographic order of (a, b) pairs is already canonical.
  for (const auto& x : a) {
    for (const auto& y : b) pts.push_back(x.concat(y));
  }
  return PointSet::from_sorted_unique(a.dim() + b.dim(), std::move(pts));
}

PointSet project(const PointSet& a, std::span<const std::size_t> coordinates) {
  std::vector<Point> pts;
  pts.reserve(a.size());
  for (const auto& p : a) pts.push_back(p.select(coordinates));
  return PointSet::from_points(coordinates.size(), std::move(pts));
}

Growth growth(const PointSet& a, const SetOpOptions& options) {
  if (a.empty()) throw EmptyInput("growth");
  return {sumset(a, a, options).size(), productset(a, a, options).size()};
}

CoordinateStats coordinate_stats(const PointSet& a) {
  if (a.empty()) throw EmptyInput("coordinate_stats");
  CoordinateStats stats;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::set<Rational> values;
    for (const auto& p : a) values.insert(p[i]);
    stats.distinct.push_back(values.size());
    stats.min.push_back(*values.begin());
    stats.max.push_back(*values.rbegin());
  }
  return stats;
}

}  // namespace sumprod
