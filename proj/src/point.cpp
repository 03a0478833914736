#include "sumprod/point.hpp"

#include "sumprod/errors.hpp"

namespace sumprod {

Point Point::select(std::span<const std::size_t> indices) const {
  std::vector<Rational> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(coords_.at(i));
  return Point(std::move(out));
}

Point Point::concat(const Point& other) const {
  std::vector<Rational> out(coords_);
  out.insert(out.end(), other.coords_.begin(), other.coords_.end());
  return Point(std::move(out));
}

std::size_t Point::hash() const noexcept {
  std::size_t h = coords_.size();
  for (const auto& c : coords_) h = hash_combine(h, c.hash());
  return h;
}

std::strong_ordering operator<=>(const Point& a, const Point& b) noexcept {
  if (a.dim() != b.dim()) return a.dim() <=> b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Point operator+(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  std::vector<Rational> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a[i] + b[i]);
  return Point(std::move(out));
}

Point operator*(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  std::vector<Rational> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a[i] * b[i]);
  return Point(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i != 0) os << ", ";
    os << p[i];
  }
  return os << ')';
}

}  // namespace sumprod
