#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "sumprod/pointset.hpp"

namespace testing_support {

using sumprod::Point;
using sumprod::PointSet;
using sumprod::Rational;

inline PointSet ps(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<Point> pts;
  std::size_t dim = 1;
  for (const auto& r : rows) {
    pts.emplace_back(std::vector<Rational>(r));
    dim = r.size();
  }
  return PointSet::from_points(dim, std::move(pts));
}

inline PointSet values(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> v;
  for (auto x : xs) v.emplace_back(x);
  return PointSet::from_values(std::move(v));
}

/// Small numerators and denominators so that sums and products collide often.
inline Rational random_rational(std::mt19937_64& rng, int range, bool fractions) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, fractions ? 4 : 1);
  return Rational(num(rng), den(rng));
}

inline PointSet random_set(std::mt19937_64& rng, std::size_t count, std::size_t dim, int range,
                           bool fractions = true) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Rational> c;
    for (std::size_t k = 0; k < dim; ++k) c.push_back(random_rational(rng, range, fractions));
    pts.emplace_back(std::move(c));
  }
  return PointSet::from_points(dim, std::move(pts));
}

}  // namespace testing_support
