#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/verifier.hpp"

using namespace sumprod;
using testing_support::values;

TEST_CASE("exponent examples") {
  CHECK(exponent(values({1, 2, 3})) == doctest::Approx(std::log(6.0) / std::log(3.0) - 1));
  CHECK(exponent(values({2, 4, 8})) == doctest::Approx(0.6309).epsilon(1e-4));
  CHECK(exponent(values({5, 11})) == doctest::Approx(std::log(3.0) / std::log(2.0) - 1));
  CHECK(exponent(values({-3, 7})) == doctest::Approx(0.585).epsilon(1e-3));
  CHECK_THROWS_AS(exponent(values({4})), DomainError);
  CHECK(exponent_total_of(Growth{5, 6}, 3) == doctest::Approx(std::log(11.0) / std::log(3.0) - 1));
}

TEST_CASE("exponent of a Cartesian square") {
  // Sizes multiply, so exponent(A x A) <= exponent(A), with equality when the
  // same operation dominates both factors.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const PointSet a = random_box(2 + rng() % 12, 1, -20, 20, rng());
    CHECK(exponent(cartesian(a, a)) <= exponent(a) + 1e-12);
  }
  for (std::int64_t n = 2; n <= 8; ++n) {
    const PointSet c = cn_family(n);
    const Growth g = growth(c);
    REQUIRE(g.sum_size >= g.prod_size);
    CHECK(exponent(cartesian(c, c)) == doctest::Approx(exponent(c)).epsilon(1e-12));
  }
}

TEST_CASE("C_N sweep") {
  FamilySpec spec;
  spec.kind = FamilyKind::cn_product;
  const GrowthReport r = sweep(spec, 2, 12);
  REQUIRE(r.rows.size() == 11);
  double previous = 10;
  for (const auto& row : r.rows) {
    const auto n = static_cast<std::uint64_t>(row.n);
    REQUIRE(row.growth.sum_size == (2 * n - 1) * n * (n + 1) / 2);
    REQUIRE(row.within_ceiling.value());
    REQUIRE(*row.exponent > 0.5);
    REQUIRE(*row.exponent < previous);
    previous = *row.exponent;
  }
  CHECK(r.d2_ceiling.value() == 0.5);
  CHECK(r.theorem_line == doctest::Approx((Rational(588, 1759) / Rational(2)).to_double()));
}

TEST_CASE("D_N sweep decreases towards zero") {
  const GrowthReport r = sweep_dn(1, 30);
  CHECK_FALSE(r.rows[0].exponent.has_value());
  double previous = 10;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto n = static_cast<double>(r.rows[i].n);
    REQUIRE(*r.rows[i].exponent == doctest::Approx(std::log(2 * n - 1) / std::log(n) - 1));
    REQUIRE(*r.rows[i].exponent < previous);
    previous = *r.rows[i].exponent;
  }
  CHECK(previous < 0.25);
}

TEST_CASE("interval sweep: sums flat, products grow") {
  FamilySpec spec;
  spec.kind = FamilyKind::interval;
  const GrowthReport r = sweep(spec, 10, 40);
  for (const auto& row : r.rows) {
    const double sum_exp = std::log(static_cast<double>(row.growth.sum_size)) / std::log(static_cast<double>(row.size)) - 1;
    REQUIRE(row.growth.sum_size == static_cast<std::uint64_t>(2 * row.n - 1));
    REQUIRE(sum_exp < 0.31);
  }
  CHECK(*r.rows.back().exponent > 0.6);
}

TEST_CASE("sweep is independent of the thread count") {
  FamilySpec spec;
  spec.kind = FamilyKind::random_box;
  spec.dim = 2;
  spec.seed = 9;
  SweepOptions one;
  SweepOptions many;
  many.threads = 4;
  CHECK(sweep(spec, 5, 30, one).to_json() == sweep(spec, 5, 30, many).to_json());
  CHECK(sweep(spec, 5, 8, one).to_csv() == sweep(spec, 5, 8, many).to_csv());
  CHECK_THROWS_AS(sweep(spec, 5, 4), DomainError);
}

TEST_CASE("report renderings") {
  FamilySpec spec;
  spec.kind = FamilyKind::cn_product;
  const GrowthReport r = sweep(spec, 2, 3);
  const auto j = r.to_json();
  CHECK(j["rows"][0]["sum"] == 9);
  CHECK(j["rows"][1]["total"] == 60);
  CHECK(r.to_csv().find("2,4,9,9,9,18,") != std::string::npos);
  CHECK(r.to_text().find("ok") != std::string::npos);
  CHECK(cn_within_ceiling(2, Growth{9, 9}));
  CHECK_FALSE(cn_within_ceiling(2, Growth{10, 9}));
}

TEST_CASE("extremal search") {
  const SearchResult r = extremal_search(integer_box(1, 1, 8), 3);
  CHECK(r.value == 11);
  CHECK(r.examined == 56);
  bool has_123 = false;
  for (const auto& s : r.minimizers) {
    REQUIRE(growth(s).total() == 11);
    has_123 = has_123 || s == values({1, 2, 3});
  }
  CHECK(has_123);
  CHECK(extremal_search(integer_box(1, 1, 8), 2).value == 6);
  CHECK(extremal_search(integer_box(1, 1, 20), 2).value == 6);
  try {
    extremal_search(integer_box(1, -50, 50), 10);
    FAIL("expected the budget to be exceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.count() == "19212541264840");
  }
  CHECK_THROWS_AS(extremal_search(integer_box(1, 1, 3), 1), DomainError);
}

TEST_CASE("extremal search ignores enumeration order and thread count") {
  std::vector<Point> u = integer_box(2, -1, 1);
  const SearchResult a = extremal_search(u, 3);
  std::mt19937_64 rng(1);
  std::shuffle(u.begin(), u.end(), rng);
  u.push_back(u.front());
  const SearchResult b = extremal_search(u, 3, 4);
  CHECK(a.value == b.value);
  CHECK(a.minimizers == b.minimizers);
  CHECK(a.to_json() == b.to_json());
}
