#include "doctest.h"
#include "support.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/io.hpp"

using namespace sumprod;
using testing_support::ps;
using testing_support::values;

TEST_CASE("named families") {
  CHECK(interval_family(3) == values({1, 2, 3}));
  CHECK(interval_family(1) == values({1}));
  CHECK(geometric_family(3) == values({2, 4, 8}));
  CHECK(cn_family(2) == ps({{1, 2}, {1, 4}, {2, 2}, {2, 4}}));
  CHECK(growth(cn_family(2)) == Growth{9, 9});
  CHECK_THROWS_AS(interval_family(0), DomainError);
  CHECK(geometric_family(300)[299][0] == Rational::pow(Rational(2), 300));
}

TEST_CASE("growth of the named families") {
  for (std::int64_t n = 1; n <= 100; ++n) {
    REQUIRE(growth(interval_family(n)).sum_size == static_cast<std::uint64_t>(2 * n - 1));
  }
  for (std::int64_t n = 1; n <= 60; ++n) {
    const Growth g = growth(geometric_family(n));
    REQUIRE(g.prod_size == static_cast<std::uint64_t>(2 * n - 1));
    REQUIRE(g.sum_size == static_cast<std::uint64_t>(n * (n + 1) / 2));
  }
  for (std::int64_t n = 1; n <= 40; ++n) {
    const PointSet c = cn_family(n);
    REQUIRE(c.size() == static_cast<std::size_t>(n * n));
    const Growth g = growth(c);
    REQUIRE(g.sum_size == static_cast<std::uint64_t>((2 * n - 1) * n * (n + 1) / 2));
    REQUIRE(8 * g.sum_size <= static_cast<std::uint64_t>(9 * n * n * n));
    REQUIRE(g.prod_size <= static_cast<std::uint64_t>(2 * n * n * n));
  }
  // The 9/8 constant is attained at N = 2.
  CHECK(8 * growth(cn_family(2)).sum_size == 9 * 8);
}

TEST_CASE("random families are deterministic") {
  FamilySpec spec;
  spec.kind = FamilyKind::random_box;
  spec.n = 10;
  spec.dim = 2;
  spec.seed = 12345;
  const PointSet a = generate(spec);
  CHECK(a.size() == 10);
  CHECK(generate(spec) == a);
  CHECK(format_pointset(generate(spec)) == format_pointset(a));
  for (const auto& p : a) {
    for (const auto& x : p.coords()) CHECK((x >= Rational(-8) && x <= Rational(8) && x.is_integer()));
  }
  spec.seed = 12346;
  CHECK(generate(spec) != a);
}

TEST_CASE("random boxes reach zeros and negatives") {
  const PointSet a = random_box(20, 2, -2, 2, 9);
  bool zero = false;
  bool negative = false;
  for (const auto& p : a) {
    zero = zero || p[0].is_zero();
    negative = negative || p[0].sign() < 0;
  }
  CHECK(zero);
  CHECK(negative);
  CHECK(random_box(25, 2, -2, 2, 1).size() == 25);
  CHECK_THROWS_AS(random_box(26, 2, -2, 2, 1), DomainError);
  CHECK_THROWS_AS(random_box(1, 1, 3, 2, 1), DomainError);
}

TEST_CASE("random products factor their growth") {
  FamilySpec spec;
  spec.kind = FamilyKind::random_product;
  spec.n = 8;
  spec.dim = 2;
  spec.split = 1;
  spec.seed = 77;
  spec.lo = -5;
  spec.hi = 5;
  const PointSet c = generate(spec);
  REQUIRE(c.size() == 64);
  const std::size_t first[] = {0};
  const std::size_t second[] = {1};
  const PointSet a = project(c, first);
  const PointSet b = project(c, second);
  CHECK(cartesian(a, b) == c);
  const Growth g = growth(c);
  CHECK(g.sum_size == growth(a).sum_size * growth(b).sum_size);
  CHECK(g.prod_size == growth(a).prod_size * growth(b).prod_size);
}

TEST_CASE("family specs validate and serialise") {
  FamilySpec spec;
  spec.kind = FamilyKind::random_product;
  spec.n = 3;
  spec.dim = 3;
  spec.split = 2;
  spec.seed = 5;
  CHECK(FamilySpec::from_json(spec.to_json()) == spec);
  CHECK(spec.output_dim() == 3);
  spec.split = 3;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK(parse_family_kind("cn") == FamilyKind::cn_product);
  CHECK(parse_family_kind("box") == FamilyKind::random_box);
  CHECK_THROWS_AS(parse_family_kind("nope"), DomainError);
  FamilySpec cn;
  cn.kind = FamilyKind::cn_product;
  cn.n = 4;
  CHECK(cn.output_dim() == 2);
  CHECK(generate(cn) == cn_family(4));
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(0) != derive_seed(1));
  CHECK(derive_seed(42) == derive_seed(42));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) REQUIRE(uniform_below(rng, 7) < 7);
}
