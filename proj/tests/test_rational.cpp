#include <climits>
#include <random>
#include <unordered_set>

#include "doctest.h"
#include "sumprod/errors.hpp"
#include "sumprod/rational.hpp"

using sumprod::Rational;

namespace {

mpq_class q(const char* s) {
  mpq_class x(s);
  x.canonicalize();
  return x;
}

/// Values around the int64 boundary plus ordinary small fractions.
Rational sample(std::mt19937_64& rng) {
  static const std::int64_t edges[] = {0, 1, -1, 2, 3, 7, INT64_MAX, INT64_MIN + 1, INT64_MAX - 1,
                                       std::int64_t{1} << 62, -(std::int64_t{1} << 62),
                                       std::int64_t{3037000499}, 1000000007};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<std::size_t> edge(0, std::size(edges) - 1);
  std::uniform_int_distribution<std::int64_t> small(-50, 50);
  auto value = [&] { return pick(rng) == 0 ? edges[edge(rng)] : small(rng); };
  std::int64_t den = value();
  if (den < 0) den = -den;
  if (den == 0) den = 1;
  Rational r(value(), den);
  if (pick(rng) == 0) r = r * Rational(mpz_class("123456789012345678901234567890"));
  return r;
}

}  // namespace

TEST_CASE("rational addition examples") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(0) + Rational(7, 9) == Rational(7, 9));
  const Rational one = Rational(1, 3) + Rational(2, 3);
  CHECK(one == Rational(1));
  CHECK(one.str() == "1");
  CHECK(one.is_integer());
}

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, -5).str() == "0");
  CHECK(Rational(-4, -2) == Rational(2));
  CHECK_THROWS_AS(Rational(1, 0), sumprod::DomainError);
}

TEST_CASE("rational parse and print round-trip") {
  for (const char* text : {"0", "7", "-3/2", "5/5277", "+4", "123456789012345678901234567890/7",
                           "-9223372036854775808", "9223372036854775808"}) {
    const Rational r = Rational::parse(text);
    CHECK(Rational::parse(r.str()) == r);
    CHECK(r.to_mpq() == q(text[0] == '+' ? text + 1 : text));
  }
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-0/3").str() == "0");
  for (const char* bad : {"", "1/0", "abc", "1/", "/2", "1/-2", "--1", "1.5", "1 /2", "+", "0x10"}) {
    CHECK_THROWS_AS(Rational::parse(bad), sumprod::ParseError);
  }
}

TEST_CASE("rational arithmetic agrees with GMP on random values") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 4000; ++i) {
    const Rational x = sample(rng);
    const Rational y = sample(rng);
    const mpq_class a = x.to_mpq();
    const mpq_class b = y.to_mpq();
    REQUIRE((x + y).to_mpq() == mpq_class(a + b));
    REQUIRE((x - y).to_mpq() == mpq_class(a - b));
    REQUIRE((x * y).to_mpq() == mpq_class(a * b));
    if (!y.is_zero()) REQUIRE((x / y).to_mpq() == mpq_class(a / b));
    REQUIRE(((x <=> y) < 0) == (cmp(a, b) < 0));
    REQUIRE((x == y) == (cmp(a, b) == 0));
    REQUIRE((-x).to_mpq() == mpq_class(-a));
  }
}

TEST_CASE("rational algebraic laws") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational x = sample(rng);
    const Rational y = sample(rng);
    const Rational z = sample(rng);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(Rational::parse(x.str()) == x);
  }
}

TEST_CASE("big results that shrink back are stored canonically") {
  const Rational big(mpz_class("1000000000000000000000"));
  const Rational back = big / big;
  CHECK(back == Rational(1));
  CHECK(back.hash() == Rational(1).hash());
  const Rational m(INT64_MAX);
  const Rational sum = m + Rational(1);
  CHECK(sum.str() == "9223372036854775808");
  CHECK(sum - Rational(1) == m);
  CHECK((sum - Rational(1)).hash() == m.hash());
  std::unordered_set<Rational, sumprod::RationalHash> set{m, sum - Rational(1), sum};
  CHECK(set.size() == 2);
}

TEST_CASE("rational division by zero and powers") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), sumprod::DomainError);
  CHECK(Rational::pow(Rational(2), 10) == Rational(1024));
  CHECK(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(Rational::pow(Rational(2), 100).str() == "1267650600228229401496703205376");
  CHECK_THROWS_AS(Rational::pow(Rational(0), -1), sumprod::DomainError);
}

TEST_CASE("rational sign, abs and double conversion") {
  CHECK(Rational(-3, 4).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(-3, 4).abs() == Rational(3, 4));
  CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
  CHECK(Rational(5, 5277).to_double() == doctest::Approx(5.0 / 5277.0));
}
