#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/matrix.hpp"

using namespace sumprod;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, int range) {
  std::vector<Rational> e;
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(testing_support::random_rational(rng, range, true));
  return Matrix(n, std::move(e));
}

}  // namespace

TEST_CASE("determinant examples") {
  CHECK(determinant(Matrix::identity(3)) == Rational(1));
  const Rational diag[] = {2, Rational(-1, 3), 5, 7, Rational(1, 2)};
  CHECK(determinant(Matrix::diagonal(diag)) == Rational(2) * Rational(-1, 3) * 5 * 7 * Rational(1, 2));
  CHECK(determinant(Matrix(2, {1, Rational(1, 2), 0, 1})) == Rational(1));
  CHECK(determinant(Matrix(3)) == Rational(0));
}

TEST_CASE("determinant matches the Leibniz expansion") {
  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      Matrix m = random_matrix(rng, n, 4);
      if (trial % 5 == 0 && n > 1) {
        for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * Rational(3);
      }
      const mpq_class expected = oracle::leibniz_det(oracle::entries_of(m));
      REQUIRE(determinant(m).to_mpq() == expected);
      REQUIRE(determinant_bareiss(m).to_mpq() == expected);
      if (n <= 5) REQUIRE(determinant_cofactor(m).to_mpq() == expected);
    }
  }
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(37);
  for (std::size_t n : {2U, 3U}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix a = random_matrix(rng, n, 6);
      const Matrix b = random_matrix(rng, n, 6);
      REQUIRE(determinant(a * b) == determinant(a) * determinant(b));
    }
  }
}

TEST_CASE("matrix arithmetic and predicates") {
  const Matrix a(2, {1, 2, 3, 4});
  const Matrix b(2, {0, 1, 1, 0});
  CHECK(a * b == Matrix(2, {2, 1, 4, 3}));
  CHECK(b * a == Matrix(2, {3, 4, 1, 2}));
  CHECK(a + b == Matrix(2, {1, 3, 4, 4}));
  CHECK(a - a == Matrix(2));
  CHECK(a * Matrix::identity(2) == a);
  CHECK(b.is_symmetric());
  CHECK_FALSE(a.is_symmetric());
  CHECK_FALSE(b.is_diagonal());
  CHECK(Matrix::identity(3).is_diagonal());
  CHECK(Matrix(2).is_zero());
  CHECK_THROWS_AS(a + Matrix(3), DimensionMismatch);
  CHECK_THROWS_AS(a * Matrix(3), DimensionMismatch);
  CHECK_THROWS_AS(Matrix(2, {1, 2, 3}), DomainError);
  CHECK(Matrix(2, {1, 0, 0, 2}) < Matrix(2, {1, 0, 1, 0}));
}
