#include <random>

#include "doctest.h"
#include "support.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/io.hpp"

using namespace sumprod;
using testing_support::ps;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_pointset(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("point-set format") {
  const PointSet a = ps({{1, 2}, {Rational(-3, 2), 0}});
  const std::string text = format_pointset(a);
  CHECK(text == "# pointset v1\ndim 2\n-3/2 0\n1 2\n");
  CHECK(parse_pointset(text) == a);
  CHECK(parse_pointset("# pointset v1\ndim 2\n1 2\n\n-3/2 0\n") == a);
  const std::string tagged = format_pointset(a, "{\"seed\":1}");
  CHECK(tagged.rfind("# pointset v1 {\"seed\":1}\n", 0) == 0);
  CHECK(parse_pointset(tagged) == a);
}

TEST_CASE("point-set round-trip is bit-exact") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const PointSet a = testing_support::random_set(rng, 1 + rng() % 40, 1 + trial % 3, 50);
    const std::string text = format_pointset(a);
    const PointSet back = parse_pointset(text);
    REQUIRE(back == a);
    REQUIRE(format_pointset(back) == text);
  }
}

TEST_CASE("point-set parse errors name the line") {
  CHECK(error_line("# pointset v1\ndim 1\n1\n2\n1\n") == 5);
  CHECK(error_line("# pointset v1\ndim 1\n1/0\n") == 3);
  CHECK(error_line("# pointset v1\ndim 2\n1 2\n3\n") == 4);
  CHECK(error_line("# matset v1\ndim 2\n") == 1);
  CHECK(error_line("# pointset v1\ndims 2\n") == 2);
  CHECK(error_line("# pointset v1\ndim 0\n") == 2);
  CHECK(error_line("") == 1);
  CHECK(parse_pointset("# pointset v1\ndim 3\n").empty());
}

TEST_CASE("matrix-set format") {
  const MatrixSet d = dn_family(2);
  const std::string text = format_matrixset(d);
  CHECK(text == "# matset v1\ndim 2\n1 1/2\n0 1\n\n1 1\n0 1\n");
  CHECK(parse_matrixset(text) == d);
  CHECK(detect_kind(text) == SetFileKind::matrixset);
  CHECK(detect_kind("# pointset v1 x\ndim 1\n") == SetFileKind::pointset);
  CHECK_THROWS_AS(detect_kind("hello\n"), ParseError);
  CHECK_THROWS_AS(parse_matrixset("# matset v1\ndim 2\n1 0\n0 1\n\n1 0\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrixset("# matset v1\ndim 2\n1 0\n0 1\n1 0\n"), ParseError);
}

TEST_CASE("provenance must be one line") {
  CHECK_THROWS_AS(format_pointset(ps({{1}}), "a\nb"), DomainError);
}
