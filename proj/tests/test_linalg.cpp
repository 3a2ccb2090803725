#include "ucoh/errors.hpp"
#include "ucoh/linalg.hpp"

#include <doctest.h>

using namespace ucoh;

TEST_CASE("rational text round trip") {
  for (const char* text : {"0", "7", "-3", "5/6", "-22/7"}) CHECK(to_string(parse_rational(text)) == text);
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("rank and nullspace over the rationals") {
  MatrixQ a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  CHECK(rank(a) == 1);
  const MatrixQ k = nullspace(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).isZero());
}

TEST_CASE("affine solve returns a solution or a certificate") {
  MatrixQ a(3, 2);
  a << 1, 1, 1, -1, 2, 0;
  VectorQ b(3);
  b << 3, 1, 4;
  const auto ok = solve_affine(a, b);
  REQUIRE(ok.feasible);
  CHECK(a * ok.solution == b);

  b(2) = 5;
  const auto bad = solve_affine(a, b);
  REQUIRE_FALSE(bad.feasible);
  CHECK((bad.certificate.transpose() * a).isZero());
  CHECK(bad.certificate.dot(b) != 0);
}

TEST_CASE("primitive integer vectors") {
  VectorQ v(3);
  v << Rational(-1, 2), Rational(3, 4), 0;
  const VectorQ p = primitive_integer(v);
  CHECK(p(0) == 2);
  CHECK(p(1) == -3);
  CHECK(p(2) == 0);
}
