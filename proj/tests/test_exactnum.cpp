#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <dadecheck/exactnum.hpp>
#include <dadecheck/expr.hpp>

using dc::QPoly;
using dc::SqrtTwoRat;

TEST_CASE("sqrt2 squares to 2 and q^2 is 2^(2n+1)") {
  const SqrtTwoRat s = SqrtTwoRat::sqrt2();
  CHECK(s * s == SqrtTwoRat(2));
  for (unsigned n = 1; n <= 10; ++n) {
    const SqrtTwoRat q = dc::q_value(n);
    CHECK(q * q == SqrtTwoRat(mpz_class(1) << (2 * n + 1)));
    CHECK_FALSE(q.is_rational());
  }
}

TEST_CASE("inverse and division") {
  const SqrtTwoRat x(mpq_class(3), mpq_class(-5, 7));
  CHECK(x * x.inverse() == SqrtTwoRat(1));
  CHECK_THROWS_AS(SqrtTwoRat().inverse(), dc::Error);
  try {
    (void)SqrtTwoRat().inverse();
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::ZeroInput);
  }
}

TEST_CASE("as_integer rejects irrational and fractional values") {
  CHECK(dc::as_integer(SqrtTwoRat(42)) == 42);
  CHECK_THROWS_AS(dc::as_integer(SqrtTwoRat::sqrt2()), dc::Error);
  CHECK_THROWS_AS(dc::as_integer(SqrtTwoRat(mpq_class(1, 2), 0)), dc::Error);
}

TEST_CASE("val2 against repeated halving") {
  for (long v : {1L, 2L, 12L, 96L, 1L << 20, 3L * (1L << 17)}) {
    long x = v;
    unsigned long k = 0;
    while (x % 2 == 0) x /= 2, ++k;
    CHECK(dc::val2(mpz_class(v)) == k);
  }
}

TEST_CASE("polynomial evaluation matches floating point") {
  const QPoly p = dc::to_qpoly(dc::parse_expr("q^4-s2*q^3+q^2-s2*q+1"));
  for (unsigned n = 1; n <= 6; ++n) {
    const double q = std::sqrt(2.0) * std::ldexp(1.0, static_cast<int>(n));
    const double want = q * q * q * q - std::sqrt(2.0) * q * q * q + q * q - std::sqrt(2.0) * q + 1;
    CHECK(p.eval(n).to_double() == doctest::Approx(want).epsilon(1e-12));
    CHECK(p.eval(n).is_rational());
  }
}

TEST_CASE("named factors multiply to the cyclotomic values") {
  QPoly a, b, c, d;
  REQUIRE(dc::named_poly("p8a", a));
  REQUIRE(dc::named_poly("p8b", b));
  REQUIRE(dc::named_poly("p24a", c));
  REQUIRE(dc::named_poly("p24b", d));
  const QPoly q = QPoly::q();
  CHECK(a * b == dc::pow(q, 4) + QPoly(1));
  CHECK(c * d == dc::pow(q, 8) - dc::pow(q, 4) + QPoly(1));
  // q^2 - sqrt2 q + 1 at n = 1 is 8 - 4 + 1.
  CHECK(dc::as_integer(b.eval(1)) == 5);
  CHECK(dc::as_integer(a.eval(1)) == 13);
}

TEST_CASE("QPoly ring laws on a sample") {
  const QPoly x = dc::to_qpoly(dc::parse_expr("q^3-2*s2*q+1/3"));
  const QPoly y = dc::to_qpoly(dc::parse_expr("s2*q^2+7"));
  const QPoly z = dc::to_qpoly(dc::parse_expr("q-1"));
  CHECK(x * (y + z) == x * y + x * z);
  CHECK((x * y) * z == x * (y * z));
  CHECK(x - x == QPoly());
  for (unsigned n = 1; n <= 4; ++n) CHECK((x * y).eval(n) == x.eval(n) * y.eval(n));
}

TEST_CASE("th is q/sqrt2") {
  for (unsigned n = 1; n <= 5; ++n)
    CHECK(dc::eval_expr(dc::parse_expr("th"), n) == SqrtTwoRat(mpz_class(1) << n));
}
