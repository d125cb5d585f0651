#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dadecheck/chartables.hpp>

#include "common.hpp"

namespace {

dc::SymValue sym(const char* s) { return dc::to_sym(dc::parse_expr(s, {"i", "k", "e4"})); }

const dc::ClassFamily& fam(const char* id) {
  const dc::ClassFamily* c = testing::model().classfam(id);
  REQUIRE(c != nullptr);
  return *c;
}

}  // namespace

TEST_CASE("e4 is a square root of -1") {
  CHECK(sym("e4*e4") == sym("-1"));
  CHECK(sym("e4^4") == sym("1"));
  CHECK(sym("(1+e4)*(1-e4)") == sym("2"));
}

TEST_CASE("roots of unity multiply by adding exponents") {
  CHECK(sym("root(p8b, th*i*k)*root(p8b, -th*i*k)") == sym("1"));
  CHECK(sym("root(p8b, i*k)^2") == sym("root(p8b, 2*i*k)"));
  CHECK_FALSE(sym("root(p8b, i*k)") == sym("root(p8a, i*k)"));
}

TEST_CASE("numeric evaluation of a root sum") {
  // At n=1, p8b = 5; zeta^2 + zeta^-2 + zeta + zeta^-1 = -1 for zeta of order 5.
  const dc::SymValue v = sym("root(p8b, th*i*k)+root(p8b, -th*i*k)+root(p8b, (th-1)*i*k)+root(p8b, -(th-1)*i*k)");
  const auto z = dc::evaluate(v, 1, 1, 1);
  CHECK(static_cast<double>(z.real()) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(static_cast<double>(z.imag()) == doctest::Approx(0.0));
}

TEST_CASE("table relations") {
  const dc::Model& m = testing::model();
  CHECK(dc::sym_value(m, "f8", "c_1_15") == sym("-s2*q*e4"));
  CHECK(dc::sym_value(m, "f10", "c_8_2").is_zero());
  const dc::SymValue d = dc::sym_value(m, "chi43", "c_1_11") - dc::sym_value(m, "chi44", "c_1_11");
  CHECK(d == sym("-2*s2*q^3*e4-2*q^2*e4"));
  CHECK(d == dc::sym_value(m, "f8", "c_1_11"));
  const dc::Report rep = dc::relations_check(m);
  CHECK(rep.records.size() == 18);
  CHECK(rep.ok());
}

TEST_CASE("norms of f8 and f10") {
  const dc::Model& m = testing::model();
  std::vector<dc::NormTerm> terms;
  const long double v = dc::f_norm(m, 1, "f8", 1, &terms);
  CHECK(static_cast<double>(v) == doctest::Approx(2.0).epsilon(1e-12));
  std::map<std::string, long double> t;
  for (const auto& x : terms) t[x.cls] = x.contribution;
  CHECK(static_cast<double>(t["c_1_3"] + t["c_1_4"]) == doctest::Approx(0.56875).epsilon(1e-12));
  CHECK(static_cast<double>(t["c_1_11"] + t["c_1_12"]) == doctest::Approx(0.78125).epsilon(1e-12));
  CHECK(static_cast<double>(t["c_1_15"] + t["c_1_16"] + t["c_1_17"] + t["c_1_18"]) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(static_cast<double>(t["c_8_2"] + t["c_8_3"]) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(static_cast<double>(dc::f_norm(m, 1, "f8", 1, nullptr, true)) == doctest::Approx(2.0));
  for (unsigned n = 1; n <= 2; ++n)
    for (const char* fn : {"f8", "f10"}) CHECK(dc::f_norm_check(m, n, fn).ok());
}

TEST_CASE("class equation") {
  const dc::Model& m = testing::model();
  CHECK(dc::class_index(fam("c_1_0"), 1) == 1);
  CHECK(dc::family_multiplicity(m, fam("c_4_0"), 1) == 0);
  for (unsigned n = 1; n <= 3; ++n) {
    mpz_class sum = 0;
    for (const auto& c : m.classfams) sum += dc::family_multiplicity(m, c, n) * dc::class_index(c, n);
    CHECK(sum == dc::order_G(n));
    CHECK(dc::class_equation(m, n).ok());
  }
}

TEST_CASE("a bogus centralizer order is not an index") {
  const dc::Model bad = dc::parse_model("classfam c_x { centralizer: q^26 }");
  try {
    (void)dc::class_index(bad.classfams[0], 1);
    FAIL("expected NonIntegralIndex");
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::NonIntegralIndex);
  }
}

TEST_CASE("degrees") {
  const dc::Model& m = testing::model();
  // chi42 at n=1: 7 * 81 * 57 * 4033 * 13.
  const dc::SymValue d42 = dc::sym_value(m, "chi42", "c_1_0");
  REQUIRE(d42.is_polynomial());
  CHECK(dc::as_integer(d42.polynomial().eval(1)) == 7L * 81 * 57 * 4033 * 13);
  CHECK(dc::degree_identity_check(m).ok());
}

TEST_CASE("semisimple classes number q^4") {
  const dc::Report rep = dc::semisimple_totals(testing::model());
  CHECK(rep.ok());
  CHECK(rep.records.front().expected == "64");
}
