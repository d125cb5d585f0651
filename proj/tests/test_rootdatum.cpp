#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <dadecheck/rootdatum.hpp>

#include "common.hpp"

using dc::operator*;

namespace {

const dc::WeylGroup& weyl() {
  static const dc::WeylGroup w(testing::model().weyl.front());
  return w;
}

const dc::WeylClass& cls(const char* id) {
  for (const auto& c : testing::model().weylclasses)
    if (c.id == id) return c;
  FAIL("no class " << id);
  throw 0;
}

// Leibniz expansion over all permutations.
mpz_class det_leibniz(const dc::BigMatrix& a) {
  const size_t n = a.size();
  std::vector<size_t> p(n);
  for (size_t i = 0; i < n; ++i) p[i] = i;
  mpz_class s = 0;
  do {
    int inv = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    mpz_class t = inv % 2 ? -1 : 1;
    for (size_t i = 0; i < n; ++i) t *= a[i][p[i]];
    s += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

dc::Vec4 simple(int i) {
  dc::Vec4 v{};
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("Bareiss and Smith agree with the Leibniz determinant") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    dc::BigMatrix a(4, std::vector<mpz_class>(4));
    for (auto& row : a)
      for (auto& x : row) x = d(rng);
    const mpz_class want = det_leibniz(a);
    CHECK(dc::det_bareiss(a) == want);
    if (want != 0)
      CHECK(dc::cokernel_order(a) == abs(want));
    else
      CHECK_THROWS_AS(dc::cokernel_order(a), dc::Error);
  }
}

TEST_CASE("invariant factors divide each other") {
  const dc::BigMatrix a = {{2, 4, 4, 0}, {-6, 6, 12, 2}, {10, -4, -16, 8}, {0, 0, 0, 6}};
  const auto d = dc::smith_invariants(a);
  for (size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
  mpz_class p = 1;
  for (const auto& x : d) p *= x;
  CHECK(p == abs(det_leibniz(a)));
}

TEST_CASE("Weyl group order and classes") {
  const auto& W = weyl();
  CHECK(W.size() == 1152);
  CHECK(W.contains(dc::identity4()));
  for (const auto& g : W.generators()) CHECK(g * g == dc::identity4());
  const auto& classes = W.f_classes();
  CHECK(classes.size() == 11);
  size_t total = 0;
  for (const auto& c : classes) {
    total += c.size;
    CHECK(c.size * c.centralizer == 1152);  // orbit-stabilizer
  }
  CHECK(total == 1152);
  CHECK(classes[W.f_class_of(dc::identity4())].size == 72);
}

TEST_CASE("F-conjugacy is an equivalence respected by the class map") {
  const auto& W = weyl();
  std::mt19937 rng(11);
  std::uniform_int_distribution<size_t> pick(0, W.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const dc::Mat4& w = W.elements()[pick(rng)];
    const dc::Mat4& v = W.elements()[pick(rng)];
    const dc::Mat4 c = dc::WeylGroup::inverse(v) * w * W.frobenius(v);
    CHECK(W.f_class_of(c) == W.f_class_of(w));
  }
}

TEST_CASE("torus orders from the class words") {
  const auto& W = weyl();
  const auto order = [&](const char* id, unsigned n) { return dc::torus_order(W.word(cls(id).word), W.m0(), n); };
  CHECK(order("T1", 1) == 49);
  CHECK(order("T6", 1) == 25);
  CHECK(order("T10", 1) == 37);
  CHECK(order("T8", 1) == 81);
  CHECK(W.f_classes()[W.f_class_of(W.word(cls("T6").word))].centralizer == 96);
  for (const auto& c : testing::model().weylclasses)
    for (unsigned n = 1; n <= 5; ++n) {
      const dc::Mat4 w = W.word(c.word);
      CHECK(dc::torus_order(w, W.m0(), n) == dc::eval_int(c.torus, n));
      CHECK(dc::torus_fixed_count(w, W.m0(), n) == dc::eval_int(c.torus, n));
    }
}

TEST_CASE("dual torus points are fixed and distinct") {
  const auto& W = weyl();
  for (const char* id : {"T1", "T6", "T8"}) {
    const auto r = dc::dual_torus_check(cls(id), W.word(cls(id).word), W.m0(), 1);
    CHECK(r.all_fixed);
    CHECK(r.distinct == dc::eval_int(cls(id).torus, 1));
    CHECK(r.denominator % 2 == 1);
  }
}

TEST_CASE("roots") {
  const auto phi = dc::make_roots(weyl());
  CHECK(phi.roots.size() == 48);
  CHECK(phi.positive.size() == 24);
  for (int i = 0; i < 4; ++i) CHECK(phi.positive[i] == simple(i));
  CHECK(phi.positive.back() == dc::Vec4{2, 3, 4, 2});
  // r1 = e2 - e3 in doubled coordinates.
  CHECK(dc::RootSystem::eps2(simple(0)) == dc::Vec4{0, 2, -2, 0});
  // Two root lengths, 24 of each.
  int lng = 0;
  for (const auto& r : phi.roots) lng += dc::RootSystem::ip4(r, r) == 8;
  CHECK(lng == 24);
}

TEST_CASE("subsystem types") {
  const auto phi = dc::make_roots(weyl());
  CHECK(dc::subsystem_type({}, phi).type == "A0");
  // r1 and r3 are orthogonal.
  CHECK(dc::subsystem_type({simple(0), simple(2)}, phi).type == "A1xA1");
  // r2 long, r3 short, at 135 degrees.
  CHECK(dc::subsystem_type({simple(1), simple(2)}, phi).type == "B2");
  CHECK(dc::subsystem_type({simple(0), simple(1)}, phi).type == "A2");
  CHECK(dc::subsystem_type({simple(0), simple(1), simple(2), simple(3)}, phi).type == "F4");
  CHECK(dc::subsystem_type({simple(1), simple(2), simple(3)}, phi).type == "C3");
  CHECK(dc::subsystem_type({simple(0), simple(1), simple(2)}, phi).type == "B3");
  try {
    (void)dc::subsystem_type({simple(0), simple(0)}, phi);
    FAIL("expected NotLinearlyIndependent");
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::NotLinearlyIndependent);
  }
}

TEST_CASE("closure overflow on a generator of infinite order") {
  dc::WeylData bad = testing::model().weyl.front();
  bad.gens[0] = {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  try {
    dc::WeylGroup w(bad);
    FAIL("expected ClosureOverflow");
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::ClosureOverflow);
  }
}

TEST_CASE("the full report") {
  const dc::Report rep = dc::verify_weyl(testing::model(), 5);
  CHECK(rep.count(dc::Status::Fail) == 0);
  CHECK(rep.count(dc::Status::Skip) == 3);
}
