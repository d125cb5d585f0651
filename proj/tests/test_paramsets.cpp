#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include <dadecheck/paramsets.hpp>

#include "common.hpp"

namespace {

using u64 = unsigned long long;

const dc::ParamSetSpec& set(const char* id) {
  const dc::ParamSetSpec* p = testing::model().paramset(id);
  REQUIRE(p != nullptr);
  return *p;
}

// Orbits of x -> +-x, x -> m2*x on the units-or-not of Z/m minus an
// excluded set, by explicit closure.
u64 orbit_count(u64 m, const std::vector<u64>& mults, const std::function<bool(u64)>& excluded) {
  std::set<u64> seen;
  u64 orbits = 0;
  for (u64 x = 0; x < m; ++x) {
    if (excluded(x) || seen.count(x)) continue;
    ++orbits;
    std::vector<u64> stack{x};
    seen.insert(x);
    while (!stack.empty()) {
      u64 y = stack.back();
      stack.pop_back();
      for (u64 c : mults) {
        u64 z = static_cast<u64>((static_cast<unsigned __int128>(y) * c) % m);
        if (seen.insert(z).second) stack.push_back(z);
      }
    }
  }
  return orbits;
}

u64 p8b(unsigned n) { return testing::qq(n) - (1ull << (n + 1)) + 1; }

}  // namespace

TEST_CASE("GI_27: nonzero residues mod q^2-1 up to sign") {
  for (unsigned n = 1; n <= 3; ++n) {
    const u64 m = testing::qq(n) - 1;
    std::set<u64> canon;
    for (u64 k = 1; k < m; ++k) canon.insert(std::min(k, m - k));
    const dc::Enumeration en = dc::enumerate_classes(set("GI_27"), n);
    CHECK(en.num_classes() == canon.size());
    CHECK(dc::card_value(set("GI_27"), n) == static_cast<unsigned long>(canon.size()));
  }
}

TEST_CASE("GI_27 at n=1 has representatives 1, 2, 3") {
  const dc::Enumeration en = dc::enumerate_classes(set("GI_27"), 1);
  std::vector<u64> reps;
  for (auto r : en.reps) reps.push_back(en.tuple(r)[0]);
  CHECK(reps == std::vector<u64>{1, 2, 3});
}

TEST_CASE("h_8: Z/p8b minus 0 under sign and multiplication by q^2") {
  for (unsigned n = 1; n <= 3; ++n) {
    const u64 m = p8b(n);
    const u64 want = orbit_count(m, {m - 1, testing::qq(n) % m}, [](u64 x) { return x == 0; });
    CHECK(dc::enumerate_classes(set("h_8"), n).num_classes() == want);
    CHECK(dc::card_value(set("h_8"), n) == static_cast<unsigned long>(want));
  }
}

TEST_CASE("h_7: residues mod q^4-1 avoiding both factors") {
  for (unsigned n = 1; n <= 2; ++n) {
    const u64 a = testing::qq(n) - 1, b = testing::qq(n) + 1, m = a * b;
    const u64 want =
        orbit_count(m, {m - 1, testing::qq(n)}, [&](u64 x) { return x % a == 0 || x % b == 0; });
    CHECK(dc::enumerate_classes(set("h_7"), n).num_classes() == want);
    CHECK(dc::card_value(set("h_7"), n) == static_cast<unsigned long>(want));
  }
}

TEST_CASE("h_4 and g_4 are empty at n=1") {
  for (const char* id : {"h_4", "g_4"}) {
    CHECK(dc::card_value(set(id), 1) == 0);
    CHECK(dc::enumerate_classes(set(id), 1).num_classes() == 0);
    CHECK(dc::card_value(set(id), 2) > 0);
  }
}

TEST_CASE("class sizes partition the admissible tuples") {
  for (const char* id : {"h_9", "h_13", "h_15", "GI_27", "PbJ_1"}) {
    const dc::Enumeration en = dc::enumerate_classes(set(id), 1);
    CHECK(std::accumulate(en.sizes.begin(), en.sizes.end(), u64(0)) == en.admissible);
    uint64_t marked = 0;
    for (auto c : en.class_of) marked += c >= 0;
    CHECK(marked == en.admissible);
  }
}

TEST_CASE("every enumerable set matches its formula at n=1") {
  const dc::Report rep = dc::cardinality_check(testing::model(), 1);
  for (const auto& r : rep.records) {
    CAPTURE(r.subject);
    CHECK(r.status != dc::Status::Fail);
  }
}

TEST_CASE("the budget is enforced") {
  CHECK_FALSE(dc::enumerable(set("h_13"), 4, 1000));
  try {
    (void)dc::enumerate_classes(set("h_13"), 4, 1000);
    FAIL("expected BudgetExceeded");
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("non-integral modulus is rejected") {
  const dc::Model m = dc::parse_model("paramset X { moduli: [q] card: 1 }");
  try {
    (void)dc::enumerate_classes(m.paramsets[0], 1);
    FAIL("expected an error");
  } catch (const dc::Error& e) {
    CHECK((e.kind() == dc::ErrorKind::NonIntegralModulus || e.kind() == dc::ErrorKind::NotRationalInteger));
  }
}
