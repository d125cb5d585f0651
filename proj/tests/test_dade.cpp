#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dadecheck/chartables.hpp>
#include <dadecheck/dade.hpp>

#include "common.hpp"

namespace {

// |G| for q^2 = 8, multiplied out by hand in machine integers (fits in 128 bits).
unsigned __int128 order_g_n1() {
  const unsigned __int128 q2 = 8;
  unsigned __int128 q24 = 1;
  for (int i = 0; i < 12; ++i) q24 *= q2;
  const unsigned __int128 q4 = q2 * q2, q6 = q4 * q2, q8 = q4 * q4, q12 = q6 * q6;
  return q24 * (q12 + 1) * (q8 - 1) * (q6 + 1) * (q2 - 1);
}

std::string u128(unsigned __int128 x) {
  std::string s;
  do s.insert(s.begin(), char('0' + int(x % 10))); while (x /= 10);
  return s;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(dc::order_G(1).get_str() == u128(order_g_n1()));
  for (unsigned n = 1; n <= 6; ++n) {
    CHECK(dc::val2(dc::order_G(n)) == static_cast<unsigned long>(dc::sylow_exponent(n)));
    CHECK(dc::val2(dc::order_B(n)) == static_cast<unsigned long>(dc::sylow_exponent(n)));
  }
}

TEST_CASE("defect of a degree") {
  // Steinberg degree q^24 has defect zero; odd degrees have full defect.
  for (unsigned n = 1; n <= 4; ++n) {
    CHECK(dc::defect_of(dc::parse_expr("q^24"), n) == 0);
    CHECK(dc::defect_of(dc::parse_expr("q^2-1"), n) == 24 * long(n) + 12);
    CHECK(dc::defect_of(dc::parse_expr("q/s2*(q^2-1)"), n) == 23 * long(n) + 12);
    CHECK(dc::defect_of(dc::parse_expr("q^4*(q^2+1)"), n) == 20 * long(n) + 10);
  }
}

TEST_CASE("the fourteen headings are distinct as polynomials in n") {
  const auto& v = dc::defect_values();
  CHECK(v.size() == 14);
  std::set<std::pair<long, long>> s(v.begin(), v.end());
  CHECK(s.size() == 14);
  for (const auto& [a, b] : v) CHECK(dc::ledger_for(testing::model(), a, b) != nullptr);
  // They collide numerically at n = 1.
  CHECK(dc::ledgers_at(testing::model(), 32, 1).size() == 2);
}

TEST_CASE("chains alternate between the two sides") {
  int even = 0, odd = 0;
  for (const auto& c : dc::chains()) (c.length % 2 ? odd : even)++;
  CHECK(even == 3);
  CHECK(odd == 3);
}

TEST_CASE("spot values") {
  const dc::Model& m = testing::model();
  CHECK(dc::k_fixed(m, dc::Group::B, 36, 1, 1).numeric() == 64);
  CHECK(dc::k_fixed(m, dc::Group::B, 36, 3, 1).numeric() == 4);
  CHECK(dc::k_fixed(m, dc::Group::G, 28, 1, 2).numeric() == 2);
}

TEST_CASE("k(G) plus the Steinberg character is the class number") {
  // q^4 + 4q^2 + 17 classes, counted from the class list.
  for (unsigned n = 1; n <= 3; ++n) {
    const long q2 = 1L << (2 * n + 1);
    const dc::Record r = dc::character_count(testing::model(), n);
    CHECK(r.status == dc::Status::Pass);
    CHECK(r.expected == std::to_string(q2 * q2 + 4 * q2 + 17));
  }
}

TEST_CASE("the identity holds for n <= 3 in every mode") {
  for (unsigned n = 1; n <= 3; ++n)
    for (dc::Mode mode : {dc::Mode::Formula, dc::Mode::Bruteforce, dc::Mode::Both}) {
      const dc::Report rep = dc::verify_dade(testing::model(), n, mode, dc::kDefaultBudget, 2);
      CAPTURE(n);
      CHECK(rep.count(dc::Status::Fail) == 0);
      CHECK(rep.records.size() == 14 * dc::divisors(dc::odd_order(n)).size());
    }
}

TEST_CASE("a perturbed ledger is caught") {
  dc::Model m = testing::model();
  for (auto& l : m.ledgers) {
    if (dc::ledger_label(l) != std::make_pair(24L, 12L)) continue;
    for (auto it = l.entries.begin(); it != l.entries.end(); ++it)
      if (it->group == dc::Group::B && !it->paired) {
        l.entries.erase(it);
        break;
      }
  }
  const dc::Report rep = dc::verify_dade(m, 1);
  CHECK(rep.count(dc::Status::Fail) > 0);
}

TEST_CASE("ledger bookkeeping") {
  for (unsigned n = 1; n <= 3; ++n) {
    const dc::Report rep = dc::ledger_consistency(testing::model(), n);
    for (const auto& r : rep.records) {
      CAPTURE(r.check);
      CAPTURE(r.subject);
      CHECK(r.status == dc::Status::Pass);
    }
  }
}
