#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include <dadecheck/autfix.hpp>

#include "common.hpp"

namespace {

using u64 = unsigned long long;

// Smallest d | f with rotation by d fixing the word.
long period(const std::vector<int>& w) {
  const long f = static_cast<long>(w.size());
  for (long d = 1; d <= f; ++d) {
    if (f % d) continue;
    bool ok = true;
    for (long i = 0; i < f && ok; ++i) ok = w[i] == w[(i + d) % f];
    if (ok) return d;
  }
  return f;
}

int mobius_naive(long m) {
  int primes = 0;
  for (long p = 2; p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    ++primes;
  }
  return primes % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("mobius against trial factorization") {
  for (long m = 1; m <= 200; ++m) CHECK(dc::mobius(m) == mobius_naive(m));
}

TEST_CASE("divisors") {
  CHECK(dc::divisors(9) == std::vector<long>{1, 3, 9});
  CHECK(dc::divisors(15) == std::vector<long>{1, 3, 5, 15});
  CHECK(dc::divisors(1) == std::vector<long>{1});
}

TEST_CASE("exact stabilizer counts of words under rotation") {
  // Rotation by t on words of length f over 3 letters fixes 3^t words for t | f.
  for (long f : {3L, 5L, 9L}) {
    std::map<long, mpz_class> fix, brute;
    for (long t : dc::divisors(f)) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(t));
      fix[t] = p;
    }
    std::vector<int> w(f, 0);
    for (;;) {
      brute[f / period(w)] += 1;
      long i = 0;
      while (i < f && w[i] == 2) w[i++] = 0;
      if (i == f) break;
      ++w[i];
    }
    const auto exact = dc::exact_stabilizer_counts(fix, f);
    for (long u : dc::divisors(f)) CHECK(exact.at(u) == brute[u]);
    CHECK(dc::fixed_from_exact(exact, f) == fix);
  }
}

TEST_CASE("an inconsistent fixed-point table is rejected") {
  std::map<long, mpz_class> fix{{1, 5}, {3, 1}};
  try {
    (void)dc::exact_stabilizer_counts(fix, 3);
    FAIL("expected NegativeExactCount");
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::NegativeExactCount);
  }
}

TEST_CASE("fixed classes of GI_27 under doubling, by direct search") {
  // x -> 2x on {+-k : k != 0 mod q^2-1}; alpha^t fixes {+-k} when 2^t k = +-k.
  const dc::Model& m = testing::model();
  dc::FixRow row;
  row.id = "probe";
  row.member_sets = {"GI_27"};
  row.formula = dc::parse_expr("2^t-2", {"t"});
  for (unsigned n = 1; n <= 4; ++n) {
    const u64 mod = testing::qq(n) - 1;
    for (long t : dc::divisors(dc::odd_order(n))) {
      const u64 c = (1ull << t) % mod;
      std::set<u64> fixed;
      for (u64 k = 1; k < mod; ++k) {
        const u64 img = static_cast<u64>((static_cast<unsigned __int128>(k) * c) % mod);
        if (img == k || img == mod - k) fixed.insert(std::min(k, mod - k));
      }
      CAPTURE(n);
      CAPTURE(t);
      CHECK(dc::fixed_count_bruteforce(m, row, n, t) == static_cast<unsigned long>(fixed.size()));
    }
  }
}

TEST_CASE("closed forms agree with brute force for n <= 3") {
  for (unsigned n = 1; n <= 3; ++n) {
    const dc::Report rep = dc::fixrow_check(testing::model(), n, dc::kDefaultBudget, 2);
    CHECK(rep.count(dc::Status::Fail) == 0);
    CHECK(rep.count(dc::Status::Pass) > 300);
  }
}

TEST_CASE("formula-only rows refuse brute force") {
  const dc::Model& m = testing::model();
  const dc::FixRow* row = m.fixrow("fix_GI_ss");
  REQUIRE(row != nullptr);
  try {
    (void)dc::fixed_count_bruteforce(m, *row, 1, 1);
    FAIL("expected FormulaOnlyRow");
  } catch (const dc::Error& e) {
    CHECK(e.kind() == dc::ErrorKind::FormulaOnlyRow);
  }
  CHECK(dc::fixed_count_formula(*row, 3, 1) == 64);
}

TEST_CASE("gcd identities by direct computation") {
  // gcd(2^a-1, 2^b-1) = 2^gcd(a,b)-1 in machine words.
  for (u64 a = 1; a <= 40; ++a)
    for (u64 b = 1; b <= 40; ++b)
      CHECK(std::gcd((1ull << a) - 1, (1ull << b) - 1) == (1ull << std::gcd(a, b)) - 1);
  const dc::Report rep = dc::verify_gcd_lemmas(8);
  CHECK(rep.count(dc::Status::Fail) == 0);
  CHECK(rep.count(dc::Status::Pass) == rep.records.size());
}
