// One line per acceptance criterion.  Exit status 0 iff all hold.

#include <cmath>
#include <cstdio>

#include <dadecheck/run.hpp>

#include "common.hpp"

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::printf("criterion %2d %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  failures += !ok;
}

size_t fails(const dc::Report& r, const std::string& check) {
  size_t c = 0;
  for (const auto& x : r.records) c += x.check == check && x.status == dc::Status::Fail;
  return c;
}

size_t passes(const dc::Report& r, const std::string& check) {
  size_t c = 0;
  for (const auto& x : r.records) c += x.check == check && x.status == dc::Status::Pass;
  return c;
}

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f ms", v);
  return buf;
}

}  // namespace

int main() {
  const dc::Model& m = testing::model();
  const unsigned workers = dc::default_workers();

  // 1. Dade identity, formula mode, every defect and every u | 2n+1.
  {
    bool ok = true;
    double worst = 0;
    size_t cells = 0;
    for (unsigned n = 1; n <= 4; ++n) {
      dc::Stopwatch sw;
      const dc::Report r = dc::verify_dade(m, n, dc::Mode::Formula);
      worst = std::max(worst, sw.millis());
      ok &= r.ok() && r.records.size() == 14 * dc::divisors(dc::odd_order(n)).size();
      cells += r.records.size();
    }
    ok &= worst < 5000;
    verdict(1, ok, "Dade identity n=1..4: " + std::to_string(cells) + " cells exact; slowest n " + ms(worst) +
                       " (limit 5000 ms)");
  }

  // 2 and 11 share the fixed-point runs.
  dc::Report fix;
  double fix_ms = 0;
  {
    dc::Stopwatch sw;
    for (unsigned n = 1; n <= 4; ++n) fix.append(dc::fixrow_check(m, n, dc::kDefaultBudget, workers));
    fix_ms = sw.millis();
  }
  {
    size_t skipped_budget = 0;
    for (const auto& r : fix.records)
      if (r.check == "fixrows" && r.status == dc::Status::Skip && r.note.find("formula only") == std::string::npos)
        ++skipped_budget;
    const bool ok = fails(fix, "fixrows") == 0 && skipped_budget == 0 && fix_ms < 600000;
    verdict(2, ok, "fixed points n=1..4: " + std::to_string(passes(fix, "fixrows")) +
                       " brute force = closed form, 0 over budget; " + ms(fix_ms) + " (limit 600000 ms)");
  }

  // 3. Cardinalities.
  {
    bool ok = true;
    size_t checked = 0;
    for (unsigned n = 1; n <= 3; ++n)
      for (const auto& p : m.paramsets) {
        if (p.moduli.empty() || (n == 3 && p.moduli.size() != 1)) continue;
        const dc::Record r = dc::cardinality_record(p, n, dc::kDefaultBudget);
        ok &= r.status == dc::Status::Pass;
        ++checked;
      }
    for (const char* id : {"h_4", "g_4"}) {
      const dc::Record r = dc::cardinality_record(*m.paramset(id), 1, dc::kDefaultBudget);
      ok &= r.status == dc::Status::Pass && r.actual == "0";
    }
    verdict(3, ok, "cardinalities: " + std::to_string(checked) +
                       " enumerations (all sets n=1,2; single-index n=3) equal the formulas; h_4/g_4 empty at n=1");
  }

  // 4. gcd identities.
  {
    const dc::Report r = dc::verify_gcd_lemmas(8);
    verdict(4, r.ok() && !r.records.empty(),
            "gcd identities n<=8: " + std::to_string(r.records.size()) + " direct gcds equal the closed forms");
  }

  // 5. Weyl group and tori.
  {
    const dc::Report r = dc::verify_weyl(m, 5);
    bool ok = true;
    for (const char* c : {"weyl.order", "weyl.classes", "weyl.centralizer", "weyl.torus", "weyl.distinct"})
      ok &= fails(r, c) == 0 && passes(r, c) > 0;
    ok &= passes(r, "weyl.torus") == 55 && passes(r, "weyl.centralizer") == 11;
    verdict(5, ok, "|W| = 1152, 11 F-classes, centralizers match, det = Smith = listed order for 11 tori, n<=5");
  }

  // 6. Semisimple totals.
  {
    const dc::Report r = dc::semisimple_totals(m, 4);
    verdict(6, r.ok() && r.records.size() == 8 && r.records.front().actual == "64",
            "semisimple class counts sum to q^4 for both families, n<=4 (64 at n=1)");
  }

  // 7. Class equation.
  {
    dc::Stopwatch sw;
    bool ok = true;
    for (unsigned n = 1; n <= 3; ++n) ok &= dc::class_equation(m, n).ok();
    const double t = sw.millis();
    verdict(7, ok && t < 1000, "class equation exact for n=1,2,3; " + ms(t) + " (limit 1000 ms)");
  }

  // 8. Norms.
  {
    bool ok = true;
    for (unsigned n = 1; n <= 2; ++n)
      for (const char* fn : {"f8", "f10"}) ok &= dc::f_norm_check(m, n, fn, 1e-9L).ok();
    std::vector<dc::NormTerm> terms;
    (void)dc::f_norm(m, 1, "f8", 1, &terms);
    std::map<std::string, long double> t;
    for (const auto& x : terms) t[x.cls] = x.contribution;
    const long double parts[4] = {t["c_1_3"] + t["c_1_4"], t["c_1_11"] + t["c_1_12"],
                                  t["c_1_15"] + t["c_1_16"] + t["c_1_17"] + t["c_1_18"], t["c_8_2"] + t["c_8_3"]};
    const long double want[4] = {0.56875L, 0.78125L, 0.25L, 0.4L};
    for (int i = 0; i < 4; ++i) ok &= std::fabs(parts[i] - want[i]) < 1e-12L;
    verdict(8, ok, "(f8,f8) = (f10,f10) = 2 within 1e-9 for all k, n=1,2; n=1 k=1 terms 0.56875+0.78125+0.25+0.4 within 1e-12");
  }

  // 9. Symbolic identities.
  {
    const dc::Report rel = dc::relations_check(m);
    const dc::Report deg = dc::degree_identity_check(m);
    const bool ok = rel.ok() && deg.ok() && passes(rel, "relations.diff") > 0 && passes(rel, "relations.antisym") == 10 &&
                    passes(deg, "degrees.symbolic") == 6;
    verdict(9, ok, "degrees equal the ledger products; chi43-chi44 = f8, chi47-chi48 = f10 on shared classes; 10 antisymmetries");
  }

  // 10. Ledger.
  {
    bool ok = true;
    for (unsigned n = 1; n <= 4; ++n) {
      const dc::Report r = dc::ledger_consistency(m, n);
      ok &= r.ok() && passes(r, "ledger.coverage") == 3 && passes(r, "ledger.balance") == 14;
    }
    verdict(10, ok, "ledger covers B/Pa/Pb sets once (58/40/56); every defect matches its heading; balance at t=2n+1, n<=4");
  }

  // 11. Exact-stabilizer layer.
  {
    bool ok = fails(fix, "mobius") == 0 && passes(fix, "mobius") > 0;
    for (unsigned n = 1; n <= 4; ++n) ok &= dc::verify_dade(m, n, dc::Mode::Formula).ok();
    verdict(11, ok, "exact-stabilizer counts nonnegative for all rows, n<=4; exact-level identity balances for every u");
  }

  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ALL CRITERIA PASS");
  return failures ? 1 : 0;
}
