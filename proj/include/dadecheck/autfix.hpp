#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "expr.hpp"
#include "parallel.hpp"
#include "paramsets.hpp"
#include "report.hpp"
#include "tabledsl.hpp"

namespace dc {

// ---------------------------------------------------------------- divisor lattice

inline std::vector<long> divisors(long f) {
  std::vector<long> d;
  for (long i = 1; i <= f; ++i)
    if (f % i == 0) d.push_back(i);
  return d;
}

inline int mobius(long m) {
  int sign = 1;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  return m > 1 ? -sign : sign;
}

inline long odd_order(unsigned n) { return 2 * static_cast<long>(n) + 1; }

// fix[t] counts points fixed by <alpha^t>; exact[u] counts points whose
// stabilizer has order exactly u.  fix(t) = sum of exact(u) over f/t | u.
inline std::map<long, mpz_class> exact_stabilizer_counts(const std::map<long, mpz_class>& fix, long f) {
  std::map<long, mpz_class> exact;
  for (long u : divisors(f)) {
    mpz_class s = 0;
    for (long v : divisors(f)) {
      if (v % u) continue;
      auto it = fix.find(f / v);
      if (it == fix.end()) throw Error(ErrorKind::NegativeExactCount, "missing fixed count for t=" + std::to_string(f / v));
      s += mobius(v / u) * it->second;
    }
    if (s < 0) throw Error(ErrorKind::NegativeExactCount, "u=" + std::to_string(u) + " gives " + s.get_str());
    exact[u] = s;
  }
  return exact;
}

// Inverse of exact_stabilizer_counts without the sign check.
inline std::map<long, mpz_class> fixed_from_exact(const std::map<long, mpz_class>& exact, long f) {
  std::map<long, mpz_class> fix;
  for (long t : divisors(f)) {
    mpz_class s = 0;
    for (const auto& [u, c] : exact)
      if (u % (f / t) == 0) s += c;
    fix[t] = s;
  }
  return fix;
}

inline std::string format_counts(const std::map<long, mpz_class>& m, const char* key) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ",") + std::string(key) + "=" + std::to_string(k) + ":" + v.get_str();
  return s;
}

// ---------------------------------------------------------------- fixed counts

inline mpz_class fixed_count_formula(const FixRow& row, long t, unsigned n = 1) {
  Env env;
  env.n = n;
  env.t = t;
  SqrtTwoRat v = eval_expr(row.formula, env);
  try {
    return as_integer(v);
  } catch (const Error&) {
    throw Error(ErrorKind::NonIntegralFormula, row.id + " at t=" + std::to_string(t) + ": " + v.str());
  }
}

// The set that carries the automorphism action for `spec`.
inline const ParamSetSpec& action_set(const Model& m, const ParamSetSpec& spec) {
  if (spec.hset.empty()) return spec;
  return *m.paramset(spec.hset);
}

// Enumerations of the member sets of a group of rows at one n, built once and
// then shared read-only.
class FixEngine {
 public:
  FixEngine(const Model& model, unsigned n, uint64_t budget = kDefaultBudget, unsigned workers = 1,
            const std::vector<const FixRow*>& rows = {})
      : model_(&model), n_(n), budget_(budget) {
    std::vector<const FixRow*> use = rows;
    if (use.empty())
      for (const auto& r : model.fixrows) use.push_back(&r);
    std::vector<const ParamSetSpec*> todo;
    for (const FixRow* r : use)
      for (const auto& s : r->member_sets) {
        const ParamSetSpec& a = action_set(model, *model.paramset(s));
        if (a.moduli.empty() || enums_.count(a.id)) continue;
        enums_[a.id] = nullptr;
        if (dc::enumerable(a, n, budget)) todo.push_back(&a);
      }
    std::vector<std::shared_ptr<Enumeration>> out(todo.size());
    parallel_for(todo.size(), workers, [&](size_t i) {
      out[i] = std::make_shared<Enumeration>(enumerate_classes(*todo[i], n, budget));
    });
    for (size_t i = 0; i < todo.size(); ++i) enums_[todo[i]->id] = out[i];
  }

  unsigned n() const { return n_; }

  const Enumeration* enumeration(const std::string& id) const {
    auto it = enums_.find(id);
    return it == enums_.end() ? nullptr : it->second.get();
  }

  // Throws FormulaOnlyRow or BudgetExceeded when the row cannot be brute-forced.
  void require_enumerable(const FixRow& row) const {
    for (const auto& s : row.member_sets) {
      const ParamSetSpec& spec = *model_->paramset(s);
      if (spec.action_kind == ActionKind::FormulaOnly)
        throw Error(ErrorKind::FormulaOnlyRow, row.id + ": " + s + " has no index structure");
      const ParamSetSpec& a = action_set(*model_, spec);
      if (!a.moduli.empty() && !enumeration(a.id))
        throw Error(ErrorKind::BudgetExceeded, row.id + ": " + a.id + " at n=" + std::to_string(n_));
    }
  }

  bool enumerable(const FixRow& row) const {
    try {
      require_enumerable(row);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  mpz_class formula(const FixRow& row, long t) const { return fixed_count_formula(row, t, n_); }

  // Classes c with 2^t c = c, summed over the member sets.
  mpz_class bruteforce(const FixRow& row, long t) const {
    require_enumerable(row);
    mpz_class total = 0;
    for (const auto& s : row.member_sets) {
      const ParamSetSpec& spec = *model_->paramset(s);
      const ParamSetSpec& a = action_set(*model_, spec);
      if (a.moduli.empty()) {
        total += card_value(spec, n_);
        continue;
      }
      const Enumeration& en = *enumeration(a.id);
      if (spec.action_kind == ActionKind::Identity) {
        total += static_cast<unsigned long>(en.num_classes());
        continue;
      }
      total += static_cast<unsigned long>(count_fixed(en, t));
    }
    return total;
  }

 private:
  static uint64_t count_fixed(const Enumeration& en, long t) {
    const CompiledSet& cs = *en.set;
    std::vector<uint64_t> x(cs.dim()), y(cs.dim());
    uint64_t factor = uint64_t(1) << t;
    uint64_t fixed = 0;
    for (size_t c = 0; c < en.reps.size(); ++c) {
      cs.decode(en.reps[c], x.data());
      cs.scale(factor, x.data(), y.data());
      int32_t img = en.class_of[cs.encode(y.data())];
      if (img < 0)
        throw Error(ErrorKind::InadmissibleImage, cs.spec().id + ": doubling leaves the admissible tuples");
      fixed += img == static_cast<int32_t>(c);
    }
    return fixed;
  }

  const Model* model_;
  unsigned n_;
  uint64_t budget_;
  std::map<std::string, std::shared_ptr<Enumeration>> enums_;
};

inline mpz_class fixed_count_bruteforce(const Model& model, const FixRow& row, unsigned n, long t,
                                        uint64_t budget = kDefaultBudget) {
  return FixEngine(model, n, budget, 1, {&row}).bruteforce(row, t);
}

// ---------------------------------------------------------------- row checks

inline mpz_class union_cardinality(const Model& m, const std::vector<std::string>& sets, unsigned n) {
  mpz_class s = 0;
  for (const auto& id : sets) s += card_value(*m.paramset(id), n);
  return s;
}

// Brute force against the closed form for every t | 2n+1, the total count at
// t = 2n+1, the exact-stabilizer counts of every row, and pair cardinalities.
inline Report fixrow_check(const Model& model, unsigned n, uint64_t budget = kDefaultBudget, unsigned workers = 1) {
  const long f = odd_order(n);
  FixEngine engine(model, n, budget, workers);
  std::vector<Report> parts(model.fixrows.size());
  parallel_for(model.fixrows.size(), workers, [&](size_t i) {
    const FixRow& row = model.fixrows[i];
    Report& rep = parts[i];
    const bool brute = engine.enumerable(row);
    std::map<long, mpz_class> fix;
    for (long t : divisors(f)) {
      Stopwatch sw;
      Record r;
      r.check = "fixrows";
      r.subject = row.id;
      r.n = n;
      r.key = "t";
      r.key_value = t;
      mpz_class want = engine.formula(row, t);
      r.expected = want.get_str();
      if (brute) {
        mpz_class got = engine.bruteforce(row, t);
        r.actual = got.get_str();
        r.status = got == want ? Status::Pass : Status::Fail;
        fix[t] = got;
      } else {
        r.actual = "-";
        r.status = Status::Skip;
        r.note = "formula only, trusted input";
        fix[t] = want;
      }
      r.millis = sw.millis();
      rep.add(r);
    }
    rep.add(make_record("fixrows.total", row.id, n, engine.formula(row, f).get_str(),
                        union_cardinality(model, row.member_sets, n).get_str(), "t = 2n+1"));
    Record mr;
    mr.check = "mobius";
    mr.subject = row.id;
    mr.n = n;
    mr.expected = format_counts(fix, "t");
    try {
      auto exact = exact_stabilizer_counts(fix, f);
      mr.actual = format_counts(fixed_from_exact(exact, f), "t");
      mr.note = format_counts(exact, "u");
      mr.status = mr.actual == mr.expected ? Status::Pass : Status::Fail;
    } catch (const Error& e) {
      mr.actual = "-";
      mr.note = e.what();
      mr.status = Status::Fail;
    }
    rep.add(mr);
  });
  Report out;
  for (const auto& p : parts) out.append(p);
  for (const auto& p : model.pairs)
    out.add(make_record("pairs", p.id, n, union_cardinality(model, p.left, n).get_str(),
                        union_cardinality(model, p.right, n).get_str()));
  return out;
}

// ---------------------------------------------------------------- gcd lemmas

inline mpz_class pow2(unsigned long e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

inline mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Report verify_gcd_lemmas(unsigned n_max) {
  Report rep;
  auto add = [&](const std::string& subject, unsigned n, long t, const mpz_class& want, const mpz_class& got,
                 std::string note = {}) {
    Record r = make_record("lemmas", subject, n, want.get_str(), got.get_str(), std::move(note));
    if (t > 0) {
      r.key = "t";
      r.key_value = t;
    }
    rep.add(r);
  };
  const long top = odd_order(n_max);
  for (long a = 1; a <= top; ++a)
    for (long b = 1; b <= top; ++b) {
      const long d = std::gcd(a, b);
      add("mersenne(" + std::to_string(a) + "," + std::to_string(b) + ")", 0, 0, pow2(d) - 1,
          gcd_z(pow2(a) - 1, pow2(b) - 1));
    }
  for (unsigned n = 1; n <= n_max; ++n) {
    const long f = odd_order(n);
    const mpz_class q2 = pow2(f);
    for (long t : divisors(f)) {
      const mpz_class lo = pow2(t) - 1, hi = pow2(t) + 1;
      add("gcd(2^t-1,q^2-1)", n, t, lo, gcd_z(lo, q2 - 1));
      add("gcd(2^t-1,q^2+1)", n, t, 1, gcd_z(lo, q2 + 1));
      add("gcd(2^t+1,q^2-1)", n, t, 1, gcd_z(hi, q2 - 1));
      add("gcd(2^t+1,q^2+1)", n, t, hi, gcd_z(hi, q2 + 1));
      // f - t = 2t*j; j even and j odd are the two cases.
      const long j = (f - t) / (2 * t);
      const bool even = j % 2 == 0;
      const long m = even ? j / 2 : (j - 1) / 2;
      const mpz_class minus = pow2(f - t) - 1, plus = pow2(f - t) + 1;
      for (int eps : {1, -1}) {
        const mpz_class target = q2 + eps * pow2(n + 1) + 1;  // q^2 + eps*sqrt2*q + 1
        const int sign = ((even ? m : m + 1) % 2 == 0 ? 1 : -1) * eps;
        const mpz_class closed = pow2(t) + sign * pow2((t + 1) / 2) + 1;
        const std::string tag = std::string(eps > 0 ? "p8a" : "p8b") + (even ? ",j even" : ",j odd");
        add("gcd(2^(f-t)-1," + tag + ")", n, t, even ? closed : mpz_class(1), gcd_z(minus, target),
            "m=" + std::to_string(m));
        add("gcd(2^(f-t)+1," + tag + ")", n, t, even ? mpz_class(1) : closed, gcd_z(plus, target),
            "m=" + std::to_string(m));
      }
    }
  }
  return rep;
}

}  // namespace dc
