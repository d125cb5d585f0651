#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "error.hpp"
#include "expr.hpp"
#include "report.hpp"
#include "tabledsl.hpp"

namespace dc {

inline constexpr uint64_t kDefaultBudget = uint64_t(1) << 22;

// ---------------------------------------------------------------- linear forms

// c + sum coef[j] * x_j over Q(sqrt2), used to compile index maps and atoms.
struct LinForm {
  std::vector<SqrtTwoRat> coef;
  SqrtTwoRat c;
  bool is_const() const {
    return std::all_of(coef.begin(), coef.end(), [](const SqrtTwoRat& x) { return x.is_zero(); });
  }
};

inline LinForm linearize(const ExprPtr& e, const std::vector<std::string>& vars, const Env& env) {
  using Op = Expr::Op;
  const size_t nv = vars.size();
  auto constant = [&](const SqrtTwoRat& v) {
    LinForm f;
    f.coef.assign(nv, SqrtTwoRat());
    f.c = v;
    return f;
  };
  switch (e->op) {
    case Op::Sym: {
      for (size_t j = 0; j < nv; ++j)
        if (vars[j] == e->name) {
          LinForm f = constant(SqrtTwoRat());
          f.coef[j] = SqrtTwoRat(1);
          return f;
        }
      return constant(eval_expr(e, env));
    }
    case Op::Neg: {
      LinForm f = linearize(e->args[0], vars, env);
      for (auto& x : f.coef) x = -x;
      f.c = -f.c;
      return f;
    }
    case Op::Add: case Op::Sub: {
      LinForm a = linearize(e->args[0], vars, env), b = linearize(e->args[1], vars, env);
      const bool sub = e->op == Op::Sub;
      for (size_t j = 0; j < nv; ++j) a.coef[j] = sub ? a.coef[j] - b.coef[j] : a.coef[j] + b.coef[j];
      a.c = sub ? a.c - b.c : a.c + b.c;
      return a;
    }
    case Op::Mul: {
      LinForm a = linearize(e->args[0], vars, env), b = linearize(e->args[1], vars, env);
      if (!a.is_const() && !b.is_const()) throw Error(ErrorKind::SyntaxError, "non-linear index expression " + to_string(e));
      if (a.is_const()) std::swap(a, b);
      for (auto& x : a.coef) x *= b.c;
      a.c *= b.c;
      return a;
    }
    case Op::Div: {
      LinForm a = linearize(e->args[0], vars, env), b = linearize(e->args[1], vars, env);
      if (!b.is_const()) throw Error(ErrorKind::SyntaxError, "division by an index in " + to_string(e));
      SqrtTwoRat inv = b.c.inverse();
      for (auto& x : a.coef) x *= inv;
      a.c *= inv;
      return a;
    }
    case Op::Pow: {
      LinForm a = linearize(e->args[0], vars, env);
      mpz_class ex = as_integer(eval_expr(e->args[1], env));
      if (a.is_const()) return constant(pow(a.c, ex.get_si()));
      if (ex == 1) return a;
      throw Error(ErrorKind::SyntaxError, "non-linear index expression " + to_string(e));
    }
    default: return constant(eval_expr(e, env));
  }
}

// Reduces an exact rational to Z/m, inverting its denominator.
inline uint64_t reduce_mod(const SqrtTwoRat& v, uint64_t m) {
  if (!v.is_rational()) throw Error(ErrorKind::NotRationalInteger, "irrational coefficient " + v.str());
  mpz_class mm(static_cast<unsigned long>(m)), num = v.a.get_num(), den = v.a.get_den(), inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0 && m != 1)
    throw Error(ErrorKind::NotRationalInteger, "denominator " + den.get_str() + " not invertible mod " + mm.get_str());
  mpz_class r = (num * inv) % mm;
  if (r < 0) r += mm;
  return r.get_ui();
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

struct ModForm {
  std::vector<uint64_t> coef;
  uint64_t c = 0;
  uint64_t m = 1;
  uint64_t apply(const uint64_t* x) const {
    unsigned __int128 s = c;
    for (size_t j = 0; j < coef.size(); ++j) s += static_cast<unsigned __int128>(coef[j]) * x[j];
    return static_cast<uint64_t>(s % m);
  }
};

inline ModForm to_modform(const LinForm& f, uint64_t m) {
  ModForm r;
  r.m = m;
  for (const auto& x : f.coef) r.coef.push_back(reduce_mod(x, m));
  r.c = reduce_mod(f.c, m);
  return r;
}

// ---------------------------------------------------------------- compiled set

// A parameter set instantiated at fixed n: integer moduli, modular maps and
// compiled exclusion atoms.
class CompiledSet {
 public:
  CompiledSet(const ParamSetSpec& spec, unsigned n) : spec_(&spec), n_(n) {
    if (spec.action_kind == ActionKind::FormulaOnly)
      throw Error(ErrorKind::FormulaOnlyRow, spec.id + " has no index structure");
    Env env;
    env.n = n;
    for (const auto& m : spec.moduli) {
      SqrtTwoRat v = eval_expr(m, env);
      mpz_class z;
      try {
        z = as_integer(v);
      } catch (const Error&) {
        throw Error(ErrorKind::NonIntegralModulus, spec.id + ": " + to_string(m) + " = " + v.str());
      }
      if (z <= 0 || !z.fits_ulong_p()) throw Error(ErrorKind::NonIntegralModulus, spec.id + ": modulus " + z.get_str());
      mod_.push_back(z.get_ui());
    }
    for (const auto& g : spec.equiv_gens) {
      if (g.from != spec.vars) throw Error(ErrorKind::SyntaxError, spec.id + ": map variables must match vars");
      std::vector<ModForm> comp;
      for (size_t i = 0; i < g.to.size(); ++i) comp.push_back(to_modform(linearize(g.to[i], spec.vars, env), mod_[i]));
      maps_.push_back(comp);
    }
    for (const auto& conj : spec.exclusion.terms) {
      std::vector<CAtom> cc;
      for (const auto& a : conj) cc.push_back(compile_atom(a, env));
      excl_.push_back(cc);
    }
  }

  const ParamSetSpec& spec() const { return *spec_; }
  unsigned n() const { return n_; }
  size_t dim() const { return mod_.size(); }
  const std::vector<uint64_t>& moduli() const { return mod_; }

  // Product of the moduli, saturating at UINT64_MAX.
  uint64_t space_size() const {
    unsigned __int128 p = 1;
    for (uint64_t m : mod_) {
      p *= m;
      if (p > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<uint64_t>(p);
  }

  void decode(uint64_t idx, uint64_t* x) const {
    for (size_t i = dim(); i-- > 0;) {
      x[i] = idx % mod_[i];
      idx /= mod_[i];
    }
  }
  uint64_t encode(const uint64_t* x) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < dim(); ++i) idx = idx * mod_[i] + x[i];
    return idx;
  }

  bool admissible(const uint64_t* x) const {
    for (const auto& conj : excl_) {
      bool all = true;
      for (const auto& a : conj)
        if (!a.holds(x)) { all = false; break; }
      if (all) return false;
    }
    return true;
  }

  size_t num_maps() const { return maps_.size(); }
  void apply_map(size_t g, const uint64_t* x, uint64_t* y) const {
    for (size_t i = 0; i < dim(); ++i) y[i] = maps_[g][i].apply(x);
  }
  void scale(uint64_t factor, const uint64_t* x, uint64_t* y) const {
    for (size_t i = 0; i < dim(); ++i) y[i] = mulmod(factor % mod_[i], x[i], mod_[i]);
  }

 private:
  struct CAtom {
    Atom::Rel rel;
    bool constant = false;
    bool const_value = false;
    ModForm form;      // lhs - rhs for Eq/Ne, the argument for Div
    uint64_t divisor = 0;
    bool holds(const uint64_t* x) const {
      if (constant) return const_value;
      uint64_t v = form.apply(x);
      switch (rel) {
        case Atom::Rel::Eq: return v == 0;
        case Atom::Rel::Ne: return v != 0;
        case Atom::Rel::Div: return v % divisor == 0;
      }
      return false;
    }
  };

  // The comparison modulus is that of the first index variable present.
  CAtom compile_atom(const Atom& a, const Env& env) const {
    CAtom c;
    c.rel = a.rel;
    const auto& vars = spec_->vars;
    if (a.rel == Atom::Rel::Div) {
      LinForm d = linearize(a.lhs, vars, env);
      LinForm b = linearize(a.rhs, vars, env);
      if (!d.is_const()) throw Error(ErrorKind::SyntaxError, spec_->id + ": divisor must be constant");
      mpz_class dz = as_integer(d.c);
      if (dz < 0) dz = -dz;
      int v = first_var(b);
      if (v < 0) {
        mpz_class bz = as_integer(b.c);
        c.constant = true;
        c.const_value = dz != 0 && bz % dz == 0;
        return c;
      }
      if (dz == 0) {
        c.constant = true;
        c.const_value = false;
        return c;
      }
      if (mod_[v] % dz.get_ui() != 0)
        throw Error(ErrorKind::NonIntegralModulus, spec_->id + ": divisor " + dz.get_str() + " does not divide modulus");
      c.divisor = dz.get_ui();
      c.form = to_modform(b, mod_[v]);
      check_single_modulus(b, v);
      return c;
    }
    LinForm l = linearize(a.lhs, vars, env), r = linearize(a.rhs, vars, env);
    for (size_t j = 0; j < l.coef.size(); ++j) l.coef[j] -= r.coef[j];
    l.c -= r.c;
    int v = first_var(l);
    if (v < 0) {
      bool eq = l.c.is_zero();
      c.constant = true;
      c.const_value = a.rel == Atom::Rel::Eq ? eq : !eq;
      return c;
    }
    check_single_modulus(l, v);
    c.form = to_modform(l, mod_[v]);
    return c;
  }

  static int first_var(const LinForm& f) {
    for (size_t j = 0; j < f.coef.size(); ++j)
      if (!f.coef[j].is_zero()) return static_cast<int>(j);
    return -1;
  }
  void check_single_modulus(const LinForm& f, int v) const {
    for (size_t j = 0; j < f.coef.size(); ++j)
      if (!f.coef[j].is_zero() && mod_[j] != mod_[v])
        throw Error(ErrorKind::SyntaxError, spec_->id + ": atom mixes indices with different moduli");
  }

  const ParamSetSpec* spec_;
  unsigned n_;
  std::vector<uint64_t> mod_;
  std::vector<std::vector<ModForm>> maps_;
  std::vector<std::vector<CAtom>> excl_;
};

// ---------------------------------------------------------------- enumeration

struct Enumeration {
  std::shared_ptr<const CompiledSet> set;
  std::vector<int32_t> class_of;  // -1 for excluded tuples
  std::vector<uint64_t> reps;     // lexicographically least member per class
  std::vector<uint32_t> sizes;
  uint64_t admissible = 0;

  size_t num_classes() const { return reps.size(); }
  std::vector<uint64_t> tuple(uint64_t idx) const {
    std::vector<uint64_t> x(set->dim());
    set->decode(idx, x.data());
    return x;
  }
};

inline Enumeration enumerate_classes(const ParamSetSpec& spec, unsigned n, uint64_t budget = kDefaultBudget) {
  auto cs = std::make_shared<CompiledSet>(spec, n);
  const uint64_t total = cs->space_size();
  if (total > budget)
    throw Error(ErrorKind::BudgetExceeded, spec.id + " at n=" + std::to_string(n) + ": " + std::to_string(total) +
                                               " tuples > budget " + std::to_string(budget));
  Enumeration en;
  en.set = cs;
  en.class_of.assign(total, -2);  // -2 unvisited
  const size_t d = cs->dim();
  std::vector<uint64_t> x(d), y(d);
  for (uint64_t idx = 0; idx < total; ++idx) {
    cs->decode(idx, x.data());
    if (!cs->admissible(x.data())) en.class_of[idx] = -1;
  }
  std::vector<uint64_t> stack;
  for (uint64_t idx = 0; idx < total; ++idx) {
    if (en.class_of[idx] != -2) continue;
    const int32_t cid = static_cast<int32_t>(en.reps.size());
    en.reps.push_back(idx);
    en.class_of[idx] = cid;
    uint32_t size = 1;
    stack.assign(1, idx);
    while (!stack.empty()) {
      uint64_t cur = stack.back();
      stack.pop_back();
      cs->decode(cur, x.data());
      for (size_t g = 0; g < cs->num_maps(); ++g) {
        cs->apply_map(g, x.data(), y.data());
        uint64_t img = cs->encode(y.data());
        if (en.class_of[img] == -1)
          throw Error(ErrorKind::InadmissibleImage, spec.id + ": generator " + std::to_string(g + 1) +
                                                        " maps an admissible tuple to an excluded one");
        if (en.class_of[img] == -2) {
          en.class_of[img] = cid;
          ++size;
          stack.push_back(img);
        }
      }
    }
    en.sizes.push_back(size);
    en.admissible += size;
  }
  return en;
}

// ---------------------------------------------------------------- checks

inline mpz_class card_value(const ParamSetSpec& spec, unsigned n) {
  Env env;
  env.n = n;
  return as_integer(eval_expr(spec.card_formula, env));
}

inline bool enumerable(const ParamSetSpec& spec, unsigned n, uint64_t budget) {
  if (spec.action_kind == ActionKind::FormulaOnly) return false;
  return CompiledSet(spec, n).space_size() <= budget;
}

inline Record cardinality_record(const ParamSetSpec& spec, unsigned n, uint64_t budget) {
  Stopwatch sw;
  Record r;
  r.check = "params";
  r.subject = spec.id;
  r.n = n;
  r.expected = card_value(spec, n).get_str();
  if (!enumerable(spec, n, budget)) {
    r.status = Status::Skip;
    r.actual = "-";
    r.note = spec.action_kind == ActionKind::FormulaOnly ? "formula only" : "over budget";
    if (!spec.note.empty()) r.note += "; " + spec.note;
    return r;
  }
  Enumeration en = enumerate_classes(spec, n, budget);
  r.actual = std::to_string(en.num_classes());
  uint64_t sum = 0;
  for (auto s : en.sizes) sum += s;
  r.status = r.actual == r.expected && sum == en.admissible ? Status::Pass : Status::Fail;
  if (sum != en.admissible) r.note = "class sizes do not sum to the admissible count";
  if (!spec.note.empty()) r.note += (r.note.empty() ? "" : "; ") + spec.note;
  r.millis = sw.millis();
  return r;
}

inline Report cardinality_check(const Model& model, unsigned n, uint64_t budget = kDefaultBudget) {
  Report rep;
  for (const auto& p : model.paramsets) {
    rep.add(cardinality_record(p, n, budget));
    // An alternative encoding must count the same classes.
    if (p.hset.empty()) continue;
    const ParamSetSpec* h = model.paramset(p.hset);
    if (!h) throw Error(ErrorKind::DanglingReference, p.id + ": unknown hset " + p.hset);
    rep.add(make_record("params.hset", p.id + "~" + h->id, n, card_value(p, n).get_str(), card_value(*h, n).get_str()));
  }
  return rep;
}

}  // namespace dc
