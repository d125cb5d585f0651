#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dade.hpp"
#include "error.hpp"
#include "exactnum.hpp"
#include "expr.hpp"
#include "paramsets.hpp"
#include "report.hpp"
#include "tabledsl.hpp"

namespace dc {

// ---------------------------------------------------------------- symbolic values

// Polynomial in the indices i, k with coefficients in Q(sqrt2)[q].
class IndexPoly {
 public:
  using Key = std::pair<int, int>;  // powers of i and k

  IndexPoly() = default;
  IndexPoly(const QPoly& c) {
    if (!c.is_zero()) t_[{0, 0}] = c;
  }
  static IndexPoly var(bool is_k) {
    IndexPoly p;
    p.t_[is_k ? Key{0, 1} : Key{1, 0}] = QPoly(1);
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0}); }
  QPoly constant() const {
    auto it = t_.find({0, 0});
    return it == t_.end() ? QPoly() : it->second;
  }

  IndexPoly& operator+=(const IndexPoly& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
  }
  IndexPoly operator-() const {
    IndexPoly r;
    for (const auto& [k, c] : t_) r.t_[k] = -c;
    return r;
  }
  friend IndexPoly operator+(IndexPoly a, const IndexPoly& b) { return a += b; }
  friend IndexPoly operator-(IndexPoly a, const IndexPoly& b) { return a += -b; }
  friend IndexPoly operator*(const IndexPoly& a, const IndexPoly& b) {
    IndexPoly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }
  friend bool operator==(const IndexPoly& a, const IndexPoly& b) { return a.t_ == b.t_; }

  SqrtTwoRat eval(unsigned n, const mpz_class& i, const mpz_class& k) const {
    SqrtTwoRat r;
    for (const auto& [key, c] : t_) {
      mpz_class m = 1;
      for (int e = 0; e < key.first; ++e) m *= i;
      for (int e = 0; e < key.second; ++e) m *= k;
      r += c.eval(n) * SqrtTwoRat(m);
    }
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "[" + c.str() + "]";
      if (k.first) s += "*i^" + std::to_string(k.first);
      if (k.second) s += "*k^" + std::to_string(k.second);
    }
    return s;
  }

 private:
  void add(const Key& k, const QPoly& c) {
    QPoly& slot = t_[k];
    slot += c;
    if (slot.is_zero()) t_.erase(k);
  }
  std::map<Key, QPoly> t_;
};

// A product e4^a * prod root(b, x_b) with a in {0, 1}; e4^2 = -1 is folded
// into the coefficient.
struct SymMonomial {
  int e4 = 0;
  std::map<std::string, IndexPoly> roots;  // base name -> exponent

  std::string key() const {
    std::string s = e4 ? "e4" : "1";
    for (const auto& [b, x] : roots) s += "|" + b + ":" + x.str();
    return s;
  }
};

class SymValue {
 public:
  SymValue() = default;
  SymValue(const QPoly& c) {
    if (!c.is_zero()) add(SymMonomial{}, c);
  }
  static SymValue e4() {
    SymValue v;
    v.add(SymMonomial{1, {}}, QPoly(1));
    return v;
  }
  static SymValue root(const std::string& base, const IndexPoly& x) {
    SymMonomial m;
    if (!x.is_zero()) m.roots[base] = x;
    SymValue v;
    v.add(m, QPoly(1));
    return v;
  }

  bool is_zero() const { return t_.empty(); }
  // Plain polynomial in q (no e4, no roots of unity)?
  bool is_polynomial() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == "1"); }
  QPoly polynomial() const { return t_.empty() ? QPoly() : t_.begin()->second.second; }

  SymValue& operator+=(const SymValue& o) {
    for (const auto& [k, mc] : o.t_) add(mc.first, mc.second);
    return *this;
  }
  SymValue operator-() const {
    SymValue r;
    for (const auto& [k, mc] : t_) r.t_[k] = {mc.first, -mc.second};
    return r;
  }
  friend SymValue operator+(SymValue a, const SymValue& b) { return a += b; }
  friend SymValue operator-(SymValue a, const SymValue& b) { return a += -b; }
  friend SymValue operator*(const SymValue& a, const SymValue& b) {
    SymValue r;
    for (const auto& [ka, x] : a.t_)
      for (const auto& [kb, y] : b.t_) {
        SymMonomial m = x.first;
        QPoly c = x.second * y.second;
        if (m.e4 && y.first.e4) c = -c;
        m.e4 ^= y.first.e4;
        for (const auto& [base, e] : y.first.roots) {
          IndexPoly s = m.roots[base] + e;
          if (s.is_zero())
            m.roots.erase(base);
          else
            m.roots[base] = s;
        }
        r.add(m, c);
      }
    return r;
  }
  SymValue scaled(const SqrtTwoRat& s) const { return *this * SymValue(QPoly(s)); }
  friend bool operator==(const SymValue& a, const SymValue& b) { return (a - b).is_zero(); }

  const std::map<std::string, std::pair<SymMonomial, QPoly>>& terms() const { return t_; }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [k, mc] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + mc.second.str() + ")";
      if (k != "1") s += "*{" + k + "}";
    }
    return s;
  }

 private:
  void add(const SymMonomial& m, const QPoly& c) {
    const std::string k = m.key();
    auto it = t_.find(k);
    if (it == t_.end()) {
      if (!c.is_zero()) t_.emplace(k, std::make_pair(m, c));
      return;
    }
    it->second.second += c;
    if (it->second.second.is_zero()) t_.erase(it);
  }
  std::map<std::string, std::pair<SymMonomial, QPoly>> t_;
};

inline IndexPoly to_index_poly(const ExprPtr& e) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Sym:
      if (e->name == "i" || e->name == "k") return IndexPoly::var(e->name == "k");
      return IndexPoly(to_qpoly(e));
    case Op::Num: return IndexPoly(to_qpoly(e));
    case Op::Neg: return -to_index_poly(e->args[0]);
    case Op::Add: return to_index_poly(e->args[0]) + to_index_poly(e->args[1]);
    case Op::Sub: return to_index_poly(e->args[0]) - to_index_poly(e->args[1]);
    case Op::Mul: return to_index_poly(e->args[0]) * to_index_poly(e->args[1]);
    case Op::Div: {
      QPoly d = to_qpoly(e->args[1]);
      if (!d.is_constant() || d.is_zero()) throw Error(ErrorKind::UnboundSymbol, "division by a non-constant");
      return to_index_poly(e->args[0]) * IndexPoly(QPoly(d.constant().inverse()));
    }
    case Op::Pow: {
      mpz_class k = as_integer(to_qpoly(e->args[1]).constant());
      IndexPoly b = to_index_poly(e->args[0]), r = IndexPoly(QPoly(1));
      for (long j = 0; j < k.get_si(); ++j) r = r * b;
      return r;
    }
    case Op::Call: throw Error(ErrorKind::UnboundSymbol, "root() inside an exponent");
  }
  return {};
}

inline SymValue to_sym(const ExprPtr& e) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Num: return SymValue(to_qpoly(e));
    case Op::Sym:
      if (e->name == "e4") return SymValue::e4();
      if (e->name == "i" || e->name == "k")
        throw Error(ErrorKind::UnboundSymbol, "index '" + e->name + "' outside an exponent");
      return SymValue(to_qpoly(e));
    case Op::Neg: return -to_sym(e->args[0]);
    case Op::Add: return to_sym(e->args[0]) + to_sym(e->args[1]);
    case Op::Sub: return to_sym(e->args[0]) - to_sym(e->args[1]);
    case Op::Mul: return to_sym(e->args[0]) * to_sym(e->args[1]);
    case Op::Div: {
      QPoly d = to_qpoly(e->args[1]);
      if (!d.is_constant() || d.is_zero()) throw Error(ErrorKind::UnboundSymbol, "division by a non-constant");
      return to_sym(e->args[0]).scaled(d.constant().inverse());
    }
    case Op::Pow: {
      mpz_class k = as_integer(to_qpoly(e->args[1]).constant());
      if (k < 0 || k > 64) throw Error(ErrorKind::UnboundSymbol, "exponent out of range");
      SymValue b = to_sym(e->args[0]), r = SymValue(QPoly(1));
      for (long j = 0; j < k.get_si(); ++j) r = r * b;
      return r;
    }
    case Op::Call: {
      const ExprPtr& base = e->args[0];
      if (base->op != Op::Sym) throw Error(ErrorKind::SyntaxError, "root(): the order must be a named polynomial");
      return SymValue::root(base->name, to_index_poly(e->args[1]));
    }
  }
  return {};
}

using Complex = std::complex<long double>;

// exp(2 pi sqrt(-1) x / b); x must be an integer.
inline Complex root_of_unity(const mpz_class& b, const mpz_class& x) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), b.get_mpz_t());
  const long double pi = std::acos(-1.0L);
  const long double a = 2 * pi * r.get_d() / b.get_d();
  return {std::cos(a), std::sin(a)};
}

inline mpz_class root_order(const std::string& base, unsigned n) {
  QPoly p;
  if (!named_poly(base, p)) throw Error(ErrorKind::UnknownSymbol, "unknown root order " + base);
  return as_integer(p.eval(n));
}

// Numeric value with e4 = sqrt(-1).
inline Complex evaluate(const SymValue& v, unsigned n, const mpz_class& i, const mpz_class& k) {
  Complex s = 0;
  for (const auto& [key, mc] : v.terms()) {
    Complex t = static_cast<long double>(mc.second.eval(n).to_double());
    if (mc.first.e4) t *= Complex(0, 1);
    for (const auto& [base, x] : mc.first.roots) {
      SqrtTwoRat e = x.eval(n, i, k);
      t *= root_of_unity(root_order(base, n), as_integer(e));
    }
    s += t;
  }
  return s;
}

// ---------------------------------------------------------------- table access

inline const Relation* value_of(const Model& m, const std::string& fn, const std::string& cls) {
  for (const auto& r : m.relations)
    if (r.is_value() && r.fn == fn && r.cls == cls) return &r;
  return nullptr;
}

inline std::vector<const Relation*> values_of(const Model& m, const std::string& fn) {
  std::vector<const Relation*> out;
  for (const auto& r : m.relations)
    if (r.is_value() && r.fn == fn) out.push_back(&r);
  return out;
}

// Unlisted values of a class function are zero.
inline SymValue sym_value(const Model& m, const std::string& fn, const std::string& cls) {
  const Relation* r = value_of(m, fn, cls);
  return r ? to_sym(r->value) : SymValue();
}

inline mpz_class family_multiplicity(const Model& m, const ClassFamily& c, unsigned n) {
  if (c.family.empty()) return 1;
  const ParamSetSpec* p = m.paramset(c.family);
  if (!p) throw Error(ErrorKind::DanglingReference, c.id + ": unknown family " + c.family);
  return card_value(*p, n);
}

inline mpz_class class_index(const ClassFamily& c, unsigned n) {
  const SqrtTwoRat cent = eval_expr(c.centralizer_order, n);
  const SqrtTwoRat idx = SqrtTwoRat(order_G(n)) * cent.inverse();
  if (!idx.is_rational() || idx.a.get_den() != 1)
    throw Error(ErrorKind::NonIntegralIndex, c.id + ": |G|/|C| = " + idx.str() + " at n=" + std::to_string(n));
  return idx.a.get_num();
}

// ---------------------------------------------------------------- checks

inline Report class_equation(const Model& m, unsigned n) {
  Report rep;
  mpz_class sum = 0;
  for (const auto& c : m.classfams) {
    const mpz_class mult = family_multiplicity(m, c, n);
    Record r = make_record("classes.index", c.id, n, "integral", "integral");
    try {
      const mpz_class idx = class_index(c, n);
      sum += mult * idx;
      r.note = "classes " + mult.get_str() + ", index " + idx.get_str();
    } catch (const Error& e) {
      r.actual = "not integral";
      r.status = Status::Fail;
      r.note = e.what();
    }
    rep.add(r);
  }
  rep.add(make_record("classes.equation", "sum |G|/|C|", n, order_G(n).get_str(), sum.get_str()));
  return rep;
}

inline Report relations_check(const Model& m) {
  Report rep;
  for (const auto& r : m.relations) {
    if (r.is_value() || r.is_diff()) continue;
    for (const auto& [a, b] : r.antisym) {
      const SymValue va = sym_value(m, r.id, a), vb = sym_value(m, r.id, b);
      Record rec = make_record("relations.antisym", r.id + "(" + a + "," + b + ")", 0, (-vb).str(), va.str());
      if (!value_of(m, r.id, a) || !value_of(m, r.id, b)) rec.note = "value not listed, taken as 0";
      rep.add(rec);
    }
  }
  for (const auto& r : m.relations) {
    if (!r.is_diff()) continue;
    if (r.diff.size() != 2) throw Error(ErrorKind::SyntaxError, r.id + ": diff needs two characters");
    std::set<std::string> classes;
    for (const auto* v : values_of(m, r.diff[0]))
      if (value_of(m, r.diff[1], v->cls)) classes.insert(v->cls);
    for (const auto& cls : classes) {
      const SymValue d = sym_value(m, r.diff[0], cls) - sym_value(m, r.diff[1], cls);
      const SymValue f = sym_value(m, r.equals, cls);
      rep.add(make_record("relations.diff", r.diff[0] + "-" + r.diff[1] + "(" + cls + ")", 0, f.str(), d.str()));
    }
  }
  return rep;
}

// The indices i of a family and k of a series, as representatives of the
// admissible classes of their parameter sets.
inline std::vector<mpz_class> index_reps(const Model& m, const std::string& set, unsigned n) {
  const ParamSetSpec* p = m.paramset(set);
  if (!p) throw Error(ErrorKind::DanglingReference, "unknown parameter set " + set);
  if (p->moduli.size() != 1) throw Error(ErrorKind::Config, set + ": expected a one-parameter set");
  Enumeration en = enumerate_classes(*p, n);
  std::vector<mpz_class> out;
  for (uint64_t r : en.reps) out.push_back(static_cast<unsigned long>(en.tuple(r)[0]));
  return out;
}

inline std::string series_of(const Model& m, const std::string& fn) {
  for (const auto& r : m.relations)
    if (r.id == fn && !r.series.empty()) return r.series;
  throw Error(ErrorKind::DanglingReference, fn + ": no series");
}

// Every root-of-unity exponent is an integer at all index pairs.
inline Report exponent_integrality(const Model& m, unsigned n) {
  Report rep;
  for (const auto& r : m.relations) {
    if (!r.is_value()) continue;
    const SymValue v = to_sym(r.value);
    bool has_roots = false;
    for (const auto& [k, mc] : v.terms()) has_roots |= !mc.first.roots.empty();
    if (!has_roots) continue;
    const ClassFamily* cf = m.classfam(r.cls);
    if (!cf || cf->family.empty()) throw Error(ErrorKind::DanglingReference, r.id + ": class without a family");
    const auto is = index_reps(m, cf->family, n), ks = index_reps(m, series_of(m, r.fn), n);
    uint64_t bad = 0, total = 0;
    for (const auto& i : is)
      for (const auto& k : ks)
        for (const auto& [key, mc] : v.terms())
          for (const auto& [base, x] : mc.first.roots) {
            ++total;
            SqrtTwoRat e = x.eval(n, i, k);
            if (!e.is_rational() || e.a.get_den() != 1) ++bad;
          }
    Record rec = make_record("relations.exponents", r.id, n, "0", std::to_string(bad));
    rec.note = std::to_string(total) + " exponents";
    rep.add(rec);
  }
  return rep;
}

struct NormTerm {
  std::string cls;
  long double contribution = 0;
};

// (f, f) = sum over classes of |f|^2 / |C|, with the family index running over
// its class representatives.
inline long double f_norm(const Model& m, unsigned n, const std::string& fn, const mpz_class& k,
                          std::vector<NormTerm>* terms = nullptr, bool flip = false) {
  long double total = 0;
  for (const auto* r : values_of(m, fn)) {
    const ClassFamily* cf = m.classfam(r->cls);
    if (!cf) throw Error(ErrorKind::DanglingReference, r->id + ": unknown class " + r->cls);
    SymValue v = to_sym(r->value);
    if (flip) v = -v;
    const long double cent = static_cast<long double>(eval_expr(cf->centralizer_order, n).to_double());
    std::vector<mpz_class> is = cf->family.empty() ? std::vector<mpz_class>{0} : index_reps(m, cf->family, n);
    long double part = 0;
    for (const auto& i : is) part += std::norm(evaluate(v, n, i, k)) / cent;
    if (terms) terms->push_back({r->cls, part});
    total += part;
  }
  return total;
}

inline Report f_norm_check(const Model& m, unsigned n, const std::string& fn, long double tol = 1e-9L) {
  Report rep;
  for (const auto& k : index_reps(m, series_of(m, fn), n)) {
    Stopwatch sw;
    const long double v = f_norm(m, n, fn, k);
    const long double flipped = f_norm(m, n, fn, k, nullptr, true);
    Record r;
    r.check = "norm";
    r.subject = fn;
    r.n = n;
    r.key = "k";
    r.key_value = k.get_si();
    r.expected = "2";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lf", v);
    r.actual = buf;
    r.status = std::fabs(v - 2) <= tol && std::fabs(flipped - 2) <= tol ? Status::Pass : Status::Fail;
    r.note = "tolerance 1e-9; the sign-swapped table gives the same norm";
    r.millis = sw.millis();
    rep.add(r);
  }
  return rep;
}

inline const LedgerEntry* ledger_entry(const Model& m, const std::string& set, const DefectLedger** where = nullptr) {
  for (const auto& l : m.ledgers)
    for (const auto& e : l.entries)
      if (e.set == set) {
        if (where) *where = &l;
        return &e;
      }
  return nullptr;
}

inline Report degree_identity_check(const Model& m, unsigned n_max = 4) {
  Report rep;
  for (const auto& r : m.relations) {
    if (r.is_value() || r.is_diff() || r.series.empty() || r.id.rfind("chi", 0) != 0) continue;
    const Relation* deg = value_of(m, r.id, "c_1_0");
    if (!deg) {
      Record rec = make_record("degrees.listed", r.id, 0, "listed", "missing");
      rep.add(rec);
      continue;
    }
    const SymValue v = to_sym(deg->value);
    if (!v.is_polynomial()) {
      rep.add(make_record("degrees.polynomial", r.id, 0, "polynomial in q", v.str()));
      continue;
    }
    const QPoly d = v.polynomial();
    if (!r.degree_of.empty()) {
      const DefectLedger* led = nullptr;
      const LedgerEntry* e = ledger_entry(m, r.degree_of, &led);
      if (!e) throw Error(ErrorKind::DanglingReference, r.id + ": no ledger entry for " + r.degree_of);
      rep.add(make_record("degrees.symbolic", r.id, 0, to_qpoly(e->degree).str(), d.str(), "against " + r.degree_of));
      for (unsigned n = 1; n <= n_max; ++n)
        rep.add(make_record("degrees.defect", r.id, n, std::to_string(as_integer(led->defect_expr ? eval_expr(led->defect_expr, n) : SqrtTwoRat(0)).get_si()),
                            std::to_string(defect_of(d, n)), "ledger " + led->id));
    }
    if (r.odd_degree)
      for (unsigned n = 1; n <= n_max; ++n) {
        const mpz_class x = as_integer(d.eval(n));
        Record rec = make_record("degrees.odd", r.id, n, "odd", mpz_odd_p(x.get_mpz_t()) ? "odd" : "even");
        rec.note = "defect " + std::to_string(defect_of(d, n));
        rep.add(rec);
      }
  }
  return rep;
}

// Both families of semisimple classes number q^4 in total.
inline Report semisimple_totals(const Model& m, unsigned n_max = 4) {
  Report rep;
  for (const char* prefix : {"h_", "g_"})
    for (unsigned n = 1; n <= n_max; ++n) {
      mpz_class sum = 0;
      size_t count = 0;
      for (const auto& p : m.paramsets)
        if (p.id.rfind(prefix, 0) == 0) sum += card_value(p, n), ++count;
      Record r = make_record("classes.semisimple", std::string(prefix) + "*", n, as_integer(pow(q_value(n), 4)).get_str(),
                             sum.get_str());
      r.note = std::to_string(count) + " families";
      rep.add(r);
    }
  return rep;
}

// Formula-only sets whose counts are borrowed from another family must agree
// with it as polynomials.
inline Report borrowed_counts(const Model& m) {
  Report rep;
  for (const auto& p : m.paramsets) {
    const std::string tag = "dual class family ";
    auto pos = p.note.find(tag);
    if (pos == std::string::npos) continue;
    const std::string other = p.note.substr(pos + tag.size());
    const ParamSetSpec* o = m.paramset(other);
    if (!o) throw Error(ErrorKind::DanglingReference, p.id + ": note names unknown set " + other);
    Record r = make_record("classes.borrowed", p.id, 0, to_qpoly(o->card_formula).str(), to_qpoly(p.card_formula).str());
    r.note = p.note;
    rep.add(r);
  }
  return rep;
}

// k(G) from the class list against the characters of the defect ledgers; the
// Steinberg character is the only one of defect zero.
inline Record character_count(const Model& m, unsigned n) {
  mpz_class classes = 0, chars = 1;
  for (const auto& c : m.classfams) classes += family_multiplicity(m, c, n);
  for (const auto& [a, b] : defect_values()) {
    const DefectLedger* led = ledger_for(m, a, b);
    if (led) chars += k_fixed_ledger(m, *led, Group::G, 1, n, Mode::Formula, nullptr).numeric();
  }
  return make_record("classes.count", "k(G)", n, classes.get_str(), chars.get_str(),
                     "classes vs ledger characters plus the Steinberg character");
}

inline Report verify_classes(const Model& m, unsigned n_max = 3) {
  Report rep;
  for (unsigned n = 1; n <= n_max; ++n) {
    rep.append(class_equation(m, n));
    rep.add(character_count(m, n));
  }
  rep.append(semisimple_totals(m));
  rep.append(borrowed_counts(m));
  return rep;
}

inline Report verify_relations(const Model& m, unsigned n_max = 2) {
  Report rep = relations_check(m);
  for (unsigned n = 1; n <= n_max; ++n) rep.append(exponent_integrality(m, n));
  for (unsigned n = 1; n <= n_max; ++n)
    for (const char* fn : {"f8", "f10"}) rep.append(f_norm_check(m, n, fn));
  rep.append(degree_identity_check(m));
  return rep;
}

}  // namespace dc
