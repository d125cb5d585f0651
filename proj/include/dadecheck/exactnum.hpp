#pragma once

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <string>

#include "error.hpp"

namespace dc {

// a + b*sqrt(2) with arbitrary-precision rational a, b.
struct SqrtTwoRat {
  mpq_class a{0};
  mpq_class b{0};

  SqrtTwoRat() = default;
  SqrtTwoRat(long v) : a(v) {}
  SqrtTwoRat(const mpz_class& v) : a(v) {}
  SqrtTwoRat(const mpq_class& x, const mpq_class& y) : a(x), b(y) { a.canonicalize(); b.canonicalize(); }

  static SqrtTwoRat sqrt2() { return {mpq_class(0), mpq_class(1)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  SqrtTwoRat operator-() const { return {-a, -b}; }
  SqrtTwoRat& operator+=(const SqrtTwoRat& o) { a += o.a; b += o.b; return *this; }
  SqrtTwoRat& operator-=(const SqrtTwoRat& o) { a -= o.a; b -= o.b; return *this; }
  SqrtTwoRat& operator*=(const SqrtTwoRat& o) {
    mpq_class na = a * o.a + 2 * b * o.b;
    mpq_class nb = a * o.b + b * o.a;
    a = na;
    b = nb;
    return *this;
  }
  SqrtTwoRat inverse() const {
    mpq_class norm = a * a - 2 * b * b;
    if (norm == 0) throw Error(ErrorKind::ZeroInput, "division by zero in Q(sqrt2)");
    return {a / norm, -b / norm};
  }
  SqrtTwoRat& operator/=(const SqrtTwoRat& o) { return *this *= o.inverse(); }

  friend SqrtTwoRat operator+(SqrtTwoRat x, const SqrtTwoRat& y) { return x += y; }
  friend SqrtTwoRat operator-(SqrtTwoRat x, const SqrtTwoRat& y) { return x -= y; }
  friend SqrtTwoRat operator*(SqrtTwoRat x, const SqrtTwoRat& y) { return x *= y; }
  friend SqrtTwoRat operator/(SqrtTwoRat x, const SqrtTwoRat& y) { return x /= y; }
  friend bool operator==(const SqrtTwoRat& x, const SqrtTwoRat& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const SqrtTwoRat& x, const SqrtTwoRat& y) { return !(x == y); }

  double to_double() const { return a.get_d() + b.get_d() * std::sqrt(2.0); }

  std::string str() const {
    if (b == 0) return a.get_str();
    if (a == 0) return b.get_str() + "*s2";
    return a.get_str() + (b > 0 ? "+" : "") + b.get_str() + "*s2";
  }
};

// Integer power, negative exponents invert.
inline SqrtTwoRat pow(const SqrtTwoRat& base, long e) {
  if (e < 0) return pow(base.inverse(), -e);
  SqrtTwoRat r(1), x = base;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline mpz_class as_integer(const SqrtTwoRat& v) {
  if (v.b != 0 || v.a.get_den() != 1)
    throw Error(ErrorKind::NotRationalInteger, v.str());
  return v.a.get_num();
}

inline unsigned long val2(const mpz_class& x) {
  if (x == 0) throw Error(ErrorKind::ZeroInput, "val2(0)");
  return mpz_scan1(x.get_mpz_t(), 0);
}

// q = 2^n * sqrt(2), so q^2 = 2^(2n+1).
inline SqrtTwoRat q_value(unsigned n) {
  mpz_class th = mpz_class(1) << n;
  return {mpq_class(0), mpq_class(th)};
}

// Laurent polynomial in q with coefficients in Q(sqrt2). A factor like 1/sqrt2
// is carried by the coefficient (1/sqrt2 = sqrt2/2).
class QPoly {
 public:
  QPoly() = default;
  QPoly(const SqrtTwoRat& c) { if (!c.is_zero()) terms_[0] = c; }
  QPoly(long c) : QPoly(SqrtTwoRat(c)) {}

  static QPoly q() { QPoly p; p.terms_[1] = SqrtTwoRat(1); return p; }
  static QPoly monomial(int power, const SqrtTwoRat& c) {
    QPoly p;
    if (!c.is_zero()) p.terms_[power] = c;
    return p;
  }

  const std::map<int, SqrtTwoRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  SqrtTwoRat constant() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? SqrtTwoRat() : it->second;
  }

  QPoly& operator+=(const QPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  QPoly operator-() const {
    QPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend QPoly operator+(QPoly x, const QPoly& y) { return x += y; }
  friend QPoly operator-(QPoly x, const QPoly& y) { return x -= y; }
  friend QPoly operator*(const QPoly& x, const QPoly& y) {
    QPoly r;
    for (const auto& [e1, c1] : x.terms_)
      for (const auto& [e2, c2] : y.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  friend bool operator==(const QPoly& x, const QPoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const QPoly& x, const QPoly& y) { return !(x == y); }

  QPoly scaled(const SqrtTwoRat& s) const { return *this * QPoly(s); }

  SqrtTwoRat eval(unsigned n) const {
    SqrtTwoRat q = q_value(n), r;
    for (const auto& [e, c] : terms_) r += c * pow(q, e);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + it->second.str() + ")";
      if (it->first != 0) s += "*q^" + std::to_string(it->first);
    }
    return s;
  }

 private:
  void add_term(int e, const SqrtTwoRat& c) {
    auto& slot = terms_[e];
    slot += c;
    if (slot.is_zero()) terms_.erase(e);
  }
  std::map<int, SqrtTwoRat> terms_;
};

inline QPoly pow(const QPoly& base, unsigned e) {
  QPoly r(1), x = base;
  while (e > 0) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

inline SqrtTwoRat eval_poly(const QPoly& p, unsigned n) { return p.eval(n); }

// Built-in polynomial aliases. p_i is the i-th cyclotomic polynomial in q;
// p8a, p8b, p24a, p24b are the Q(sqrt2)-factors of p8 and p24.
inline bool named_poly(const std::string& name, QPoly& out) {
  const QPoly q = QPoly::q();
  const QPoly s2(SqrtTwoRat::sqrt2());
  auto Q = [&](unsigned e) { return pow(q, e); };
  if (name == "p1") out = q - 1;
  else if (name == "p2") out = q + 1;
  else if (name == "p3") out = Q(2) + q + 1;
  else if (name == "p4") out = Q(2) + 1;
  else if (name == "p6") out = Q(2) - q + 1;
  else if (name == "p8") out = Q(4) + 1;
  else if (name == "p12") out = Q(4) - Q(2) + 1;
  else if (name == "p24") out = Q(8) - Q(4) + 1;
  else if (name == "p8a") out = Q(2) + s2 * q + 1;
  else if (name == "p8b") out = Q(2) - s2 * q + 1;
  else if (name == "p24a") out = Q(4) + s2 * Q(3) + Q(2) + s2 * q + 1;
  else if (name == "p24b") out = Q(4) - s2 * Q(3) + Q(2) - s2 * q + 1;
  else return false;
  return true;
}

}  // namespace dc
