#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "expr.hpp"
#include "paramsets.hpp"
#include "report.hpp"
#include "tabledsl.hpp"

namespace dc {

// ---------------------------------------------------------------- small matrices

using Vec4 = std::array<long, 4>;
using Mat4 = std::array<long, 16>;  // row-major; vectors act from the left, v -> v*M

inline long& at(Mat4& m, int i, int j) { return m[4 * i + j]; }
inline long at(const Mat4& m, int i, int j) { return m[4 * i + j]; }

inline Mat4 identity4() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) at(m, i, i) = 1;
  return m;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const long x = at(a, i, k);
      if (x)
        for (int j = 0; j < 4; ++j) at(c, i, j) += x * at(b, k, j);
    }
  return c;
}

inline Vec4 operator*(const Vec4& v, const Mat4& m) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[j] += v[i] * at(m, i, j);
  return r;
}

inline Mat4 to_mat4(const IntMatrix& rows) {
  if (rows.size() != 4) throw Error(ErrorKind::SyntaxError, "expected a 4x4 matrix");
  Mat4 m{};
  for (int i = 0; i < 4; ++i) {
    if (rows[i].size() != 4) throw Error(ErrorKind::SyntaxError, "expected a 4x4 matrix");
    for (int j = 0; j < 4; ++j) at(m, i, j) = rows[i][j];
  }
  return m;
}

using BigMatrix = std::vector<std::vector<mpz_class>>;

// Fraction-free Gaussian elimination.
inline mpz_class det_bareiss(BigMatrix a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Invariant factors of a nonsingular square integer matrix.
inline std::vector<mpz_class> smith_invariants(BigMatrix a) {
  const size_t n = a.size();
  std::vector<mpz_class> d;
  for (size_t k = 0; k < n; ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      size_t pi = n, pj = n;
      for (size_t i = k; i < n; ++i)
        for (size_t j = k; j < n; ++j)
          if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
      if (pi == n) throw Error(ErrorKind::SingularMatrix, "zero invariant factor");
      std::swap(a[k], a[pi]);
      for (auto& row : a) std::swap(row[k], row[pj]);
      bool clean = true;
      for (size_t i = k + 1; i < n; ++i) {
        mpz_class qt;
        mpz_fdiv_q(qt.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
        for (size_t j = k; j < n; ++j) a[i][j] -= qt * a[k][j];
        clean &= a[i][k] == 0;
      }
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class qt;
        mpz_fdiv_q(qt.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
        for (size_t i = k; i < n; ++i) a[i][j] -= qt * a[i][k];
        clean &= a[k][j] == 0;
      }
      if (!clean) continue;
      // The pivot must divide the rest, otherwise fold an offending row in.
      size_t bad = n;
      for (size_t i = k + 1; i < n && bad == n; ++i)
        for (size_t j = k + 1; j < n; ++j)
          if (a[i][j] % a[k][k] != 0) { bad = i; break; }
      if (bad == n) break;
      for (size_t j = k; j < n; ++j) a[k][j] += a[bad][j];
    }
    d.push_back(abs(a[k][k]));
  }
  return d;
}

inline mpz_class cokernel_order(const BigMatrix& a) {
  mpz_class p = 1;
  for (const auto& x : smith_invariants(a)) p *= x;
  return p;
}

// ---------------------------------------------------------------- Weyl group

struct FClass {
  size_t rep;  // index into the elements
  size_t size;
  size_t centralizer;
};

class WeylGroup {
 public:
  static constexpr size_t kMaxOrder = 2000;

  explicit WeylGroup(const WeylData& data) {
    for (const auto& g : data.gens) gens_.push_back(to_mat4(g));
    m0_ = to_mat4(data.m0);
    std::vector<Mat4> frontier{identity4()};
    std::set<Mat4> seen{identity4()};
    while (!frontier.empty()) {
      std::vector<Mat4> next;
      for (const auto& a : frontier)
        for (const auto& s : gens_) {
          Mat4 b = a * s;
          if (seen.insert(b).second) {
            if (seen.size() > kMaxOrder) throw Error(ErrorKind::ClosureOverflow, "more than 2000 elements");
            next.push_back(b);
          }
        }
      frontier.swap(next);
    }
    elems_.assign(seen.begin(), seen.end());
  }

  size_t size() const { return elems_.size(); }
  const std::vector<Mat4>& elements() const { return elems_; }
  const std::vector<Mat4>& generators() const { return gens_; }
  const Mat4& m0() const { return m0_; }

  std::optional<size_t> index(const Mat4& m) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), m);
    if (it == elems_.end() || *it != m) return std::nullopt;
    return static_cast<size_t>(it - elems_.begin());
  }
  bool contains(const Mat4& m) const { return index(m).has_value(); }

  // Product of generators, left to right.
  Mat4 word(const std::vector<int>& w) const {
    Mat4 m = identity4();
    for (int r : w) {
      if (r < 1 || r > static_cast<int>(gens_.size())) throw Error(ErrorKind::SyntaxError, "bad generator index");
      m = m * gens_[r - 1];
    }
    return m;
  }

  static Mat4 inverse(const Mat4& w) {
    Mat4 p = w;
    for (int i = 0; i < 64; ++i) {
      Mat4 nxt = p * w;
      if (nxt == identity4()) return p;
      p = nxt;
    }
    throw Error(ErrorKind::ClosureOverflow, "element of infinite order");
  }

  // F0 w F0^-1 with F0 = m0/sqrt2, i.e. m0^-1 w m0 since m0^2 = 2.
  Mat4 frobenius(const Mat4& w) const {
    Mat4 x = m0_ * w * m0_;
    for (auto& v : x) {
      if (v % 2) throw Error(ErrorKind::NotRationalInteger, "F0 does not normalize W");
      v /= 2;
    }
    return x;
  }

  // Orbits of w -> v^-1 w F(v).
  const std::vector<FClass>& f_classes() const {
    if (!classes_.empty()) return classes_;
    const size_t N = elems_.size();
    std::vector<size_t> inv(N);
    std::vector<Mat4> fv(N);
    for (size_t i = 0; i < N; ++i) {
      inv[i] = *index(inverse(elems_[i]));
      fv[i] = frobenius(elems_[i]);
    }
    class_of_.assign(N, SIZE_MAX);
    for (size_t w = 0; w < N; ++w) {
      if (class_of_[w] != SIZE_MAX) continue;
      const size_t cid = classes_.size();
      size_t count = 0;
      for (size_t v = 0; v < N; ++v) {
        auto x = index(elems_[inv[v]] * elems_[w] * fv[v]);
        if (!x) throw Error(ErrorKind::ClosureOverflow, "F-conjugate outside W");
        if (class_of_[*x] == SIZE_MAX) {
          class_of_[*x] = cid;
          ++count;
        }
      }
      classes_.push_back({w, count, N / count});
    }
    return classes_;
  }
  size_t f_class_of(const Mat4& w) const {
    f_classes();
    return class_of_[*index(w)];
  }

 private:
  std::vector<Mat4> gens_;
  Mat4 m0_{};
  std::vector<Mat4> elems_;
  mutable std::vector<FClass> classes_;
  mutable std::vector<size_t> class_of_;
};

inline std::vector<FClass> f_conjugacy_classes(const WeylGroup& w) { return w.f_classes(); }

// ---------------------------------------------------------------- tori

// The Frobenius for the class of w acts on X as th*m0*w (or with w^-1 under
// the inverse convention).
inline BigMatrix frobenius_minus_identity(const Mat4& w, const Mat4& m0, unsigned n) {
  const Mat4 p = m0 * w;
  const mpz_class th = mpz_class(1) << n;
  BigMatrix a(4, std::vector<mpz_class>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = th * at(p, i, j) - (i == j ? 1 : 0);
  return a;
}

inline mpz_class torus_order(const Mat4& w, const Mat4& m0, unsigned n) {
  return abs(det_bareiss(frobenius_minus_identity(w, m0, n)));
}

inline mpz_class torus_fixed_count(const Mat4& w, const Mat4& m0, unsigned n) {
  BigMatrix a = frobenius_minus_identity(w, m0, n);
  if (det_bareiss(a) == 0) throw Error(ErrorKind::SingularMatrix, "th*m0*w - 1 is singular");
  return cokernel_order(a);
}

enum class Orientation { Direct, Inverse };

inline Mat4 oriented(const Mat4& w, Orientation o) { return o == Orientation::Direct ? w : WeylGroup::inverse(w); }

// Pinned by the class whose torus order separates p8b from p8a: the first class
// whose listed order contains p8b but not p8a.
inline Orientation choose_orientation(const WeylGroup& W, const Model& m) {
  for (const auto& c : m.weylclasses) {
    if (!(uses_symbol(c.torus, "p8b") && !uses_symbol(c.torus, "p8a"))) continue;
    const Mat4 w = W.word(c.word);
    const mpz_class want = eval_int(c.torus, 1);
    if (torus_order(w, W.m0(), 1) == want) return Orientation::Direct;
    if (torus_order(WeylGroup::inverse(w), W.m0(), 1) == want) return Orientation::Inverse;
    break;
  }
  return Orientation::Direct;
}

// Points of X (x) Q/Z written with one common odd denominator.
struct DualTorusResult {
  bool all_fixed = true;
  uint64_t points = 0;
  uint64_t distinct = 0;
  uint64_t denominator = 1;
};

inline mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Every listed s(k,l) must be fixed by v -> v*(w*th*m0) modulo 1, and the
// listed points must be pairwise distinct.
inline DualTorusResult dual_torus_check(const WeylClass& c, const Mat4& w, const Mat4& m0, unsigned n) {
  if (c.dual.size() != 4) throw Error(ErrorKind::SyntaxError, c.id + ": dual needs four coordinates");
  Env env;
  env.n = n;
  const std::vector<std::string> vars = c.ranges.size() == 2 ? std::vector<std::string>{"k", "l"}
                                                             : std::vector<std::string>{"k"};
  std::vector<LinForm> forms;
  mpz_class L = 1;
  for (const auto& e : c.dual) {
    forms.push_back(linearize(e, vars, env));
    for (const auto& x : forms.back().coef) {
      if (!x.is_rational()) throw Error(ErrorKind::NotRationalInteger, c.id + ": irrational dual coordinate");
      L = lcm_z(L, x.a.get_den());
    }
    L = lcm_z(L, forms.back().c.a.get_den());
  }
  DualTorusResult res;
  if (!L.fits_ulong_p()) throw Error(ErrorKind::BudgetExceeded, c.id + ": denominator too large");
  const uint64_t D = L.get_ui();
  res.denominator = D;
  std::vector<std::vector<uint64_t>> coef(4);
  std::vector<uint64_t> cst(4);
  for (int i = 0; i < 4; ++i) {
    for (const auto& x : forms[i].coef) coef[i].push_back(reduce_mod(SqrtTwoRat(x.a * L, 0), D));
    cst[i] = reduce_mod(SqrtTwoRat(forms[i].c.a * L, 0), D);
  }
  std::vector<uint64_t> R;
  for (const auto& r : c.ranges) R.push_back(eval_int(r, env).get_ui());
  const mpz_class th = mpz_class(1) << n;
  Mat4 T = w * m0;
  std::vector<std::vector<uint64_t>> Tm(4, std::vector<uint64_t>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mpz_class v = th * at(T, i, j);
      v %= static_cast<unsigned long>(D);
      if (v < 0) v += static_cast<unsigned long>(D);
      Tm[i][j] = v.get_ui();
    }
  const uint64_t kmax = R[0], lmax = R.size() == 2 ? R[1] : 1;
  std::vector<std::array<uint64_t, 4>> pts;
  pts.reserve(kmax * lmax);
  for (uint64_t k = 0; k < kmax; ++k)
    for (uint64_t l = 0; l < lmax; ++l) {
      std::array<uint64_t, 4> v{};
      for (int i = 0; i < 4; ++i) {
        unsigned __int128 s = cst[i];
        s += static_cast<unsigned __int128>(coef[i][0]) * k;
        if (coef[i].size() == 2) s += static_cast<unsigned __int128>(coef[i][1]) * l;
        v[i] = static_cast<uint64_t>(s % D);
      }
      for (int j = 0; j < 4; ++j) {
        unsigned __int128 s = 0;
        for (int i = 0; i < 4; ++i) s += static_cast<unsigned __int128>(v[i]) * Tm[i][j];
        if (static_cast<uint64_t>(s % D) != v[j]) res.all_fixed = false;
      }
      pts.push_back(v);
    }
  res.points = pts.size();
  std::sort(pts.begin(), pts.end());
  res.distinct = static_cast<uint64_t>(std::unique(pts.begin(), pts.end()) - pts.begin());
  return res;
}

// The pairing theta(k,l)(t(a,b)) is bilinear; it is well defined when moving
// any index by its range changes it by an integer.  Returns the number of
// distinct characters (k,l) -> coefficients of (a,b) mod 1, or nullopt when
// the pairing is not well defined.
inline std::optional<uint64_t> pairing_check(const WeylClass& c, unsigned n, std::string* why = nullptr) {
  Env env;
  env.n = n;
  const size_t r = c.ranges.size();
  std::vector<mpz_class> R;
  for (const auto& e : c.ranges) R.push_back(eval_int(e, env));
  const char* left[2] = {"k", "l"};
  const char* right[2] = {"a", "b"};
  auto value = [&](const std::vector<long>& kl, const std::vector<long>& ab) {
    Env e = env;
    for (const char* s : {"k", "l", "a", "b"}) e.vars[s] = 0;
    for (size_t i = 0; i < r; ++i) {
      e.vars[left[i]] = kl[i];
      e.vars[right[i]] = ab[i];
    }
    SqrtTwoRat v = eval_expr(c.pairing, e);
    if (!v.is_rational()) throw Error(ErrorKind::NotRationalInteger, c.id + ": irrational pairing");
    return v.a;
  };
  std::vector<std::vector<mpq_class>> B(r, std::vector<mpq_class>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      std::vector<long> kl(r, 0), ab(r, 0);
      kl[i] = 1;
      ab[j] = 1;
      B[i][j] = value(kl, ab);
    }
  // Bilinearity at a few points.
  for (long s = 1; s <= 3; ++s) {
    std::vector<long> kl(r), ab(r);
    for (size_t i = 0; i < r; ++i) {
      kl[i] = s * 7 + 3 * static_cast<long>(i);
      ab[i] = s * 5 + 11 * static_cast<long>(i);
    }
    mpq_class want = 0;
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) want += mpq_class(kl[i]) * ab[j] * B[i][j];
    if (value(kl, ab) != want) {
      if (why) *why = "pairing is not bilinear";
      return std::nullopt;
    }
  }
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      mpq_class a = B[i][j] * R[i], b = B[i][j] * R[j];
      if (a.get_den() != 1 || b.get_den() != 1) {
        if (why) *why = "pairing not constant on the index range";
        return std::nullopt;
      }
    }
  mpz_class den = 1;
  for (const auto& row : B)
    for (const auto& x : row) den = lcm_z(den, x.get_den());
  const uint64_t D = den.get_ui();
  std::vector<std::vector<uint64_t>> Bm(r, std::vector<uint64_t>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) Bm[i][j] = reduce_mod(SqrtTwoRat(B[i][j] * den, 0), D);
  std::vector<std::array<uint64_t, 2>> chars;
  const uint64_t kmax = R[0].get_ui(), lmax = r == 2 ? R[1].get_ui() : 1;
  for (uint64_t k = 0; k < kmax; ++k)
    for (uint64_t l = 0; l < lmax; ++l) {
      std::array<uint64_t, 2> v{};
      for (size_t j = 0; j < r; ++j) {
        unsigned __int128 s = static_cast<unsigned __int128>(Bm[0][j]) * k;
        if (r == 2) s += static_cast<unsigned __int128>(Bm[1][j]) * l;
        v[j] = static_cast<uint64_t>(s % D);
      }
      chars.push_back(v);
    }
  std::sort(chars.begin(), chars.end());
  return static_cast<uint64_t>(std::unique(chars.begin(), chars.end()) - chars.begin());
}

// ---------------------------------------------------------------- roots

// Simple roots in doubled epsilon coordinates: e2-e3, e3-e4, e4, (e1-e2-e3-e4)/2.
inline const std::array<Vec4, 4>& simple_roots_eps2() {
  static const std::array<Vec4, 4> s = {{{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}}};
  return s;
}

struct RootSystem {
  std::vector<Vec4> roots;     // simple-root coordinates, sorted
  std::vector<Vec4> positive;  // numbered: by height, then lexicographically descending

  bool contains(const Vec4& v) const { return std::binary_search(roots.begin(), roots.end(), v); }

  static Vec4 eps2(const Vec4& x) {
    Vec4 e{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e[j] += x[i] * simple_roots_eps2()[i][j];
    return e;
  }
  // Four times the standard inner product.
  static long ip4(const Vec4& a, const Vec4& b) {
    Vec4 x = eps2(a), y = eps2(b);
    long s = 0;
    for (int i = 0; i < 4; ++i) s += x[i] * y[i];
    return s;
  }
  static long height(const Vec4& v) { return v[0] + v[1] + v[2] + v[3]; }
  static bool is_positive(const Vec4& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
  }
};

inline RootSystem make_roots(const WeylGroup& W) {
  std::set<Vec4> s;
  for (const auto& w : W.elements())
    for (int i = 0; i < 4; ++i) {
      Vec4 e{};
      e[i] = 1;
      s.insert(e * w);
    }
  RootSystem rs;
  rs.roots.assign(s.begin(), s.end());
  for (const auto& r : rs.roots)
    if (RootSystem::is_positive(r)) rs.positive.push_back(r);
  std::sort(rs.positive.begin(), rs.positive.end(), [](const Vec4& a, const Vec4& b) {
    const long ha = RootSystem::height(a), hb = RootSystem::height(b);
    return ha != hb ? ha < hb : a > b;
  });
  return rs;
}

// Rational coefficients c with sum c_i rows_i = target, if any.
inline std::optional<std::vector<mpq_class>> solve_combination(const std::vector<Vec4>& rows, const Vec4& target) {
  const size_t r = rows.size();
  std::vector<std::vector<mpq_class>> a(4, std::vector<mpq_class>(r + 1));
  for (int i = 0; i < 4; ++i) {
    for (size_t j = 0; j < r; ++j) a[i][j] = rows[j][i];
    a[i][r] = target[i];
  }
  std::vector<int> pivcol;
  size_t row = 0;
  for (size_t col = 0; col < r && row < 4; ++col) {
    size_t p = row;
    while (p < 4 && a[p][col] == 0) ++p;
    if (p == 4) continue;
    std::swap(a[row], a[p]);
    for (size_t i = 0; i < 4; ++i) {
      if (i == row || a[i][col] == 0) continue;
      mpq_class f = a[i][col] / a[row][col];
      for (size_t j = col; j <= r; ++j) a[i][j] -= f * a[row][j];
    }
    pivcol.push_back(static_cast<int>(col));
    ++row;
  }
  for (size_t i = row; i < 4; ++i)
    if (a[i][r] != 0) return std::nullopt;
  std::vector<mpq_class> c(r, 0);
  for (size_t i = 0; i < pivcol.size(); ++i) c[pivcol[i]] = a[i][r] / a[i][pivcol[i]];
  return c;
}

inline size_t rank_of(const std::vector<Vec4>& rows) {
  std::vector<std::vector<mpq_class>> a;
  for (const auto& v : rows) a.push_back({v[0], v[1], v[2], v[3]});
  size_t rk = 0;
  for (int col = 0; col < 4 && rk < a.size(); ++col) {
    size_t p = rk;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[rk], a[p]);
    for (size_t i = rk + 1; i < a.size(); ++i) {
      mpq_class f = a[i][col] / a[rk][col];
      for (int j = col; j < 4; ++j) a[i][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return rk;
}

struct Subsystem {
  std::vector<Vec4> psi;   // Z Pi intersected with Phi
  std::vector<Vec4> base;  // simple system of psi for the ambient positive roots
  std::vector<std::vector<long>> cartan;
  std::string type;
  bool closed = true;
};

namespace detail {

inline std::string component_type(const std::vector<size_t>& nodes, const std::vector<std::vector<long>>& A,
                                  const std::vector<long>& len) {
  const size_t r = nodes.size();
  std::map<size_t, int> degree;
  int doubles = 0, triples = 0;
  size_t dbl_a = 0, dbl_b = 0;
  for (size_t x = 0; x < r; ++x)
    for (size_t y = x + 1; y < r; ++y) {
      const long m = A[nodes[x]][nodes[y]] * A[nodes[y]][nodes[x]];
      if (m == 0) continue;
      ++degree[x];
      ++degree[y];
      if (m == 2) ++doubles, dbl_a = x, dbl_b = y;
      if (m == 3) ++triples;
    }
  const std::string rs = std::to_string(r);
  if (triples) return "G2";
  if (doubles) {
    if (r == 2) return "B2";
    const bool ends = degree[dbl_a] == 1 || degree[dbl_b] == 1;
    if (!ends) return "F4";
    long longest = 0;
    for (size_t x : nodes) longest = std::max(longest, len[x]);
    int nlong = 0;
    for (size_t x : nodes) nlong += len[x] == longest;
    return (nlong == 1 ? "C" : "B") + rs;
  }
  for (const auto& [x, d] : degree)
    if (d == 3) return (r <= 5 ? "D" : "E") + rs;
  return "A" + rs;
}

}  // namespace detail

// Cartan type of the subsystem generated by pi (simple-root coordinates).
inline Subsystem subsystem_type(const std::vector<Vec4>& pi, const RootSystem& phi) {
  for (const auto& v : pi)
    if (!phi.contains(v)) throw Error(ErrorKind::NotLinearlyIndependent, "not a root");
  if (rank_of(pi) != pi.size()) throw Error(ErrorKind::NotLinearlyIndependent, "roots are dependent");
  Subsystem s;
  for (const auto& a : phi.roots) {
    auto c = solve_combination(pi, a);
    if (!c) continue;
    if (std::all_of(c->begin(), c->end(), [](const mpq_class& x) { return x.get_den() == 1; })) s.psi.push_back(a);
  }
  std::set<Vec4> in(s.psi.begin(), s.psi.end());
  for (const auto& a : s.psi)
    for (const auto& b : s.psi) {
      Vec4 c{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
      if (phi.contains(c) && !in.count(c)) s.closed = false;
    }
  std::vector<Vec4> pos;
  for (const auto& a : s.psi)
    if (RootSystem::is_positive(a)) pos.push_back(a);
  std::set<Vec4> posset(pos.begin(), pos.end());
  for (const auto& a : pos) {
    bool decomposable = false;
    for (const auto& b : pos) {
      Vec4 c{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
      if (posset.count(c)) { decomposable = true; break; }
    }
    if (!decomposable) s.base.push_back(a);
  }
  const size_t r = s.base.size();
  std::vector<long> len(r);
  for (size_t i = 0; i < r; ++i) len[i] = RootSystem::ip4(s.base[i], s.base[i]);
  s.cartan.assign(r, std::vector<long>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) s.cartan[i][j] = 2 * RootSystem::ip4(s.base[i], s.base[j]) / len[j];
  if (r == 0) {
    s.type = "A0";
    return s;
  }
  std::vector<int> comp(r, -1);
  int nc = 0;
  for (size_t i = 0; i < r; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<size_t> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      for (size_t y = 0; y < r; ++y)
        if (comp[y] < 0 && s.cartan[x][y] != 0) comp[y] = nc, stack.push_back(y);
    }
    ++nc;
  }
  std::vector<std::string> parts;
  for (int c = 0; c < nc; ++c) {
    std::vector<size_t> nodes;
    for (size_t i = 0; i < r; ++i)
      if (comp[i] == c) nodes.push_back(i);
    parts.push_back(detail::component_type(nodes, s.cartan, len));
  }
  std::sort(parts.begin(), parts.end());
  for (size_t i = 0; i < parts.size(); ++i) s.type += (i ? "x" : "") + parts[i];
  return s;
}

// Epsilon coordinates (as expressions) to simple-root coordinates.
inline Vec4 root_from_eps(const std::vector<ExprPtr>& eps) {
  if (eps.size() != 4) throw Error(ErrorKind::SyntaxError, "a root needs four coordinates");
  Vec4 e2{};
  for (int i = 0; i < 4; ++i) {
    SqrtTwoRat v = eval_expr(eps[i], 1) * SqrtTwoRat(2);
    e2[i] = as_integer(v).get_si();
  }
  std::vector<Vec4> rows(simple_roots_eps2().begin(), simple_roots_eps2().end());
  auto c = solve_combination(rows, e2);
  if (!c) throw Error(ErrorKind::NotLinearlyIndependent, "not in the root lattice");
  Vec4 x{};
  for (int i = 0; i < 4; ++i) {
    if ((*c)[i].get_den() != 1) throw Error(ErrorKind::NotLinearlyIndependent, "not in the root lattice");
    x[i] = (*c)[i].get_num().get_si();
  }
  return x;
}

// sigma(v) = v*w*m0 must send every root of psi to a positive multiple (1/2,
// 1 or 2) of a root of psi.
inline bool stable_under(const Subsystem& s, const Mat4& w, const Mat4& m0) {
  std::set<Vec4> in(s.psi.begin(), s.psi.end());
  const Mat4 T = w * m0;
  for (const auto& a : s.psi) {
    Vec4 img = a * T;
    Vec4 dbl{2 * img[0], 2 * img[1], 2 * img[2], 2 * img[3]};
    bool ok = in.count(img) || in.count(dbl);
    if (!ok && std::all_of(img.begin(), img.end(), [](long x) { return x % 2 == 0; })) {
      Vec4 half{img[0] / 2, img[1] / 2, img[2] / 2, img[3] / 2};
      ok = in.count(half);
    }
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------- report

inline std::string vec_str(const Vec4& v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "," +
         std::to_string(v[3]) + ")";
}

// Affix-free comparison of a twisted label such as "2B2" with a Cartan type.
inline std::string untwisted(const std::string& label) {
  return !label.empty() && std::isdigit(static_cast<unsigned char>(label[0])) ? label.substr(1) : label;
}

inline Report verify_weyl(const Model& m, unsigned n_max = 5, unsigned dual_n_max = 3, unsigned pairing_n_max = 2) {
  Report rep;
  if (m.weyl.empty()) throw Error(ErrorKind::Config, "no weyl block");
  const WeylGroup W(m.weyl.front());
  const Mat4& m0 = W.m0();
  const Mat4 two = [] {
    Mat4 x{};
    for (int i = 0; i < 4; ++i) at(x, i, i) = 2;
    return x;
  }();
  rep.add(make_record("weyl.m0", "m0^2", 0, "2I", m0 * m0 == two ? "2I" : "other"));
  const RootSystem phi = make_roots(W);
  for (size_t g = 0; g < W.generators().size(); ++g) {
    const Mat4& s = W.generators()[g];
    bool ok = s * s == identity4() && W.contains(W.frobenius(s));
    for (const auto& r : phi.roots) ok &= phi.contains(r * s);
    rep.add(make_record("weyl.gens", "w" + std::to_string(g + 1), 0, "involution preserving roots, F-stable",
                        ok ? "involution preserving roots, F-stable" : "no"));
  }
  rep.add(make_record("weyl.order", "W", 0, "1152", std::to_string(W.size())));
  const auto& classes = W.f_classes();
  rep.add(make_record("weyl.classes", "W", 0, std::to_string(m.weylclasses.size()), std::to_string(classes.size())));

  // Roots and their numbering.
  rep.add(make_record("weyl.roots", "Phi", 0, "48", std::to_string(phi.roots.size())));
  {
    bool simple_ok = true;
    for (int i = 0; i < 4; ++i) {
      Vec4 e{};
      e[i] = 1;
      simple_ok &= phi.positive[i] == e;
    }
    const auto& listed = m.weyl.front().positive;
    std::string got = listed.empty() ? "not listed" : "listed";
    bool match = !listed.empty() && listed.size() == phi.positive.size();
    for (size_t i = 0; match && i < listed.size(); ++i)
      match = listed[i].size() == 4 &&
              Vec4{listed[i][0], listed[i][1], listed[i][2], listed[i][3]} == phi.positive[i];
    Record r = make_record("weyl.numbering", "positive roots", 0, "24", std::to_string(phi.positive.size()));
    if (!simple_ok || !match) {
      r.status = Status::Fail;
      r.note = simple_ok ? "numbering differs from weyl.def" : "r1..r4 are not the simple roots";
    }
    rep.add(r);
  }

  const Orientation orient = choose_orientation(W, m);
  rep.add(make_record("weyl.convention", "orientation", 0, "direct",
                      orient == Orientation::Direct ? "direct" : "inverse",
                      "class words act on X as w; tori of th*m0*w"));

  std::set<size_t> landed;
  mpz_class class_sum = 0;
  for (const auto& c : m.weylclasses) {
    const Mat4 w = oriented(W.word(c.word), orient);
    const size_t cls = W.f_class_of(w);
    landed.insert(cls);
    const mpz_class cent = eval_int(c.centralizer, 1);
    class_sum += mpz_class(static_cast<unsigned long>(W.size())) / cent;
    rep.add(make_record("weyl.centralizer", c.id, 0, cent.get_str(), std::to_string(classes[cls].centralizer)));
    for (unsigned n = 1; n <= n_max; ++n) {
      Stopwatch sw;
      const mpz_class want = eval_int(c.torus, n);
      const mpz_class det = torus_order(w, m0, n), snf = torus_fixed_count(w, m0, n);
      Record r = make_record("weyl.torus", c.id, n, want.get_str(), det.get_str());
      r.note = "smith " + snf.get_str();
      if (snf != det) r.status = Status::Fail;
      r.millis = sw.millis();
      rep.add(r);
      if (!c.ranges.empty() && n <= dual_n_max) {
        mpz_class prod = 1;
        for (const auto& e : c.ranges) prod *= eval_int(e, n);
        rep.add(make_record("weyl.ranges", c.id, n, want.get_str(), prod.get_str()));
      }
      if (!c.dual.empty() && n <= dual_n_max) {
        Stopwatch sd;
        DualTorusResult d = dual_torus_check(c, w, m0, n);
        Record rd = make_record("weyl.dual", c.id, n, want.get_str(), std::to_string(d.distinct));
        rd.note = std::to_string(d.points) + " points, denominator " + std::to_string(d.denominator);
        if (!d.all_fixed) rd.status = Status::Fail, rd.note += ", not all fixed";
        if (d.denominator % 2 == 0) rd.status = Status::Fail, rd.note += ", even denominator";
        rd.millis = sd.millis();
        rep.add(rd);
      }
      if (c.pairing && n <= pairing_n_max) {
        std::string why;
        auto cnt = pairing_check(c, n, &why);
        Record rp = make_record("weyl.pairing", c.id, n, want.get_str(), cnt ? std::to_string(*cnt) : "-", why);
        rep.add(rp);
      }
    }
  }
  rep.add(make_record("weyl.distinct", "class words", 0, std::to_string(m.weylclasses.size()),
                      std::to_string(landed.size())));
  rep.add(make_record("weyl.class_sum", "sum |W|/|C|", 0, std::to_string(W.size()), class_sum.get_str()));

  // Semisimple class types.
  for (const auto& t : m.classtypes) {
    std::vector<Vec4> pi;
    for (const auto& r : t.roots) pi.push_back(root_from_eps(r));
    const Subsystem s = subsystem_type(pi, phi);
    const std::string label = untwisted(t.label);
    Record r = make_record("weyl.subsystem", t.id, 0, label, s.type);
    r.note = "label " + t.label + ", " + std::to_string(s.psi.size()) + " roots";
    if (!s.closed) r.status = Status::Fail, r.note += ", not closed";
    if (r.status == Status::Fail && s.closed) {
      // A twisted label may name one F-orbit of isomorphic components.
      std::string power = label;
      for (int k = 2; k <= 4 && power.size() < s.type.size(); ++k) {
        power += "x" + label;
        if (power == s.type) {
          r.status = Status::Skip;
          r.note += ", components permuted by F; recorded, not asserted";
        }
      }
    }
    rep.add(r);
    const Mat4 w = oriented(W.word(t.word), orient);
    rep.add(make_record("weyl.stable", t.id, 0, "stable", stable_under(s, w, m0) ? "stable" : "not stable"));
  }
  return rep;
}

}  // namespace dc
