#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "exactnum.hpp"

namespace dc {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

inline std::string where(const Token& t) {
  return "line " + std::to_string(t.line) + ", column " + std::to_string(t.col);
}

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t k) {
    for (size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) { adv(1); continue; }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      adv(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      adv(j - i);
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"')
        throw Error(ErrorKind::SyntaxError, "unterminated string at " + where(t));
      t.kind = Tok::String;
      t.text = src.substr(i + 1, j - i - 1);
      adv(j + 1 - i);
    } else {
      static const char* two[] = {"->", "!=", ".."};
      t.kind = Tok::Punct;
      bool matched = false;
      for (const char* p : two) {
        if (src.compare(i, 2, p) == 0) {
          t.text = p;
          adv(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string("+-*/^()[]{},:=").find(c) == std::string::npos)
          throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "' at " + where(t));
        t.text = std::string(1, c);
        adv(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek(size_t ahead = 0) const {
    size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_punct(const char* p, size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_ident(const char* w, size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return next().text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::SyntaxError, msg + ", got " + got + " at " + where(t));
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// ---------------------------------------------------------------- AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op { Num, Sym, Neg, Add, Sub, Mul, Div, Pow, Call };
  Op op = Op::Num;
  mpz_class num;
  std::string name;
  std::vector<ExprPtr> args;
};

inline ExprPtr make_num(const mpz_class& v) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Num;
  e->num = v;
  return e;
}
inline ExprPtr make_sym(const std::string& s) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Sym;
  e->name = s;
  return e;
}
inline ExprPtr make_op(Expr::Op op, std::vector<ExprPtr> args, std::string name = {}) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  e->name = std::move(name);
  return e;
}

inline bool is_builtin_symbol(const std::string& s) {
  static const std::set<std::string> base = {"q", "s2", "th", "n", "t"};
  QPoly dummy;
  return base.count(s) || named_poly(s, dummy);
}

// Symbols allowed beyond the builtins, e.g. index variables k, l, i and e4.
using SymbolSet = std::set<std::string>;

inline bool is_reserved_word(const std::string& s) { return s == "and" || s == "or" || s == "div"; }

// Pratt parser. Stops at the first token that cannot continue an expression,
// which is how field boundaries are found in the block grammar.
class ExprParser {
 public:
  ExprParser(TokenStream& ts, const SymbolSet& extra) : ts_(ts), extra_(extra) {}

  ExprPtr parse() { return parse_binary(0); }

 private:
  static int prec(const std::string& op) {
    if (op == "+" || op == "-") return 1;
    if (op == "*" || op == "/") return 2;
    if (op == "^") return 4;
    return -1;
  }

  ExprPtr parse_binary(int min_prec) {
    ExprPtr lhs = parse_unary();
    while (ts_.peek().kind == Tok::Punct) {
      const std::string op = ts_.peek().text;
      int p = prec(op);
      if (p < 0 || p < min_prec) break;
      ts_.next();
      ExprPtr rhs = parse_binary(op == "^" ? p : p + 1);
      Expr::Op o = op == "+" ? Expr::Op::Add : op == "-" ? Expr::Op::Sub : op == "*" ? Expr::Op::Mul
                 : op == "/" ? Expr::Op::Div : Expr::Op::Pow;
      lhs = make_op(o, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (ts_.is_punct("-")) {
      ts_.next();
      return make_op(Expr::Op::Neg, {parse_binary(3)});
    }
    if (ts_.is_punct("+")) {
      ts_.next();
      return parse_binary(3);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Number) return make_num(mpz_class(ts_.next().text));
    if (t.kind == Tok::Punct && t.text == "(") {
      ts_.next();
      ExprPtr e = parse_binary(0);
      ts_.expect_punct(")");
      return e;
    }
    if (t.kind == Tok::Ident && !is_reserved_word(t.text)) {
      Token id = ts_.next();
      if (ts_.is_punct("(")) {
        if (id.text != "root")
          throw Error(ErrorKind::UnknownSymbol, "unknown function '" + id.text + "' at " + where(id));
        ts_.next();
        std::vector<ExprPtr> args{parse_binary(0)};
        ts_.expect_punct(",");
        args.push_back(parse_binary(0));
        ts_.expect_punct(")");
        return make_op(Expr::Op::Call, std::move(args), "root");
      }
      if (!is_builtin_symbol(id.text) && !extra_.count(id.text))
        throw Error(ErrorKind::UnknownSymbol, "'" + id.text + "' at " + where(id));
      return make_sym(id.text);
    }
    ts_.fail("expected expression");
  }

  TokenStream& ts_;
  const SymbolSet& extra_;
};

inline ExprPtr parse_expr(const std::string& text, const SymbolSet& extra = {}) {
  TokenStream ts(tokenize(text));
  ExprPtr e = ExprParser(ts, extra).parse();
  if (!ts.at_end()) ts.fail("trailing input after expression");
  return e;
}

// ---------------------------------------------------------------- printing

inline int expr_prec(const Expr& e) {
  switch (e.op) {
    case Expr::Op::Add: case Expr::Op::Sub: return 1;
    case Expr::Op::Mul: case Expr::Op::Div: return 2;
    case Expr::Op::Neg: return 3;
    case Expr::Op::Pow: return 4;
    default: return 5;
  }
}

inline std::string to_string(const ExprPtr& e) {
  auto wrap = [](const ExprPtr& c, bool need) {
    std::string s = to_string(c);
    return need ? "(" + s + ")" : s;
  };
  const int p = expr_prec(*e);
  switch (e->op) {
    case Expr::Op::Num: return e->num.get_str();
    case Expr::Op::Sym: return e->name;
    case Expr::Op::Neg: return "-" + wrap(e->args[0], expr_prec(*e->args[0]) <= p);
    case Expr::Op::Pow:
      return wrap(e->args[0], expr_prec(*e->args[0]) <= p) + "^" + wrap(e->args[1], expr_prec(*e->args[1]) < p);
    case Expr::Op::Call: return e->name + "(" + to_string(e->args[0]) + ", " + to_string(e->args[1]) + ")";
    default: {
      const char* op = e->op == Expr::Op::Add ? "+" : e->op == Expr::Op::Sub ? "-" : e->op == Expr::Op::Mul ? "*" : "/";
      return wrap(e->args[0], expr_prec(*e->args[0]) < p) + op + wrap(e->args[1], expr_prec(*e->args[1]) <= p);
    }
  }
}

inline bool uses_symbol(const ExprPtr& e, const std::string& s) {
  if (e->op == Expr::Op::Sym) return e->name == s;
  for (const auto& a : e->args)
    if (uses_symbol(a, s)) return true;
  return false;
}

// ---------------------------------------------------------------- evaluation

struct Env {
  unsigned n = 1;
  std::optional<long> t;
  std::map<std::string, mpz_class> vars;
};

inline SqrtTwoRat eval_expr(const ExprPtr& e, const Env& env) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Num: return SqrtTwoRat(e->num);
    case Op::Sym: {
      const std::string& s = e->name;
      mpz_class th = mpz_class(1) << env.n;
      if (s == "th") return SqrtTwoRat(th);
      if (s == "q") return q_value(env.n);
      if (s == "s2") return SqrtTwoRat::sqrt2();
      if (s == "n") return SqrtTwoRat(static_cast<long>(env.n));
      if (s == "t") {
        if (!env.t) throw Error(ErrorKind::UnboundSymbol, "t");
        return SqrtTwoRat(*env.t);
      }
      QPoly p;
      if (named_poly(s, p)) return p.eval(env.n);
      auto it = env.vars.find(s);
      if (it == env.vars.end()) throw Error(ErrorKind::UnboundSymbol, s);
      return SqrtTwoRat(it->second);
    }
    case Op::Neg: return -eval_expr(e->args[0], env);
    case Op::Add: return eval_expr(e->args[0], env) + eval_expr(e->args[1], env);
    case Op::Sub: return eval_expr(e->args[0], env) - eval_expr(e->args[1], env);
    case Op::Mul: return eval_expr(e->args[0], env) * eval_expr(e->args[1], env);
    case Op::Div: return eval_expr(e->args[0], env) / eval_expr(e->args[1], env);
    case Op::Pow: {
      mpz_class ex = as_integer(eval_expr(e->args[1], env));
      if (!ex.fits_slong_p() || abs(ex) > 100000) throw Error(ErrorKind::NotRationalInteger, "exponent out of range");
      return pow(eval_expr(e->args[0], env), ex.get_si());
    }
    case Op::Call: throw Error(ErrorKind::UnboundSymbol, "root() has no exact value");
  }
  return {};
}

inline SqrtTwoRat eval_expr(const ExprPtr& e, unsigned n, std::optional<long> t = std::nullopt) {
  Env env;
  env.n = n;
  env.t = t;
  return eval_expr(e, env);
}

inline mpz_class eval_int(const ExprPtr& e, const Env& env) { return as_integer(eval_expr(e, env)); }
inline mpz_class eval_int(const ExprPtr& e, unsigned n) { Env env; env.n = n; return eval_int(e, env); }

// Exact expansion as a polynomial in q. Only q, s2, th and the named
// polynomials may occur; exponents must be constant non-negative integers.
inline QPoly to_qpoly(const ExprPtr& e) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Num: return QPoly(SqrtTwoRat(e->num));
    case Op::Sym: {
      const std::string& s = e->name;
      if (s == "q") return QPoly::q();
      if (s == "s2") return QPoly(SqrtTwoRat::sqrt2());
      if (s == "th") return QPoly::q().scaled(SqrtTwoRat(mpq_class(0), mpq_class(1, 2)));
      QPoly p;
      if (named_poly(s, p)) return p;
      throw Error(ErrorKind::UnboundSymbol, "'" + s + "' is not a polynomial in q");
    }
    case Op::Neg: return -to_qpoly(e->args[0]);
    case Op::Add: return to_qpoly(e->args[0]) + to_qpoly(e->args[1]);
    case Op::Sub: return to_qpoly(e->args[0]) - to_qpoly(e->args[1]);
    case Op::Mul: return to_qpoly(e->args[0]) * to_qpoly(e->args[1]);
    case Op::Div: {
      QPoly d = to_qpoly(e->args[1]);
      if (!d.is_constant() || d.is_zero()) throw Error(ErrorKind::UnboundSymbol, "division by a non-constant");
      return to_qpoly(e->args[0]).scaled(d.constant().inverse());
    }
    case Op::Pow: {
      QPoly ex = to_qpoly(e->args[1]);
      if (!ex.is_constant()) throw Error(ErrorKind::UnboundSymbol, "non-constant exponent");
      mpz_class k = as_integer(ex.constant());
      if (k < 0 || k > 1000) throw Error(ErrorKind::UnboundSymbol, "exponent out of range");
      return pow(to_qpoly(e->args[0]), static_cast<unsigned>(k.get_ui()));
    }
    case Op::Call: throw Error(ErrorKind::UnboundSymbol, "root() in polynomial context");
  }
  return {};
}

}  // namespace dc
