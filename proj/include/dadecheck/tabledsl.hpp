#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "expr.hpp"

namespace dc {

// ---------------------------------------------------------------- model types

struct IndexMap {
  std::vector<std::string> from;
  std::vector<ExprPtr> to;
};

struct Atom {
  enum class Rel { Eq, Ne, Div };
  ExprPtr lhs;
  Rel rel = Rel::Eq;
  ExprPtr rhs;
};

// Disjunction of conjunctions; "and" binds tighter than "or".
struct Predicate {
  std::vector<std::vector<Atom>> terms;
  bool empty() const { return terms.empty(); }
};

enum class ActionKind { Doubling, Identity, FormulaOnly };

struct ParamSetSpec {
  std::string id;
  std::vector<std::string> vars;
  std::vector<ExprPtr> moduli;
  Predicate exclusion;
  std::vector<IndexMap> equiv_gens;
  ExprPtr card_formula;
  ActionKind action_kind = ActionKind::Doubling;
  std::string hset;  // alternative encoding carrying the automorphism action
  std::string note;
  int line = 0;
};

struct FixRow {
  std::string id;
  std::vector<std::string> member_sets;
  ExprPtr formula;
  int line = 0;
};

struct PairSpec {
  std::string id;
  std::vector<std::string> left, right;
  int line = 0;
};

enum class Group { G, B, Pa, Pb };

inline const char* group_name(Group g) {
  switch (g) {
    case Group::G: return "G";
    case Group::B: return "B";
    case Group::Pa: return "Pa";
    case Group::Pb: return "Pb";
  }
  return "?";
}

inline bool left_side(Group g) { return g == Group::G || g == Group::B; }

struct LedgerEntry {
  Group group = Group::G;
  std::string set;
  ExprPtr degree;
  std::string tag;  // fixrow id or pair id
  bool paired = false;
};

struct DefectLedger {
  std::string id;
  ExprPtr defect_expr;
  std::vector<LedgerEntry> entries;
  int line = 0;
};

using IntMatrix = std::vector<std::vector<long>>;

struct WeylData {
  std::string id;
  std::vector<IntMatrix> gens;
  IntMatrix m0;
  IntMatrix positive;  // numbered positive roots r1, r2, ... in simple-root coordinates
  int line = 0;
};

struct WeylClass {
  std::string id;
  std::vector<int> word;
  ExprPtr centralizer;
  ExprPtr torus;
  std::vector<ExprPtr> dual;    // coordinates of s_i(k,l) in X (x) Q/Z
  std::vector<ExprPtr> ranges;  // index ranges of k (and l)
  ExprPtr pairing;              // theta(k,l) at t(a,b), as an element of Q/Z
  int line = 0;
};

struct ClassType {
  std::string id;
  std::string label;
  std::vector<std::vector<ExprPtr>> roots;  // epsilon coordinates
  std::vector<int> word;
  int line = 0;
};

struct ClassFamily {
  std::string id;
  std::string family;  // parameter set giving the multiplicity, empty for 1
  ExprPtr centralizer_order;
  int line = 0;
};

// A relation block is one of: a function declaration (series / antisym /
// degree_of / odd_degree), a value entry (fn, class, value), or a difference
// claim (diff, equals).
struct Relation {
  std::string id;
  std::string fn, cls;
  ExprPtr value;
  std::string series;
  std::vector<std::pair<std::string, std::string>> antisym;
  std::string degree_of;
  bool odd_degree = false;
  std::vector<std::string> diff;
  std::string equals;
  int line = 0;
  bool is_value() const { return value != nullptr; }
  bool is_diff() const { return !diff.empty(); }
};

struct Model {
  std::vector<ParamSetSpec> paramsets;
  std::vector<FixRow> fixrows;
  std::vector<PairSpec> pairs;
  std::vector<DefectLedger> ledgers;
  std::vector<WeylData> weyl;
  std::vector<WeylClass> weylclasses;
  std::vector<ClassType> classtypes;
  std::vector<ClassFamily> classfams;
  std::vector<Relation> relations;

  const ParamSetSpec* paramset(const std::string& id) const {
    for (const auto& p : paramsets)
      if (p.id == id) return &p;
    return nullptr;
  }
  const FixRow* fixrow(const std::string& id) const {
    for (const auto& r : fixrows)
      if (r.id == id) return &r;
    return nullptr;
  }
  const PairSpec* pair(const std::string& id) const {
    for (const auto& p : pairs)
      if (p.id == id) return &p;
    return nullptr;
  }
  const ClassFamily* classfam(const std::string& id) const {
    for (const auto& c : classfams)
      if (c.id == id) return &c;
    return nullptr;
  }
  const Relation* relation(const std::string& id) const {
    for (const auto& r : relations)
      if (r.id == id) return &r;
    return nullptr;
  }
};

// ---------------------------------------------------------------- parser

namespace detail {

class BlockParser {
 public:
  explicit BlockParser(const std::string& text) : ts_(tokenize(text)) {}

  void parse_into(Model& m) {
    while (!ts_.at_end()) {
      const Token kw = ts_.peek();
      std::string kind = ts_.expect_ident();
      std::string id = ts_.expect_ident();
      ts_.expect_punct("{");
      if (kind == "paramset") m.paramsets.push_back(paramset(id, kw.line));
      else if (kind == "fixrow") m.fixrows.push_back(fixrow(id, kw.line));
      else if (kind == "pair") m.pairs.push_back(pair(id, kw.line));
      else if (kind == "defect") m.ledgers.push_back(defect(id, kw.line));
      else if (kind == "weyl") m.weyl.push_back(weyl(id, kw.line));
      else if (kind == "weylclass") m.weylclasses.push_back(weylclass(id, kw.line));
      else if (kind == "classtype") m.classtypes.push_back(classtype(id, kw.line));
      else if (kind == "classfam") m.classfams.push_back(classfam(id, kw.line));
      else if (kind == "relation") m.relations.push_back(relation(id, kw.line));
      else throw Error(ErrorKind::SyntaxError, "unknown block kind '" + kind + "' at " + where(kw));
    }
  }

 private:
  // Iterates "NAME :" fields until the closing brace.
  template <class F>
  void fields(F&& on_field) {
    while (!ts_.is_punct("}")) {
      if (ts_.at_end()) ts_.fail("expected '}'");
      const Token name = ts_.peek();
      std::string field = ts_.expect_ident();
      ts_.expect_punct(":");
      if (!on_field(field)) throw Error(ErrorKind::SyntaxError, "unknown field '" + field + "' at " + where(name));
    }
    ts_.next();
  }

  ExprPtr expr(const SymbolSet& extra = {}) { return ExprParser(ts_, extra).parse(); }

  template <class F>
  void list(F&& item) {
    ts_.expect_punct("[");
    if (ts_.is_punct("]")) { ts_.next(); return; }
    for (;;) {
      item();
      if (ts_.is_punct(",")) { ts_.next(); continue; }
      ts_.expect_punct("]");
      return;
    }
  }

  std::vector<ExprPtr> expr_list(const SymbolSet& extra = {}) {
    std::vector<ExprPtr> v;
    list([&] { v.push_back(expr(extra)); });
    return v;
  }
  std::vector<std::string> ident_list() {
    std::vector<std::string> v;
    list([&] { v.push_back(ts_.expect_ident()); });
    return v;
  }
  std::vector<int> int_list() {
    std::vector<int> v;
    list([&] { v.push_back(small_int()); });
    return v;
  }
  long small_int() {
    bool neg = false;
    if (ts_.is_punct("-")) { ts_.next(); neg = true; }
    if (ts_.peek().kind != Tok::Number) ts_.fail("expected integer");
    long v = std::stol(ts_.next().text);
    return neg ? -v : v;
  }
  IntMatrix matrix() {
    IntMatrix m;
    list([&] {
      std::vector<long> row;
      list([&] { row.push_back(small_int()); });
      m.push_back(row);
    });
    return m;
  }
  std::string string_value() {
    if (ts_.peek().kind != Tok::String) ts_.fail("expected string");
    return ts_.next().text;
  }

  Predicate predicate(const SymbolSet& vars) {
    Predicate p;
    p.terms.emplace_back();
    for (;;) {
      Atom a;
      a.lhs = expr(vars);
      if (ts_.is_punct("=")) a.rel = Atom::Rel::Eq;
      else if (ts_.is_punct("!=")) a.rel = Atom::Rel::Ne;
      else if (ts_.is_ident("div")) a.rel = Atom::Rel::Div;
      else ts_.fail("expected '=', '!=' or 'div'");
      ts_.next();
      a.rhs = expr(vars);
      p.terms.back().push_back(a);
      if (ts_.is_ident("and")) { ts_.next(); continue; }
      if (ts_.is_ident("or")) { ts_.next(); p.terms.emplace_back(); continue; }
      return p;
    }
  }

  // k->-k  or  (k,l)->(l,k)
  IndexMap index_map(const SymbolSet& vars) {
    IndexMap m;
    if (ts_.is_punct("(")) {
      ts_.next();
      for (;;) {
        m.from.push_back(ts_.expect_ident());
        if (ts_.is_punct(",")) { ts_.next(); continue; }
        ts_.expect_punct(")");
        break;
      }
    } else {
      m.from.push_back(ts_.expect_ident());
    }
    for (const auto& v : m.from)
      if (!vars.count(v)) throw Error(ErrorKind::UnknownSymbol, "map variable '" + v + "'");
    ts_.expect_punct("->");
    if (m.from.size() == 1) {
      m.to.push_back(expr(vars));
    } else {
      ts_.expect_punct("(");
      for (;;) {
        m.to.push_back(expr(vars));
        if (ts_.is_punct(",")) { ts_.next(); continue; }
        ts_.expect_punct(")");
        break;
      }
    }
    return m;
  }

  ParamSetSpec paramset(const std::string& id, int line) {
    ParamSetSpec p;
    p.id = id;
    p.line = line;
    SymbolSet vars;
    auto ensure_vars = [&] {
      if (p.vars.empty() && !p.moduli.empty())
        p.vars = p.moduli.size() == 2 ? std::vector<std::string>{"k", "l"} : std::vector<std::string>{"k"};
      vars = SymbolSet(p.vars.begin(), p.vars.end());
    };
    fields([&](const std::string& f) {
      if (f == "vars") p.vars = ident_list();
      else if (f == "moduli") { p.moduli = expr_list(); ensure_vars(); }
      else if (f == "exclude") { ensure_vars(); p.exclusion = predicate(vars); }
      else if (f == "equiv") {
        ensure_vars();
        list([&] { p.equiv_gens.push_back(index_map(vars)); });
      } else if (f == "card") p.card_formula = expr();
      else if (f == "action") {
        std::string a = ts_.expect_ident();
        if (a == "doubling") p.action_kind = ActionKind::Doubling;
        else if (a == "identity") p.action_kind = ActionKind::Identity;
        else if (a == "formula_only") p.action_kind = ActionKind::FormulaOnly;
        else ts_.fail("unknown action kind");
      } else if (f == "hset") p.hset = ts_.expect_ident();
      else if (f == "note") p.note = string_value();
      else return false;
      return true;
    });
    if (!p.card_formula) throw Error(ErrorKind::SyntaxError, "paramset " + id + " lacks card");
    if (p.moduli.size() > 2) throw Error(ErrorKind::SyntaxError, "paramset " + id + " has more than 2 moduli");
    ensure_vars();
    if (p.action_kind != ActionKind::FormulaOnly && p.vars.size() != p.moduli.size())
      throw Error(ErrorKind::SyntaxError, "paramset " + id + ": vars and moduli differ in length");
    return p;
  }

  FixRow fixrow(const std::string& id, int line) {
    FixRow r;
    r.id = id;
    r.line = line;
    fields([&](const std::string& f) {
      if (f == "members") r.member_sets = ident_list();
      else if (f == "fix") r.formula = expr();
      else return false;
      return true;
    });
    if (!r.formula || r.member_sets.empty()) throw Error(ErrorKind::SyntaxError, "fixrow " + id + " incomplete");
    return r;
  }

  PairSpec pair(const std::string& id, int line) {
    PairSpec p;
    p.id = id;
    p.line = line;
    fields([&](const std::string& f) {
      if (f == "left") p.left = ident_list();
      else if (f == "right") p.right = ident_list();
      else return false;
      return true;
    });
    return p;
  }

  DefectLedger defect(const std::string& id, int line) {
    DefectLedger d;
    d.id = id;
    d.line = line;
    fields([&](const std::string& f) {
      if (f == "value") d.defect_expr = expr();
      else if (f == "entry") {
        ts_.expect_punct("[");
        LedgerEntry e;
        std::string g = ts_.expect_ident();
        if (g == "G") e.group = Group::G;
        else if (g == "B") e.group = Group::B;
        else if (g == "Pa") e.group = Group::Pa;
        else if (g == "Pb") e.group = Group::Pb;
        else ts_.fail("unknown group");
        ts_.expect_punct(",");
        e.set = ts_.expect_ident();
        ts_.expect_punct(",");
        e.degree = expr();
        ts_.expect_punct(",");
        e.tag = ts_.expect_ident();
        ts_.expect_punct("]");
        d.entries.push_back(e);
      } else return false;
      return true;
    });
    if (!d.defect_expr) throw Error(ErrorKind::SyntaxError, "defect " + id + " lacks value");
    return d;
  }

  WeylData weyl(const std::string& id, int line) {
    WeylData w;
    w.id = id;
    w.line = line;
    fields([&](const std::string& f) {
      if (f == "gen") w.gens.push_back(matrix());
      else if (f == "m0") w.m0 = matrix();
      else if (f == "positive") w.positive = matrix();
      else return false;
      return true;
    });
    return w;
  }

  WeylClass weylclass(const std::string& id, int line) {
    WeylClass c;
    c.id = id;
    c.line = line;
    const SymbolSet kl = {"k", "l"};
    fields([&](const std::string& f) {
      if (f == "word") c.word = int_list();
      else if (f == "centralizer") c.centralizer = expr();
      else if (f == "torus") c.torus = expr();
      else if (f == "dual") c.dual = expr_list(kl);
      else if (f == "ranges") c.ranges = expr_list();
      else if (f == "pairing") c.pairing = expr({"a", "b", "k", "l"});
      else return false;
      return true;
    });
    return c;
  }

  ClassType classtype(const std::string& id, int line) {
    ClassType c;
    c.id = id;
    c.line = line;
    fields([&](const std::string& f) {
      if (f == "label") c.label = string_value();
      else if (f == "word") c.word = int_list();
      else if (f == "roots") {
        list([&] {
          std::vector<ExprPtr> v;
          ts_.expect_punct("(");
          for (;;) {
            v.push_back(expr());
            if (ts_.is_punct(",")) { ts_.next(); continue; }
            ts_.expect_punct(")");
            break;
          }
          c.roots.push_back(v);
        });
      } else return false;
      return true;
    });
    return c;
  }

  ClassFamily classfam(const std::string& id, int line) {
    ClassFamily c;
    c.id = id;
    c.line = line;
    fields([&](const std::string& f) {
      if (f == "family") c.family = ts_.expect_ident();
      else if (f == "centralizer") c.centralizer_order = expr();
      else return false;
      return true;
    });
    if (!c.centralizer_order) throw Error(ErrorKind::SyntaxError, "classfam " + id + " lacks centralizer");
    return c;
  }

  Relation relation(const std::string& id, int line) {
    Relation r;
    r.id = id;
    r.line = line;
    const SymbolSet vals = {"i", "k", "e4"};
    fields([&](const std::string& f) {
      if (f == "fn") r.fn = ts_.expect_ident();
      else if (f == "class") r.cls = ts_.expect_ident();
      else if (f == "value") r.value = expr(vals);
      else if (f == "series") r.series = ts_.expect_ident();
      else if (f == "degree_of") r.degree_of = ts_.expect_ident();
      else if (f == "odd_degree") r.odd_degree = ts_.expect_ident() == "yes";
      else if (f == "equals") r.equals = ts_.expect_ident();
      else if (f == "diff") r.diff = ident_list();
      else if (f == "antisym") {
        list([&] {
          ts_.expect_punct("(");
          std::string a = ts_.expect_ident();
          ts_.expect_punct(",");
          std::string b = ts_.expect_ident();
          ts_.expect_punct(")");
          r.antisym.emplace_back(a, b);
        });
      } else return false;
      return true;
    });
    return r;
  }

  TokenStream ts_;
};

inline void check_refs(const Model& m) {
  std::set<std::string> ids;
  auto declare = [&](const std::string& id, int line) {
    if (!ids.insert(id).second)
      throw Error(ErrorKind::SyntaxError, "duplicate id '" + id + "' (line " + std::to_string(line) + ")");
  };
  for (const auto& p : m.paramsets) declare(p.id, p.line);
  for (const auto& r : m.fixrows) declare(r.id, r.line);
  for (const auto& p : m.pairs) declare(p.id, p.line);
  for (const auto& d : m.ledgers) declare(d.id, d.line);
  for (const auto& c : m.classfams) declare(c.id, c.line);
  for (const auto& r : m.relations) declare(r.id, r.line);

  auto dangling = [](const std::string& what, const std::string& ref) {
    throw Error(ErrorKind::DanglingReference, what + " refers to undeclared '" + ref + "'");
  };
  auto need_set = [&](const std::string& who, const std::string& id) {
    if (!m.paramset(id)) dangling(who, id);
  };
  for (const auto& p : m.paramsets)
    if (!p.hset.empty()) need_set("paramset " + p.id, p.hset);
  for (const auto& r : m.fixrows)
    for (const auto& s : r.member_sets) need_set("fixrow " + r.id, s);
  for (const auto& p : m.pairs) {
    for (const auto& s : p.left) need_set("pair " + p.id, s);
    for (const auto& s : p.right) need_set("pair " + p.id, s);
  }
  for (const auto& d : m.ledgers)
    for (const auto& e : d.entries) {
      need_set("defect " + d.id, e.set);
      if (!m.fixrow(e.tag) && !m.pair(e.tag)) dangling("defect " + d.id, e.tag);
    }
  for (const auto& c : m.classfams)
    if (!c.family.empty()) need_set("classfam " + c.id, c.family);
  for (const auto& r : m.relations) {
    if (!r.fn.empty() && !m.relation(r.fn)) dangling("relation " + r.id, r.fn);
    if (!r.cls.empty() && !m.classfam(r.cls)) dangling("relation " + r.id, r.cls);
    if (!r.series.empty()) need_set("relation " + r.id, r.series);
    if (!r.degree_of.empty()) need_set("relation " + r.id, r.degree_of);
    if (!r.equals.empty() && !m.relation(r.equals)) dangling("relation " + r.id, r.equals);
    for (const auto& d : r.diff)
      if (!m.relation(d)) dangling("relation " + r.id, d);
    for (const auto& [a, b] : r.antisym) {
      if (!m.classfam(a)) dangling("relation " + r.id, a);
      if (!m.classfam(b)) dangling("relation " + r.id, b);
    }
  }
}

inline void finalize(Model& m) {
  for (auto& d : m.ledgers)
    for (auto& e : d.entries) e.paired = m.pair(e.tag) != nullptr;
  check_refs(m);
  // Every count formula must type-check at n = 1.
  for (const auto& p : m.paramsets) {
    Env env;
    env.n = 1;
    eval_expr(p.card_formula, env);
    for (const auto& mod : p.moduli) eval_expr(mod, env);
  }
}

}  // namespace detail

inline void parse_into(Model& m, const std::string& text) { detail::BlockParser(text).parse_into(m); }

inline Model parse_model(const std::string& text) {
  Model m;
  parse_into(m, text);
  detail::finalize(m);
  return m;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const std::vector<std::string>& data_file_names() {
  static const std::vector<std::string> names = {"paramsets.def", "fixrows.def", "defects.def",
                                                 "weyl.def",      "classes.def", "relations.def"};
  return names;
}

// Loads all shipped data files from a directory into one cross-linked model.
inline Model load_model(const std::string& dir) {
  Model m;
  for (const auto& f : data_file_names()) {
    const std::string path = dir + "/" + f;
    try {
      parse_into(m, read_file(path));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Config) throw;
      throw Error(e.kind(), path + ": " + e.message());
    }
  }
  detail::finalize(m);
  return m;
}

// ---------------------------------------------------------------- serializer

namespace detail {

inline std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}
inline std::string exprs(const std::vector<ExprPtr>& v) {
  std::vector<std::string> s;
  for (const auto& e : v) s.push_back(to_string(e));
  return join(s);
}
inline std::string ints(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return join(s);
}
inline std::string mat(const IntMatrix& m) {
  std::vector<std::string> rows;
  for (const auto& r : m) {
    std::vector<std::string> c;
    for (long x : r) c.push_back(std::to_string(x));
    rows.push_back("[" + join(c) + "]");
  }
  return "[" + join(rows) + "]";
}
inline std::string pred(const Predicate& p) {
  std::vector<std::string> ors;
  for (const auto& conj : p.terms) {
    std::vector<std::string> ands;
    for (const auto& a : conj) {
      const char* r = a.rel == Atom::Rel::Eq ? " = " : a.rel == Atom::Rel::Ne ? " != " : " div ";
      ands.push_back(to_string(a.lhs) + r + to_string(a.rhs));
    }
    ors.push_back(join(ands, " and "));
  }
  return join(ors, " or ");
}
inline std::string imap(const IndexMap& m) {
  if (m.from.size() == 1) return m.from[0] + "->" + to_string(m.to[0]);
  return "(" + join(m.from) + ")->(" + exprs(m.to) + ")";
}

}  // namespace detail

inline std::string serialize(const Model& m) {
  using namespace detail;
  std::ostringstream o;
  for (const auto& p : m.paramsets) {
    o << "paramset " << p.id << " {\n";
    if (!p.moduli.empty()) o << "  vars: [" << join(p.vars) << "]\n  moduli: [" << exprs(p.moduli) << "]\n";
    if (!p.exclusion.empty()) o << "  exclude: " << pred(p.exclusion) << "\n";
    if (!p.equiv_gens.empty()) {
      std::vector<std::string> g;
      for (const auto& x : p.equiv_gens) g.push_back(imap(x));
      o << "  equiv: [" << join(g) << "]\n";
    }
    o << "  card: " << to_string(p.card_formula) << "\n";
    o << "  action: "
      << (p.action_kind == ActionKind::Doubling ? "doubling" : p.action_kind == ActionKind::Identity ? "identity" : "formula_only")
      << "\n";
    if (!p.hset.empty()) o << "  hset: " << p.hset << "\n";
    if (!p.note.empty()) o << "  note: \"" << p.note << "\"\n";
    o << "}\n";
  }
  for (const auto& r : m.fixrows)
    o << "fixrow " << r.id << " { members: [" << join(r.member_sets) << "] fix: " << to_string(r.formula) << " }\n";
  for (const auto& p : m.pairs)
    o << "pair " << p.id << " { left: [" << join(p.left) << "] right: [" << join(p.right) << "] }\n";
  for (const auto& d : m.ledgers) {
    o << "defect " << d.id << " {\n  value: " << to_string(d.defect_expr) << "\n";
    for (const auto& e : d.entries)
      o << "  entry: [" << group_name(e.group) << ", " << e.set << ", " << to_string(e.degree) << ", " << e.tag << "]\n";
    o << "}\n";
  }
  for (const auto& w : m.weyl) {
    o << "weyl " << w.id << " {\n";
    for (const auto& g : w.gens) o << "  gen: " << mat(g) << "\n";
    o << "  m0: " << mat(w.m0) << "\n";
    if (!w.positive.empty()) o << "  positive: " << mat(w.positive) << "\n";
    o << "}\n";
  }
  for (const auto& c : m.weylclasses) {
    o << "weylclass " << c.id << " {\n  word: [" << ints(c.word) << "]\n  centralizer: " << to_string(c.centralizer)
      << "\n  torus: " << to_string(c.torus) << "\n";
    if (!c.dual.empty()) o << "  dual: [" << exprs(c.dual) << "]\n  ranges: [" << exprs(c.ranges) << "]\n";
    if (c.pairing) o << "  pairing: " << to_string(c.pairing) << "\n";
    o << "}\n";
  }
  for (const auto& c : m.classtypes) {
    o << "classtype " << c.id << " {\n  label: \"" << c.label << "\"\n  word: [" << ints(c.word) << "]\n  roots: [";
    for (size_t i = 0; i < c.roots.size(); ++i) o << (i ? ", " : "") << "(" << exprs(c.roots[i]) << ")";
    o << "]\n}\n";
  }
  for (const auto& c : m.classfams) {
    o << "classfam " << c.id << " {";
    if (!c.family.empty()) o << " family: " << c.family;
    o << " centralizer: " << to_string(c.centralizer_order) << " }\n";
  }
  for (const auto& r : m.relations) {
    o << "relation " << r.id << " {";
    if (!r.fn.empty()) o << " fn: " << r.fn;
    if (!r.cls.empty()) o << " class: " << r.cls;
    if (r.value) o << " value: " << to_string(r.value);
    if (!r.series.empty()) o << " series: " << r.series;
    if (!r.degree_of.empty()) o << " degree_of: " << r.degree_of;
    if (r.odd_degree) o << " odd_degree: yes";
    if (!r.antisym.empty()) {
      std::vector<std::string> s;
      for (const auto& [a, b] : r.antisym) s.push_back("(" + a + ", " + b + ")");
      o << " antisym: [" << join(s) << "]";
    }
    if (!r.diff.empty()) o << " diff: [" << join(r.diff) << "]";
    if (!r.equals.empty()) o << " equals: " << r.equals;
    o << " }\n";
  }
  return o.str();
}

}  // namespace dc
