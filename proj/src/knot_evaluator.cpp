#include "ghs/knot_evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "ghs/constructions.hpp"

namespace ghs {

HandleValue operator+(const HandleValue& a, const HandleValue& b) {
  HandleValue out;
  out.lower = a.lower + b.lower;
  if (a.upper && b.upper) out.upper = *a.upper + *b.upper;
  return out;
}

std::string formatHuman(const HandleValue& v) {
  if (v.exact()) return "MN = " + std::to_string(v.lower) + " (exact)";
  if (!v.upper) return "MN >= " + std::to_string(v.lower);
  return "MN in [" + std::to_string(v.lower) + ", " + std::to_string(*v.upper) + "]";
}

ExprSyntaxError::ExprSyntaxError(std::size_t position, const std::string& message)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  KnotExprPtr parseAll() {
    KnotExprPtr e = parseSum();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ExprSyntaxError(pos_, msg); }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + ch + "' but input ended");
      fail(std::string("expected '") + ch + "'");
    }
  }

  static bool isIdentChar(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

  std::string identifier() {
    skipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && isIdentChar(text_[pos_])) ++pos_;
    if (start == pos_) {
      if (pos_ >= text_.size()) fail("expected expression but input ended");
      fail("expected expression");
    }
    return text_.substr(start, pos_ - start);
  }

  int integer() {
    skipSpace();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail("expected integer");
    }
    try {
      return std::stoi(text_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      pos_ = start;
      fail("integer out of range");
    }
  }

  KnotExprPtr parseSum() {
    KnotExprPtr left = parsePrimary();
    while (accept('#')) {
      KnotExprPtr right = parsePrimary();
      left = std::make_shared<KnotExpr>(KnotExpr{Sum{left, right}});
    }
    return left;
  }

  KnotExprPtr parsePrimary() {
    if (accept('(')) {
      KnotExprPtr inner = parseSum();
      expect(')');
      return inner;
    }
    const std::string name = identifier();
    skipSpace();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (name == "cable" && call) {
      expect('(');
      const int p = integer();
      expect(',');
      const int q = integer();
      expect(',');
      KnotExprPtr inner = parseSum();
      expect(')');
      return std::make_shared<KnotExpr>(KnotExpr{Cable{p, q, inner}});
    }
    if (name == "sat" && call) {
      expect('(');
      const std::string pattern = identifier();
      expect(',');
      const int n = integer();
      expect(',');
      KnotExprPtr inner = parseSum();
      expect(')');
      return std::make_shared<KnotExpr>(KnotExpr{Satellite{pattern, n, inner}});
    }
    if (call) fail("unknown operator '" + name + "'");
    return std::make_shared<KnotExpr>(KnotExpr{Atom{name}});
  }
};

}  // namespace

KnotExprPtr parseExpr(const std::string& text) { return Parser(text).parseAll(); }

void validateExpr(const KnotExpr& e) {
  struct Visitor {
    void operator()(const Atom&) const {}
    void operator()(const Sum& s) const {
      validateExpr(*s.left);
      validateExpr(*s.right);
    }
    void operator()(const Cable& c) const {
      if (c.p < 1) throw EvaluationError("cable(" + std::to_string(c.p) + "," + std::to_string(c.q) + "): p must be positive");
      if (std::gcd(c.p, c.q) != 1)
        throw EvaluationError("cable(" + std::to_string(c.p) + "," + std::to_string(c.q) + "): p and q are not coprime");
      validateExpr(*c.inner);
    }
    void operator()(const Satellite& s) const {
      if (s.winding < 1)
        throw EvaluationError("sat(" + s.pattern + "," + std::to_string(s.winding) + "): winding must be positive");
      validateExpr(*s.inner);
    }
  };
  std::visit(Visitor{}, e.node);
}

std::string toString(const KnotExpr& e) {
  struct Visitor {
    std::string operator()(const Atom& a) const { return a.name; }
    std::string operator()(const Sum& s) const { return "(" + toString(*s.left) + " # " + toString(*s.right) + ")"; }
    std::string operator()(const Cable& c) const {
      return "cable(" + std::to_string(c.p) + "," + std::to_string(c.q) + "," + toString(*c.inner) + ")";
    }
    std::string operator()(const Satellite& s) const {
      return "sat(" + s.pattern + "," + std::to_string(s.winding) + "," + toString(*s.inner) + ")";
    }
  };
  return std::visit(Visitor{}, e.node);
}

// ---------------------------------------------------------------------------
// Tables

namespace {

bool parseFibered(const std::string& text, int line) {
  if (text == "fibered") return true;
  if (text == "nonfibered") return false;
  throw ParseError(line, "fibered field must be 'fibered' or 'nonfibered', got '" + text + "'");
}

HandleValue parseBounds(const std::string& lo, const std::string& hi, int line) {
  HandleValue v;
  try {
    v.lower = parseInt(lo);
    if (hi != "inf") v.upper = parseInt(hi);
  } catch (const std::exception&) {
    throw ParseError(line, "bad handle bound '" + lo + "'/'" + hi + "'");
  }
  if (v.lower < 0) throw ParseError(line, "handle lower bound must be non-negative");
  if (v.upper && *v.upper < v.lower) throw ParseError(line, "handle upper bound below lower bound");
  return v;
}

void checkFibered(bool fibered, const HandleValue& h, const std::string& name, int line) {
  if (fibered && !(h.exact() && h.lower == 0))
    throw ParseError(line, "'" + name + "' is fibered, so its handle number must be exactly 0");
  if (!fibered && h.upper && *h.upper == 0)
    throw ParseError(line, "'" + name + "' is not fibered, so its handle number cannot be 0");
}

const std::string kDefaultTable = R"(# Base knot facts: fibered knots have MN = 0; non-fibered knots
# of crossing number at most 10 have MN = 2.
0_1|fibered|0|0|unknot fibered
3_1|fibered|0|0|fibered knot
4_1|fibered|0|0|fibered knot
5_1|fibered|0|0|fibered knot
6_2|fibered|0|0|fibered knot
6_3|fibered|0|0|fibered knot
7_1|fibered|0|0|fibered knot
5_2|nonfibered|2|2|non-fibered twist knot
6_1|nonfibered|2|2|non-fibered twist knot
7_2|nonfibered|2|2|non-fibered twist knot
7_3|nonfibered|2|2|non-fibered, crossing number at most 10
8_1|nonfibered|2|2|non-fibered twist knot
)";

}  // namespace

KnotTable loadTable(const std::string& text) {
  KnotTable t;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto f = splitFields(body);
    if (f.size() == 7 && f[0] == "pattern") {
      PatternRecord r;
      r.name = f[1];
      r.fibered = parseFibered(f[2], line);
      r.h = parseBounds(f[3], f[4], line);
      try {
        r.winding = parseInt(f[5]);
      } catch (const std::exception&) {
        throw ParseError(line, "bad winding '" + f[5] + "'");
      }
      if (r.winding < 1) throw ParseError(line, "pattern winding must be positive");
      r.source = f[6];
      if (r.name.empty()) throw ParseError(line, "empty pattern name");
      checkFibered(r.fibered, r.h, r.name, line);
      if (t.patterns.count(r.name) || t.knots.count(r.name))
        throw ParseError(line, "duplicate name '" + r.name + "'");
      t.patterns.emplace(r.name, r);
      continue;
    }
    if (f.size() != 5) throw ParseError(line, "expected 5 fields (name|fibered|lo|hi|source)");
    KnotRecord r;
    r.name = f[0];
    if (r.name.empty()) throw ParseError(line, "empty knot name");
    r.fibered = parseFibered(f[1], line);
    r.h = parseBounds(f[2], f[3], line);
    r.source = f[4];
    checkFibered(r.fibered, r.h, r.name, line);
    if (t.knots.count(r.name) || t.patterns.count(r.name))
      throw ParseError(line, "duplicate name '" + r.name + "'");
    t.knots.emplace(r.name, r);
  }
  return t;
}

KnotTable mergeTables(KnotTable base, const KnotTable& extra) {
  for (const auto& [name, r] : extra.knots) {
    if (base.knots.count(name) || base.patterns.count(name))
      throw EvaluationError("duplicate table entry '" + name + "'");
    base.knots.emplace(name, r);
  }
  for (const auto& [name, r] : extra.patterns) {
    if (base.knots.count(name) || base.patterns.count(name))
      throw EvaluationError("duplicate table entry '" + name + "'");
    base.patterns.emplace(name, r);
  }
  return base;
}

const std::string& defaultTableText() { return kDefaultTable; }

KnotTable defaultTable() { return loadTable(kDefaultTable); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

HandleValue evalNode(const KnotExpr& e, const KnotTable& t, const std::string& path,
                     std::vector<ProvenanceStep>& out) {
  const std::size_t slot = out.size();
  out.push_back({path, "", "", {}});
  ProvenanceStep step{path, "", "", {}};

  if (const auto* a = std::get_if<Atom>(&e.node)) {
    auto it = t.knots.find(a->name);
    if (it == t.knots.end()) throw EvaluationError("unknown knot '" + a->name + "'");
    step.rule = "atom";
    step.detail = a->name + " " + (it->second.fibered ? "fibered" : "nonfibered") + "; " + it->second.source;
    step.value = it->second.fibered ? HandleValue::exactly(0) : it->second.h;
  } else if (const auto* s = std::get_if<Sum>(&e.node)) {
    const HandleValue l = evalNode(*s->left, t, path + ".0", out);
    const HandleValue r = evalNode(*s->right, t, path + ".1", out);
    step.rule = "connected-sum";
    step.detail = "additive under connected sum";
    step.value = l + r;
  } else if (const auto* c = std::get_if<Cable>(&e.node)) {
    if (c->p < 1 || std::gcd(c->p, c->q) != 1)
      throw EvaluationError("invalid cable parameters (" + std::to_string(c->p) + "," + std::to_string(c->q) + ")");
    const HandleValue inner = evalNode(*c->inner, t, path + ".0", out);
    step.rule = c->p == 1 ? "cable-identity" : "cable";
    step.detail = c->p == 1 ? "p=1 cable is the companion itself"
                            : "cabling preserves the handle number (" + std::to_string(c->p) + "," +
                                  std::to_string(c->q) + ")";
    step.value = inner;
  } else {
    const auto& sat = std::get<Satellite>(e.node);
    if (sat.winding < 1) throw EvaluationError("satellite winding must be positive");
    auto it = t.patterns.find(sat.pattern);
    if (it == t.patterns.end()) throw EvaluationError("unknown pattern '" + sat.pattern + "'");
    if (it->second.winding != sat.winding)
      throw EvaluationError("pattern '" + sat.pattern + "' has winding " + std::to_string(it->second.winding) +
                            ", expression uses " + std::to_string(sat.winding));
    const HandleValue inner = evalNode(*sat.inner, t, path + ".0", out);
    const HandleValue hp = it->second.fibered ? HandleValue::exactly(0) : it->second.h;
    step.rule = "satellite";
    step.detail = "upper bound h(P)+h(K); pattern " + sat.pattern + " " +
                  (it->second.fibered ? "fibered" : "nonfibered") + "; " + it->second.source;
    step.value.lower = 0;
    if (hp.upper && inner.upper) step.value.upper = *hp.upper + *inner.upper;
  }
  out[slot] = step;
  return step.value;
}

std::string upperText(const HandleValue& v) { return v.upper ? std::to_string(*v.upper) : "inf"; }

}  // namespace

Evaluation evalExpr(const KnotExpr& e, const KnotTable& t) {
  Evaluation ev;
  ev.value = evalNode(e, t, "0", ev.provenance);
  return ev;
}

std::string formatMachine(const Evaluation& ev) {
  std::ostringstream out;
  out << "value|" << ev.value.lower << '|' << upperText(ev.value) << '|' << (ev.value.exact() ? "true" : "false")
      << '\n';
  for (const auto& p : ev.provenance)
    out << "prov|" << p.path << '|' << p.rule << '|' << p.value.lower << '|' << upperText(p.value) << '|'
        << p.detail << '\n';
  return out.str();
}

std::string formatReport(const Evaluation& ev) {
  std::ostringstream out;
  out << formatHuman(ev.value) << '\n';
  for (const auto& p : ev.provenance) {
    const auto depth = static_cast<std::size_t>(std::count(p.path.begin(), p.path.end(), '.'));
    out << std::string(2 + 2 * depth, ' ') << p.rule << ": " << formatHuman(p.value) << "  [" << p.detail << "]\n";
  }
  return out.str();
}

std::optional<SplittingComplex> realizeExpr(const KnotExpr& e, const KnotTable& t) {
  struct Visitor {
    const KnotTable& t;
    std::optional<SplittingComplex> operator()(const Atom& a) const {
      auto it = t.knots.find(a.name);
      if (it == t.knots.end()) throw EvaluationError("unknown knot '" + a.name + "'");
      const HandleValue& h = it->second.h;
      if (!h.upper || *h.upper % 2 != 0) return std::nullopt;
      return circularSplitting(1, 1 + *h.upper / 2);
    }
    std::optional<SplittingComplex> operator()(const Sum& s) const {
      auto l = realizeExpr(*s.left, t);
      auto r = realizeExpr(*s.right, t);
      if (!l || !r) return std::nullopt;
      return connectedSumCompose(*l, *r);
    }
    std::optional<SplittingComplex> operator()(const Cable& c) const {
      auto inner = realizeExpr(*c.inner, t);
      if (!inner || c.p == 1) return inner;
      return satelliteCompose(cablePatternSplit(c.p, c.q), *inner, c.p);
    }
    std::optional<SplittingComplex> operator()(const Satellite& s) const {
      auto it = t.patterns.find(s.pattern);
      if (it == t.patterns.end()) throw EvaluationError("unknown pattern '" + s.pattern + "'");
      const HandleValue& h = it->second.h;
      if (!h.upper || *h.upper % 2 != 0) return std::nullopt;
      auto inner = realizeExpr(*s.inner, t);
      if (!inner) return std::nullopt;
      return satelliteCompose(patternSplitting(1, 1 + *h.upper / 2, s.winding), *inner, s.winding);
    }
  };
  return std::visit(Visitor{t}, e.node);
}

}  // namespace ghs
