#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ghs/splitting_complex.hpp"

namespace ghs {

/// Interval for a Morse-Novikov number; `upper` empty means unbounded.
struct HandleValue {
  int lower = 0;
  std::optional<int> upper;

  bool exact() const { return upper && *upper == lower; }
  static HandleValue exactly(int h) { return HandleValue{h, h}; }
  bool operator==(const HandleValue&) const = default;
};

HandleValue operator+(const HandleValue& a, const HandleValue& b);
std::string formatHuman(const HandleValue& v);

struct KnotExpr;
using KnotExprPtr = std::shared_ptr<const KnotExpr>;

struct Atom {
  std::string name;
};
struct Sum {
  KnotExprPtr left, right;
};
struct Cable {
  int p = 1;
  int q = 0;
  KnotExprPtr inner;
};
struct Satellite {
  std::string pattern;
  int winding = 1;
  KnotExprPtr inner;
};

struct KnotExpr {
  std::variant<Atom, Sum, Cable, Satellite> node;
};

/// Syntax error with 0-based character offset.
class ExprSyntaxError : public std::runtime_error {
 public:
  ExprSyntaxError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Semantic failure: bad cable parameters, unknown atom, winding mismatch.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

KnotExprPtr parseExpr(const std::string& text);
/// Checks cable coprimality, p >= 1 and winding >= 1. Throws EvaluationError.
void validateExpr(const KnotExpr& e);
/// Canonical text form, fully parenthesized sums.
std::string toString(const KnotExpr& e);

struct KnotRecord {
  std::string name;
  bool fibered = false;
  HandleValue h;
  std::string source;
};

struct PatternRecord {
  std::string name;
  bool fibered = false;
  HandleValue h;
  int winding = 1;
  std::string source;
};

struct KnotTable {
  std::map<std::string, KnotRecord> knots;
  std::map<std::string, PatternRecord> patterns;
};

/// Lines `name|fibered|lo|hi|source` or `pattern|name|fibered|lo|hi|winding|source`;
/// `hi` may be `inf`. Throws ParseError with line numbers.
KnotTable loadTable(const std::string& text);
/// Merges `extra` into `base`; duplicate names are rejected.
KnotTable mergeTables(KnotTable base, const KnotTable& extra);
const std::string& defaultTableText();
KnotTable defaultTable();

struct ProvenanceStep {
  std::string path;  // "0" for the root, children append ".0"/".1"
  std::string rule;
  std::string detail;
  HandleValue value;
};

struct Evaluation {
  HandleValue value;
  std::vector<ProvenanceStep> provenance;
};

Evaluation evalExpr(const KnotExpr& e, const KnotTable& t);
/// `value|lower|upper|exact` then one `prov|path|rule|lower|upper|detail` line per step.
std::string formatMachine(const Evaluation& ev);
std::string formatReport(const Evaluation& ev);

/// Builds a circular splitting realizing the upper bound of `e`, using the
/// standard constructions. Returns nullopt when some upper bound is unbounded.
std::optional<SplittingComplex> realizeExpr(const KnotExpr& e, const KnotTable& t);

}  // namespace ghs
