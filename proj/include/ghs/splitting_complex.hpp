#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ghs/compression_body.hpp"
#include "ghs/surface.hpp"

namespace ghs {

/// Where a surface component sits in the splitting.
enum class Role { Thin, Thick, RPlus, RMinus };

/// Caller-asserted geometric facts; never verified here.
enum class Assumption { LocallyThin, ThinIncompressible, StronglyIrreducible };

const char* toString(Role role);
const char* toString(Assumption a);
/// Inverse of toString(Assumption); throws ParseError.
Assumption parseAssumption(const std::string& text, int line);

struct PlacedComponent {
  Role role = Role::Thin;
  SurfaceComponent surface;

  bool operator==(const PlacedComponent&) const = default;
};

/// Incidence node for one connected compression body. `minus` is kept sorted.
struct BodyNode {
  std::string id;
  BodyLabel label = BodyLabel::A;
  std::string plus;
  std::vector<std::string> minus;

  bool operator==(const BodyNode&) const = default;
};

/// A (circular) generalized Heegaard splitting, recorded as the incidence of
/// thin and thick surfaces, the ambient R+/R- boundary data and the A/B
/// compression bodies between them. Ordered maps keep every traversal in
/// canonical id order.
struct SplittingComplex {
  std::map<std::string, SutureKind> sutures;
  std::map<std::string, PlacedComponent> components;
  std::map<std::string, BodyNode> bodies;
  std::set<Assumption> assumptions;
  /// Components individually asserted incompressible (e.g. by a maximal weak reduction).
  std::set<std::string> incompressible;

  Surface surface(Role role) const;
  Surface thin() const { return surface(Role::Thin); }
  Surface thick() const { return surface(Role::Thick); }
  Surface boundaryPlus() const { return surface(Role::RPlus); }
  Surface boundaryMinus() const { return surface(Role::RMinus); }

  const PlacedComponent& component(const std::string& id) const;
  const BodyNode& body(const std::string& id) const;
  bool hasId(const std::string& id) const;

  /// Resolves the node into a body value. Throws std::out_of_range on dangling ids.
  CompressionBody resolve(const std::string& bodyId) const;
  /// Bodies whose positive boundary is `componentId`.
  std::vector<std::string> bodiesOver(const std::string& componentId) const;
  /// Bodies having `componentId` in their negative boundary.
  std::vector<std::string> bodiesUnder(const std::string& componentId) const;

  bool operator==(const SplittingComplex&) const = default;
};

struct Violation {
  std::string code;
  std::string message;
};

/// Checks every structural invariant; never throws.
std::vector<Violation> validate(const SplittingComplex& c);
bool isValid(const SplittingComplex& c);

int totalHandleNumber(const SplittingComplex& c);
int totalHandleIndex(const SplittingComplex& c);
int handlebodyCount(const SplittingComplex& c);
int trivialBodyCount(const SplittingComplex& c);
bool isFibrationComplex(const SplittingComplex& c);

/// Per suture: circles of thick surfaces minus circles of thin surfaces.
/// Conserved by every move.
std::map<std::string, int> sutureBalance(const SplittingComplex& c);

/// Smallest `prefix<n>` (n >= 1) not used by any suture, component or body.
std::string freshId(const SplittingComplex& c, const std::string& prefix);

/// Splits into connected pieces of the body/surface incidence graph, ordered
/// by smallest component id. Each piece keeps only the sutures it touches.
std::vector<SplittingComplex> connectedPieces(const SplittingComplex& c);

/// True when the complex has one thin, one thick component, two bodies and no
/// R+/R- data: the shape of a circular Heegaard splitting.
bool isCircularSplitting(const SplittingComplex& c);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Canonical line-oriented text; byte-identical for equal complexes.
std::string serialize(const SplittingComplex& c);
SplittingComplex deserialize(const std::string& text);

// Field codecs shared with the trace format.
std::string formatBoundary(const BoundaryMap& b);
BoundaryMap parseBoundary(const std::string& text);
std::vector<std::string> splitFields(const std::string& line, char sep = '|');
std::string trim(const std::string& s);
int parseInt(const std::string& text);

}  // namespace ghs
