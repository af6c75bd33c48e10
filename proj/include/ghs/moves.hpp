#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ghs/splitting_complex.hpp"

namespace ghs {

class MoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Amalgamation along a thin set that must equal B1 ∩ A2 for the B-body over
/// one thick surface and the A-body over a different one.
struct AmalgamateMove {
  std::vector<std::string> thinSet;
  std::string newThick;  // empty: freshId("S")

  bool operator==(const AmalgamateMove&) const = default;
};

/// Explicit weak-reduction data. Disk targets in `diskSystemA`/`diskSystemB`
/// name lineage keys rooted at the thick target. `thinDisks` are the B-side
/// disks as they act on S1 (keys rooted at `s1Name`); when empty the B-side
/// list is replayed on S1 with its root renamed. Pieces of S1, the new thin
/// surface R and S2 are named by re-rooting lineage keys at `s1Name`,
/// `thinName` and `s2Name`.
struct WeakReductionMove {
  std::string thickTarget;
  std::vector<DiskSurgery> diskSystemA;
  std::vector<DiskSurgery> diskSystemB;
  std::vector<DiskSurgery> thinDisks;
  std::string s1Name;
  std::string thinName;
  std::string s2Name;
  /// Old A-body negative components -> S1 piece (optional when S1 is connected).
  std::map<std::string, std::string> minusAToS1;
  /// Old B-body negative components -> S2 piece (optional when S2 is connected).
  std::map<std::string, std::string> minusBToS2;
  /// New thin pieces -> S2 piece whose A-body they bound (optional when S2 is connected).
  std::map<std::string, std::string> thinToS2;
  /// Asserts the new thin surface is incompressible.
  bool maximal = false;

  bool operator==(const WeakReductionMove&) const = default;
};

struct InflateMove {
  std::string thin;
  std::string newThick;  // empty: freshId("S")
  std::string newThin;   // empty: freshId("R")

  bool operator==(const InflateMove&) const = default;
};

/// Removes `thick` and `thin`, which must bound a pair of trivial bodies.
struct DeflateMove {
  std::string thick;
  std::string thin;

  bool operator==(const DeflateMove&) const = default;
};

struct StabilizeMove {
  std::string thick;
  bool operator==(const StabilizeMove&) const = default;
};

struct DestabilizeMove {
  std::string thick;
  bool operator==(const DestabilizeMove&) const = default;
};

/// Number of vertical rectangles a body meets along one of its negative
/// boundary components.
struct RectangleCount {
  std::string body;
  std::string minusComponent;
  int count = 0;

  bool operator==(const RectangleCount&) const = default;
};

/// One piece of a body after chopping along its rectangles.
struct BodySplit {
  std::string parent;
  std::string id;
  std::string plus;
  std::vector<std::string> minus;

  bool operator==(const BodySplit&) const = default;
};

/// Chop along a properly embedded annulus meeting every body in vertical
/// rectangles. Arc surgeries act on thin/thick/boundary components; the
/// chopped sutures are replaced by `newSutures`.
struct ChopMove {
  std::vector<std::string> choppedSutures;
  std::map<std::string, SutureKind> newSutures;
  std::vector<ArcSurgery> arcs;
  std::vector<RectangleCount> rectangles;
  std::vector<BodySplit> splits;
  /// Caller asserts no boundary curve of the annulus is isotopic to a thin boundary curve.
  bool slopesDistinct = false;

  bool operator==(const ChopMove&) const = default;
};

using MoveSpec = std::variant<AmalgamateMove, WeakReductionMove, InflateMove, DeflateMove,
                              StabilizeMove, DestabilizeMove, ChopMove>;

const char* moveName(const MoveSpec& move);

/// Provenance of one applied move.
struct MoveRecord {
  MoveSpec move;
  int hBefore = 0;
  int hAfter = 0;
  int jBefore = 0;
  int jAfter = 0;
};

struct MoveResult {
  SplittingComplex complex;
  MoveRecord record;
};

MoveResult amalgamate(const SplittingComplex& c, const AmalgamateMove& m);
MoveResult amalgamate(const SplittingComplex& c, const std::vector<std::string>& thinSet);
MoveResult weakReduce(const SplittingComplex& c, const WeakReductionMove& m);
MoveResult inflate(const SplittingComplex& c, const InflateMove& m);
MoveResult inflate(const SplittingComplex& c, const std::string& thinId);
MoveResult deflate(const SplittingComplex& c, const DeflateMove& m);
MoveResult stabilize(const SplittingComplex& c, const std::string& thickId);
MoveResult destabilize(const SplittingComplex& c, const std::string& thickId);

/// Ids of the thin components created by a weak reduction record (the new R).
std::vector<std::string> createdThin(const SplittingComplex& before, const SplittingComplex& after);

/// Throws MoveError listing violations when `c` is invalid.
void requireValid(const SplittingComplex& c, const std::string& context);

}  // namespace ghs
