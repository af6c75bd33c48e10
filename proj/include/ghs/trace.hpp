#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghs/constructions.hpp"
#include "ghs/moves.hpp"
#include "ghs/splitting_complex.hpp"

namespace ghs {

/// One directive of a trace file after the initial complex.
struct TraceStep {
  enum class Kind { Move, Assume, Incompressible, Expect };

  Kind kind = Kind::Move;
  int line = 0;
  std::optional<MoveSpec> move;
  std::optional<Assumption> assumption;
  std::string target;  // Incompressible id, or EXPECT key
  std::vector<std::string> args;  // EXPECT arguments after the key
};

/// A `.ghst` trace: a complex block terminated by END, then directives.
///
///   MOVE|amalgamate|<newThick|->|R1,R2
///   MOVE|inflate|R|<thick|->|<thin|->
///   MOVE|deflate|S|T
///   MOVE|stabilize|S          MOVE|destabilize|S
///   MOVE|weak-reduce|S|S1|R|S2|0/1   ... END_MOVE
///   MOVE|chop                         ... END_MOVE
///   LEDGER|h|before|after     LEDGER|j|before|after
///   ASSUME|locallyThin        INCOMPRESSIBLE|id
///   EXPECT|h|n  EXPECT|j|n  EXPECT|pieces|n  EXPECT|piece-h|i|n  EXPECT|piece-j|i|n
///   EXPECT|circular|piece-index   EXPECT|incompressible|id   EXPECT|handlebodies|n
struct Trace {
  SplittingComplex initial;
  std::vector<TraceStep> steps;
};

Trace parseTrace(const std::string& text);
std::string serializeTrace(const Trace& t);

/// Lines for one move (block moves end with END_MOVE).
std::string serializeMove(const MoveSpec& m);
/// Move lines followed by LEDGER lines.
std::string serializeRecord(const MoveRecord& r);

/// Dispatches any move, including chop.
MoveResult applyMove(const SplittingComplex& c, const MoveSpec& m);

struct ReplayResult {
  bool ok = true;
  SplittingComplex final;
  std::vector<MoveRecord> records;
  std::vector<std::string> log;       // one line per directive
  std::vector<std::string> failures;  // subset of log lines that failed
};

/// Replays every directive, checking expectations, LEDGER lines and the
/// automatic invariants (handle index conserved by all moves except
/// (de)stabilization; handle number too when no handlebody is involved).
ReplayResult replayTrace(const Trace& t);

}  // namespace ghs
