#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ghs/splitting_complex.hpp"

namespace ghs {

struct FuzzConfig {
  int trials = 100;
  std::uint64_t seed = 1;
  int maxMoves = 20;
  unsigned threads = 1;  // 0: hardware concurrency
};

struct MoveStats {
  int attempted = 0;
  int applied = 0;
  int rejected = 0;
};

struct FuzzReport {
  int trials = 0;
  int circularSeeds = 0;
  int patternSeeds = 0;
  int generatorSteps = 0;
  int handlebodyTrials = 0;
  int handleNumberGapTrials = 0;  // some complex had h != j
  int roundTrips = 0;
  int roundTripTrials = 0;
  std::map<std::string, MoveStats> moves;
  /// Invariant name -> number of times checked / violated.
  std::map<std::string, int> checks;
  std::map<std::string, int> violationsByCategory;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Sub-seed for one trial; independent of scheduling.
std::uint64_t trialSeed(std::uint64_t seed, int trial);

/// A random valid complex built from a seed splitting by inverse moves.
SplittingComplex randomComplex(std::uint64_t subSeed);

FuzzReport runFuzz(const FuzzConfig& config);
std::string formatFuzzReport(const FuzzConfig& config, const FuzzReport& report);

}  // namespace ghs
