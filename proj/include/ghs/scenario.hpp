#pragma once

#include <string>
#include <vector>

#include "ghs/trace.hpp"

namespace ghs {

const std::vector<std::string>& scenarioNames();

/// Complex each scripted scenario starts from, built from the constructions.
SplittingComplex scenarioSeed(const std::string& name);

struct ScenarioReport {
  std::string name;
  bool ok = true;
  std::vector<std::string> lines;  // replay log followed by claim checks
  ReplayResult replay;
};

/// Loads `<fixtureDir>/<name>.ghst`, checks its initial complex against the
/// seed, replays it and checks the scenario's chained h/j claims.
ScenarioReport runScenario(const std::string& name, const std::string& fixtureDir);
ScenarioReport runScenarioTrace(const std::string& name, const Trace& trace);

}  // namespace ghs
