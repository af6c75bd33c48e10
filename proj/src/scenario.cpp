#include "ghs/scenario.hpp"

#include <fstream>
#include <sstream>

namespace ghs {

const std::vector<std::string>& scenarioNames() {
  static const std::vector<std::string> names{"lemma-incompressible", "thm-additivity", "thm-cable"};
  return names;
}

SplittingComplex scenarioSeed(const std::string& name) {
  if (name == "lemma-incompressible") return circularSplitting(1, 3);
  if (name == "thm-additivity") return connectedSumCompose(circularSplitting(1, 2), circularSplitting(1, 2));
  if (name == "thm-cable") return satelliteCompose(cablePatternSplit(2, 3), circularSplitting(1, 2), 2);
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

namespace {

void claim(ScenarioReport& r, bool ok, const std::string& what) {
  r.lines.push_back((ok ? "ok   claim: " : "FAIL claim: ") + what);
  if (!ok) r.ok = false;
}

std::string eq(int a, int b) { return std::to_string(a) + (a == b ? " = " : " != ") + std::to_string(b); }

bool hasSuture(const SplittingComplex& c, const std::string& prefix) {
  for (const auto& [id, kind] : c.sutures)
    if (id.rfind(prefix, 0) == 0) return true;
  return false;
}

void lemmaClaims(ScenarioReport& r, const SplittingComplex& start, const SplittingComplex& end) {
  const int h0 = totalHandleNumber(start);
  const int h1 = totalHandleNumber(end);
  claim(r, isCircularSplitting(end), "final complex is a circular splitting");
  const Surface thin = end.thin();
  const bool marked = thin.size() == 1 && end.incompressible.count(thin.components.front().id) > 0;
  claim(r, marked, "final thin surface is incompressible");
  claim(r, h1 == h0, "h(final) = h(initial): " + eq(h1, h0));
  claim(r, h1 == totalHandleIndex(end), "h = j on the final splitting");
}

void splitClaims(ScenarioReport& r, const SplittingComplex& start, const SplittingComplex& end, bool knotPieces) {
  const auto pieces = connectedPieces(end);
  claim(r, pieces.size() == 2, "chop leaves two pieces (" + std::to_string(pieces.size()) + ")");
  int jSum = 0;
  for (const auto& p : pieces) jSum += totalHandleIndex(p);
  const int j0 = totalHandleIndex(start);
  claim(r, jSum == j0, "sum of piece j = initial j: " + eq(jSum, j0));
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    const std::string tag = "piece " + std::to_string(i);
    if (knotPieces || hasSuture(p, "kK")) claim(r, isCircularSplitting(p), tag + " is a circular splitting");
    claim(r, handlebodyCount(p) > 0 || totalHandleNumber(p) == totalHandleIndex(p),
          tag + " h = j: " + eq(totalHandleNumber(p), totalHandleIndex(p)));
  }
}

}  // namespace

ScenarioReport runScenarioTrace(const std::string& name, const Trace& trace) {
  ScenarioReport r;
  r.name = name;
  const SplittingComplex seed = scenarioSeed(name);
  claim(r, trace.initial == seed, "fixture starts from the constructed seed complex");
  r.replay = replayTrace(trace);
  for (const auto& l : r.replay.log) r.lines.push_back(l);
  if (!r.replay.ok) {
    r.ok = false;
    return r;
  }
  const SplittingComplex& end = r.replay.final;
  if (name == "lemma-incompressible") {
    lemmaClaims(r, trace.initial, end);
  } else if (name == "thm-additivity") {
    splitClaims(r, trace.initial, end, true);
    const auto pieces = connectedPieces(end);
    int hSum = 0;
    for (const auto& p : pieces) hSum += totalHandleNumber(p);
    claim(r, hSum == totalHandleNumber(trace.initial),
          "h(Ka) + h(Kb) = h(K): " + eq(hSum, totalHandleNumber(trace.initial)));
  } else if (name == "thm-cable") {
    splitClaims(r, trace.initial, end, false);
    int jK = -1, jV = -1;
    for (const auto& p : connectedPieces(end)) {
      if (hasSuture(p, "kK")) jK = totalHandleIndex(p);
      if (hasSuture(p, "kV")) jV = totalHandleIndex(p);
    }
    claim(r, jK >= 0 && jV >= 0, "knot piece and solid-torus piece identified");
    claim(r, jK + jV == totalHandleIndex(trace.initial),
          "j_K + j_V = j: " + eq(jK + jV, totalHandleIndex(trace.initial)));
    claim(r, jV >= 0, "j_V >= 0");
  }
  return r;
}

ScenarioReport runScenario(const std::string& name, const std::string& fixtureDir) {
  const std::string path = fixtureDir + "/" + name + ".ghst";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read fixture '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return runScenarioTrace(name, parseTrace(buffer.str()));
}

}  // namespace ghs
