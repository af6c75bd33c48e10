// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "ghs/constructions.hpp"
#include "ghs/fuzz.hpp"
#include "ghs/knot_evaluator.hpp"
#include "ghs/scenario.hpp"
#include "ghs/trace.hpp"

using namespace ghs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

// '#' lines are annotations; the serializer does not keep them.
std::string withoutComments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind('#', 0) != 0) out += line + '\n';
  return out;
}

double secondsSince(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;
std::map<int, std::string> lines;

void report(int n, const std::string& name, const Criterion& c, const std::string& summary) {
  lines[n] = "criterion " + std::to_string(n) + " " + (c.ok ? "PASS" : "FAIL") + " " + name + ": " +
             (c.ok ? summary : c.detail);
  if (!c.ok) ++failures;
}

int violations(const FuzzReport& r, const std::string& category) {
  auto it = r.violationsByCategory.find(category);
  return it == r.violationsByCategory.end() ? 0 : it->second;
}

int checks(const FuzzReport& r, const std::string& category) {
  auto it = r.checks.find(category);
  return it == r.checks.end() ? 0 : it->second;
}

// Body identity over every body of a complex; counts bodies seen.
int bodyIdentityFailures(const SplittingComplex& c, int& seen) {
  int bad = 0;
  for (const auto& [id, node] : c.bodies) {
    const CompressionBody w = c.resolve(id);
    ++seen;
    if (w.handleNumber() != w.handleIndex() + (w.isHandlebody() ? 2 : 0)) ++bad;
  }
  return bad;
}

HandleValue eval(const std::string& text, const KnotTable& t) {
  auto e = parseExpr(text);
  validateExpr(*e);
  return evalExpr(*e, t).value;
}

}  // namespace

int main() {
  const fs::path fixtures = GHS_FIXTURE_DIR;
  const fs::path data = GHS_DATA_DIR;
  const KnotTable table = mergeTables(defaultTable(), loadTable(slurp(data / "example-patterns.knots")));
  std::vector<SplittingComplex> built;  // every complex constructed outside the fuzzer

  // Shared fuzz corpus for criteria 1-5.
  const FuzzConfig config{1000, 20240611, 20, 0};
  const auto t0 = Clock::now();
  const FuzzReport fuzz = runFuzz(config);
  const double fuzzSeconds = secondsSince(t0);

  {
    Criterion c;
    c.require(fuzz.trials >= 1000, "fewer than 1000 trials");
    c.require(checks(fuzz, "handle-index") > 0, "no handle-index checks ran");
    c.require(violations(fuzz, "handle-index") == 0,
              std::to_string(violations(fuzz, "handle-index")) + " handle-index violations");
    c.require(fuzzSeconds < 10.0, "fuzz took " + std::to_string(fuzzSeconds) + " s");
    std::ostringstream s;
    s << checks(fuzz, "handle-index") << " moves checked over " << fuzz.trials << " trials (seed " << config.seed
      << ", <= " << config.maxMoves << " moves), 0 violations, " << fuzzSeconds << " s";
    report(1, "handle-index conservation", c, s.str());
  }
  {
    Criterion c;
    c.require(checks(fuzz, "handle-number") > 0, "no handlebody-free moves were checked");
    c.require(violations(fuzz, "handle-number") == 0,
              std::to_string(violations(fuzz, "handle-number")) + " handle-number violations");
    report(2, "handle-number conservation without handlebodies", c,
           std::to_string(checks(fuzz, "handle-number")) + " handlebody-free moves, 0 violations");
  }

  // Non-fuzz complexes are gathered below and checked for criterion 3 at the end.
  Criterion c4;
  c4.require(checks(fuzz, "stabilization") > 0, "no stabilizations ran");
  c4.require(violations(fuzz, "stabilization") == 0,
             std::to_string(violations(fuzz, "stabilization")) + " stabilization violations");
  for (int g = 1; g <= 4; ++g) {
    const auto k = circularSplitting(1, g);
    const auto s = stabilize(k, "S");
    const auto d = destabilize(s.complex, "S");
    c4.require(totalHandleIndex(s.complex) == totalHandleIndex(k) + 2, "stabilize did not add 2");
    c4.require(totalHandleIndex(d.complex) == totalHandleIndex(k), "destabilize did not subtract 2");
    built.push_back(s.complex);
  }
  report(4, "stabilization control", c4,
         std::to_string(checks(fuzz, "stabilization")) + " (de)stabilizations shift j by exactly +-2");

  {
    Criterion c;
    c.require(violations(fuzz, "round-trip") == 0,
              std::to_string(violations(fuzz, "round-trip")) + " round-trip violations");
    c.require(fuzz.roundTripTrials == fuzz.trials,
              std::to_string(fuzz.trials - fuzz.roundTripTrials) + " trials without a round trip");
    report(5, "weak reduction / amalgamation round trip", c,
           std::to_string(fuzz.roundTrips) + " round trips, every one of " + std::to_string(fuzz.trials) +
               " trials included, thick data restored");
  }

  {
    Criterion c;
    c.require(eval("3_1", table) == HandleValue::exactly(0), "3_1 is not exact 0");
    c.require(eval("5_2", table) == HandleValue::exactly(2), "5_2 is not exact 2");
    c.require(eval("5_2 # 6_1", table) == HandleValue::exactly(4), "5_2 # 6_1 is not exact 4");
    c.require(eval("3_1 # 4_1", table) == HandleValue::exactly(0), "3_1 # 4_1 is not exact 0");
    int pairs = 0;
    for (const auto& [a, ra] : table.knots)
      for (const auto& [b, rb] : table.knots) {
        const auto ka = realizeExpr(*parseExpr(a), table);
        const auto kb = realizeExpr(*parseExpr(b), table);
        if (!ka || !kb) continue;
        const auto sum = connectedSumCompose(*ka, *kb);
        built.push_back(sum);
        const auto v = eval(a + " # " + b, table);
        c.require(v.exact() && totalHandleNumber(sum) == v.lower, "composer disagrees on " + a + " # " + b);
        c.require(validate(sum).empty(), "invalid composed complex for " + a + " # " + b);
        ++pairs;
      }
    report(6, "additivity", c,
           "3_1=0, 5_2=2, 5_2#6_1=4, 3_1#4_1=0 exact; " + std::to_string(pairs) + " composed pairs match");
  }

  {
    Criterion c;
    c.require(eval("cable(2,3,5_2)", table) == HandleValue::exactly(2), "cable(2,3,5_2) is not exact 2");
    int iterated = 0;
    const std::vector<std::pair<int, int>> params{{2, 3}, {3, 2}, {2, -5}, {3, 7}, {5, 2}, {4, -3}};
    for (std::size_t depth = 1; depth <= params.size(); ++depth) {
      std::string e = "0_1";
      for (std::size_t i = 0; i < depth; ++i)
        e = "cable(" + std::to_string(params[i].first) + "," + std::to_string(params[i].second) + "," + e + ")";
      c.require(eval(e, table) == HandleValue::exactly(0), e + " is not exact 0");
      c.require(eval(e + " # 3_1", table) == HandleValue::exactly(0), e + " # 3_1 is not exact 0");
      ++iterated;
    }
    int pairs = 0;
    for (int p = 1; p <= 7; ++p)
      for (int q = -7; q <= 7; ++q) {
        if (std::gcd(p, q) != 1) continue;
        const auto k = cablePatternSplit(p, q);
        built.push_back(k);
        c.require(validate(k).empty() && isFibrationComplex(k),
                  "cablePatternSplit(" + std::to_string(p) + "," + std::to_string(q) + ") is not a fibration complex");
        ++pairs;
      }
    report(7, "cables", c,
           "cable(2,3,5_2)=2 exact, " + std::to_string(iterated) + " iterated torus knots exact 0, " +
               std::to_string(pairs) + " coprime (p,q) fibration complexes");
  }

  {
    Criterion c;
    int grid = 0;
    for (int gRP = 0; gRP <= 2; ++gRP)
      for (int dP = 0; dP <= 2; ++dP)
        for (int n = 1; n <= 3; ++n)
          for (int gR = 0; gR <= 2; ++gR)
            for (int dK = 0; dK <= 2; ++dK) {
              const auto pat = patternSplitting(gRP, gRP + dP, n);
              const auto comp = circularSplitting(gR, gR + dK);
              const auto sat = satelliteCompose(pat, comp, n);
              built.push_back(sat);
              const int expected = totalHandleNumber(pat) + totalHandleNumber(comp);
              c.require(validate(sat).empty(), "invalid satellite complex");
              c.require(totalHandleNumber(sat) == expected,
                        "satellite h " + std::to_string(totalHandleNumber(sat)) + " != " + std::to_string(expected));
              ++grid;
            }
    int evaluated = 0;
    for (const auto& [pname, p] : table.patterns)
      for (const auto& [kname, k] : table.knots) {
        const std::string e = "sat(" + pname + "," + std::to_string(p.winding) + "," + kname + ")";
        const auto v = eval(e, table);
        const int hi = *p.h.upper + *k.h.upper;
        c.require(v == HandleValue{0, hi}, e + " is not [0, " + std::to_string(hi) + "]");
        const auto realized = realizeExpr(*parseExpr(e), table);
        c.require(realized && totalHandleNumber(*realized) == hi, e + " realization does not reach the bound");
        if (realized) built.push_back(*realized);
        ++evaluated;
      }
    report(8, "satellite bound", c,
           std::to_string(grid) + " pattern/companion pairs with h = h(P)+h(K); " + std::to_string(evaluated) +
               " evaluator intervals [0, h(P)+h(K)]");
  }

  {
    Criterion c;
    std::ostringstream s;
    for (const auto& name : scenarioNames()) {
      const auto t = Clock::now();
      const auto r = runScenario(name, fixtures.string());
      const double secs = secondsSince(t);
      c.require(r.ok, "scenario " + name + " failed");
      c.require(secs < 1.0, "scenario " + name + " took " + std::to_string(secs) + " s");
      s << name << " (" << secs * 1000.0 << " ms) ";
      const auto replay = replayTrace(parseTrace(slurp(fixtures / (name + ".ghst"))));
      built.push_back(replay.final);
    }
    report(9, "proof scenarios", c, s.str() + "all pass");
  }

  {
    Criterion c;
    int complexes = 0, traces = 0;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
      const auto ext = entry.path().extension();
      const std::string text = slurp(entry.path());
      const std::string file = entry.path().filename().string();
      if (ext == ".ghs") {
        const auto k = deserialize(text);
        c.require(serialize(k) == withoutComments(text), file + " does not serialize back byte for byte");
        c.require(deserialize(serialize(k)) == k, file + " round trip changed the complex");
        built.push_back(k);
        ++complexes;
      } else if (ext == ".ghst") {
        const auto t = parseTrace(text);
        const std::string once = serializeTrace(t);
        c.require(serializeTrace(parseTrace(once)) == once, file + " trace serialization is not stable");
        c.require(serialize(parseTrace(once).initial) == serialize(t.initial), file + " initial complex changed");
        ++traces;
      }
    }
    // Golden machine output: "== expr" headers followed by the expected lines.
    std::istringstream golden(slurp(fixtures / "eval-machine.golden"));
    std::string line, expr, expected;
    int machine = 0;
    auto flush = [&] {
      if (expr.empty()) return;
      const std::string got = formatMachine(evalExpr(*parseExpr(expr), table));
      c.require(got == expected, "machine output for '" + expr + "' differs from the golden file");
      c.require(got == formatMachine(evalExpr(*parseExpr(expr), table)), "machine output is not repeatable");
      ++machine;
    };
    while (std::getline(golden, line)) {
      if (line.rfind("== ", 0) == 0) {
        flush();
        expr = line.substr(3);
        expected.clear();
      } else {
        expected += line + '\n';
      }
    }
    flush();
    c.require(complexes > 0 && traces > 0 && machine > 0, "fixture corpus is empty");
    report(10, "serialization", c,
           std::to_string(complexes) + " complexes and " + std::to_string(traces) + " traces round-trip; " +
               std::to_string(machine) + " machine outputs byte-identical to golden");
  }

  {
    // Criterion 3 last: it covers everything constructed above plus the fuzz corpus.
    Criterion c;
    int seen = 0, bad = 0;
    for (const auto& k : built) bad += bodyIdentityFailures(k, seen);
    c.require(violations(fuzz, "body-identity") == 0,
              std::to_string(violations(fuzz, "body-identity")) + " body-identity violations in fuzzing");
    c.require(bad == 0, std::to_string(bad) + " constructed bodies break h = j + 2*[handlebody]");
    report(3, "body identity", c,
           std::to_string(checks(fuzz, "body-identity") + seen) + " bodies checked, including " +
               std::to_string(fuzz.handlebodyTrials) + " trials with handlebodies");
  }

  for (const auto& [n, l] : lines) std::cout << l << '\n';
  std::cout << (failures == 0 ? "acceptance: all criteria pass" : "acceptance: " + std::to_string(failures) + " failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
