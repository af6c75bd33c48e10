#include "ghs/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "ghs/constructions.hpp"
#include "ghs/moves.hpp"

namespace ghs {

std::uint64_t trialSeed(std::uint64_t seed, int trial) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

std::vector<std::string> idsWithRole(const SplittingComplex& c, Role role) {
  std::vector<std::string> out;
  for (const auto& [id, placed] : c.components)
    if (placed.role == role) out.push_back(id);
  return out;
}

std::string bodyWith(const SplittingComplex& c, const std::vector<std::string>& ids, BodyLabel label) {
  for (const auto& id : ids)
    if (c.body(id).label == label) return id;
  return "";
}

struct Proposal {
  std::string kind;
  MoveSpec move;
  bool roundTrip = false;
};

// Weak reduction of a random thick surface: either one non-separating disk
// per side, or an A-side disk cutting off a closed genus-k piece (which
// leaves a handlebody behind).
std::optional<Proposal> proposeWeakReduction(const SplittingComplex& c, Rng& rng) {
  const auto thick = idsWithRole(c, Role::Thick);
  if (thick.empty()) return std::nullopt;
  const std::string s = pick(rng, thick);
  const SurfaceComponent& surf = c.component(s).surface;
  WeakReductionMove m;
  m.thickTarget = s;
  m.maximal = uniform(rng, 0, 1) == 1;
  if (surf.genus >= 2 && !surf.isClosed() && uniform(rng, 0, 2) == 0) {
    const int k = uniform(rng, 1, surf.genus - 1);
    m.diskSystemA.push_back(DiskSurgery::separating(s, {surf.genus - k, surf.boundary}, {k, {}}));
    m.diskSystemB.push_back(DiskSurgery::nonSeparating(s));
    m.s1Name = freshId(c, "S");
    m.thinDisks.push_back(DiskSurgery::nonSeparating(leftChildId(m.s1Name)));
    const std::string a = bodyWith(c, c.bodiesOver(s), BodyLabel::A);
    for (const auto& x : c.body(a).minus) m.minusAToS1[x] = leftChildId(m.s1Name);
    return Proposal{"weak-reduce", m, false};
  }
  m.diskSystemA.push_back(DiskSurgery::nonSeparating(s));
  m.diskSystemB.push_back(DiskSurgery::nonSeparating(s));
  return Proposal{"weak-reduce", m, true};
}

WeakReductionMove nonSeparatingReduction(const std::string& thick) {
  WeakReductionMove m;
  m.thickTarget = thick;
  m.diskSystemA.push_back(DiskSurgery::nonSeparating(thick));
  m.diskSystemB.push_back(DiskSurgery::nonSeparating(thick));
  return m;
}

std::optional<Proposal> proposeAmalgamation(const SplittingComplex& c, Rng& rng) {
  const auto thin = idsWithRole(c, Role::Thin);
  if (thin.empty()) return std::nullopt;
  const std::string t = pick(rng, thin);
  const auto under = c.bodiesUnder(t);
  const std::string b1 = bodyWith(c, under, BodyLabel::B);
  const std::string a2 = bodyWith(c, under, BodyLabel::A);
  if (b1.empty() || a2.empty()) return std::nullopt;
  std::vector<std::string> shared;
  for (const auto& x : c.body(b1).minus)
    if (std::count(c.body(a2).minus.begin(), c.body(a2).minus.end(), x)) shared.push_back(x);
  return Proposal{"amalgamate", AmalgamateMove{shared, ""}, false};
}

std::optional<Proposal> proposeDeflation(const SplittingComplex& c, Rng& rng) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& s : idsWithRole(c, Role::Thick))
    for (const auto& b : c.bodiesOver(s))
      if (c.resolve(b).isTrivial() && c.component(c.body(b).minus.front()).role == Role::Thin)
        pairs.emplace_back(s, c.body(b).minus.front());
  if (pairs.empty()) return std::nullopt;
  const auto& [s, t] = pick(rng, pairs);
  return Proposal{"deflate", DeflateMove{s, t}, false};
}

std::optional<Proposal> propose(const std::string& kind, const SplittingComplex& c, Rng& rng) {
  if (kind == "weak-reduce") return proposeWeakReduction(c, rng);
  if (kind == "amalgamate") return proposeAmalgamation(c, rng);
  if (kind == "deflate") return proposeDeflation(c, rng);
  if (kind == "inflate") {
    const auto thin = idsWithRole(c, Role::Thin);
    if (thin.empty()) return std::nullopt;
    return Proposal{kind, InflateMove{pick(rng, thin), "", ""}, false};
  }
  const auto thick = idsWithRole(c, Role::Thick);
  if (thick.empty()) return std::nullopt;
  if (kind == "stabilize") return Proposal{kind, StabilizeMove{pick(rng, thick)}, false};
  return Proposal{kind, DestabilizeMove{pick(rng, thick)}, false};
}

MoveResult applySpec(const SplittingComplex& c, const MoveSpec& spec) {
  if (auto* m = std::get_if<AmalgamateMove>(&spec)) return amalgamate(c, *m);
  if (auto* m = std::get_if<WeakReductionMove>(&spec)) return weakReduce(c, *m);
  if (auto* m = std::get_if<InflateMove>(&spec)) return inflate(c, *m);
  if (auto* m = std::get_if<DeflateMove>(&spec)) return deflate(c, *m);
  if (auto* m = std::get_if<StabilizeMove>(&spec)) return stabilize(c, m->thick);
  if (auto* m = std::get_if<DestabilizeMove>(&spec)) return destabilize(c, m->thick);
  throw MoveError("unsupported move");
}

int chiOf(const Surface& s) { return s.eulerChar(); }

std::vector<std::pair<int, BoundaryMap>> thickMultiset(const SplittingComplex& c) {
  std::vector<std::pair<int, BoundaryMap>> out;
  for (const auto& s : c.thick().components) out.emplace_back(s.genus, s.boundary);
  std::sort(out.begin(), out.end());
  return out;
}

struct Finding {
  std::string category;
  std::string message;
};

struct TrialResult {
  bool circular = false;
  int generatorSteps = 0;
  bool sawHandlebody = false;
  bool sawGap = false;
  bool closingRoundTrip = false;
  int roundTrips = 0;
  std::map<std::string, MoveStats> moves;
  std::map<std::string, int> checks;
  std::vector<Finding> violations;
};

const std::vector<std::string> kMoveKinds{"amalgamate", "weak-reduce", "inflate",
                                          "deflate",    "stabilize",   "destabilize"};

void observe(TrialResult& t, const SplittingComplex& c) {
  if (handlebodyCount(c) > 0) t.sawHandlebody = true;
  if (totalHandleNumber(c) != totalHandleIndex(c)) t.sawGap = true;
}

// Checks every invariant across one applied move, counting each check made.
std::vector<Finding> checkMove(const std::string& kind, const SplittingComplex& before,
                               const SplittingComplex& after, std::map<std::string, int>& checks) {
  std::vector<Finding> out;
  const bool stab = kind == "stabilize" || kind == "destabilize";
  const int dj = kind == "stabilize" ? 2 : kind == "destabilize" ? -2 : 0;
  const int jb = totalHandleIndex(before), ja = totalHandleIndex(after);
  ++checks[stab ? "stabilization" : "handle-index"];
  if (ja - jb != dj)
    out.push_back({stab ? "stabilization" : "handle-index",
                   kind + ": handle index " + std::to_string(jb) + " -> " + std::to_string(ja)});
  const int hb = totalHandleNumber(before), ha = totalHandleNumber(after);
  if (!stab && handlebodyCount(before) == 0 && handlebodyCount(after) == 0) {
    ++checks["handle-number"];
    if (ha != hb)
      out.push_back({"handle-number", kind + ": handle number " + std::to_string(hb) + " -> " + std::to_string(ha) +
                                          " without handlebodies"});
  }
  ++checks["validity"];
  const auto v = validate(after);
  if (!v.empty()) out.push_back({"validity", kind + ": invalid result: " + v.front().message});
  for (const auto& [id, node] : after.bodies) {
    const CompressionBody w = after.resolve(id);
    ++checks["body-identity"];
    if (w.handleNumber() != w.handleIndex() + (w.isHandlebody() ? 2 : 0))
      out.push_back({"body-identity", kind + ": body '" + id + "' has h != j + 2*[handlebody]"});
  }
  ++checks["suture-balance"];
  if (sutureBalance(before) != sutureBalance(after))
    out.push_back({"suture-balance", kind + ": suture circle balance changed"});
  ++checks["euler-ledger"];
  const int ledgerBefore = chiOf(before.thick()) - chiOf(before.thin());
  const int ledgerAfter = chiOf(after.thick()) - chiOf(after.thin());
  if (ledgerAfter - ledgerBefore != -dj)
    out.push_back({"euler-ledger", kind + ": Euler characteristic ledger " + std::to_string(ledgerBefore) + " -> " +
                                       std::to_string(ledgerAfter)});
  return out;
}

// Amalgamating the thin surface created by a weak reduction restores the thick data.
void checkRoundTrip(TrialResult& t, const SplittingComplex& before, const SplittingComplex& reduced,
                    const std::string& where) {
  ++t.checks["round-trip"];
  try {
    const SplittingComplex back = amalgamate(reduced, createdThin(before, reduced)).complex;
    if (thickMultiset(back) != thickMultiset(before))
      t.violations.push_back({"round-trip", where + "round trip changed thick data"});
    ++t.roundTrips;
  } catch (const MoveError& e) {
    t.violations.push_back({"round-trip", where + "round trip amalgamation failed: " + e.what()});
  }
}

// Closing probe: one weak reduction of the final complex, stabilizing first if
// no thick surface admits one.
void closingRoundTrip(TrialResult& t, SplittingComplex c, const std::string& where) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const auto thick = idsWithRole(c, Role::Thick);
    for (const auto& s : thick) {
      MoveResult res;
      try {
        res = weakReduce(c, nonSeparatingReduction(s));
      } catch (const MoveError&) {
        continue;
      }
      for (auto& f : checkMove("weak-reduce", c, res.complex, t.checks))
        t.violations.push_back({f.category, where + "closing " + f.message});
      checkRoundTrip(t, c, res.complex, where + "closing ");
      t.closingRoundTrip = true;
      return;
    }
    if (thick.empty()) break;
    c = stabilize(c, thick.front()).complex;
  }
  t.violations.push_back({"round-trip", where + "no weak reduction found for the closing round trip"});
}

TrialResult runTrial(std::uint64_t subSeed, int maxMoves, int index) {
  TrialResult t;
  Rng rng(subSeed);
  SplittingComplex c;
  if (uniform(rng, 0, 1) == 0) {
    const int gR = uniform(rng, 0, 2);
    c = circularSplitting(gR, gR + uniform(rng, 0, 3));
    t.circular = true;
  } else {
    const int gR = uniform(rng, 0, 2);
    c = patternSplitting(gR, gR + uniform(rng, 0, 2), uniform(rng, 1, 3));
  }
  const std::string where = "trial " + std::to_string(index) + ": ";

  // Generator: inverse amalgamations (weak reductions) and inflations.
  const int genSteps = uniform(rng, 0, 3);
  for (int i = 0; i < genSteps; ++i) {
    const bool reduce = uniform(rng, 0, 2) != 0;
    auto p = propose(reduce ? "weak-reduce" : "inflate", c, rng);
    if (!p) continue;
    try {
      c = applySpec(c, p->move).complex;
      ++t.generatorSteps;
    } catch (const MoveError&) {
    }
  }
  observe(t, c);

  for (int i = 0; i < maxMoves; ++i) {
    const std::string& kind = pick(rng, kMoveKinds);
    MoveStats& stats = t.moves[kind];
    auto p = propose(kind, c, rng);
    if (!p) continue;
    ++stats.attempted;
    MoveResult res;
    try {
      res = applySpec(c, p->move);
    } catch (const MoveError&) {
      ++stats.rejected;
      continue;
    }
    ++stats.applied;
    for (auto& f : checkMove(kind, c, res.complex, t.checks)) t.violations.push_back({f.category, where + f.message});
    if (p->roundTrip) checkRoundTrip(t, c, res.complex, where);
    c = std::move(res.complex);
    observe(t, c);
  }
  closingRoundTrip(t, c, where);
  return t;
}

}  // namespace

SplittingComplex randomComplex(std::uint64_t subSeed) {
  Rng rng(subSeed);
  SplittingComplex c = uniform(rng, 0, 1) == 0 ? circularSplitting(1, 1 + uniform(rng, 0, 3))
                                               : patternSplitting(1, 1 + uniform(rng, 0, 2), uniform(rng, 1, 3));
  const int steps = uniform(rng, 0, 4);
  for (int i = 0; i < steps; ++i) {
    auto p = propose(uniform(rng, 0, 2) != 0 ? "weak-reduce" : "inflate", c, rng);
    if (!p) continue;
    try {
      c = applySpec(c, p->move).complex;
    } catch (const MoveError&) {
    }
  }
  return c;
}

FuzzReport runFuzz(const FuzzConfig& config) {
  const int n = std::max(config.trials, 0);
  std::vector<TrialResult> results(static_cast<std::size_t>(n));
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++)
      results[static_cast<std::size_t>(i)] = runTrial(trialSeed(config.seed, i), config.maxMoves, i);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  FuzzReport r;
  r.trials = n;
  for (const auto& kind : kMoveKinds) r.moves[kind];
  for (const auto& t : results) {
    (t.circular ? r.circularSeeds : r.patternSeeds) += 1;
    r.generatorSteps += t.generatorSteps;
    r.handlebodyTrials += t.sawHandlebody ? 1 : 0;
    r.handleNumberGapTrials += t.sawGap ? 1 : 0;
    r.roundTrips += t.roundTrips;
    r.roundTripTrials += t.closingRoundTrip ? 1 : 0;
    for (const auto& [kind, s] : t.moves) {
      r.moves[kind].attempted += s.attempted;
      r.moves[kind].applied += s.applied;
      r.moves[kind].rejected += s.rejected;
    }
    for (const auto& [k, n] : t.checks) r.checks[k] += n;
    for (const auto& f : t.violations) {
      r.violationsByCategory[f.category] += 1;
      r.violations.push_back(f.message);
    }
  }
  return r;
}

std::string formatFuzzReport(const FuzzConfig& config, const FuzzReport& r) {
  std::ostringstream out;
  out << "fuzz seed=" << config.seed << " trials=" << r.trials << " max-moves=" << config.maxMoves << '\n';
  out << "seeds: circular=" << r.circularSeeds << " pattern=" << r.patternSeeds << '\n';
  out << "generator steps: " << r.generatorSteps << '\n';
  out << "trials with handlebodies: " << r.handlebodyTrials << '\n';
  out << "trials with h != j: " << r.handleNumberGapTrials << '\n';
  out << "round trips: " << r.roundTrips << " (" << r.roundTripTrials << " trials with a closing round trip)\n";
  for (const auto& [kind, s] : r.moves)
    out << "move " << kind << ": attempted=" << s.attempted << " applied=" << s.applied
        << " rejected=" << s.rejected << '\n';
  for (const auto& [k, n] : r.checks) {
    auto it = r.violationsByCategory.find(k);
    out << "check " << k << ": " << n << " checked, " << (it == r.violationsByCategory.end() ? 0 : it->second)
        << " violated\n";
  }
  out << "violations: " << r.violations.size() << '\n';
  const std::size_t shown = std::min<std::size_t>(r.violations.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) out << "  " << r.violations[i] << '\n';
  return out.str();
}

}  // namespace ghs
