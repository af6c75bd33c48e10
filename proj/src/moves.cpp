#include "ghs/moves.hpp"

#include <algorithm>
#include <set>

namespace ghs {

const char* moveName(const MoveSpec& move) {
  struct Visitor {
    const char* operator()(const AmalgamateMove&) const { return "amalgamate"; }
    const char* operator()(const WeakReductionMove&) const { return "weak-reduce"; }
    const char* operator()(const InflateMove&) const { return "inflate"; }
    const char* operator()(const DeflateMove&) const { return "deflate"; }
    const char* operator()(const StabilizeMove&) const { return "stabilize"; }
    const char* operator()(const DestabilizeMove&) const { return "destabilize"; }
    const char* operator()(const ChopMove&) const { return "chop"; }
  };
  return std::visit(Visitor{}, move);
}

void requireValid(const SplittingComplex& c, const std::string& context) {
  const auto violations = validate(c);
  if (violations.empty()) return;
  std::string msg = context + ": " + violations.front().message;
  if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
  throw MoveError(msg);
}

std::vector<std::string> createdThin(const SplittingComplex& before, const SplittingComplex& after) {
  std::vector<std::string> out;
  for (const auto& [id, placed] : after.components)
    if (placed.role == Role::Thin && !before.components.count(id)) out.push_back(id);
  return out;
}

namespace {

std::string findBody(const SplittingComplex& c, const std::vector<std::string>& ids, BodyLabel label) {
  for (const auto& id : ids)
    if (c.bodies.at(id).label == label) return id;
  throw MoveError("no " + std::string(toString(label)) + "-body found");
}

std::string bodyOver(const SplittingComplex& c, const std::string& comp, BodyLabel label) {
  return findBody(c, c.bodiesOver(comp), label);
}

std::string bodyUnder(const SplittingComplex& c, const std::string& comp, BodyLabel label) {
  return findBody(c, c.bodiesUnder(comp), label);
}

const PlacedComponent& requireRole(const SplittingComplex& c, const std::string& id, Role role) {
  auto it = c.components.find(id);
  if (it == c.components.end()) throw MoveError("unknown component '" + id + "'");
  if (it->second.role != role)
    throw MoveError("component '" + id + "' is " + toString(it->second.role) + ", expected " +
                    toString(role));
  return it->second;
}

void addBody(SplittingComplex& c, const std::string& id, BodyLabel label, const std::string& plus,
             std::vector<std::string> minus) {
  std::sort(minus.begin(), minus.end());
  c.bodies[id] = BodyNode{id, label, plus, std::move(minus)};
}

void addComponent(SplittingComplex& c, Role role, SurfaceComponent s) {
  if (c.hasId(s.id)) throw MoveError("id '" + s.id + "' is already in use");
  std::string id = s.id;
  c.components.emplace(id, PlacedComponent{role, std::move(s)});
}

void removeComponent(SplittingComplex& c, const std::string& id) {
  c.components.erase(id);
  c.incompressible.erase(id);
}

void refreshThinFlag(SplittingComplex& c, bool keepFlag) {
  bool all = true;
  for (const auto& [id, placed] : c.components)
    if (placed.role == Role::Thin && !c.incompressible.count(id)) all = false;
  if (all || keepFlag)
    c.assumptions.insert(Assumption::ThinIncompressible);
  else
    c.assumptions.erase(Assumption::ThinIncompressible);
}

MoveResult finish(const SplittingComplex& before, SplittingComplex after, MoveSpec spec,
                  const std::string& context) {
  requireValid(after, context + " produced an invalid complex");
  MoveRecord record{std::move(spec), totalHandleNumber(before), totalHandleNumber(after),
                    totalHandleIndex(before), totalHandleIndex(after)};
  return MoveResult{std::move(after), std::move(record)};
}

std::string reroot(const std::string& key, const std::string& from, const std::string& to) {
  if (key == from) return to;
  if (key.size() > from.size() && key.compare(0, from.size(), from) == 0 && key[from.size()] == '.')
    return to + key.substr(from.size());
  throw MoveError("lineage key '" + key + "' is not rooted at '" + from + "'");
}

Surface rerootSurface(const Surface& s, const std::string& from, const std::string& to) {
  Surface out = s;
  for (auto& c : out.components) c.id = reroot(c.id, from, to);
  return out;
}

std::vector<DiskSurgery> rerootDisks(std::vector<DiskSurgery> disks, const std::string& from,
                                     const std::string& to) {
  for (auto& d : disks) d.target = reroot(d.target, from, to);
  return disks;
}

}  // namespace

// ---------------------------------------------------------------------------

MoveResult amalgamate(const SplittingComplex& c, const std::vector<std::string>& thinSet) {
  return amalgamate(c, AmalgamateMove{thinSet, ""});
}

MoveResult amalgamate(const SplittingComplex& c, const AmalgamateMove& m) {
  requireValid(c, "amalgamate");
  if (m.thinSet.empty()) throw MoveError("amalgamation along an empty thin set");
  std::set<std::string> thin(m.thinSet.begin(), m.thinSet.end());
  if (thin.size() != m.thinSet.size()) throw MoveError("thin set lists a component twice");

  std::string b1, a2;
  for (const auto& t : thin) {
    requireRole(c, t, Role::Thin);
    const std::string b = bodyUnder(c, t, BodyLabel::B);
    const std::string a = bodyUnder(c, t, BodyLabel::A);
    if (b1.empty()) {
      b1 = b;
      a2 = a;
    } else if (b != b1 || a != a2) {
      throw MoveError("thin set is not B1 ∩ A2 for a single pair of bodies");
    }
  }
  const BodyNode& nodeB1 = c.body(b1);
  const BodyNode& nodeA2 = c.body(a2);
  const std::string s1 = nodeB1.plus;
  const std::string s2 = nodeA2.plus;
  if (s1 == s2) throw MoveError("self-amalgamation: both sides lie over thick '" + s1 + "'");

  std::set<std::string> shared;
  for (const auto& x : nodeB1.minus)
    if (std::find(nodeA2.minus.begin(), nodeA2.minus.end(), x) != nodeA2.minus.end()) shared.insert(x);
  if (shared != thin)
    throw MoveError("thin set is a proper subset of B1 ∩ A2; inflate the remaining components first");

  const std::string a1 = bodyOver(c, s1, BodyLabel::A);
  const std::string b2 = bodyOver(c, s2, BodyLabel::B);
  const SurfaceComponent& surf1 = c.component(s1).surface;
  const SurfaceComponent& surf2 = c.component(s2).surface;

  BoundaryMap boundary = addBoundary(surf1.boundary, surf2.boundary);
  int chiThin = 0;
  for (const auto& t : thin) {
    const auto& s = c.component(t).surface;
    chiThin += s.eulerChar();
    for (const auto& [suture, count] : s.boundary) boundary[suture] -= count;
  }
  try {
    boundary = normalized(boundary);
  } catch (const SurgeryError&) {
    throw MoveError("amalgamated thick surface would have negative boundary count");
  }
  const int chi = surf1.eulerChar() + surf2.eulerChar() - chiThin;
  const int twiceGenus = 2 - chi - totalCircles(boundary);
  if (twiceGenus < 0 || twiceGenus % 2 != 0)
    throw MoveError("amalgamated thick surface has no consistent genus (chi=" + std::to_string(chi) + ")");

  SplittingComplex out = c;
  for (const auto& id : {a1, b1, a2, b2}) out.bodies.erase(id);
  removeComponent(out, s1);
  removeComponent(out, s2);
  for (const auto& t : thin) removeComponent(out, t);

  SurfaceComponent merged;
  merged.id = m.newThick.empty() ? freshId(out, "S") : m.newThick;
  merged.genus = twiceGenus / 2;
  merged.boundary = boundary;
  merged.orientationTag = surf1.orientationTag;
  addComponent(out, Role::Thick, merged);

  std::vector<std::string> minusA = c.body(a1).minus;
  for (const auto& x : nodeA2.minus)
    if (!thin.count(x)) minusA.push_back(x);
  std::vector<std::string> minusB = c.body(b2).minus;
  for (const auto& x : nodeB1.minus)
    if (!thin.count(x)) minusB.push_back(x);
  addBody(out, freshId(out, "A"), BodyLabel::A, merged.id, minusA);
  addBody(out, freshId(out, "B"), BodyLabel::B, merged.id, minusB);

  out.assumptions.erase(Assumption::LocallyThin);
  out.assumptions.erase(Assumption::StronglyIrreducible);

  AmalgamateMove spec = m;
  spec.newThick = merged.id;
  std::sort(spec.thinSet.begin(), spec.thinSet.end());
  return finish(c, std::move(out), std::move(spec), "amalgamate");
}

// ---------------------------------------------------------------------------

MoveResult weakReduce(const SplittingComplex& c, const WeakReductionMove& m) {
  requireValid(c, "weak reduction");
  const SurfaceComponent& target = requireRole(c, m.thickTarget, Role::Thick).surface;
  const std::string bodyA = bodyOver(c, m.thickTarget, BodyLabel::A);
  const std::string bodyB = bodyOver(c, m.thickTarget, BodyLabel::B);
  const CompressionBody wA = c.resolve(bodyA);
  const CompressionBody wB = c.resolve(bodyB);
  if (wA.isTrivial() || wB.isTrivial())
    throw MoveError("weak reduction of '" + m.thickTarget + "' needs non-trivial bodies on both sides");
  const int a = static_cast<int>(m.diskSystemA.size());
  const int b = static_cast<int>(m.diskSystemB.size());
  if (a < 1 || b < 1) throw MoveError("weak reduction needs at least one disk on each side");

  SplittingComplex out = c;
  removeComponent(out, m.thickTarget);
  out.bodies.erase(bodyA);
  out.bodies.erase(bodyB);
  const std::string s1Name = m.s1Name.empty() ? freshId(out, "S") : m.s1Name;
  std::string thinName = m.thinName;
  std::string s2Name = m.s2Name;
  if (s1Name == thinName || s1Name == s2Name || (!thinName.empty() && thinName == s2Name))
    throw MoveError("weak reduction names must be distinct");

  const Surface original{{target}};
  Surface s1, s2, thinSurface;
  Lineage thinLineage;
  try {
    s1 = rerootSurface(applyDiskSurgeries(original, m.diskSystemA).surface, target.id, s1Name);
    const std::vector<DiskSurgery> thinDisks =
        m.thinDisks.empty() ? rerootDisks(m.diskSystemB, target.id, s1Name) : m.thinDisks;
    if (static_cast<int>(thinDisks.size()) != b)
      throw MoveError("thin-side disk list must have the same size as the B disk system");
    SurgeryResult thinResult = applyDiskSurgeries(s1, thinDisks);
    // Reserve S1 names before picking defaults for the remaining surfaces.
    for (const auto& piece : s1.components) addComponent(out, Role::Thick, piece);
    if (thinName.empty()) thinName = freshId(out, "R");
    thinSurface = rerootSurface(thinResult.surface, s1Name, thinName);
    for (auto& [origin, finals] : thinResult.lineage)
      for (auto& f : finals) f = reroot(f, s1Name, thinName);
    thinLineage = std::move(thinResult.lineage);
    for (const auto& piece : thinSurface.components) addComponent(out, Role::Thin, piece);
    if (s2Name.empty()) s2Name = freshId(out, "S");
    s2 = rerootSurface(applyDiskSurgeries(original, m.diskSystemB).surface, target.id, s2Name);
    for (const auto& piece : s2.components) addComponent(out, Role::Thick, piece);
  } catch (const SurgeryError& e) {
    throw MoveError(std::string("weak reduction surgery failed: ") + e.what());
  }

  const int chiS = target.eulerChar();
  if (s1.eulerChar() != chiS + 2 * a || s2.eulerChar() != chiS + 2 * b ||
      thinSurface.eulerChar() != chiS + 2 * a + 2 * b)
    throw MoveError("weak reduction Euler characteristic ledger does not balance");

  auto assign = [](const std::map<std::string, std::string>& explicitMap, const std::string& key,
                   const Surface& pieces, const char* what) -> std::string {
    auto it = explicitMap.find(key);
    if (it != explicitMap.end()) {
      if (!pieces.find(it->second))
        throw MoveError(std::string(what) + " assigns '" + key + "' to unknown piece '" + it->second + "'");
      return it->second;
    }
    if (pieces.size() == 1) return pieces.components.front().id;
    throw MoveError(std::string(what) + " does not assign '" + key + "' and the target is disconnected");
  };
  auto checkKeys = [](const std::map<std::string, std::string>& explicitMap,
                      const std::vector<std::string>& allowed, const char* what) {
    for (const auto& [key, value] : explicitMap)
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw MoveError(std::string(what) + " names '" + key + "', which is not in its domain");
  };
  std::vector<std::string> thinIds;
  for (const auto& piece : thinSurface.components) thinIds.push_back(piece.id);
  checkKeys(m.minusAToS1, c.body(bodyA).minus, "A-side partition");
  checkKeys(m.minusBToS2, c.body(bodyB).minus, "B-side partition");
  checkKeys(m.thinToS2, thinIds, "thin wiring");

  std::map<std::string, std::vector<std::string>> a1Minus, b1Minus, a2Minus, b2Minus;
  for (const auto& x : c.body(bodyA).minus) a1Minus[assign(m.minusAToS1, x, s1, "A-side partition")].push_back(x);
  for (const auto& x : c.body(bodyB).minus) b2Minus[assign(m.minusBToS2, x, s2, "B-side partition")].push_back(x);
  for (const auto& [piece, finals] : thinLineage)
    for (const auto& f : finals) b1Minus[piece].push_back(f);
  for (const auto& r : thinIds) a2Minus[assign(m.thinToS2, r, s2, "thin wiring")].push_back(r);

  std::vector<std::string> a1Ids, b1Ids, a2Ids, b2Ids;
  for (const auto& piece : s1.components) {
    a1Ids.push_back(freshId(out, "A"));
    addBody(out, a1Ids.back(), BodyLabel::A, piece.id, a1Minus[piece.id]);
  }
  for (const auto& piece : s1.components) {
    b1Ids.push_back(freshId(out, "B"));
    addBody(out, b1Ids.back(), BodyLabel::B, piece.id, b1Minus[piece.id]);
  }
  for (const auto& piece : s2.components) {
    a2Ids.push_back(freshId(out, "A"));
    addBody(out, a2Ids.back(), BodyLabel::A, piece.id, a2Minus[piece.id]);
  }
  for (const auto& piece : s2.components) {
    b2Ids.push_back(freshId(out, "B"));
    addBody(out, b2Ids.back(), BodyLabel::B, piece.id, b2Minus[piece.id]);
  }

  requireValid(out, "weak reduction produced an invalid complex");
  auto sumIndex = [&](const std::vector<std::string>& ids) {
    int j = 0;
    for (const auto& id : ids) j += out.resolve(id).handleIndex();
    return j;
  };
  if (sumIndex(a1Ids) != wA.handleIndex() - a || sumIndex(b1Ids) != b || sumIndex(a2Ids) != a ||
      sumIndex(b2Ids) != wB.handleIndex() - b)
    throw MoveError("weak reduction handle-index ledger does not balance");

  const bool hadThinFlag = c.assumptions.count(Assumption::ThinIncompressible) > 0;
  out.assumptions.erase(Assumption::LocallyThin);
  out.assumptions.erase(Assumption::StronglyIrreducible);
  if (m.maximal)
    for (const auto& r : thinIds) out.incompressible.insert(r);
  refreshThinFlag(out, hadThinFlag && m.maximal);

  WeakReductionMove spec = m;
  spec.s1Name = s1Name;
  spec.thinName = thinName;
  spec.s2Name = s2Name;
  return finish(c, std::move(out), std::move(spec), "weak reduction");
}

// ---------------------------------------------------------------------------

MoveResult inflate(const SplittingComplex& c, const std::string& thinId) {
  return inflate(c, InflateMove{thinId, "", ""});
}

MoveResult inflate(const SplittingComplex& c, const InflateMove& m) {
  requireValid(c, "inflate");
  const SurfaceComponent& thin = requireRole(c, m.thin, Role::Thin).surface;
  const std::string aAbove = bodyUnder(c, m.thin, BodyLabel::A);

  SplittingComplex out = c;
  SurfaceComponent thick = thin;
  thick.id = m.newThick.empty() ? freshId(out, "S") : m.newThick;
  addComponent(out, Role::Thick, thick);
  SurfaceComponent copy = thin;
  copy.id = m.newThin.empty() ? freshId(out, "R") : m.newThin;
  addComponent(out, Role::Thin, copy);
  if (c.incompressible.count(m.thin)) out.incompressible.insert(copy.id);

  BodyNode& above = out.bodies.at(aAbove);
  std::replace(above.minus.begin(), above.minus.end(), m.thin, copy.id);
  std::sort(above.minus.begin(), above.minus.end());
  addBody(out, freshId(out, "A"), BodyLabel::A, thick.id, {m.thin});
  addBody(out, freshId(out, "B"), BodyLabel::B, thick.id, {copy.id});

  InflateMove spec{m.thin, thick.id, copy.id};
  return finish(c, std::move(out), std::move(spec), "inflate");
}

MoveResult deflate(const SplittingComplex& c, const DeflateMove& m) {
  requireValid(c, "deflate");
  requireRole(c, m.thick, Role::Thick);
  requireRole(c, m.thin, Role::Thin);
  const std::string a = bodyOver(c, m.thick, BodyLabel::A);
  const std::string b = bodyOver(c, m.thick, BodyLabel::B);
  if (!c.resolve(a).isTrivial() || !c.resolve(b).isTrivial())
    throw MoveError("deflate: thick '" + m.thick + "' does not bound two trivial bodies");

  const BodyNode& nodeA = c.body(a);
  const BodyNode& nodeB = c.body(b);
  std::string containing, other;
  if (nodeA.minus.front() == m.thin) {
    containing = a;
    other = b;
  } else if (nodeB.minus.front() == m.thin) {
    containing = b;
    other = a;
  } else {
    throw MoveError("deflate: thin '" + m.thin + "' does not bound a body over '" + m.thick + "'");
  }
  const std::string keep = c.body(other).minus.front();
  if (keep == m.thin) throw MoveError("deflate: the pair closes up on itself");
  const BodyLabel outerLabel = c.body(other).label;
  const std::string outer = bodyUnder(c, m.thin, outerLabel);
  if (outer == other) throw MoveError("deflate: the pair closes up on itself");
  if (c.body(outer).plus == m.thick) throw MoveError("deflate: degenerate incidence");

  SplittingComplex out = c;
  out.bodies.erase(a);
  out.bodies.erase(b);
  removeComponent(out, m.thick);
  removeComponent(out, m.thin);
  BodyNode& outerNode = out.bodies.at(outer);
  std::replace(outerNode.minus.begin(), outerNode.minus.end(), m.thin, keep);
  std::sort(outerNode.minus.begin(), outerNode.minus.end());
  refreshThinFlag(out, c.assumptions.count(Assumption::ThinIncompressible) > 0);
  return finish(c, std::move(out), m, "deflate");
}

// ---------------------------------------------------------------------------

MoveResult stabilize(const SplittingComplex& c, const std::string& thickId) {
  requireValid(c, "stabilize");
  requireRole(c, thickId, Role::Thick);
  SplittingComplex out = c;
  out.components.at(thickId).surface.genus += 1;
  out.assumptions.erase(Assumption::StronglyIrreducible);
  out.assumptions.erase(Assumption::LocallyThin);
  return finish(c, std::move(out), StabilizeMove{thickId}, "stabilize");
}

MoveResult destabilize(const SplittingComplex& c, const std::string& thickId) {
  requireValid(c, "destabilize");
  const SurfaceComponent& s = requireRole(c, thickId, Role::Thick).surface;
  if (s.genus < 1) throw MoveError("destabilize: thick '" + thickId + "' has genus 0");
  SplittingComplex out = c;
  out.components.at(thickId).surface.genus -= 1;
  if (!isValid(out)) throw MoveError("destabilize: '" + thickId + "' would leave an invalid body");
  return finish(c, std::move(out), DestabilizeMove{thickId}, "destabilize");
}

}  // namespace ghs
