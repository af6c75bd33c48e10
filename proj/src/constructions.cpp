#include "ghs/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ghs {

namespace {

SurfaceComponent makeSurface(const std::string& id, int genus, BoundaryMap boundary) {
  SurfaceComponent s;
  s.id = id;
  s.genus = genus;
  s.boundary = normalized(std::move(boundary));
  return s;
}

SplittingComplex circularShape(std::map<std::string, SutureKind> sutures, SurfaceComponent thin,
                               SurfaceComponent thick) {
  SplittingComplex c;
  c.sutures = std::move(sutures);
  c.bodies["A"] = BodyNode{"A", BodyLabel::A, thick.id, {thin.id}};
  c.bodies["B"] = BodyNode{"B", BodyLabel::B, thick.id, {thin.id}};
  const std::string thinId = thin.id, thickId = thick.id;
  c.components[thinId] = PlacedComponent{Role::Thin, std::move(thin)};
  c.components[thickId] = PlacedComponent{Role::Thick, std::move(thick)};
  return c;
}

const SurfaceComponent& onlyOf(const SplittingComplex& c, Role role) {
  for (const auto& [id, placed] : c.components)
    if (placed.role == role) return placed.surface;
  throw ConstructionError("complex has no " + std::string(toString(role)) + " component");
}

SurfaceComponent renameSuture(SurfaceComponent s, const std::string& from, const std::string& to) {
  BoundaryMap b;
  for (const auto& [suture, count] : s.boundary) b[suture == from ? to : suture] += count;
  s.boundary = normalized(std::move(b));
  return s;
}

}  // namespace

bool isKnotExteriorSplitting(const SplittingComplex& c) {
  if (!isCircularSplitting(c) || c.sutures.size() != 1) return false;
  const std::string& k = c.sutures.begin()->first;
  for (const auto& [id, placed] : c.components)
    if (placed.surface.boundary != BoundaryMap{{k, 1}}) return false;
  return true;
}

SplittingComplex circularSplitting(int genusR, int genusS) {
  if (genusR < 0 || genusS < 0) throw ConstructionError("genus must be non-negative");
  if (genusS < genusR) throw ConstructionError("thick genus must be at least the thin genus");
  return circularShape({{"k", SutureKind::Toroidal}}, makeSurface("R", genusR, {{"k", 1}}),
                       makeSurface("S", genusS, {{"k", 1}}));
}

SplittingComplex patternSplitting(int genusRP, int genusSP, int winding) {
  if (winding < 1) throw ConstructionError("pattern winding number must be positive");
  if (genusRP < 0 || genusSP < 0) throw ConstructionError("genus must be non-negative");
  if (genusSP < genusRP) throw ConstructionError("thick genus must be at least the thin genus");
  const BoundaryMap b{{"k", 1}, {"c", winding}};
  return circularShape({{"c", SutureKind::Toroidal}, {"k", SutureKind::Toroidal}},
                       makeSurface("R", genusRP, b), makeSurface("S", genusSP, b));
}

SplittingComplex cablePatternSplit(int p, int q) {
  if (p < 1) throw ConstructionError("cable parameter p must be positive");
  if (std::gcd(p, q) != 1) throw ConstructionError("cable parameters must be coprime");
  const int absQ = q < 0 ? -q : q;
  const int genus = (p - 1) * (absQ - 1) / 2;
  SplittingComplex c = patternSplitting(genus, genus, p);
  c.assumptions.insert(Assumption::ThinIncompressible);
  return c;
}

SplittingComplex connectedSumCompose(const SplittingComplex& ca, const SplittingComplex& cb) {
  if (!isKnotExteriorSplitting(ca) || !isKnotExteriorSplitting(cb))
    throw ConstructionError("connected sum needs two circular knot-exterior splittings");
  const std::string ka = ca.sutures.begin()->first;
  const std::string kb = cb.sutures.begin()->first;
  SurfaceComponent ra = renameSuture(onlyOf(ca, Role::Thin), ka, "k");
  SurfaceComponent rb = renameSuture(onlyOf(cb, Role::Thin), kb, "k");
  SurfaceComponent sa = renameSuture(onlyOf(ca, Role::Thick), ka, "k");
  SurfaceComponent sb = renameSuture(onlyOf(cb, Role::Thick), kb, "k");
  SurfaceComponent r = boundarySum(ra, rb, "k");
  SurfaceComponent s = boundarySum(sa, sb, "k");
  r.id = "R";
  s.id = "S";
  return circularShape({{"k", ca.sutures.begin()->second}}, std::move(r), std::move(s));
}

SplittingComplex satelliteCompose(const SplittingComplex& p, const SplittingComplex& k, int n) {
  if (n < 1) throw ConstructionError("satellite winding number must be positive");
  if (!isCircularSplitting(p) || p.sutures.size() != 2 || !p.sutures.count("c"))
    throw ConstructionError("pattern must be a circular splitting with sutures 'c' and one knot suture");
  if (!isKnotExteriorSplitting(k)) throw ConstructionError("companion must be a circular knot-exterior splitting");
  const SurfaceComponent& rp = onlyOf(p, Role::Thin);
  const SurfaceComponent& sp = onlyOf(p, Role::Thick);
  if (rp.circlesOn("c") != n || sp.circlesOn("c") != n)
    throw ConstructionError("pattern winding does not match n=" + std::to_string(n));
  std::string knotSuture;
  for (const auto& [id, kind] : p.sutures)
    if (id != "c") knotSuture = id;

  // n parallel thin copies of the companion fiber, separated by n-1 product layers.
  SplittingComplex inflated = k;
  std::string thinId = onlyOf(k, Role::Thin).id;
  for (int i = 1; i < n; ++i) inflated = inflate(inflated, thinId).complex;
  const Surface thins = inflated.thin();
  const Surface thicks = inflated.thick();
  if (static_cast<int>(thins.size()) != n || static_cast<int>(thicks.size()) != n)
    throw ConstructionError("companion inflation did not produce n layers");

  // Each c-circle of the pattern surfaces caps off against one companion layer.
  SurfaceComponent r = makeSurface("R", rp.genus + thins.genusTotal(), {{"k", rp.circlesOn(knotSuture)}});
  SurfaceComponent s = makeSurface("S", sp.genus + thicks.genusTotal(), {{"k", sp.circlesOn(knotSuture)}});
  r.orientationTag = rp.orientationTag;
  s.orientationTag = sp.orientationTag;
  return circularShape({{"k", p.sutures.at(knotSuture)}}, std::move(r), std::move(s));
}

// ---------------------------------------------------------------------------

ChopResult annulusChop(const SplittingComplex& c, const ChopMove& m) {
  requireValid(c, "chop");
  if (!c.assumptions.count(Assumption::LocallyThin))
    throw MoveError("chop requires the locallyThin assumption");
  if (!m.arcs.empty() && !m.slopesDistinct)
    throw MoveError("chop requires the annulus slopes to be asserted distinct from thin boundary slopes");
  for (const auto& s : m.choppedSutures)
    if (!c.sutures.count(s)) throw MoveError("chop names unknown suture '" + s + "'");
  const std::set<std::string> chopped(m.choppedSutures.begin(), m.choppedSutures.end());

  std::map<std::string, SutureKind> sutures;
  for (const auto& [id, kind] : c.sutures)
    if (!chopped.count(id)) sutures[id] = kind;
  for (const auto& [id, kind] : m.newSutures) {
    if (sutures.count(id)) throw MoveError("new suture '" + id + "' already exists");
    if (c.hasId(id) && !chopped.count(id)) throw MoveError("new suture '" + id + "' collides with an id");
    sutures[id] = kind;
  }

  // Apply all arcs on one surface so lineage is tracked across every role.
  Surface all;
  for (const auto& [id, placed] : c.components) all.components.push_back(placed.surface);
  std::map<std::string, std::string> originOf;
  for (const auto& s : all.components) originOf[s.id] = s.id;
  std::map<std::string, int> arcCount;
  SurgeryResult cut{all, {}};
  for (const auto& s : all.components) cut.lineage[s.id] = {s.id};
  try {
    for (const auto& arc : m.arcs) {
      auto it = originOf.find(arc.target);
      if (it == originOf.end() || !cut.surface.find(arc.target))
        throw MoveError("arc targets unknown component '" + arc.target + "'");
      const std::string origin = it->second;
      SurgeryResult step = applyArcSurgery(cut.surface, arc);
      for (const auto& id : step.lineage.at(arc.target)) originOf[id] = origin;
      arcCount[origin] += 1;
      Lineage composed;
      for (const auto& [o, mids] : cut.lineage)
        for (const auto& mid : mids)
          for (const auto& f : step.lineage.at(mid)) composed[o].push_back(f);
      cut.lineage = std::move(composed);
      cut.surface = std::move(step.surface);
    }
  } catch (const SurgeryError& e) {
    throw MoveError(std::string("chop arc surgery failed: ") + e.what());
  }

  for (const auto& piece : cut.surface.components) {
    for (const auto& [suture, count] : piece.boundary)
      if (!sutures.count(suture))
        throw MoveError("piece '" + piece.id + "' still meets suture '" + suture + "'");
    const std::string& origin = originOf.at(piece.id);
    if (piece.id != origin && c.hasId(piece.id))
      throw MoveError("piece id '" + piece.id + "' collides with an existing id");
  }
  for (const auto& [id, placed] : c.components) {
    const int expected = placed.surface.eulerChar() + arcCount[id];
    int actual = 0;
    for (const auto& f : cut.lineage.at(id)) actual += cut.surface.find(f)->eulerChar();
    if (actual != expected) throw MoveError("chop Euler characteristic ledger fails on '" + id + "'");
  }

  // Rectangle ledger.
  std::map<std::pair<std::string, std::string>, int> rect;
  std::map<std::string, int> rectPerBody;
  for (const auto& r : m.rectangles) {
    if (!c.bodies.count(r.body)) throw MoveError("rectangle count names unknown body '" + r.body + "'");
    const auto& minus = c.body(r.body).minus;
    if (std::find(minus.begin(), minus.end(), r.minusComponent) == minus.end())
      throw MoveError("rectangle count: '" + r.minusComponent + "' is not below body '" + r.body + "'");
    if (r.count < 0) throw MoveError("negative rectangle count");
    rect[{r.body, r.minusComponent}] += r.count;
    rectPerBody[r.body] += r.count;
  }
  auto rectOf = [&](const std::string& body, const std::string& comp) {
    auto it = rect.find({body, comp});
    return it == rect.end() ? 0 : it->second;
  };
  for (const auto& [id, node] : c.bodies)
    if (arcCount[node.plus] != rectPerBody[id])
      throw MoveError("rectangle ledger: body '" + id + "' has " + std::to_string(rectPerBody[id]) +
                      " rectangles but its thick surface has " + std::to_string(arcCount[node.plus]) + " arcs");
  for (const auto& [id, placed] : c.components) {
    if (placed.role == Role::Thick) continue;
    for (const auto& body : c.bodiesUnder(id))
      if (rectOf(body, id) != arcCount[id])
        throw MoveError("rectangle ledger: '" + id + "' has " + std::to_string(arcCount[id]) +
                        " arcs but body '" + body + "' meets it in " + std::to_string(rectOf(body, id)) +
                        " rectangles");
  }

  SplittingComplex out;
  out.sutures = std::move(sutures);
  out.assumptions = c.assumptions;
  for (const auto& piece : cut.surface.components) {
    const std::string& origin = originOf.at(piece.id);
    out.components[piece.id] = PlacedComponent{c.component(origin).role, piece};
    if (c.incompressible.count(origin)) out.incompressible.insert(piece.id);
  }

  std::map<std::string, std::vector<const BodySplit*>> splitsOf;
  for (const auto& s : m.splits) {
    if (!c.bodies.count(s.parent)) throw MoveError("split names unknown body '" + s.parent + "'");
    splitsOf[s.parent].push_back(&s);
  }
  std::set<std::string> newBodyIds;
  auto descends = [&](const std::string& piece, const std::string& origin) {
    auto it = originOf.find(piece);
    return it != originOf.end() && it->second == origin && out.components.count(piece);
  };
  for (const auto& [id, node] : c.bodies) {
    auto it = splitsOf.find(id);
    if (it == splitsOf.end()) {
      bool untouched = arcCount[node.plus] == 0;
      for (const auto& x : node.minus) untouched = untouched && arcCount[x] == 0;
      if (!untouched) throw MoveError("body '" + id + "' is cut but has no split");
      if (!newBodyIds.insert(id).second) throw MoveError("duplicate body id '" + id + "'");
      out.bodies[id] = node;
      continue;
    }
    std::multiset<std::string> usedPlus, usedMinus;
    for (const BodySplit* s : it->second) {
      if (!descends(s->plus, node.plus))
        throw MoveError("split '" + s->id + "': '" + s->plus + "' is not a piece of '" + node.plus + "'");
      for (const auto& x : s->minus) {
        bool ok = false;
        for (const auto& y : node.minus) ok = ok || descends(x, y);
        if (!ok) throw MoveError("split '" + s->id + "': '" + x + "' is not a piece below '" + id + "'");
        usedMinus.insert(x);
      }
      usedPlus.insert(s->plus);
      if (!newBodyIds.insert(s->id).second) throw MoveError("duplicate body id '" + s->id + "'");
      std::vector<std::string> minus = s->minus;
      std::sort(minus.begin(), minus.end());
      out.bodies[s->id] = BodyNode{s->id, node.label, s->plus, std::move(minus)};
    }
    std::multiset<std::string> wantPlus, wantMinus;
    for (const auto& f : cut.lineage.at(node.plus)) wantPlus.insert(f);
    for (const auto& x : node.minus)
      for (const auto& f : cut.lineage.at(x)) wantMinus.insert(f);
    if (usedPlus != wantPlus) throw MoveError("splits of '" + id + "' do not use each thick piece once");
    if (usedMinus != wantMinus) throw MoveError("splits of '" + id + "' do not use each lower piece once");
  }
  for (const auto& id : newBodyIds)
    if (out.components.count(id) || out.sutures.count(id))
      throw MoveError("body id '" + id + "' collides with a component or suture");

  requireValid(out, "chop produced an invalid complex");
  const int jBefore = totalHandleIndex(c);
  const int jAfter = totalHandleIndex(out);
  if (jBefore != jAfter)
    throw MoveError("chop changes the handle index (" + std::to_string(jBefore) + " -> " +
                    std::to_string(jAfter) + ")");
  MoveRecord record{m, totalHandleNumber(c), totalHandleNumber(out), jBefore, jAfter};
  std::vector<SplittingComplex> pieces = connectedPieces(out);
  return ChopResult{std::move(out), std::move(pieces), std::move(record)};
}

}  // namespace ghs
