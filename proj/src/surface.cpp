#include "ghs/surface.hpp"

#include <algorithm>

namespace ghs {

int totalCircles(const BoundaryMap& boundary) {
  int n = 0;
  for (const auto& [suture, count] : boundary) n += count;
  return n;
}

BoundaryMap addBoundary(const BoundaryMap& a, const BoundaryMap& b) {
  BoundaryMap out = a;
  for (const auto& [suture, count] : b) out[suture] += count;
  return normalized(std::move(out));
}

BoundaryMap normalized(BoundaryMap boundary) {
  for (auto it = boundary.begin(); it != boundary.end();) {
    if (it->second < 0) throw SurgeryError("negative circle count on suture " + it->first);
    if (it->second == 0)
      it = boundary.erase(it);
    else
      ++it;
  }
  return boundary;
}

int SurfaceComponent::circlesOn(const std::string& suture) const {
  auto it = boundary.find(suture);
  return it == boundary.end() ? 0 : it->second;
}

int Surface::eulerChar() const {
  int chi = 0;
  for (const auto& c : components) chi += c.eulerChar();
  return chi;
}

int Surface::genusTotal() const {
  int g = 0;
  for (const auto& c : components) g += c.genus;
  return g;
}

int Surface::circlesOn(const std::string& suture) const {
  int n = 0;
  for (const auto& c : components) n += c.circlesOn(suture);
  return n;
}

BoundaryMap Surface::boundaryTotal() const {
  BoundaryMap total;
  for (const auto& c : components) total = addBoundary(total, c.boundary);
  return total;
}

const SurfaceComponent* Surface::find(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

int eulerChar(const Surface& s) { return s.eulerChar(); }

DiskSurgery DiskSurgery::nonSeparating(std::string target) {
  DiskSurgery d;
  d.target = std::move(target);
  d.kind = Kind::NonSeparating;
  return d;
}

DiskSurgery DiskSurgery::separating(std::string target, PieceSpec left, PieceSpec right) {
  DiskSurgery d;
  d.target = std::move(target);
  d.kind = Kind::Separating;
  d.left = std::move(left);
  d.right = std::move(right);
  return d;
}

ArcSurgery ArcSurgery::joinTwoCircles(std::string target, BoundaryMap result) {
  ArcSurgery a;
  a.target = std::move(target);
  a.kind = Kind::JoinTwoCircles;
  a.result = std::move(result);
  return a;
}

ArcSurgery ArcSurgery::sameCircleNonSeparating(std::string target, BoundaryMap result) {
  ArcSurgery a;
  a.target = std::move(target);
  a.kind = Kind::SameCircleNonSeparating;
  a.result = std::move(result);
  return a;
}

ArcSurgery ArcSurgery::sameCircleSeparating(std::string target, PieceSpec left, PieceSpec right) {
  ArcSurgery a;
  a.target = std::move(target);
  a.kind = Kind::SameCircleSeparating;
  a.left = std::move(left);
  a.right = std::move(right);
  return a;
}

std::string leftChildId(const std::string& id) { return id + ".0"; }
std::string rightChildId(const std::string& id) { return id + ".1"; }

namespace {

std::size_t indexOf(const Surface& s, const std::string& id) {
  for (std::size_t i = 0; i < s.components.size(); ++i)
    if (s.components[i].id == id) return i;
  throw SurgeryError("unknown surgery target '" + id + "'");
}

SurfaceComponent fromPiece(const SurfaceComponent& parent, std::string id, const PieceSpec& piece) {
  SurfaceComponent c;
  c.id = std::move(id);
  c.genus = piece.genus;
  c.boundary = normalized(piece.boundary);
  c.orientationTag = parent.orientationTag;
  return c;
}

void checkPiece(const PieceSpec& piece, const char* side) {
  if (piece.genus < 0) throw SurgeryError(std::string("negative genus on ") + side + " piece");
  BoundaryMap b = normalized(piece.boundary);
  if (piece.genus == 0 && b.empty())
    throw SurgeryError(std::string("surgery would create a sphere (") + side + " piece)");
}

// Replaces component `index` by `pieces`, keeping the remaining order.
SurgeryResult replaceComponent(const Surface& s, std::size_t index,
                               std::vector<SurfaceComponent> pieces) {
  SurgeryResult out;
  for (const auto& piece : pieces) {
    for (std::size_t i = 0; i < s.components.size(); ++i)
      if (i != index && s.components[i].id == piece.id)
        throw SurgeryError("surgery child id '" + piece.id + "' collides with an existing component");
  }
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const auto& c = s.components[i];
    if (i == index) {
      std::vector<std::string> ids;
      for (auto& piece : pieces) {
        ids.push_back(piece.id);
        out.surface.components.push_back(std::move(piece));
      }
      out.lineage[c.id] = std::move(ids);
    } else {
      out.surface.components.push_back(c);
      out.lineage[c.id] = {c.id};
    }
  }
  return out;
}

Lineage compose(const Lineage& first, const Lineage& second) {
  Lineage out;
  for (const auto& [origin, mids] : first) {
    std::vector<std::string>& finals = out[origin];
    for (const auto& mid : mids) {
      auto it = second.find(mid);
      if (it == second.end()) continue;
      finals.insert(finals.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

}  // namespace

SurgeryResult applyDiskSurgery(const Surface& s, const DiskSurgery& d) {
  const std::size_t index = indexOf(s, d.target);
  const SurfaceComponent& target = s.components[index];

  if (d.kind == DiskSurgery::Kind::NonSeparating) {
    if (target.genus < 1)
      throw SurgeryError("non-separating compression of genus-0 component '" + target.id + "'");
    SurfaceComponent next = target;
    next.genus -= 1;
    if (next.isSphere())
      throw SurgeryError("compression of '" + target.id + "' would create a sphere");
    return replaceComponent(s, index, {next});
  }

  checkPiece(d.left, "left");
  checkPiece(d.right, "right");
  if (d.left.genus + d.right.genus != target.genus)
    throw SurgeryError("separating compression of '" + target.id + "' does not preserve genus");
  if (addBoundary(d.left.boundary, d.right.boundary) != target.boundary)
    throw SurgeryError("separating compression of '" + target.id + "' does not preserve boundary");
  return replaceComponent(s, index,
                          {fromPiece(target, leftChildId(target.id), d.left),
                           fromPiece(target, rightChildId(target.id), d.right)});
}

SurgeryResult applyArcSurgery(const Surface& s, const ArcSurgery& a) {
  const std::size_t index = indexOf(s, a.target);
  const SurfaceComponent& target = s.components[index];
  const int circles = target.totalBoundary();

  switch (a.kind) {
    case ArcSurgery::Kind::JoinTwoCircles: {
      if (circles < 2)
        throw SurgeryError("arc joining two circles needs two boundary circles on '" + target.id + "'");
      SurfaceComponent next = target;
      next.boundary = normalized(a.result);
      if (next.totalBoundary() != circles - 1)
        throw SurgeryError("arc joining two circles must leave one fewer boundary circle");
      return replaceComponent(s, index, {next});
    }
    case ArcSurgery::Kind::SameCircleNonSeparating: {
      if (target.genus < 1)
        throw SurgeryError("non-separating arc on genus-0 component '" + target.id + "'");
      if (circles < 1) throw SurgeryError("arc surgery on closed component '" + target.id + "'");
      SurfaceComponent next = target;
      next.genus -= 1;
      next.boundary = normalized(a.result);
      if (next.totalBoundary() != circles + 1)
        throw SurgeryError("non-separating arc must add one boundary circle");
      return replaceComponent(s, index, {next});
    }
    case ArcSurgery::Kind::SameCircleSeparating: {
      if (circles < 1) throw SurgeryError("arc surgery on closed component '" + target.id + "'");
      checkPiece(a.left, "left");
      checkPiece(a.right, "right");
      if (a.left.genus + a.right.genus != target.genus)
        throw SurgeryError("separating arc on '" + target.id + "' does not preserve genus");
      if (totalCircles(normalized(a.left.boundary)) < 1 || totalCircles(normalized(a.right.boundary)) < 1)
        throw SurgeryError("each side of a separating arc keeps part of the cut circle");
      if (totalCircles(a.left.boundary) + totalCircles(a.right.boundary) != circles + 1)
        throw SurgeryError("separating arc must add exactly one boundary circle in total");
      return replaceComponent(s, index,
                              {fromPiece(target, leftChildId(target.id), a.left),
                               fromPiece(target, rightChildId(target.id), a.right)});
    }
  }
  throw SurgeryError("unknown arc surgery kind");
}

SurgeryResult applyDiskSurgeries(const Surface& s, const std::vector<DiskSurgery>& disks) {
  SurgeryResult acc{s, {}};
  for (const auto& c : s.components) acc.lineage[c.id] = {c.id};
  for (const auto& d : disks) {
    SurgeryResult step = applyDiskSurgery(acc.surface, d);
    acc.lineage = compose(acc.lineage, step.lineage);
    acc.surface = std::move(step.surface);
  }
  return acc;
}

SurgeryResult applyArcSurgeries(const Surface& s, const std::vector<ArcSurgery>& arcs) {
  SurgeryResult acc{s, {}};
  for (const auto& c : s.components) acc.lineage[c.id] = {c.id};
  for (const auto& a : arcs) {
    SurgeryResult step = applyArcSurgery(acc.surface, a);
    acc.lineage = compose(acc.lineage, step.lineage);
    acc.surface = std::move(step.surface);
  }
  return acc;
}

SurfaceComponent boundarySum(const SurfaceComponent& a, const SurfaceComponent& b,
                             const std::string& suture) {
  if (a.circlesOn(suture) < 1 || b.circlesOn(suture) < 1)
    throw SurgeryError("boundary sum needs a boundary circle on suture '" + suture + "' in both pieces");
  SurfaceComponent out;
  out.id = a.id;
  out.genus = a.genus + b.genus;
  out.boundary = addBoundary(a.boundary, b.boundary);
  out.boundary[suture] -= 1;
  out.boundary = normalized(out.boundary);
  out.orientationTag = a.orientationTag;
  return out;
}

}  // namespace ghs
