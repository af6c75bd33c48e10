#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghs {

enum class SutureKind { Annular, Toroidal };

/// Circle count per suture id. Zero entries are never stored.
using BoundaryMap = std::map<std::string, int>;

int totalCircles(const BoundaryMap& boundary);
BoundaryMap addBoundary(const BoundaryMap& a, const BoundaryMap& b);
/// Drops zero entries; throws on negative counts.
BoundaryMap normalized(BoundaryMap boundary);

/// A connected compact orientable surface, recorded only by its genus and
/// how many boundary circles lie on each suture.
struct SurfaceComponent {
  std::string id;
  int genus = 0;
  BoundaryMap boundary;
  std::optional<std::string> orientationTag;

  int totalBoundary() const { return totalCircles(boundary); }
  int eulerChar() const { return 2 - 2 * genus - totalBoundary(); }
  bool isSphere() const { return genus == 0 && boundary.empty(); }
  bool isClosed() const { return boundary.empty(); }
  int circlesOn(const std::string& suture) const;

  bool operator==(const SurfaceComponent&) const = default;
};

/// Formal disjoint union of components, each carrying a lineage key.
struct Surface {
  std::vector<SurfaceComponent> components;

  int eulerChar() const;
  int genusTotal() const;
  int circlesOn(const std::string& suture) const;
  BoundaryMap boundaryTotal() const;
  const SurfaceComponent* find(const std::string& id) const;
  std::size_t size() const { return components.size(); }

  bool operator==(const Surface&) const = default;
};

int eulerChar(const Surface& s);

class SurgeryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Genus and boundary of one side of a separating cut.
struct PieceSpec {
  int genus = 0;
  BoundaryMap boundary;

  int eulerChar() const { return 2 - 2 * genus - totalCircles(boundary); }
  bool operator==(const PieceSpec&) const = default;
};

struct DiskSurgery {
  enum class Kind { NonSeparating, Separating };

  std::string target;
  Kind kind = Kind::NonSeparating;
  PieceSpec left;   // Separating only
  PieceSpec right;  // Separating only

  static DiskSurgery nonSeparating(std::string target);
  static DiskSurgery separating(std::string target, PieceSpec left, PieceSpec right);

  bool operator==(const DiskSurgery&) const = default;
};

struct ArcSurgery {
  enum class Kind { JoinTwoCircles, SameCircleNonSeparating, SameCircleSeparating };

  std::string target;
  Kind kind = Kind::JoinTwoCircles;
  BoundaryMap result;  // JoinTwoCircles / SameCircleNonSeparating
  PieceSpec left;      // SameCircleSeparating
  PieceSpec right;     // SameCircleSeparating

  static ArcSurgery joinTwoCircles(std::string target, BoundaryMap result);
  static ArcSurgery sameCircleNonSeparating(std::string target, BoundaryMap result);
  static ArcSurgery sameCircleSeparating(std::string target, PieceSpec left, PieceSpec right);

  bool operator==(const ArcSurgery&) const = default;
};

/// old component id -> ids of the components it became.
using Lineage = std::map<std::string, std::vector<std::string>>;

struct SurgeryResult {
  Surface surface;
  Lineage lineage;
};

/// Child ids produced by a separating cut of `id`.
std::string leftChildId(const std::string& id);
std::string rightChildId(const std::string& id);

SurgeryResult applyDiskSurgery(const Surface& s, const DiskSurgery& d);
SurgeryResult applyArcSurgery(const Surface& s, const ArcSurgery& a);

/// Applies surgeries in order; the lineage maps original ids to final ids.
SurgeryResult applyDiskSurgeries(const Surface& s, const std::vector<DiskSurgery>& disks);
SurgeryResult applyArcSurgeries(const Surface& s, const std::vector<ArcSurgery>& arcs);

/// Boundary-connected sum along one arc of a circle on `suture` in each.
SurfaceComponent boundarySum(const SurfaceComponent& a, const SurfaceComponent& b,
                             const std::string& suture);

}  // namespace ghs
