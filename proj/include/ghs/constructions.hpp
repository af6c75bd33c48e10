#pragma once

#include <string>
#include <vector>

#include "ghs/moves.hpp"
#include "ghs/splitting_complex.hpp"

namespace ghs {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Knot-exterior complex: toroidal suture "k", thin "R" = (genusR, 1),
/// thick "S" = (genusS, 1), bodies "A" and "B" over S with R below.
SplittingComplex circularSplitting(int genusR, int genusS);

/// Pattern complex in a solid torus minus the pattern knot: toroidal sutures
/// "k" (pattern knot) and "c" (companion side). Both surfaces carry one circle
/// on k and `winding` circles on c.
SplittingComplex patternSplitting(int genusRP, int genusSP, int winding);

/// Fibered (p,q)-cable pattern: fiber genus (p-1)(|q|-1)/2, trivial bodies.
SplittingComplex cablePatternSplit(int p, int q);

/// Boundary sum of two circular knot-exterior splittings.
SplittingComplex connectedSumCompose(const SplittingComplex& ca, const SplittingComplex& cb);

/// Satellite of the pattern complex `p` (winding n) with companion `k`.
SplittingComplex satelliteCompose(const SplittingComplex& p, const SplittingComplex& k, int n);

struct ChopResult {
  SplittingComplex complex;
  std::vector<SplittingComplex> pieces;
  MoveRecord record;
};

/// Chops along an annulus in vertical position. Requires the locallyThin
/// flag; `m.slopesDistinct` must be asserted whenever arcs are present.
ChopResult annulusChop(const SplittingComplex& c, const ChopMove& m);

/// True for a single-thin, single-thick complex with one suture on which each
/// surface has exactly one circle.
bool isKnotExteriorSplitting(const SplittingComplex& c);

}  // namespace ghs
