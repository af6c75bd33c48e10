#pragma once

#include <string>
#include <vector>

#include "ghs/surface.hpp"

namespace ghs {

enum class BodyLabel { A, B };

const char* toString(BodyLabel label);

class BodyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A connected compression body W, from its positive boundary down to its
/// (possibly empty) negative boundary. Vertical annuli pair boundary circles
/// of the two sides suture by suture.
struct CompressionBody {
  BodyLabel label = BodyLabel::A;
  SurfaceComponent plus;
  std::vector<SurfaceComponent> minus;

  /// g(+) - g(-) + |#(-) - 1|; negative only for unrealizable data.
  int handleNumber() const;
  /// #1-handles - #0-handles = (chi(-) - chi(+)) / 2. Throws BodyError on odd parity.
  int handleIndex() const;
  bool isTrivial() const;
  bool isHandlebody() const { return minus.empty(); }
  /// Per suture, the number of vertical annuli.
  BoundaryMap verticalPairing() const { return plus.boundary; }

  /// Empty iff the body is valid.
  std::vector<std::string> violations() const;
  bool isValid() const { return violations().empty(); }
};

}  // namespace ghs
