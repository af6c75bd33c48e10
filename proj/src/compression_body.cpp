#include "ghs/compression_body.hpp"

#include <cstdlib>

namespace ghs {

const char* toString(BodyLabel label) { return label == BodyLabel::A ? "A" : "B"; }

namespace {

int minusGenus(const std::vector<SurfaceComponent>& minus) {
  int g = 0;
  for (const auto& c : minus) g += c.genus;
  return g;
}

int minusEuler(const std::vector<SurfaceComponent>& minus) {
  int chi = 0;
  for (const auto& c : minus) chi += c.eulerChar();
  return chi;
}

BoundaryMap minusBoundary(const std::vector<SurfaceComponent>& minus) {
  BoundaryMap b;
  for (const auto& c : minus) b = addBoundary(b, c.boundary);
  return b;
}

}  // namespace

int CompressionBody::handleNumber() const {
  const int k = static_cast<int>(minus.size());
  return plus.genus - minusGenus(minus) + std::abs(k - 1);
}

int CompressionBody::handleIndex() const {
  const int twice = minusEuler(minus) - plus.eulerChar();
  if (twice % 2 != 0) throw BodyError("odd Euler characteristic difference across body");
  return twice / 2;
}

bool CompressionBody::isTrivial() const {
  return minus.size() == 1 && minus.front().genus == plus.genus;
}

std::vector<std::string> CompressionBody::violations() const {
  std::vector<std::string> out;
  if (plus.isSphere()) out.push_back("positive boundary is a sphere");
  for (const auto& c : minus)
    if (c.isSphere()) out.push_back("negative boundary component '" + c.id + "' is a sphere");
  if (minusBoundary(minus) != plus.boundary) out.push_back("vertical pairing mismatch");
  const int h = handleNumber();
  if (h < 0) out.push_back("negative handle number");
  const int twice = minusEuler(minus) - plus.eulerChar();
  if (twice % 2 != 0)
    out.push_back("odd Euler characteristic difference");
  else if (twice < 0)
    out.push_back("negative handle index");
  return out;
}

}  // namespace ghs
