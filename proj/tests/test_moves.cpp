#include <doctest.h>

#include "ghs/constructions.hpp"
#include "ghs/moves.hpp"
#include "ghs/trace.hpp"

using namespace ghs;

namespace {

const SurfaceComponent& surf(const SplittingComplex& c, const std::string& id) {
  return c.components.at(id).surface;
}

int chiDifference(const SplittingComplex& c) {
  int d = 0;
  for (const auto& [id, p] : c.components) {
    if (p.role == Role::Thick) d += p.surface.eulerChar();
    if (p.role == Role::Thin) d -= p.surface.eulerChar();
  }
  return d;
}

WeakReductionMove genusOneReduction() {
  WeakReductionMove m;
  m.thickTarget = "S";
  m.diskSystemA = {DiskSurgery::nonSeparating("S")};
  m.diskSystemB = {DiskSurgery::nonSeparating("S")};
  m.s1Name = "S1";
  m.thinName = "R2";
  m.s2Name = "S2";
  return m;
}

}  // namespace

TEST_SUITE("moves") {
  TEST_CASE("weak reduction of a genus-3 thick surface") {
    const auto c = circularSplitting(1, 3);
    const auto r = weakReduce(c, genusOneReduction());
    CHECK(validate(r.complex).empty());
    CHECK(surf(r.complex, "S1").genus == 2);
    CHECK(surf(r.complex, "S2").genus == 2);
    CHECK(surf(r.complex, "R2").genus == 1);
    CHECK(surf(r.complex, "R2").boundary == BoundaryMap{{"k", 1}});
    CHECK(r.record.jBefore == r.record.jAfter);
    CHECK(r.record.hBefore == r.record.hAfter);
    CHECK(chiDifference(r.complex) == chiDifference(c));
    CHECK(createdThin(c, r.complex) == std::vector<std::string>{"R2"});
  }

  TEST_CASE("amalgamation undoes a weak reduction") {
    const auto c = circularSplitting(1, 3);
    const auto reduced = weakReduce(c, genusOneReduction()).complex;
    const auto r = amalgamate(reduced, AmalgamateMove{{"R2"}, ""});
    CHECK(validate(r.complex).empty());
    REQUIRE(r.complex.components.count("S1"));
    // S1(2,1) + S2(2,1) - R2(1,1) gives genus 3
    CHECK(surf(r.complex, "S1").genus == 3);
    CHECK(r.record.jAfter == r.record.jBefore);
    CHECK(totalHandleIndex(r.complex) == totalHandleIndex(c));
  }

  TEST_CASE("amalgamation genus formula") {
    // S1(2,1) + S2(1,1) - R(1,1) = (2,1)
    auto c = circularSplitting(1, 2);
    const auto inflated = inflate(c, "R").complex;
    const auto thin = createdThin(c, inflated);
    REQUIRE(thin.size() == 1);
    const auto r = amalgamate(inflated, AmalgamateMove{{thin[0]}, "T"});
    CHECK(surf(r.complex, "T").genus == 2);
    CHECK(surf(r.complex, "T").boundary == BoundaryMap{{"k", 1}});
  }

  TEST_CASE("amalgamation rejects a thin set that is not B1 and A2") {
    const auto c = circularSplitting(1, 2);
    CHECK_THROWS_AS(amalgamate(c, AmalgamateMove{{"R"}, ""}), MoveError);
    CHECK_THROWS_AS(amalgamate(c, AmalgamateMove{{"nope"}, ""}), MoveError);
  }

  TEST_CASE("inflate then deflate is the identity") {
    const auto c = circularSplitting(2, 3);
    const auto r = inflate(c, InflateMove{"R", "S9", "R9"});
    CHECK(validate(r.complex).empty());
    CHECK(surf(r.complex, "S9").genus == 2);
    CHECK(surf(r.complex, "S9").boundary == BoundaryMap{{"k", 1}});
    CHECK(surf(r.complex, "R9").genus == 2);
    CHECK(r.record.hAfter == r.record.hBefore);
    CHECK(trivialBodyCount(r.complex) == trivialBodyCount(c) + 2);
    const auto back = deflate(r.complex, DeflateMove{"S9", "R9"});
    CHECK(totalHandleNumber(back.complex) == totalHandleNumber(c));
    CHECK(back.complex.components.size() == c.components.size());
    CHECK_THROWS_AS(deflate(c, DeflateMove{"S", "R"}), MoveError);
  }

  TEST_CASE("stabilization shifts h and j by 2") {
    const auto c = circularSplitting(1, 1);
    const auto s = stabilize(c, "S");
    CHECK(surf(s.complex, "S").genus == 2);
    CHECK(s.record.hAfter == s.record.hBefore + 2);
    CHECK(s.record.jAfter == s.record.jBefore + 2);
    CHECK(chiDifference(s.complex) == chiDifference(c) - 2);
    const auto d = destabilize(s.complex, "S");
    CHECK(d.complex == c);
    CHECK_THROWS_AS(destabilize(c, "S"), MoveError);
  }

  TEST_CASE("fresh ids skip used names") {
    auto c = circularSplitting(1, 1);
    const auto r = inflate(c, "R");
    CHECK(r.complex.components.count("S1"));
    CHECK(r.complex.components.count("R1"));
    CHECK(freshId(r.complex, "S") == "S2");
  }

  TEST_CASE("move records serialize with ledger lines") {
    const auto r = stabilize(circularSplitting(1, 1), "S");
    const std::string text = serializeRecord(r.record);
    CHECK(text.find("LEDGER|h|0|2") != std::string::npos);
    CHECK(text.find("LEDGER|j|0|2") != std::string::npos);
    CHECK(std::string(moveName(r.record.move)) == "stabilize");
  }
}

TEST_SUITE("constructions") {
  TEST_CASE("circular splitting shape") {
    const auto c = circularSplitting(2, 3);
    CHECK(isKnotExteriorSplitting(c));
    CHECK(totalHandleNumber(c) == 2);
    CHECK_THROWS_AS(circularSplitting(3, 2), ConstructionError);
  }

  TEST_CASE("cable pattern is a fibration complex") {
    const auto c = cablePatternSplit(2, 3);
    CHECK(validate(c).empty());
    CHECK(isFibrationComplex(c));
    CHECK(surf(c, "R").genus == 1);
    CHECK(c.assumptions.count(Assumption::ThinIncompressible));
    CHECK(surf(cablePatternSplit(3, 5), "R").genus == 4);
    CHECK(surf(cablePatternSplit(3, -5), "R").genus == 4);
    CHECK_THROWS_AS(cablePatternSplit(2, 4), ConstructionError);
  }

  TEST_CASE("connected sum adds handle numbers") {
    const auto a = circularSplitting(1, 2);
    const auto b = circularSplitting(2, 3);
    const auto s = connectedSumCompose(a, b);
    CHECK(validate(s).empty());
    CHECK(isKnotExteriorSplitting(s));
    CHECK(totalHandleNumber(s) == totalHandleNumber(a) + totalHandleNumber(b));
    CHECK(surf(s, "R").genus == 3);
    CHECK(surf(s, "S").genus == 5);
  }

  TEST_CASE("satellite with a fibered cable keeps h of the companion") {
    const auto k = circularSplitting(1, 2);
    const auto sat = satelliteCompose(cablePatternSplit(2, 3), k, 2);
    CHECK(validate(sat).empty());
    CHECK(isKnotExteriorSplitting(sat));
    CHECK(totalHandleNumber(sat) == totalHandleNumber(k));
    // companion inflated once: thick genera 2 + 1, thin genera 1 + 1
    CHECK(surf(sat, "R").genus == 1 + 1 + 1);
    CHECK(surf(sat, "S").genus == 1 + 2 + 1);
  }

  TEST_CASE("satellite winding mismatch is rejected") {
    CHECK_THROWS_AS(satelliteCompose(cablePatternSplit(2, 3), circularSplitting(1, 1), 3), ConstructionError);
  }

  TEST_CASE("chop with no rectangles is the identity") {
    auto c = circularSplitting(1, 2);
    c.assumptions.insert(Assumption::LocallyThin);
    const auto r = annulusChop(c, ChopMove{});
    REQUIRE(r.pieces.size() == 1);
    CHECK(r.pieces[0].components == c.components);
    CHECK(r.record.jAfter == r.record.jBefore);
  }

  TEST_CASE("chop preconditions") {
    auto c = circularSplitting(1, 2);
    CHECK_THROWS_AS(annulusChop(c, ChopMove{}), MoveError);
    c.assumptions.insert(Assumption::LocallyThin);
    ChopMove m;
    m.arcs = {ArcSurgery::sameCircleNonSeparating("R", {{"k", 2}})};
    CHECK_THROWS_WITH_AS(annulusChop(c, m), doctest::Contains("distinct"), MoveError);
  }
}
