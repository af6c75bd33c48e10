#include <doctest.h>

#include "ghs/constructions.hpp"
#include "ghs/splitting_complex.hpp"
#include "ghs/surface.hpp"

using namespace ghs;

namespace {

// Independent oracle for Euler characteristics of (genus, circles) data.
int chiOracle(int genus, int circles) { return 2 - 2 * genus - circles; }

SurfaceComponent comp(const std::string& id, int genus, BoundaryMap b) {
  SurfaceComponent s;
  s.id = id;
  s.genus = genus;
  s.boundary = std::move(b);
  return s;
}

CompressionBody body(SurfaceComponent plus, std::vector<SurfaceComponent> minus) {
  CompressionBody w;
  w.label = BodyLabel::A;
  w.plus = std::move(plus);
  w.minus = std::move(minus);
  return w;
}

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("Euler characteristic of surfaces") {
    CHECK(Surface{}.eulerChar() == 0);
    CHECK(Surface{{comp("a", 1, {{"k", 1}})}}.eulerChar() == -1);
    CHECK(Surface{{comp("a", 2, {{"k", 1}}), comp("b", 0, {{"k", 2}})}}.eulerChar() == -3);
  }

  TEST_CASE("non-separating disk lowers genus") {
    const Surface s{{comp("S", 2, {{"k", 1}})}};
    const auto r = applyDiskSurgery(s, DiskSurgery::nonSeparating("S"));
    REQUIRE(r.surface.size() == 1);
    CHECK(r.surface.components[0].genus == 1);
    CHECK(r.surface.components[0].boundary == BoundaryMap{{"k", 1}});
    CHECK(r.lineage.at("S") == std::vector<std::string>{"S"});
  }

  TEST_CASE("separating disk keeps per-suture data and raises chi by 2") {
    const Surface s{{comp("S", 2, {{"k", 1}})}};
    const auto r = applyDiskSurgery(s, DiskSurgery::separating("S", {1, {{"k", 1}}}, {1, {}}));
    REQUIRE(r.surface.size() == 2);
    CHECK(r.surface.components[0].id == "S.0");
    CHECK(r.surface.components[1].id == "S.1");
    CHECK(r.surface.eulerChar() == chiOracle(2, 1) + 2);
    CHECK(r.surface.eulerChar() == -1);
  }

  TEST_CASE("disk surgery errors") {
    CHECK_THROWS_AS(applyDiskSurgery(Surface{{comp("D", 0, {{"k", 1}})}}, DiskSurgery::nonSeparating("D")),
                    SurgeryError);
    // compressing a closed torus would leave a sphere
    CHECK_THROWS_AS(applyDiskSurgery(Surface{{comp("T", 1, {})}}, DiskSurgery::nonSeparating("T")), SurgeryError);
    // separating pieces must preserve genus and boundary
    CHECK_THROWS_AS(
        applyDiskSurgery(Surface{{comp("S", 2, {{"k", 1}})}}, DiskSurgery::separating("S", {1, {{"k", 1}}}, {0, {}})),
        SurgeryError);
    CHECK_THROWS_AS(applyDiskSurgery(Surface{{comp("S", 2, {{"k", 1}})}}, DiskSurgery::nonSeparating("X")),
                    SurgeryError);
  }

  TEST_CASE("arc surgeries") {
    const auto join = applyArcSurgery(Surface{{comp("P", 0, {{"k", 2}})}}, ArcSurgery::joinTwoCircles("P", {{"k", 1}}));
    CHECK(join.surface.components[0].genus == 0);
    CHECK(join.surface.components[0].totalBoundary() == 1);

    const auto nonsep =
        applyArcSurgery(Surface{{comp("T", 1, {{"k", 1}})}}, ArcSurgery::sameCircleNonSeparating("T", {{"k", 2}}));
    const auto& t = nonsep.surface.components[0];
    CHECK(t.genus == 0);
    CHECK(t.totalBoundary() == 2);
    CHECK(2 * t.genus + t.totalBoundary() == 2 * 1 + 1 - 1);  // 2g'+b' = 2g+b-1

    const auto sep = applyArcSurgery(Surface{{comp("D", 0, {{"k", 1}})}},
                                     ArcSurgery::sameCircleSeparating("D", {0, {{"k", 1}}}, {0, {{"k", 1}}}));
    REQUIRE(sep.surface.size() == 2);
    CHECK(sep.surface.eulerChar() == chiOracle(0, 1) + 1);

    CHECK_THROWS_AS(applyArcSurgery(Surface{{comp("D", 0, {{"k", 1}})}}, ArcSurgery::joinTwoCircles("D", {})),
                    SurgeryError);
    CHECK_THROWS_AS(applyArcSurgery(Surface{{comp("C", 1, {})}}, ArcSurgery::sameCircleNonSeparating("C", {{"k", 1}})),
                    SurgeryError);
  }

  TEST_CASE("every arc raises chi by exactly one") {
    const Surface s{{comp("R", 3, {{"k", 1}})}};
    const auto r = applyArcSurgeries(
        s, {ArcSurgery::sameCircleSeparating("R", {1, {{"a", 1}}}, {2, {{"k", 1}}}),
            ArcSurgery::sameCircleNonSeparating("R.1", {{"k", 1}, {"b", 1}})});
    CHECK(r.surface.eulerChar() == s.eulerChar() + 2);
    CHECK(r.lineage.at("R") == std::vector<std::string>{"R.0", "R.1"});
  }

  TEST_CASE("boundary sum") {
    auto sum = [](int ga, int ba, int gb, int bb) {
      return boundarySum(comp("a", ga, {{"k", ba}}), comp("b", gb, {{"k", bb}}), "k");
    };
    CHECK(sum(1, 1, 1, 1).genus == 2);
    CHECK(sum(1, 1, 1, 1).totalBoundary() == 1);
    CHECK(sum(0, 1, 3, 1).genus == 3);
    const auto c = sum(1, 2, 2, 1);
    CHECK(c.genus == 3);
    CHECK(c.totalBoundary() == 2);
    CHECK(c.eulerChar() == chiOracle(1, 2) + chiOracle(2, 1) - 1);
    CHECK_THROWS_AS(boundarySum(comp("a", 1, {}), comp("b", 1, {{"k", 1}}), "k"), SurgeryError);
  }
}

TEST_SUITE("compression_body") {
  TEST_CASE("handle number and index") {
    const auto w = body(comp("S", 2, {{"k", 1}}), {comp("R", 1, {{"k", 1}})});
    CHECK(w.handleNumber() == 1);
    CHECK(w.handleIndex() == (chiOracle(1, 1) - chiOracle(2, 1)) / 2);
    CHECK(!w.isTrivial());
    CHECK(!w.isHandlebody());

    const auto h3 = body(comp("S", 3, {}), {});
    CHECK(h3.handleNumber() == 4);
    CHECK(h3.handleIndex() == 2);
    CHECK(h3.isHandlebody());

    const auto torus = body(comp("S", 1, {}), {});
    CHECK(torus.handleNumber() == 2);
    CHECK(torus.handleIndex() == 0);

    const auto product = body(comp("S", 2, {{"k", 3}}), {comp("R", 2, {{"k", 3}})});
    CHECK(product.isTrivial());
    CHECK(product.handleNumber() == 0);
    CHECK(product.handleIndex() == 0);
  }

  TEST_CASE("identity h = j + 2 for handlebodies, h = j otherwise") {
    for (int g = 0; g <= 5; ++g) {
      const auto hb = body(comp("S", g + 1, {}), {});
      CHECK(hb.handleNumber() == hb.handleIndex() + 2);
      const auto cb = body(comp("S", g + 1, {{"k", 1}}), {comp("R", g, {{"k", 1}})});
      CHECK(cb.handleNumber() == cb.handleIndex());
    }
  }

  TEST_CASE("validity") {
    CHECK(body(comp("S", 2, {{"k", 1}}), {comp("R", 1, {{"k", 1}})}).isValid());
    CHECK(!body(comp("S", 2, {{"k", 1}}), {comp("R", 1, {{"k", 2}})}).isValid());
    CHECK(!body(comp("S", 1, {{"k", 1}}), {comp("R", 2, {{"k", 1}})}).isValid());
    CHECK(!body(comp("S", 0, {}), {}).isValid());
  }
}

TEST_SUITE("splitting_complex") {
  TEST_CASE("trefoil fibration complex") {
    const auto c = circularSplitting(1, 1);
    CHECK(validate(c).empty());
    CHECK(totalHandleNumber(c) == 0);
    CHECK(totalHandleIndex(c) == 0);
    CHECK(isFibrationComplex(c));
    CHECK(isCircularSplitting(c));
  }

  TEST_CASE("circular (1,2) complex has h = j = 2") {
    const auto c = circularSplitting(1, 2);
    CHECK(totalHandleNumber(c) == 2);
    CHECK(totalHandleIndex(c) == 2);
    CHECK(!isFibrationComplex(c));
  }

  TEST_CASE("thick attached to two A-bodies is rejected") {
    auto c = circularSplitting(1, 1);
    c.bodies.at("B").label = BodyLabel::A;
    bool found = false;
    for (const auto& v : validate(c))
      if (v.message.find("thick needs one A and one B") != std::string::npos) found = true;
    CHECK(found);
  }

  TEST_CASE("vertical pairing mismatch is reported") {
    auto c = circularSplitting(1, 1);
    c.components.at("R").surface.boundary = {{"k", 2}};
    c.components.at("R").surface.genus = 0;
    c.components.at("S").surface.genus = 1;
    bool found = false;
    for (const auto& v : validate(c))
      if (v.code == "vertical-pairing") found = true;
    CHECK(found);
  }

  TEST_CASE("totals with a handlebody") {
    // One genus-2 handlebody (h=3, j=1) and one body with h=1.
    SplittingComplex c;
    c.sutures["k"] = SutureKind::Toroidal;
    c.components["R"] = {Role::Thin, comp("R", 1, {{"k", 1}})};
    c.components["S"] = {Role::Thick, comp("S", 2, {{"k", 1}})};
    c.components["H"] = {Role::Thick, comp("H", 2, {})};
    c.components["T"] = {Role::Thin, comp("T", 2, {})};
    c.bodies["A"] = {"A", BodyLabel::A, "S", {"R"}};
    c.bodies["B"] = {"B", BodyLabel::B, "S", {"R", "T"}};
    c.bodies["A2"] = {"A2", BodyLabel::A, "H", {"T"}};
    c.bodies["B2"] = {"B2", BodyLabel::B, "H", {}};
    REQUIRE(validate(c).empty());
    CHECK(handlebodyCount(c) == 1);
    CHECK(c.resolve("B2").handleNumber() == 3);
    CHECK(c.resolve("B2").handleIndex() == 1);
    CHECK(totalHandleNumber(c) == totalHandleIndex(c) + 2 * handlebodyCount(c));
  }

  TEST_CASE("serialize and deserialize") {
    const auto c = connectedSumCompose(circularSplitting(1, 2), circularSplitting(0, 1));
    const std::string text = serialize(c);
    CHECK(deserialize(text) == c);
    CHECK(serialize(deserialize(text)) == text);

    CHECK_THROWS_WITH_AS(deserialize("SUTURES\nk|toroidal\nSURFACES\nR|thin|1|x:1|-\nEND\n"),
                         doctest::Contains("unknown suture"), ParseError);
    CHECK_THROWS_WITH_AS(deserialize("SUTURES\nk|toroidal\nSURFACES\nR|thin|1|k:1|-\nR|thick|1|k:1|-\nEND\n"),
                         doctest::Contains("duplicate id"), ParseError);
    CHECK_THROWS_AS(deserialize("SUTURES\nk|toroidal\n"), ParseError);
  }

  TEST_CASE("fresh ids and pieces") {
    const auto c = circularSplitting(1, 1);
    CHECK(freshId(c, "S") == "S1");
    CHECK(connectedPieces(c).size() == 1);
    CHECK(sutureBalance(c) == std::map<std::string, int>{{"k", 0}});
  }
}
