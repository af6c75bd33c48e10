#include <doctest.h>

#include "ghs/knot_evaluator.hpp"

using namespace ghs;

namespace {

HandleValue eval(const std::string& text, const KnotTable& t = defaultTable()) {
  auto e = parseExpr(text);
  validateExpr(*e);
  return evalExpr(*e, t).value;
}

const char* kPatterns =
    "pattern|P2|nonfibered|2|2|2|example\n"
    "pattern|C23|fibered|0|0|2|example\n"
    "pattern|Q1|nonfibered|4|4|1|example\n";

KnotTable withPatterns() { return mergeTables(defaultTable(), loadTable(kPatterns)); }

}  // namespace

TEST_SUITE("knot_evaluator") {
  TEST_CASE("atoms from the default table") {
    CHECK(eval("0_1") == HandleValue::exactly(0));
    CHECK(eval("3_1") == HandleValue::exactly(0));
    CHECK(eval("5_2") == HandleValue::exactly(2));
    CHECK_THROWS_AS(eval("9_42"), EvaluationError);
  }

  TEST_CASE("connected sums add") {
    CHECK(eval("3_1 # 5_2") == HandleValue::exactly(2));
    CHECK(eval("5_2 # 6_1") == HandleValue::exactly(4));
    CHECK(eval("3_1 # 4_1 # 7_1") == HandleValue::exactly(0));
  }

  TEST_CASE("cables pass the value through") {
    CHECK(eval("cable(2,3,3_1)") == HandleValue::exactly(0));
    CHECK(eval("cable(2,3,5_2)") == HandleValue::exactly(2));
    CHECK(eval("cable(2,3,cable(3,2,3_1))") == HandleValue::exactly(0));
    CHECK(eval("cable(2,-3,5_2 # 6_1)") == HandleValue::exactly(4));
  }

  TEST_CASE("cable parameters are validated") {
    CHECK_THROWS_AS(eval("cable(2,4,3_1)"), EvaluationError);
    CHECK_THROWS_AS(eval("cable(0,1,3_1)"), EvaluationError);
  }

  TEST_CASE("satellites give an interval") {
    const auto t = withPatterns();
    CHECK(eval("sat(P2,2,5_2)", t) == HandleValue{0, 4});
    CHECK(eval("sat(C23,2,3_1)", t) == HandleValue{0, 0});
    CHECK(eval("sat(Q1,1,6_1)", t) == HandleValue{0, 6});
    CHECK_THROWS_AS(eval("sat(P2,3,5_2)", t), EvaluationError);
    CHECK_THROWS_AS(eval("sat(ZZ,1,5_2)", t), EvaluationError);
  }

  TEST_CASE("unbounded entries propagate") {
    const auto t = mergeTables(defaultTable(), loadTable("X|nonfibered|2|inf|test\n"));
    const auto v = eval("X # 5_2", t);
    CHECK(v.lower == 4);
    CHECK(!v.upper);
    CHECK(formatHuman(v) == "MN >= 4");
    CHECK(formatHuman(HandleValue{0, 4}) == "MN in [0, 4]");
    CHECK(formatHuman(HandleValue::exactly(2)) == "MN = 2 (exact)");
  }

  TEST_CASE("syntax errors carry positions") {
    try {
      parseExpr("3_1 #");
      FAIL("expected a syntax error");
    } catch (const ExprSyntaxError& e) {
      CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parseExpr("cable(2,3"), ExprSyntaxError);
    CHECK_THROWS_AS(parseExpr(""), ExprSyntaxError);
    CHECK_THROWS_AS(parseExpr("3_1 ) "), ExprSyntaxError);
  }

  TEST_CASE("canonical printing round-trips") {
    for (const char* text : {"3_1 # 5_2 # 6_1", "cable(2,-3,3_1 # 4_1)", "sat(P2,2,cable(3,2,5_2))"}) {
      const auto e = parseExpr(text);
      CHECK(toString(*parseExpr(toString(*e))) == toString(*e));
    }
  }

  TEST_CASE("table errors") {
    CHECK_THROWS_AS(loadTable("K|fibered|1|1|src\n"), ParseError);  // fibered needs h = 0
    CHECK_THROWS_AS(loadTable("K|maybe|0|0|src\n"), ParseError);
    CHECK_THROWS_AS(loadTable("K|nonfibered|3|2|src\n"), ParseError);
    CHECK_THROWS_AS(loadTable("K|nonfibered|2\n"), ParseError);
    CHECK_THROWS_AS(mergeTables(defaultTable(), loadTable("3_1|fibered|0|0|dup\n")), EvaluationError);
    CHECK(loadTable("# comment\n\nK|nonfibered|2|inf|src\n").knots.at("K").h.upper == std::nullopt);
  }

  TEST_CASE("machine output") {
    const auto e = parseExpr("5_2 # 6_1");
    const std::string out = formatMachine(evalExpr(*e, defaultTable()));
    CHECK(out.rfind("value|4|4|true\n", 0) == 0);
    CHECK(out.find("prov|0|connected-sum|4|4|") != std::string::npos);
    CHECK(out == formatMachine(evalExpr(*parseExpr("5_2 # 6_1"), defaultTable())));
  }

  TEST_CASE("realized complexes match the upper bound") {
    const auto t = withPatterns();
    for (const char* text : {"3_1", "5_2 # 6_1", "cable(2,3,5_2)", "sat(P2,2,5_2)", "sat(Q1,1,3_1 # 5_2)"}) {
      CAPTURE(text);
      const auto e = parseExpr(text);
      const auto v = evalExpr(*e, t).value;
      const auto c = realizeExpr(*e, t);
      REQUIRE(c);
      CHECK(validate(*c).empty());
      CHECK(totalHandleNumber(*c) == *v.upper);
    }
  }
}
