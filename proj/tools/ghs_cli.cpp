#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ghs/constructions.hpp"
#include "ghs/fuzz.hpp"
#include "ghs/knot_evaluator.hpp"
#include "ghs/scenario.hpp"
#include "ghs/trace.hpp"

#ifndef GHS_FIXTURE_DIR
#define GHS_FIXTURE_DIR "fixtures"
#endif

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kEval = 3 };

bool readFile(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

int cmdEval(const std::string& expr, const std::vector<std::string>& tables, bool noDefault, bool machine) {
  ghs::KnotTable table;
  try {
    table = noDefault ? ghs::KnotTable{} : ghs::defaultTable();
    for (const auto& path : tables) {
      std::string text;
      if (!readFile(path, text)) {
        std::cerr << "error: cannot read table '" << path << "'\n";
        return kUsage;
      }
      table = ghs::mergeTables(std::move(table), ghs::loadTable(text));
    }
  } catch (const ghs::ParseError& e) {
    std::cerr << "table error: " << e.what() << '\n';
    return kUsage;
  } catch (const ghs::EvaluationError& e) {
    std::cerr << "table error: " << e.what() << '\n';
    return kUsage;
  }

  ghs::KnotExprPtr e;
  try {
    e = ghs::parseExpr(expr);
  } catch (const ghs::ExprSyntaxError& err) {
    std::cerr << err.what() << '\n' << "  " << expr << '\n' << "  " << std::string(err.position(), ' ') << "^\n";
    return kUsage;
  }
  try {
    ghs::validateExpr(*e);
    const ghs::Evaluation ev = ghs::evalExpr(*e, table);
    std::cout << (machine ? ghs::formatMachine(ev) : ghs::formatReport(ev));
  } catch (const ghs::EvaluationError& err) {
    std::cerr << "evaluation error: " << err.what() << '\n';
    return kEval;
  }
  return kOk;
}

int cmdValidate(const std::string& path) {
  std::string text;
  if (!readFile(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kUsage;
  }
  ghs::SplittingComplex c;
  try {
    c = ghs::deserialize(text);
  } catch (const ghs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  }
  const auto violations = ghs::validate(c);
  if (!violations.empty()) {
    std::cout << "invalid; " << violations.size() << " violation(s)\n";
    for (const auto& v : violations) std::cout << "  " << v.code << ": " << v.message << '\n';
    return kInvalid;
  }
  const int handlebodies = ghs::handlebodyCount(c);
  std::cout << "valid; h=" << ghs::totalHandleNumber(c) << " j=" << ghs::totalHandleIndex(c) << "; "
            << c.bodies.size() << " bodies (" << ghs::trivialBodyCount(c) << " trivial";
  if (handlebodies > 0) std::cout << ", " << handlebodies << " handlebod" << (handlebodies == 1 ? "y" : "ies");
  std::cout << ")\n";
  return kOk;
}

int cmdScenario(const std::string& name, const std::string& fixtureDir) {
  const auto& names = ghs::scenarioNames();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::cerr << "unknown scenario '" << name << "'; known:";
    for (const auto& n : names) std::cerr << ' ' << n;
    std::cerr << '\n';
    return kUsage;
  }
  ghs::ScenarioReport report;
  try {
    report = ghs::runScenario(name, fixtureDir);
  } catch (const ghs::ParseError& e) {
    std::cerr << "fixture parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  for (const auto& l : report.lines) std::cout << l << '\n';
  std::cout << "scenario " << name << ": " << (report.ok ? "PASS" : "FAIL") << '\n';
  return report.ok ? kOk : kInvalid;
}

int cmdFuzz(int trials, std::uint64_t seed, int maxMoves, unsigned threads) {
  if (trials < 1 || maxMoves < 0) {
    std::cerr << "error: --trials must be >= 1 and --max-moves >= 0\n";
    return kUsage;
  }
  ghs::FuzzConfig config{trials, seed, maxMoves, threads};
  const ghs::FuzzReport report = ghs::runFuzz(config);
  std::cout << ghs::formatFuzzReport(config, report);
  return report.ok() ? kOk : kInvalid;
}

int cmdReplay(const std::string& path, bool emit) {
  std::string text;
  if (!readFile(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kUsage;
  }
  ghs::Trace trace;
  try {
    trace = ghs::parseTrace(text);
  } catch (const ghs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  }
  const ghs::ReplayResult r = ghs::replayTrace(trace);
  for (const auto& l : r.log) std::cout << l << '\n';
  if (emit) {
    std::cout << "# records\n";
    for (const auto& rec : r.records) std::cout << ghs::serializeRecord(rec);
    std::cout << "# final complex\n" << ghs::serialize(r.final);
  }
  std::cout << "replay: " << (r.ok ? "PASS" : "FAIL") << '\n';
  return r.ok ? kOk : kInvalid;
}

int cmdBuild(const std::vector<std::string>& args, const std::vector<std::string>& tables) {
  if (args.empty()) {
    std::cerr << "build needs a kind: circular gR gS | pattern gR gS n | cable p q | expr TEXT | scenario NAME\n";
    return kUsage;
  }
  auto intArg = [&](std::size_t i) { return ghs::parseInt(args.at(i)); };
  try {
    const std::string& kind = args[0];
    ghs::SplittingComplex c;
    if (kind == "circular" && args.size() == 3) {
      c = ghs::circularSplitting(intArg(1), intArg(2));
    } else if (kind == "pattern" && args.size() == 4) {
      c = ghs::patternSplitting(intArg(1), intArg(2), intArg(3));
    } else if (kind == "cable" && args.size() == 3) {
      c = ghs::cablePatternSplit(intArg(1), intArg(2));
    } else if (kind == "scenario" && args.size() == 2) {
      c = ghs::scenarioSeed(args[1]);
    } else if (kind == "expr" && args.size() == 2) {
      ghs::KnotTable table = ghs::defaultTable();
      for (const auto& path : tables) {
        std::string text;
        if (!readFile(path, text)) throw std::invalid_argument("cannot read table '" + path + "'");
        table = ghs::mergeTables(std::move(table), ghs::loadTable(text));
      }
      auto e = ghs::parseExpr(args[1]);
      ghs::validateExpr(*e);
      auto realized = ghs::realizeExpr(*e, table);
      if (!realized) {
        std::cerr << "expression has an unbounded or odd atom; no complex realizes it\n";
        return kEval;
      }
      c = *realized;
    } else {
      std::cerr << "bad build arguments\n";
      return kUsage;
    }
    std::cout << ghs::serialize(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular Heegaard splitting complexes and Morse-Novikov number evaluation"};
  app.require_subcommand(1);

  std::string expr, path, name;
  std::vector<std::string> tables, buildArgs;
  bool machine = false, noDefault = false, emit = false;
  int trials = 100, maxMoves = 20;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string fixtureDir = GHS_FIXTURE_DIR;

  auto* eval = app.add_subcommand("eval", "Evaluate a knot expression");
  eval->add_option("expr", expr, "Expression, e.g. \"3_1 # cable(2,3,5_2)\"")->required();
  eval->add_option("--table", tables, "Additional .knots table (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->allow_extra_args(false);
  eval->add_flag("--no-default", noDefault, "Do not load the built-in table");
  eval->add_flag("--machine", machine, "Canonical machine-readable output");

  auto* validate = app.add_subcommand("validate", "Validate a .ghs complex");
  validate->add_option("file", path, "Complex file")->required();

  auto* scenario = app.add_subcommand("scenario", "Replay a scripted scenario");
  scenario->add_option("name", name, "lemma-incompressible | thm-additivity | thm-cable")->required();
  scenario->add_option("--fixture-dir", fixtureDir, "Directory holding .ghst traces");

  auto* fuzz = app.add_subcommand("fuzz", "Random move sequences with invariant checks");
  fuzz->add_option("--trials", trials, "Number of trials");
  fuzz->add_option("--seed", seed, "Seed");
  fuzz->add_option("--max-moves", maxMoves, "Moves per trial");
  fuzz->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* replay = app.add_subcommand("replay", "Replay a .ghst trace");
  replay->add_option("file", path, "Trace file")->required();
  replay->add_flag("--emit", emit, "Print move records and the final complex");

  auto* build = app.add_subcommand("build", "Print a constructed complex");
  build->add_option("args", buildArgs, "circular gR gS | pattern gR gS n | cable p q | expr TEXT | scenario NAME")
      ->required();
  build->add_option("--table", tables, "Additional .knots table for expr (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*eval) return cmdEval(expr, tables, noDefault, machine);
  if (*validate) return cmdValidate(path);
  if (*scenario) return cmdScenario(name, fixtureDir);
  if (*fuzz) return cmdFuzz(trials, seed, maxMoves, threads);
  if (*replay) return cmdReplay(path, emit);
  if (*build) return cmdBuild(buildArgs, tables);
  return kUsage;
}
