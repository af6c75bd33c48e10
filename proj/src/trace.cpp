#include "ghs/trace.hpp"

#include <sstream>

namespace ghs {

namespace {

struct Line {
  int number;
  std::vector<std::string> fields;
};

std::string formatPiece(const PieceSpec& p) { return std::to_string(p.genus) + "/" + formatBoundary(p.boundary); }

PieceSpec parsePiece(const std::string& text, int line) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw ParseError(line, "piece '" + text + "' must look like genus/boundary");
  try {
    return PieceSpec{parseInt(text.substr(0, slash)), parseBoundary(text.substr(slash + 1))};
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

BoundaryMap boundaryField(const std::string& text, int line) {
  try {
    return parseBoundary(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

int intField(const std::string& text, int line) {
  try {
    return parseInt(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

void need(const Line& l, std::size_t n) {
  if (l.fields.size() != n)
    throw ParseError(l.number, "'" + l.fields[0] + "' expects " + std::to_string(n) + " fields, got " +
                                   std::to_string(l.fields.size()));
}

std::string optionalName(const std::string& s) { return s == "-" ? "" : s; }
std::string nameOrDash(const std::string& s) { return s.empty() ? "-" : s; }

std::vector<std::string> listField(const std::string& s) {
  if (s == "-" || s.empty()) return {};
  std::vector<std::string> out;
  for (const auto& x : splitFields(s, ',')) out.push_back(trim(x));
  return out;
}

std::string joinList(const std::vector<std::string>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

// `fields` starts at the target: target|nonsep  or  target|sep|g/b|g/b
DiskSurgery parseDisk(const Line& l) {
  const auto& f = l.fields;
  if (f.size() == 3 && f[2] == "nonsep") return DiskSurgery::nonSeparating(f[1]);
  if (f.size() == 5 && f[2] == "sep")
    return DiskSurgery::separating(f[1], parsePiece(f[3], l.number), parsePiece(f[4], l.number));
  throw ParseError(l.number, "disk must be target|nonsep or target|sep|g/b|g/b");
}

std::string formatDisk(const std::string& tag, const DiskSurgery& d) {
  if (d.kind == DiskSurgery::Kind::NonSeparating) return tag + "|" + d.target + "|nonsep\n";
  return tag + "|" + d.target + "|sep|" + formatPiece(d.left) + "|" + formatPiece(d.right) + "\n";
}

ArcSurgery parseArc(const Line& l) {
  const auto& f = l.fields;
  if (f.size() == 4 && f[2] == "join") return ArcSurgery::joinTwoCircles(f[1], boundaryField(f[3], l.number));
  if (f.size() == 4 && f[2] == "nonsep")
    return ArcSurgery::sameCircleNonSeparating(f[1], boundaryField(f[3], l.number));
  if (f.size() == 5 && f[2] == "sep")
    return ArcSurgery::sameCircleSeparating(f[1], parsePiece(f[3], l.number), parsePiece(f[4], l.number));
  throw ParseError(l.number, "arc must be target|join|b, target|nonsep|b or target|sep|g/b|g/b");
}

std::string formatArc(const ArcSurgery& a) {
  switch (a.kind) {
    case ArcSurgery::Kind::JoinTwoCircles:
      return "ARC|" + a.target + "|join|" + formatBoundary(a.result) + "\n";
    case ArcSurgery::Kind::SameCircleNonSeparating:
      return "ARC|" + a.target + "|nonsep|" + formatBoundary(a.result) + "\n";
    case ArcSurgery::Kind::SameCircleSeparating:
      return "ARC|" + a.target + "|sep|" + formatPiece(a.left) + "|" + formatPiece(a.right) + "\n";
  }
  return "";
}

WeakReductionMove parseWeakReduction(const Line& head, const std::vector<Line>& block) {
  need(head, 7);
  WeakReductionMove m;
  m.thickTarget = head.fields[2];
  m.s1Name = optionalName(head.fields[3]);
  m.thinName = optionalName(head.fields[4]);
  m.s2Name = optionalName(head.fields[5]);
  if (head.fields[6] != "0" && head.fields[6] != "1")
    throw ParseError(head.number, "maximal flag must be 0 or 1");
  m.maximal = head.fields[6] == "1";
  for (const auto& l : block) {
    const std::string& tag = l.fields[0];
    if (tag == "DISK_A") {
      m.diskSystemA.push_back(parseDisk(l));
    } else if (tag == "DISK_B") {
      m.diskSystemB.push_back(parseDisk(l));
    } else if (tag == "THIN_DISK") {
      m.thinDisks.push_back(parseDisk(l));
    } else if (tag == "MINUS_A" || tag == "MINUS_B" || tag == "THIN_TO_S2") {
      need(l, 3);
      auto& target = tag == "MINUS_A" ? m.minusAToS1 : tag == "MINUS_B" ? m.minusBToS2 : m.thinToS2;
      if (!target.emplace(l.fields[1], l.fields[2]).second)
        throw ParseError(l.number, "'" + l.fields[1] + "' assigned twice");
    } else {
      throw ParseError(l.number, "unexpected '" + tag + "' in weak-reduce block");
    }
  }
  return m;
}

SutureKind parseSutureKind(const std::string& s, int line) {
  if (s == "toroidal") return SutureKind::Toroidal;
  if (s == "annular") return SutureKind::Annular;
  throw ParseError(line, "unknown suture kind '" + s + "'");
}

ChopMove parseChop(const Line& head, const std::vector<Line>& block) {
  need(head, 2);
  ChopMove m;
  for (const auto& l : block) {
    const std::string& tag = l.fields[0];
    if (tag == "CHOPPED") {
      need(l, 2);
      m.choppedSutures.push_back(l.fields[1]);
    } else if (tag == "SUTURE") {
      need(l, 3);
      m.newSutures[l.fields[1]] = parseSutureKind(l.fields[2], l.number);
    } else if (tag == "SLOPES") {
      need(l, 2);
      if (l.fields[1] != "distinct") throw ParseError(l.number, "SLOPES only accepts 'distinct'");
      m.slopesDistinct = true;
    } else if (tag == "ARC") {
      m.arcs.push_back(parseArc(l));
    } else if (tag == "RECT") {
      need(l, 4);
      m.rectangles.push_back(RectangleCount{l.fields[1], l.fields[2], intField(l.fields[3], l.number)});
    } else if (tag == "SPLIT") {
      need(l, 5);
      m.splits.push_back(BodySplit{l.fields[1], l.fields[2], l.fields[3], listField(l.fields[4])});
    } else {
      throw ParseError(l.number, "unexpected '" + tag + "' in chop block");
    }
  }
  return m;
}

MoveSpec parseMove(const Line& head, const std::vector<Line>& block) {
  const auto& f = head.fields;
  if (f.size() < 2) throw ParseError(head.number, "MOVE needs a move name");
  const std::string& name = f[1];
  const bool isBlock = name == "weak-reduce" || name == "chop";
  if (!isBlock && !block.empty()) throw ParseError(head.number, "move '" + name + "' takes no block");
  if (name == "amalgamate") {
    need(head, 4);
    return AmalgamateMove{listField(f[3]), optionalName(f[2])};
  }
  if (name == "inflate") {
    need(head, 5);
    return InflateMove{f[2], optionalName(f[3]), optionalName(f[4])};
  }
  if (name == "deflate") {
    need(head, 4);
    return DeflateMove{f[2], f[3]};
  }
  if (name == "stabilize") {
    need(head, 3);
    return StabilizeMove{f[2]};
  }
  if (name == "destabilize") {
    need(head, 3);
    return DestabilizeMove{f[2]};
  }
  if (name == "weak-reduce") return parseWeakReduction(head, block);
  if (name == "chop") return parseChop(head, block);
  throw ParseError(head.number, "unknown move '" + name + "'");
}

}  // namespace

std::string serializeMove(const MoveSpec& spec) {
  std::ostringstream out;
  if (const auto* m = std::get_if<AmalgamateMove>(&spec)) {
    out << "MOVE|amalgamate|" << nameOrDash(m->newThick) << '|' << joinList(m->thinSet) << '\n';
  } else if (const auto* m = std::get_if<InflateMove>(&spec)) {
    out << "MOVE|inflate|" << m->thin << '|' << nameOrDash(m->newThick) << '|' << nameOrDash(m->newThin) << '\n';
  } else if (const auto* m = std::get_if<DeflateMove>(&spec)) {
    out << "MOVE|deflate|" << m->thick << '|' << m->thin << '\n';
  } else if (const auto* m = std::get_if<StabilizeMove>(&spec)) {
    out << "MOVE|stabilize|" << m->thick << '\n';
  } else if (const auto* m = std::get_if<DestabilizeMove>(&spec)) {
    out << "MOVE|destabilize|" << m->thick << '\n';
  } else if (const auto* m = std::get_if<WeakReductionMove>(&spec)) {
    out << "MOVE|weak-reduce|" << m->thickTarget << '|' << nameOrDash(m->s1Name) << '|' << nameOrDash(m->thinName)
        << '|' << nameOrDash(m->s2Name) << '|' << (m->maximal ? 1 : 0) << '\n';
    for (const auto& d : m->diskSystemA) out << formatDisk("DISK_A", d);
    for (const auto& d : m->diskSystemB) out << formatDisk("DISK_B", d);
    for (const auto& d : m->thinDisks) out << formatDisk("THIN_DISK", d);
    for (const auto& [k, v] : m->minusAToS1) out << "MINUS_A|" << k << '|' << v << '\n';
    for (const auto& [k, v] : m->minusBToS2) out << "MINUS_B|" << k << '|' << v << '\n';
    for (const auto& [k, v] : m->thinToS2) out << "THIN_TO_S2|" << k << '|' << v << '\n';
    out << "END_MOVE\n";
  } else if (const auto* m = std::get_if<ChopMove>(&spec)) {
    out << "MOVE|chop\n";
    for (const auto& s : m->choppedSutures) out << "CHOPPED|" << s << '\n';
    for (const auto& [s, kind] : m->newSutures)
      out << "SUTURE|" << s << '|' << (kind == SutureKind::Toroidal ? "toroidal" : "annular") << '\n';
    if (m->slopesDistinct) out << "SLOPES|distinct\n";
    for (const auto& a : m->arcs) out << formatArc(a);
    for (const auto& r : m->rectangles) out << "RECT|" << r.body << '|' << r.minusComponent << '|' << r.count << '\n';
    for (const auto& s : m->splits)
      out << "SPLIT|" << s.parent << '|' << s.id << '|' << s.plus << '|' << joinList(s.minus) << '\n';
    out << "END_MOVE\n";
  }
  return out.str();
}

std::string serializeRecord(const MoveRecord& r) {
  return serializeMove(r.move) + "LEDGER|h|" + std::to_string(r.hBefore) + "|" + std::to_string(r.hAfter) +
         "\nLEDGER|j|" + std::to_string(r.jBefore) + "|" + std::to_string(r.jAfter) + "\n";
}

Trace parseTrace(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::string complexText;
  int lineNo = 0;
  bool sawEnd = false;
  while (std::getline(in, raw)) {
    ++lineNo;
    complexText += raw + "\n";
    const auto hash = raw.find('#');
    if (trim(hash == std::string::npos ? raw : raw.substr(0, hash)) == "END") {
      sawEnd = true;
      break;
    }
  }
  if (!sawEnd) throw ParseError(lineNo, "trace has no complex block terminated by END");
  Trace t;
  t.initial = deserialize(complexText);

  std::vector<Line> lines;
  while (std::getline(in, raw)) {
    ++lineNo;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    Line l{lineNo, {}};
    for (const auto& f : splitFields(body)) l.fields.push_back(trim(f));
    lines.push_back(std::move(l));
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& tag = l.fields[0];
    TraceStep step;
    step.line = l.number;
    if (tag == "MOVE") {
      std::vector<Line> block;
      if (l.fields.size() >= 2 && (l.fields[1] == "weak-reduce" || l.fields[1] == "chop")) {
        std::size_t j = i + 1;
        while (j < lines.size() && lines[j].fields[0] != "END_MOVE") {
          if (lines[j].fields[0] == "MOVE") throw ParseError(lines[j].number, "MOVE inside an open block");
          block.push_back(lines[j]);
          ++j;
        }
        if (j == lines.size()) throw ParseError(l.number, "block move without END_MOVE");
        i = j;
      }
      step.kind = TraceStep::Kind::Move;
      step.move = parseMove(l, block);
    } else if (tag == "ASSUME") {
      need(l, 2);
      step.kind = TraceStep::Kind::Assume;
      step.assumption = parseAssumption(l.fields[1], l.number);
    } else if (tag == "INCOMPRESSIBLE") {
      need(l, 2);
      step.kind = TraceStep::Kind::Incompressible;
      step.target = l.fields[1];
    } else if (tag == "EXPECT" || tag == "LEDGER") {
      if (l.fields.size() < 3) throw ParseError(l.number, tag + " needs a key and a value");
      step.kind = TraceStep::Kind::Expect;
      step.target = tag == "LEDGER" ? "ledger-" + l.fields[1] : l.fields[1];
      step.args.assign(l.fields.begin() + 2, l.fields.end());
      static const std::map<std::string, std::size_t> arity{
          {"h", 1},       {"j", 1},      {"pieces", 1},         {"piece-h", 2},     {"piece-j", 2},
          {"circular", 1}, {"incompressible", 1}, {"handlebodies", 1}, {"ledger-h", 2}, {"ledger-j", 2}};
      auto it = arity.find(step.target);
      if (it == arity.end()) throw ParseError(l.number, "unknown expectation '" + l.fields[1] + "'");
      if (step.args.size() != it->second)
        throw ParseError(l.number, "expectation '" + l.fields[1] + "' expects " + std::to_string(it->second) +
                                       " values");
      if (step.target != "incompressible")
        for (const auto& a : step.args) intField(a, l.number);
    } else {
      throw ParseError(l.number, "unknown directive '" + tag + "'");
    }
    t.steps.push_back(std::move(step));
  }
  return t;
}

std::string serializeTrace(const Trace& t) {
  std::ostringstream out;
  out << serialize(t.initial);
  for (const auto& s : t.steps) {
    switch (s.kind) {
      case TraceStep::Kind::Move:
        out << serializeMove(*s.move);
        break;
      case TraceStep::Kind::Assume:
        out << "ASSUME|" << toString(*s.assumption) << '\n';
        break;
      case TraceStep::Kind::Incompressible:
        out << "INCOMPRESSIBLE|" << s.target << '\n';
        break;
      case TraceStep::Kind::Expect: {
        const bool ledger = s.target.rfind("ledger-", 0) == 0;
        out << (ledger ? "LEDGER|" + s.target.substr(7) : "EXPECT|" + s.target);
        for (const auto& a : s.args) out << '|' << a;
        out << '\n';
        break;
      }
    }
  }
  return out.str();
}

MoveResult applyMove(const SplittingComplex& c, const MoveSpec& spec) {
  struct Visitor {
    const SplittingComplex& c;
    MoveResult operator()(const AmalgamateMove& m) const { return amalgamate(c, m); }
    MoveResult operator()(const WeakReductionMove& m) const { return weakReduce(c, m); }
    MoveResult operator()(const InflateMove& m) const { return inflate(c, m); }
    MoveResult operator()(const DeflateMove& m) const { return deflate(c, m); }
    MoveResult operator()(const StabilizeMove& m) const { return stabilize(c, m.thick); }
    MoveResult operator()(const DestabilizeMove& m) const { return destabilize(c, m.thick); }
    MoveResult operator()(const ChopMove& m) const {
      ChopResult r = annulusChop(c, m);
      return MoveResult{std::move(r.complex), std::move(r.record)};
    }
  };
  return std::visit(Visitor{c}, spec);
}

ReplayResult replayTrace(const Trace& t) {
  ReplayResult r;
  r.final = t.initial;
  auto note = [&](const TraceStep& s, bool ok, const std::string& msg) {
    std::string line = (ok ? "ok   " : "FAIL ") + std::string("line ") + std::to_string(s.line) + ": " + msg;
    r.log.push_back(line);
    if (!ok) {
      r.failures.push_back(line);
      r.ok = false;
    }
  };
  {
    const auto violations = validate(t.initial);
    if (!violations.empty()) {
      r.ok = false;
      r.failures.push_back("initial complex invalid: " + violations.front().message);
      r.log.push_back(r.failures.back());
      return r;
    }
  }

  for (const auto& s : t.steps) {
    switch (s.kind) {
      case TraceStep::Kind::Assume:
        r.final.assumptions.insert(*s.assumption);
        note(s, true, std::string("assume ") + toString(*s.assumption));
        break;
      case TraceStep::Kind::Incompressible:
        if (!r.final.components.count(s.target) || r.final.component(s.target).role != Role::Thin) {
          note(s, false, "incompressible: '" + s.target + "' is not a thin component");
        } else {
          r.final.incompressible.insert(s.target);
          note(s, true, "incompressible " + s.target);
        }
        break;
      case TraceStep::Kind::Move: {
        const SplittingComplex before = r.final;
        MoveResult res;
        try {
          res = applyMove(before, *s.move);
        } catch (const std::exception& e) {
          note(s, false, std::string(moveName(*s.move)) + ": " + e.what());
          return r;
        }
        const MoveRecord& rec = res.record;
        const bool stab = std::holds_alternative<StabilizeMove>(*s.move);
        const bool destab = std::holds_alternative<DestabilizeMove>(*s.move);
        const int dj = stab ? 2 : destab ? -2 : 0;
        std::string msg = std::string(moveName(*s.move)) + ": h " + std::to_string(rec.hBefore) + "->" +
                          std::to_string(rec.hAfter) + ", j " + std::to_string(rec.jBefore) + "->" +
                          std::to_string(rec.jAfter);
        bool ok = rec.jAfter - rec.jBefore == dj;
        if (!ok) msg += " (handle index changed)";
        const bool noHandlebody = handlebodyCount(before) == 0 && handlebodyCount(res.complex) == 0;
        if (noHandlebody && rec.hAfter - rec.hBefore != dj) {
          ok = false;
          msg += " (handle number changed without handlebodies)";
        }
        note(s, ok, msg);
        r.records.push_back(rec);
        r.final = std::move(res.complex);
        break;
      }
      case TraceStep::Kind::Expect: {
        const std::string& key = s.target;
        auto arg = [&](std::size_t i) { return parseInt(s.args.at(i)); };
        bool ok = true;
        std::string msg;
        const auto pieces = connectedPieces(r.final);
        auto pieceAt = [&](int i) -> const SplittingComplex* {
          return i >= 0 && i < static_cast<int>(pieces.size()) ? &pieces[static_cast<std::size_t>(i)] : nullptr;
        };
        if (key == "h" || key == "j" || key == "pieces" || key == "handlebodies") {
          const int actual = key == "h"        ? totalHandleNumber(r.final)
                             : key == "j"      ? totalHandleIndex(r.final)
                             : key == "pieces" ? static_cast<int>(pieces.size())
                                               : handlebodyCount(r.final);
          ok = actual == arg(0);
          msg = "expect " + key + "=" + s.args[0] + ", got " + std::to_string(actual);
        } else if (key == "piece-h" || key == "piece-j") {
          const SplittingComplex* p = pieceAt(arg(0));
          if (!p) {
            ok = false;
            msg = "expect " + key + ": no piece " + s.args[0];
          } else {
            const int actual = key == "piece-h" ? totalHandleNumber(*p) : totalHandleIndex(*p);
            ok = actual == arg(1);
            msg = "expect " + key + "[" + s.args[0] + "]=" + s.args[1] + ", got " + std::to_string(actual);
          }
        } else if (key == "circular") {
          const SplittingComplex* p = pieceAt(arg(0));
          ok = p && isCircularSplitting(*p);
          msg = "expect piece " + s.args[0] + " circular";
        } else if (key == "incompressible") {
          ok = r.final.incompressible.count(s.args[0]) > 0;
          msg = "expect '" + s.args[0] + "' incompressible";
        } else if (key == "ledger-h" || key == "ledger-j") {
          if (r.records.empty()) {
            ok = false;
            msg = "ledger line with no preceding move";
          } else {
            const MoveRecord& rec = r.records.back();
            const int b = key == "ledger-h" ? rec.hBefore : rec.jBefore;
            const int a = key == "ledger-h" ? rec.hAfter : rec.jAfter;
            ok = b == arg(0) && a == arg(1);
            msg = key + " " + s.args[0] + "->" + s.args[1] + ", recorded " + std::to_string(b) + "->" +
                  std::to_string(a);
          }
        }
        note(s, ok, msg);
        break;
      }
    }
  }
  return r;
}

}  // namespace ghs
