#include "ghs/splitting_complex.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace ghs {

const char* toString(Role role) {
  switch (role) {
    case Role::Thin: return "thin";
    case Role::Thick: return "thick";
    case Role::RPlus: return "rplus";
    case Role::RMinus: return "rminus";
  }
  return "?";
}

const char* toString(Assumption a) {
  switch (a) {
    case Assumption::LocallyThin: return "locallyThin";
    case Assumption::ThinIncompressible: return "thinIncompressible";
    case Assumption::StronglyIrreducible: return "stronglyIrreducible";
  }
  return "?";
}

Surface SplittingComplex::surface(Role role) const {
  Surface s;
  for (const auto& [id, placed] : components)
    if (placed.role == role) s.components.push_back(placed.surface);
  return s;
}

const PlacedComponent& SplittingComplex::component(const std::string& id) const {
  auto it = components.find(id);
  if (it == components.end()) throw std::out_of_range("unknown component '" + id + "'");
  return it->second;
}

const BodyNode& SplittingComplex::body(const std::string& id) const {
  auto it = bodies.find(id);
  if (it == bodies.end()) throw std::out_of_range("unknown body '" + id + "'");
  return it->second;
}

bool SplittingComplex::hasId(const std::string& id) const {
  return sutures.count(id) || components.count(id) || bodies.count(id);
}

CompressionBody SplittingComplex::resolve(const std::string& bodyId) const {
  const BodyNode& node = body(bodyId);
  CompressionBody w;
  w.label = node.label;
  w.plus = component(node.plus).surface;
  for (const auto& m : node.minus) w.minus.push_back(component(m).surface);
  return w;
}

std::vector<std::string> SplittingComplex::bodiesOver(const std::string& componentId) const {
  std::vector<std::string> out;
  for (const auto& [id, node] : bodies)
    if (node.plus == componentId) out.push_back(id);
  return out;
}

std::vector<std::string> SplittingComplex::bodiesUnder(const std::string& componentId) const {
  std::vector<std::string> out;
  for (const auto& [id, node] : bodies)
    if (std::find(node.minus.begin(), node.minus.end(), componentId) != node.minus.end())
      out.push_back(id);
  return out;
}

namespace {

int countLabel(const SplittingComplex& c, const std::vector<std::string>& ids, BodyLabel label) {
  int n = 0;
  for (const auto& id : ids)
    if (c.bodies.at(id).label == label) ++n;
  return n;
}

}  // namespace

std::vector<Violation> validate(const SplittingComplex& c) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  for (const auto& [id, placed] : c.components) {
    if (placed.surface.id != id) add("id-mismatch", "component key '" + id + "' differs from its id");
    if (placed.surface.genus < 0) add("negative-genus", "component '" + id + "' has negative genus");
    for (const auto& [suture, count] : placed.surface.boundary) {
      if (!c.sutures.count(suture))
        add("unknown-suture", "component '" + id + "' has boundary on unknown suture '" + suture + "'");
      if (count <= 0) add("bad-count", "component '" + id + "' has non-positive circle count");
    }
    if (placed.surface.isSphere()) add("sphere", "component '" + id + "' is a sphere");
  }

  bool dangling = false;
  for (const auto& [id, node] : c.bodies) {
    if (node.id != id) add("id-mismatch", "body key '" + id + "' differs from its id");
    auto plusIt = c.components.find(node.plus);
    if (plusIt == c.components.end()) {
      add("dangling-reference", "body '" + id + "' positive boundary '" + node.plus + "' is unknown");
      dangling = true;
    } else if (plusIt->second.role != Role::Thick) {
      add("body-plus", "body '" + id + "' positive boundary '" + node.plus + "' is not thick");
    }
    std::set<std::string> seen;
    for (const auto& m : node.minus) {
      if (!seen.insert(m).second) add("body-minus", "body '" + id + "' lists '" + m + "' twice");
      auto it = c.components.find(m);
      if (it == c.components.end()) {
        add("dangling-reference", "body '" + id + "' negative boundary '" + m + "' is unknown");
        dangling = true;
        continue;
      }
      const Role r = it->second.role;
      const bool ok = r == Role::Thin || (node.label == BodyLabel::A ? r == Role::RMinus : r == Role::RPlus);
      if (!ok)
        add("body-minus-role", std::string(toString(node.label)) + "-body '" + id +
                                   "' cannot have " + toString(r) + " component '" + m +
                                   "' in its negative boundary");
    }
  }
  if (dangling) return out;

  for (const auto& [id, node] : c.bodies) {
    const CompressionBody w = c.resolve(id);
    for (const auto& v : w.violations()) {
      if (v == "vertical pairing mismatch")
        add("vertical-pairing", "body '" + id + "': vertical pairing mismatch between positive and negative boundary");
      else
        add("body-invalid", "body '" + id + "': " + v);
    }
  }

  for (const auto& [id, placed] : c.components) {
    const auto over = c.bodiesOver(id);
    const auto under = c.bodiesUnder(id);
    switch (placed.role) {
      case Role::Thick:
        if (over.size() != 2 || countLabel(c, over, BodyLabel::A) != 1 ||
            countLabel(c, over, BodyLabel::B) != 1)
          add("thick-incidence", "thick needs one A and one B: '" + id + "'");
        if (!under.empty()) add("thick-incidence", "thick '" + id + "' appears in a negative boundary");
        break;
      case Role::Thin:
        if (under.size() != 2 || countLabel(c, under, BodyLabel::A) != 1 ||
            countLabel(c, under, BodyLabel::B) != 1)
          add("thin-incidence", "thin needs one A and one B: '" + id + "'");
        if (!over.empty()) add("thin-incidence", "thin '" + id + "' is a positive boundary");
        break;
      case Role::RPlus:
      case Role::RMinus:
        if (under.size() != 1 || !over.empty())
          add("boundary-incidence", "boundary component '" + id + "' needs exactly one body");
        break;
    }
  }

  for (const auto& id : c.incompressible)
    if (!c.components.count(id)) add("dangling-reference", "incompressible mark on unknown '" + id + "'");
  return out;
}

bool isValid(const SplittingComplex& c) { return validate(c).empty(); }

int totalHandleNumber(const SplittingComplex& c) {
  int h = 0;
  for (const auto& [id, node] : c.bodies) h += c.resolve(id).handleNumber();
  return h;
}

int totalHandleIndex(const SplittingComplex& c) {
  int j = 0;
  for (const auto& [id, node] : c.bodies) j += c.resolve(id).handleIndex();
  return j;
}

int handlebodyCount(const SplittingComplex& c) {
  int n = 0;
  for (const auto& [id, node] : c.bodies)
    if (node.minus.empty()) ++n;
  return n;
}

int trivialBodyCount(const SplittingComplex& c) {
  int n = 0;
  for (const auto& [id, node] : c.bodies)
    if (c.resolve(id).isTrivial()) ++n;
  return n;
}

bool isFibrationComplex(const SplittingComplex& c) {
  return trivialBodyCount(c) == static_cast<int>(c.bodies.size());
}

std::map<std::string, int> sutureBalance(const SplittingComplex& c) {
  std::map<std::string, int> out;
  for (const auto& [id, kind] : c.sutures) out[id] = 0;
  for (const auto& [id, placed] : c.components) {
    const int sign = placed.role == Role::Thick ? 1 : placed.role == Role::Thin ? -1 : 0;
    for (const auto& [suture, count] : placed.surface.boundary) out[suture] += sign * count;
  }
  return out;
}

std::string freshId(const SplittingComplex& c, const std::string& prefix) {
  for (int n = 1;; ++n) {
    std::string id = prefix + std::to_string(n);
    if (!c.hasId(id)) return id;
  }
}

std::vector<SplittingComplex> connectedPieces(const SplittingComplex& c) {
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> index;
  for (const auto& [id, p] : c.components) {
    index[id] = keys.size();
    keys.push_back(id);
  }
  const std::size_t nComponents = keys.size();
  for (const auto& [id, b] : c.bodies) {
    index["body:" + id] = keys.size();
    keys.push_back(id);
  }
  std::vector<std::size_t> parent(keys.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (const auto& [id, node] : c.bodies) {
    const std::size_t self = index.at("body:" + id);
    if (index.count(node.plus)) unite(self, index.at(node.plus));
    for (const auto& m : node.minus)
      if (index.count(m)) unite(self, index.at(m));
  }

  std::map<std::size_t, SplittingComplex> byRoot;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::size_t root = find(i);
    if (!byRoot.count(root)) {
      order.push_back(root);
      SplittingComplex piece;
      piece.assumptions = c.assumptions;
      byRoot.emplace(root, std::move(piece));
    }
    SplittingComplex& piece = byRoot.at(root);
    if (i < nComponents) {
      const auto& placed = c.components.at(keys[i]);
      piece.components.emplace(keys[i], placed);
      for (const auto& [suture, count] : placed.surface.boundary)
        if (c.sutures.count(suture)) piece.sutures[suture] = c.sutures.at(suture);
      if (c.incompressible.count(keys[i])) piece.incompressible.insert(keys[i]);
    } else {
      piece.bodies.emplace(keys[i], c.bodies.at(keys[i]));
    }
  }
  std::vector<SplittingComplex> out;
  for (auto root : order) out.push_back(std::move(byRoot.at(root)));
  return out;
}

bool isCircularSplitting(const SplittingComplex& c) {
  return c.thin().size() == 1 && c.thick().size() == 1 && c.bodies.size() == 2 &&
         c.boundaryPlus().size() == 0 && c.boundaryMinus().size() == 0;
}

// ---------------------------------------------------------------------------
// Text format

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> splitFields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

int parseInt(const std::string& text) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  return value;
}

std::string formatBoundary(const BoundaryMap& b) {
  if (b.empty()) return "-";
  std::string out;
  for (const auto& [suture, count] : b) {
    if (!out.empty()) out += ',';
    out += suture + ":" + std::to_string(count);
  }
  return out;
}

BoundaryMap parseBoundary(const std::string& text) {
  BoundaryMap b;
  if (text == "-" || text.empty()) return b;
  for (const auto& entry : splitFields(text, ',')) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("boundary entry '" + entry + "' lacks ':'");
    const std::string suture = trim(entry.substr(0, colon));
    const int count = parseInt(trim(entry.substr(colon + 1)));
    if (suture.empty()) throw std::invalid_argument("empty suture name in boundary");
    if (count < 0) throw std::invalid_argument("negative circle count in boundary");
    if (b.count(suture)) throw std::invalid_argument("suture '" + suture + "' repeated in boundary");
    if (count > 0) b[suture] = count;
  }
  return b;
}

std::string serialize(const SplittingComplex& c) {
  std::ostringstream out;
  out << "SUTURES\n";
  for (const auto& [id, kind] : c.sutures)
    out << id << '|' << (kind == SutureKind::Toroidal ? "toroidal" : "annular") << '\n';
  out << "SURFACES\n";
  for (const auto& [id, placed] : c.components) {
    const auto& s = placed.surface;
    out << id << '|' << toString(placed.role) << '|' << s.genus << '|' << formatBoundary(s.boundary)
        << '|' << (s.orientationTag ? *s.orientationTag : "-") << '\n';
  }
  out << "BODIES\n";
  for (const auto& [id, node] : c.bodies) out << id << '|' << toString(node.label) << '\n';
  out << "INCIDENCE\n";
  for (const auto& [id, node] : c.bodies) {
    out << id << "|plus|" << node.plus << '\n';
    std::vector<std::string> minus = node.minus;
    std::sort(minus.begin(), minus.end());
    for (const auto& m : minus) out << id << "|minus|" << m << '\n';
  }
  out << "ASSUMPTIONS\n";
  std::vector<std::string> flags;
  for (auto a : c.assumptions) flags.emplace_back(toString(a));
  std::sort(flags.begin(), flags.end());
  for (const auto& f : flags) out << f << '\n';
  for (const auto& id : c.incompressible) out << "incompressible|" << id << '\n';
  out << "END\n";
  return out.str();
}

namespace {

bool isValidId(const std::string& id) {
  if (id.empty()) return false;
  for (char ch : id)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-'))
      return false;
  return id != "-";
}

Role parseRole(const std::string& text, int line) {
  if (text == "thin") return Role::Thin;
  if (text == "thick") return Role::Thick;
  if (text == "rplus") return Role::RPlus;
  if (text == "rminus") return Role::RMinus;
  throw ParseError(line, "unknown role '" + text + "'");
}

void expectFields(const std::vector<std::string>& f, std::size_t n, int line, const char* what) {
  if (f.size() != n)
    throw ParseError(line, std::string(what) + " expects " + std::to_string(n) + " fields, got " +
                               std::to_string(f.size()));
}

}  // namespace

Assumption parseAssumption(const std::string& text, int line) {
  if (text == "locallyThin") return Assumption::LocallyThin;
  if (text == "thinIncompressible") return Assumption::ThinIncompressible;
  if (text == "stronglyIrreducible") return Assumption::StronglyIrreducible;
  throw ParseError(line, "unknown assumption '" + text + "'");
}


SplittingComplex deserialize(const std::string& text) {
  SplittingComplex c;
  std::set<std::string> bodiesWithPlus;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineNo = 0;
  bool ended = false;

  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (ended) throw ParseError(lineNo, "content after END");
    if (line == "SUTURES" || line == "SURFACES" || line == "BODIES" || line == "INCIDENCE" ||
        line == "ASSUMPTIONS") {
      section = line;
      continue;
    }
    if (line == "END") {
      ended = true;
      continue;
    }
    const auto f = splitFields(line);
    try {
      if (section == "SUTURES") {
        expectFields(f, 2, lineNo, "suture");
        if (!isValidId(f[0])) throw ParseError(lineNo, "invalid id '" + f[0] + "'");
        if (c.hasId(f[0])) throw ParseError(lineNo, "duplicate id '" + f[0] + "'");
        if (f[1] == "toroidal")
          c.sutures[f[0]] = SutureKind::Toroidal;
        else if (f[1] == "annular")
          c.sutures[f[0]] = SutureKind::Annular;
        else
          throw ParseError(lineNo, "unknown suture kind '" + f[1] + "'");
      } else if (section == "SURFACES") {
        expectFields(f, 5, lineNo, "surface");
        if (!isValidId(f[0])) throw ParseError(lineNo, "invalid id '" + f[0] + "'");
        if (c.hasId(f[0])) throw ParseError(lineNo, "duplicate id '" + f[0] + "'");
        PlacedComponent placed;
        placed.role = parseRole(f[1], lineNo);
        placed.surface.id = f[0];
        placed.surface.genus = parseInt(f[2]);
        if (placed.surface.genus < 0) throw ParseError(lineNo, "negative genus");
        placed.surface.boundary = parseBoundary(f[3]);
        for (const auto& [suture, count] : placed.surface.boundary)
          if (!c.sutures.count(suture)) throw ParseError(lineNo, "unknown suture '" + suture + "'");
        if (f[4] != "-") placed.surface.orientationTag = f[4];
        c.components.emplace(f[0], std::move(placed));
      } else if (section == "BODIES") {
        expectFields(f, 2, lineNo, "body");
        if (!isValidId(f[0])) throw ParseError(lineNo, "invalid id '" + f[0] + "'");
        if (c.hasId(f[0])) throw ParseError(lineNo, "duplicate id '" + f[0] + "'");
        BodyNode node;
        node.id = f[0];
        if (f[1] == "A")
          node.label = BodyLabel::A;
        else if (f[1] == "B")
          node.label = BodyLabel::B;
        else
          throw ParseError(lineNo, "body label must be A or B, got '" + f[1] + "'");
        c.bodies.emplace(f[0], std::move(node));
      } else if (section == "INCIDENCE") {
        expectFields(f, 3, lineNo, "incidence");
        auto it = c.bodies.find(f[0]);
        if (it == c.bodies.end()) throw ParseError(lineNo, "unknown body '" + f[0] + "'");
        if (!c.components.count(f[2])) throw ParseError(lineNo, "unknown component '" + f[2] + "'");
        if (f[1] == "plus") {
          if (!bodiesWithPlus.insert(f[0]).second)
            throw ParseError(lineNo, "body '" + f[0] + "' has two positive boundaries");
          it->second.plus = f[2];
        } else if (f[1] == "minus") {
          auto& minus = it->second.minus;
          if (std::find(minus.begin(), minus.end(), f[2]) != minus.end())
            throw ParseError(lineNo, "duplicate incidence '" + f[0] + "' -> '" + f[2] + "'");
          minus.push_back(f[2]);
          std::sort(minus.begin(), minus.end());
        } else {
          throw ParseError(lineNo, "incidence side must be plus or minus, got '" + f[1] + "'");
        }
      } else if (section == "ASSUMPTIONS") {
        if (f.size() == 2 && f[0] == "incompressible") {
          if (!c.components.count(f[1])) throw ParseError(lineNo, "unknown component '" + f[1] + "'");
          c.incompressible.insert(f[1]);
        } else {
          expectFields(f, 1, lineNo, "assumption");
          c.assumptions.insert(parseAssumption(f[0], lineNo));
        }
      } else {
        throw ParseError(lineNo, "data outside of a section");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineNo, e.what());
    }
  }
  if (!ended) throw ParseError(lineNo, "missing END");
  for (const auto& [id, node] : c.bodies)
    if (!bodiesWithPlus.count(id)) throw ParseError(lineNo, "body '" + id + "' has no positive boundary");
  return c;
}

}  // namespace ghs
