#include "sageev/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sageev/error.hpp"

namespace sageev::io {

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorKind::ParseError, fmt::format("line {}, column {}: malformed JSON", line, col));
  }
}

std::int64_t parse_digits(const std::string& digits, const std::string& text) {
  if (digits.empty() || digits.size() > 18)
    throw Error(ErrorKind::ParseError, fmt::format("bad number '{}'", text));
  std::int64_t v = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw Error(ErrorKind::ParseError, fmt::format("bad number '{}'", text));
    v = 10 * v + (ch - '0');
  }
  return v;
}

Json word_json(const GroupWord& w) { return w.empty() ? std::string("e") : format_word(w); }

Json pair_json(const hypgeo::AxisPair& p) {
  return Json::array({to_json(p.attracting), to_json(p.repelling)});
}

void dump_to(std::string& out, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        newline(depth + 1);
        dump_to(out, j[i], indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::int64_t den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::ParseError, fmt::format("zero denominator in '{}'", text));
    r = Rational(parse_digits(s.substr(0, slash), text), den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (whole.size() + frac.size() > 18)
      throw Error(ErrorKind::ParseError, fmt::format("too many digits in '{}'", text));
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = Rational(parse_digits(whole + frac, text), den);
  } else {
    r = Rational(parse_digits(s, text));
  }
  return neg ? -r : r;
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return fmt::format("{}", r.numerator());
  return fmt::format("{}/{}", r.numerator(), r.denominator());
}

WeightedCurrent current_from_json(const Json& j, int default_genus) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "current spec must be an object");
  int genus = default_genus;
  if (j.contains("genus")) {
    if (!j["genus"].is_number_integer())
      throw Error(ErrorKind::ParseError, "'genus' must be an integer");
    genus = j["genus"].get<int>();
  }
  if (genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be at least 2");
  if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
    throw Error(ErrorKind::ParseError, "current spec needs a non-empty 'atoms' array");
  std::vector<std::pair<GroupWord, Rational>> terms;
  std::size_t idx = 0;
  for (const auto& a : j["atoms"]) {
    std::string where = fmt::format("atom {}", idx++);
    if (!a.is_object() || !a.contains("word") || !a["word"].is_string())
      throw Error(ErrorKind::ParseError, where + ": needs a string 'word'");
    GroupWord w;
    try {
      w = parse_word(genus, a["word"].get<std::string>());
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("{}: {}", where, e.what()));
    }
    Rational weight(1);
    if (a.contains("weight")) {
      const auto& x = a["weight"];
      if (x.is_number_integer())
        weight = Rational(x.get<std::int64_t>());
      else if (x.is_string())
        weight = parse_rational(x.get<std::string>());
      else
        throw Error(ErrorKind::ParseError,
                    where + ": 'weight' must be an integer or a string such as \"3/2\"");
    }
    terms.emplace_back(std::move(w), weight);
  }
  return make_current(genus, terms);
}

WeightedCurrent parse_current(const std::string& text, int default_genus) {
  return current_from_json(parse_json(text), default_genus);
}

std::vector<WeightedCurrent> parse_sequence(const std::string& text, int default_genus) {
  Json j = parse_json(text);
  if (j.is_object() && j.contains("currents")) j = j["currents"];
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "sequence file must be a JSON array");
  std::vector<WeightedCurrent> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(current_from_json(j[i], default_genus));
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("sequence entry {}: {}", i, e.what()));
    }
  }
  return out;
}

std::vector<hypgeo::Isometry> parse_matrices(const std::string& text) {
  std::vector<double> vals;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      std::string tok = line.substr(pos, end - pos);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v))
        throw Error(ErrorKind::ParseError,
                    fmt::format("line {}, column {}: bad number '{}'", lineno, pos + 1, tok));
      vals.push_back(v);
      pos = end;
    }
  }
  if (vals.empty() || vals.size() % 8 != 0)
    throw Error(ErrorKind::ParseError,
                fmt::format("matrix file holds {} numbers; expected 4 per generator, 2g generators",
                            vals.size()));
  std::vector<hypgeo::Isometry> out;
  for (std::size_t i = 0; i < vals.size(); i += 4) {
    try {
      out.emplace_back(vals[i], vals[i + 1], vals[i + 2], vals[i + 3]);
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, fmt::format("matrix {}: {}", i / 4 + 1, e.what()));
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("cannot write '{}'", path));
  out << contents;
  if (!out) throw Error(ErrorKind::IoError, fmt::format("write to '{}' failed", path));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  return fmt::format("{:.17g}", x);
}

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_to(out, j, indent, 0);
  return out;
}

Json to_json(const hypgeo::BoundaryPoint& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

Json to_json(const WeightedCurrent& alpha) {
  Json atoms = Json::array();
  for (const auto& a : alpha.atoms)
    atoms.push_back({{"word", format_word(a.cls.canonical)}, {"weight", format_rational(a.weight)}});
  return {{"genus", alpha.genus}, {"atoms", atoms}};
}

Json to_json(const FuchsianRep& rep) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < rep.images().size(); ++i) {
    const auto& M = rep.images()[i];
    int letter = static_cast<int>(i) + 1;
    gens.push_back({{"name", format_letter(letter)},
                    {"matrix", Json::array({Json::array({M.a(), M.b()}), Json::array({M.c(), M.d()})})},
                    {"trace", M.trace()},
                    {"translation_length", hypgeo::translation_length(M)}});
  }
  const Polygon& P = rep.polygon();
  Json verts = Json::array();
  for (std::size_t k = 0; k < P.vertices.size(); ++k)
    verts.push_back({{"point", Json::array({P.vertices[k].real(), P.vertices[k].imag()})},
                     {"word", word_json(P.vertex_words[k])},
                     {"angle", P.angles[k]}});
  return {{"genus", rep.genus()},
          {"generators", gens},
          {"relator_residual", relator_residual(rep.genus(), rep.images())},
          {"polygon",
           {{"vertices", verts},
            {"angle_sum", P.angle_sum},
            {"area", P.area},
            {"convex", P.convex},
            {"basepoint", Json::array({P.center.real(), P.center.imag()})},
            {"radius", P.radius}}}};
}

Json to_json(const std::vector<ConjugacyClass>& classes) {
  Json out = Json::array();
  for (const auto& c : classes)
    out.push_back({{"word", format_word(c.canonical)},
                   {"length", c.canonical.size()},
                   {"root", format_word(c.root)},
                   {"power", c.power}});
  return out;
}

Json to_json(const LinkingCount& n, const WeightedCurrent& alpha, const GroupWord& c) {
  Json wit = Json::array();
  for (const auto& w : n.witnesses)
    wit.push_back({{"atom", format_word(alpha.atoms[w.atom].cls.canonical)},
                   {"conjugator", word_json(w.conjugator)},
                   {"crossing", w.crossing},
                   {"endpoints", pair_json(w.pair)}});
  return {{"current", to_json(alpha)},
          {"class", format_word(c)},
          {"value", format_rational(n.value)},
          {"stabilized", n.stabilized},
          {"radius_used", n.radius_used},
          {"level", n.level},
          {"witnesses", wit}};
}

Json to_json(const CubeFragment& f, const WallSet& ws) {
  Json walls = Json::array();
  for (const auto& w : f.walls)
    walls.push_back({{"id", w.id},
                     {"atom", format_word(ws.alpha.atoms[w.atom].cls.canonical)},
                     {"conjugator", word_json(w.conjugator)},
                     {"endpoints", pair_json(w.pair)},
                     {"param", w.param}});
  Json verts = Json::array();
  for (const auto& v : f.vertices) {
    std::string bits;
    for (Side s : v) bits += s == Side::Plus ? '1' : '0';
    verts.push_back(bits);
  }
  Json edges = Json::array();
  for (const auto& [a, b] : f.edges) edges.push_back(Json::array({a, b}));
  Json crossing = Json::array();
  for (std::size_t i = 0; i < f.relations.size(); ++i)
    for (std::size_t j = i + 1; j < f.relations.size(); ++j)
      if (f.relations[i][j].relation == WallRelation::Crossing) crossing.push_back(Json::array({i, j}));
  return {{"current", to_json(ws.alpha)},
          {"class", format_word(ws.c.canonical)},
          {"periods", ws.periods},
          {"period", ws.period},
          {"anchor", ws.anchor},
          {"region", f.region},
          {"walls", walls},
          {"crossing_pairs", crossing},
          {"vertices", verts},
          {"edges", edges}};
}

Json to_json(const DualityReport& r) {
  return {{"separation", r.separation},
          {"expected", format_rational(r.expected)},
          {"walls", r.walls},
          {"stabilized", r.stabilized},
          {"pass", r.pass}};
}

Json to_json(const LengthSpectrum& s) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < s.classes.size(); ++i)
    entries.push_back({{"class", format_word(s.classes[i].canonical)}, {"value", s.values[i]}});
  Json unst = Json::array();
  for (const auto& c : s.unstabilized) unst.push_back(format_word(c.canonical));
  return {{"label", s.label}, {"L", s.L}, {"entries", entries}, {"unstabilized", unst}};
}

Json to_json(const MetricComparison& m) {
  auto witness = [](const RatioWitness& w) -> Json {
    if (!w.cls) return nullptr;
    return {{"value", w.value}, {"class", format_word(w.cls->canonical)}};
  };
  Json inf = Json::array();
  for (const auto& c : m.infinite_witnesses) inf.push_back(format_word(c.canonical));
  return {{"L", m.L},
          {"infinite", m.infinite},
          {"exp_delta", m.exp_delta},
          {"forward", witness(m.forward)},
          {"backward", witness(m.backward)},
          {"infinite_witnesses", inf}};
}

Json to_json(const std::vector<ExperimentRow>& rows, int L) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json fails = Json::array(), unst = Json::array();
    for (const auto& c : r.filling.failures) fails.push_back(format_word(c.canonical));
    for (const auto& c : r.filling.unstabilized) unst.push_back(format_word(c.canonical));
    out.push_back({{"index", r.index},
                   {"current", to_json(r.current)},
                   {"filling", {{"ok", r.filling.ok}, {"failures", fails}, {"unstabilized", unst}}},
                   {"comparison", r.comparison ? to_json(*r.comparison) : Json(nullptr)},
                   {"stabilized_all", r.stabilized_all},
                   {"error", r.error}});
  }
  return {{"L", L}, {"rows", out}};
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out =
      "index,atom_words,filling_ok,exp_delta_L,witness_forward,witness_backward,stabilized_all\n";
  for (const auto& r : rows) {
    std::string words;
    for (const auto& a : r.current.atoms)
      words += (words.empty() ? "" : ";") + format_word(a.cls.canonical);
    std::string delta, fwd, bwd;
    if (r.comparison) {
      const auto& m = *r.comparison;
      if (m.infinite) {
        delta = "inf";
        if (!m.infinite_witnesses.empty()) fwd = format_word(m.infinite_witnesses.front().canonical);
      } else {
        delta = fmt::format("{:.17g}", m.exp_delta);
        if (m.forward.cls) fwd = format_word(m.forward.cls->canonical);
        if (m.backward.cls) bwd = format_word(m.backward.cls->canonical);
      }
    }
    out += fmt::format("{},{},{},{},{},{},{}\n", r.index, words, r.filling.ok ? "true" : "false",
                       delta, fwd, bwd, r.stabilized_all ? "true" : "false");
  }
  return out;
}

}  // namespace sageev::io
