#include "thetaforge/json_io.hpp"

namespace thetaforge::io {

namespace {

const Json& require(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw FormatError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(field + "." + key, "missing");
  return *it;
}

std::int64_t int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw FormatError(field, "expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace

Json to_json(Exponent m) { return Json::array({m.m1, m.m2}); }

Json to_json(const Integer& c) { return c.get_str(); }

Json to_json(const Series& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back({{"m", to_json(m)}, {"c", to_json(c)}});
  Json out;
  if (f.exact()) {
    out["cutoff"] = nullptr;
  } else {
    out["cutoff"] = f.cutoff();
  }
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const ScatteringDiagram& d) {
  Json walls = Json::array();
  for (const auto& w : d.walls()) {
    Json coeffs = Json::array();
    for (const auto& c : w.coeffs) coeffs.push_back(to_json(c));
    walls.push_back({{"kind", w.kind == SupportKind::Line ? "line" : "ray"},
                     {"dir", to_json(w.direction)},
                     {"coeffs", std::move(coeffs)}});
  }
  Json rays = Json::array();
  for (const auto& s : d.rays()) {
    Json coeffs = Json::array();
    for (const auto& c : s.wall.coeffs) coeffs.push_back(to_json(c));
    rays.push_back({{"ray", to_json(s.ray)}, {"dir", to_json(s.wall.direction)}, {"coeffs", std::move(coeffs)}});
  }
  return {{"b", d.b()}, {"c", d.c()}, {"cutoff", d.cutoff()}, {"walls", std::move(walls)}, {"rays", std::move(rays)}};
}

Json to_json(const ThetaExpansion& e) {
  Json coeffs = Json::array();
  for (const auto& [m, a] : e.coeffs) coeffs.push_back({{"m", to_json(m)}, {"a", to_json(a)}});
  Json out{{"cutoff", e.cutoff}};
  if (e.base) out["base"] = to_json(*e.base);
  out["coeffs"] = std::move(coeffs);
  return out;
}

Json to_json(const Chamber& ch) {
  return {{"low", to_json(ch.low_ray)},
          {"high", to_json(ch.high_ray)},
          {"representative", to_json(ch.representative)},
          {"whole_plane", ch.whole_plane},
          {"is_cluster", ch.is_cluster},
          {"cutoff_dependent", ch.cutoff_dependent}};
}

Json to_json(const BrokenLine& line) {
  Json bends = Json::array();
  for (const auto& b : line.bends) {
    bends.push_back({{"ray", to_json(b.ray)}, {"dir", to_json(b.direction)}, {"term", b.term}, {"factor", to_json(b.factor)}});
  }
  return {{"initial", to_json(line.initial)},
          {"endpoint", to_json(line.endpoint)},
          {"bends", std::move(bends)},
          {"coefficient", to_json(line.coefficient)},
          {"exponent", to_json(line.exponent)}};
}

Json to_json(const ConsistencyReport& r) {
  Json out{{"suite", "consistency"}, {"verdict", r.pass ? "pass" : "fail"}, {"cutoff", r.cutoff}};
  if (r.deviation) {
    out["witness"] = {{"generator", to_json(r.deviation->generator)},
                      {"degree", r.deviation->degree},
                      {"exponent", to_json(r.deviation->exponent)},
                      {"coefficient", to_json(r.deviation->coefficient)}};
  }
  return out;
}

Json to_json(const WallPositivityReport& r) {
  Json out{{"suite", "wall-positivity"}, {"verdict", r.pass ? "pass" : "fail"}, {"cutoff", r.cutoff}};
  if (r.witness) {
    out["witness"] = {{"wall", r.witness->wall},
                      {"dir", to_json(r.witness->direction)},
                      {"index", r.witness->index},
                      {"coefficient", to_json(r.witness->coefficient)}};
  }
  return out;
}

Json to_json(const PositivityVerdict& v) {
  Json out{{"verdict", to_string(v.kind)}, {"atlas", v.atlas}, {"cutoff", v.cutoff}};
  if (v.witness) {
    out["witness"] = {{"chamber", to_json(v.witness->basepoint)},
                      {"chamber_index", v.witness->chamber},
                      {"exponent", to_json(v.witness->exponent)},
                      {"coefficient", to_json(v.witness->coefficient)}};
  }
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json to_json(const AtomicityVerdict& v) {
  Json out{{"verdict", to_string(v.kind)}, {"positivity", to_json(v.positivity)}};
  if (v.certificate) out["certificate"] = Json::array({to_json(v.certificate->first), to_json(v.certificate->second)});
  return out;
}

Json to_json(const TransitionReport& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    ws.push_back({{"exponent", to_json(w.exponent)},
                  {"numerator", to_json(w.numerator)},
                  {"denominator", to_json(w.denominator)},
                  {"verdict", w.pass ? "pass" : "fail"}});
  }
  return {{"from", to_json(r.from)}, {"to", to_json(r.to)}, {"verdict", r.pass ? "pass" : "fail"},
          {"cutoff", r.cutoff}, {"witnesses", std::move(ws)}};
}

Json to_json(const ClusterAgreementReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"gvec", to_json(e.gvec)}, {"variable", to_json(e.variable)}, {"chamber_match", e.match}});
  }
  Json marked = Json::array();
  for (auto i : r.cluster_chambers) marked.push_back(i);
  return {{"suite", "cluster-agreement"}, {"verdict", r.pass ? "pass" : "fail"}, {"cutoff", r.cutoff},
          {"depth", r.depth}, {"basepoint", to_json(r.basepoint)}, {"variables", std::move(entries)},
          {"cluster_chambers", std::move(marked)}};
}

Json to_json(const LaurentPositivityReport& r) {
  Json out{{"suite", "laurent-positivity"}, {"verdict", r.pass ? "pass" : "fail"}, {"depth", r.depth},
           {"checked", r.checked}};
  if (r.witness) {
    out["witness"] = {{"seed", r.witness->seed},
                      {"variable", r.witness->variable},
                      {"exponent", to_json(r.witness->exponent)},
                      {"coefficient", to_json(r.witness->coefficient)},
                      {"reason", r.witness->reason}};
  }
  return out;
}

Json parse(const std::string& text, const std::string& field) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(field, std::string("invalid JSON: ") + e.what());
  }
}

Exponent exponent_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw FormatError(field, "expected [m1, m2]");
  return {int_from_json(j[0], field + "[0]"), int_from_json(j[1], field + "[1]")};
}

Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (!j.is_string()) throw FormatError(field, "expected a decimal integer string");
  const auto& s = j.get_ref<const std::string&>();
  const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
    throw FormatError(field, "\"" + s + "\" is not a decimal integer");
  }
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

Series series_from_json(const Json& j, const std::string& field) {
  const Json& cutoff = require(j, "cutoff", field);
  Series f(cutoff.is_null() ? Series::kUnbounded : int_from_json(cutoff, field + ".cutoff"));
  const Json& terms = require(j, "terms", field);
  if (!terms.is_array()) throw FormatError(field + ".terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = field + ".terms[" + std::to_string(i) + "]";
    const Exponent m = exponent_from_json(require(terms[i], "m", at), at + ".m");
    if (m.degree() > f.cutoff()) throw FormatError(at + ".m", "degree exceeds the cutoff");
    f.add_term(m, integer_from_json(require(terms[i], "c", at), at + ".c"));
  }
  return f;
}

ScatteringDiagram diagram_from_json(const Json& j, const std::string& field) {
  const std::int64_t b = int_from_json(require(j, "b", field), field + ".b");
  const std::int64_t c = int_from_json(require(j, "c", field), field + ".c");
  const std::int64_t k = int_from_json(require(j, "cutoff", field), field + ".cutoff");
  const Json& walls = require(j, "walls", field);
  if (!walls.is_array()) throw FormatError(field + ".walls", "expected an array");
  std::vector<Wall> ws;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const std::string at = field + ".walls[" + std::to_string(i) + "]";
    Wall w;
    const Json& kind = require(walls[i], "kind", at);
    if (kind == "line") {
      w.kind = SupportKind::Line;
    } else if (kind == "ray") {
      w.kind = SupportKind::Ray;
    } else {
      throw FormatError(at + ".kind", "expected \"line\" or \"ray\"");
    }
    w.direction = exponent_from_json(require(walls[i], "dir", at), at + ".dir");
    const Json& coeffs = require(walls[i], "coeffs", at);
    if (!coeffs.is_array()) throw FormatError(at + ".coeffs", "expected an array");
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      w.coeffs.push_back(integer_from_json(coeffs[t], at + ".coeffs[" + std::to_string(t) + "]"));
    }
    ws.push_back(std::move(w));
  }
  try {
    return ScatteringDiagram(b, c, k, std::move(ws));
  } catch (const ParameterError& e) {
    throw FormatError(field, e.what());
  }
}

ThetaExpansion expansion_from_json(const Json& j, std::int64_t default_cutoff, const std::string& field) {
  ThetaExpansion e;
  e.cutoff = default_cutoff;
  if (!j.is_object()) throw FormatError(field, "expected an object");
  if (auto it = j.find("cutoff"); it != j.end() && !it->is_null()) e.cutoff = int_from_json(*it, field + ".cutoff");
  if (auto it = j.find("base"); it != j.end() && !it->is_null()) e.base = exponent_from_json(*it, field + ".base");
  const Json& coeffs = require(j, "coeffs", field);
  if (!coeffs.is_array()) throw FormatError(field + ".coeffs", "expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string at = field + ".coeffs[" + std::to_string(i) + "]";
    e.add(exponent_from_json(require(coeffs[i], "m", at), at + ".m"),
          integer_from_json(require(coeffs[i], "a", at), at + ".a"));
  }
  return e;
}

}  // namespace thetaforge::io
