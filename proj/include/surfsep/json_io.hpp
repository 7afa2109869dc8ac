#pragma once

// JSON forms of problems, covers and certificates. Permutations are written
// in cycle notation over sheets 0..d-1, e.g. "(0 1)(2 4 3)"; "()" is the
// identity. Edges are named by generator, with ".j" for segment j when the
// base is subdivided.

#include <json.hpp>
#include <map>
#include <string>

#include "oracle.hpp"
#include "pipeline.hpp"

namespace surfsep {

inline std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
      if (out.back() != '(') out += ' ';
      out += std::to_string(j);
      seen[j] = 1;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

inline Permutation parse_cycles(const std::string& text, int d) {
  Permutation p(d);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> seen(d, 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::ParseError, "bad cycle notation: " + why, text); };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<int> cyc;
    while (true) {
      while (i < text.size() && text[i] == ' ') ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a sheet number");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v >= d) fail("sheet out of range");
        ++i;
      }
      if (seen[v]) fail("sheet repeated");
      seen[v] = 1;
      cyc.push_back(v);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
  }
  return p;
}

inline std::string edge_name(const SurfaceAlphabet& alpha, const EdgeLabel& l) {
  std::string s = alpha.name(l.generator);
  if (l.segments > 1) s += "." + std::to_string(l.segment);
  return s;
}

inline json options_to_json(const Options& o) {
  return {{"subdiv", o.subdiv}, {"prime_retries", o.prime_retries}, {"oracle_cap", o.oracle_cap},
          {"max_corridor", o.max_corridor}};
}

inline json problem_to_json(const Problem& p) {
  auto alpha = p.alphabet();
  json h = json::array(), b = json::array();
  for (const auto& w : p.H) h.push_back(alpha.format(w));
  for (const auto& w : p.B) b.push_back(alpha.format(w));
  return {{"genus", p.genus}, {"boundary", p.boundary}, {"H", h}, {"B", b}, {"options", options_to_json(p.options)}};
}

inline Problem problem_from_json(const json& j) {
  try {
    Problem p;
    p.genus = j.at("genus").get<int>();
    p.boundary = j.at("boundary").get<int>();
    if (p.genus < 0 || p.boundary < 1)
      throw Error(ErrorKind::InvalidSurface, "need genus >= 0 and at least one boundary circle");
    if (j.contains("options")) {
      const auto& o = j.at("options");
      p.options.subdiv = o.value("subdiv", p.options.subdiv);
      p.options.prime_retries = o.value("prime_retries", p.options.prime_retries);
      p.options.oracle_cap = o.value("oracle_cap", p.options.oracle_cap);
      p.options.max_corridor = o.value("max_corridor", p.options.max_corridor);
    }
    auto alpha = p.alphabet();
    for (const auto& w : j.value("H", json::array())) p.H.push_back(alpha.parse(w.get<std::string>()));
    for (const auto& w : j.value("B", json::array())) p.B.push_back(alpha.parse(w.get<std::string>()));
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "malformed problem", e.what());
  }
}

inline json cover_to_json(const Problem& p, const Cover& c) {
  auto alpha = p.alphabet();
  json perms = json::array();
  for (int e = 0; e < c.base.edge_count(); ++e)
    perms.push_back({{"edge", edge_name(alpha, c.base.label(e))}, {"cycles", cycle_notation(c.perm[e])}});
  json out = {{"base", {{"genus", p.genus}, {"boundary", p.boundary}, {"subdiv", p.options.subdiv}}},
              {"degree", c.degree},
              {"basepoint", {{"vertex", c.base_vertex_of(c.basepoint)}, {"sheet", c.basepoint_sheet()}}},
              {"permutations", perms}};
  if (c.marked) {
    json mv = json::array(), me = json::array();
    for (int v : c.marked->vertices) mv.push_back({c.base_vertex_of(v), c.sheet_of(v)});
    for (int e : c.marked->edges) me.push_back({edge_name(alpha, c.base.label(e / c.degree)), c.sheet_of(e)});
    out["marked"] = {{"vertices", mv}, {"edges", me}};
  }
  return out;
}

/// Reads a cover over the problem's base. Structural problems (wrong base,
/// bad permutations, unknown edges) raise ParseError or SubdivisionMismatch.
inline Cover cover_from_json(const Problem& p, const json& j) {
  try {
    const auto& b = j.at("base");
    if (b.at("genus").get<int>() != p.genus || b.at("boundary").get<int>() != p.boundary ||
        b.at("subdiv").get<int>() != p.options.subdiv)
      throw Error(ErrorKind::SubdivisionMismatch, "cover base does not match the problem");
    Cover c;
    c.base = p.base();
    c.degree = j.at("degree").get<int>();
    if (c.degree < 1) throw Error(ErrorKind::ParseError, "degree must be positive");
    auto alpha = p.alphabet();
    std::map<std::string, int> edge_of_name;
    for (int e = 0; e < c.base.edge_count(); ++e) edge_of_name[edge_name(alpha, c.base.label(e))] = e;
    auto edge_id = [&](const std::string& name) {
      auto it = edge_of_name.find(name);
      if (it == edge_of_name.end()) throw Error(ErrorKind::ParseError, "unknown edge " + name);
      return it->second;
    };
    c.perm.assign(c.base.edge_count(), Permutation{});
    for (const auto& entry : j.at("permutations")) {
      int e = edge_id(entry.at("edge").get<std::string>());
      if (!c.perm[e].empty()) throw Error(ErrorKind::ParseError, "edge listed twice");
      c.perm[e] = parse_cycles(entry.at("cycles").get<std::string>(), c.degree);
    }
    for (const auto& pe : c.perm)
      if (pe.empty()) throw Error(ErrorKind::ParseError, "missing permutation");
    auto sheet = [&](const json& s) {
      int v = s.get<int>();
      if (v < 0 || v >= c.degree) throw Error(ErrorKind::ParseError, "sheet out of range");
      return v;
    };
    auto vertex = [&](const json& v) {
      int x = v.get<int>();
      if (x < 0 || x >= c.base.vertex_count()) throw Error(ErrorKind::ParseError, "vertex out of range");
      return x;
    };
    const auto& bp = j.at("basepoint");
    c.basepoint = c.total_vertex(vertex(bp.at("vertex")), sheet(bp.at("sheet")));
    if (j.contains("marked")) {
      Subgraph m;
      for (const auto& v : j.at("marked").at("vertices")) m.vertices.push_back(c.total_vertex(vertex(v.at(0)), sheet(v.at(1))));
      for (const auto& e : j.at("marked").at("edges"))
        m.edges.push_back(c.total_edge(edge_id(e.at(0).get<std::string>()), sheet(e.at(1))));
      m.normalize();
      c.marked = std::move(m);
    }
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "malformed cover", e.what());
  }
}

inline json check_to_json(const Check& c) { return {{"pass", c.pass}, {"detail", c.detail}}; }

inline json report_to_json(const VerificationReport& r) {
  return {{"pass", r.pass()},
          {"structure", check_to_json(r.structure)},
          {"subgroup", check_to_json(r.subgroup)},
          {"excluded", check_to_json(r.excluded)},
          {"complement", check_to_json(r.complement)},
          {"conservative", check_to_json(r.conservative)},
          {"degree", r.degree},
          {"boundary", r.boundary},
          {"excess", r.excess},
          {"fibre_sizes", r.fibre_sizes},
          {"complement_components", r.complement_components},
          {"h1_injective", r.h1_injective}};
}

inline json certificate_to_json(const Certificate& c) {
  auto alpha = c.problem.alphabet();
  json per = json::array();
  for (const auto& w : c.peripheral_B) per.push_back(alpha.format(w));
  return {{"problem", problem_to_json(c.problem)},
          {"cover", cover_to_json(c.problem, c.cover)},
          {"log", c.log},
          {"report", report_to_json(c.report)},
          {"peripheral_B", per}};
}

/// Reads problem, cover and log; the stored report is ignored and recomputed.
inline Certificate certificate_from_json(const json& j) {
  try {
    Certificate c;
    c.problem = problem_from_json(j.at("problem"));
    validate(c.problem);
    c.cover = cover_from_json(c.problem, j.at("cover"));
    c.log = j.value("log", json::array());
    c.peripheral_B = peripheral_elements(c.problem, c.problem.B);
    c.report = verify_certificate(c.problem, c.cover);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "malformed certificate", e.what());
  }
}

inline json oracle_to_json(const Problem& p, int bound, const std::optional<OracleResult>& r) {
  json out = {{"problem", problem_to_json(p)}, {"bound", bound}};
  if (!r) {
    out["degree"] = nullptr;
    return out;
  }
  auto alpha = p.alphabet();
  json w = json::object();
  for (std::size_t g = 0; g < r->witness.size(); ++g) w[alpha.name(static_cast<int>(g))] = cycle_notation(r->witness[g]);
  out["degree"] = r->degree;
  out["witness"] = w;
  out["examined"] = r->examined;
  return out;
}

}  // namespace surfsep
