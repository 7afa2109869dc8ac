#pragma once

// Graphviz output: fatgraphs with face legends, covers, and the ring
// picture of a cyclic cross-join.

#include <sstream>
#include <string>

#include "json_io.hpp"

namespace surfsep {

/// Edge names default to "e<id>"; pass names to override.
inline std::string fatgraph_dot(const FatGraph& f, const std::string& name, const std::vector<std::string>& edge_names,
                                const Subgraph* marked = nullptr) {
  auto ename = [&](int e) { return e < static_cast<int>(edge_names.size()) ? edge_names[e] : "e" + std::to_string(e); };
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  node [shape=point];\n";
  for (int v = 0; v < f.vertex_count(); ++v) {
    os << "  v" << v << " [xlabel=\"" << v << "\"";
    if (marked && marked->has_vertex(v)) os << ", color=red";
    os << "];\n";
  }
  for (int e = 0; e < f.edge_count(); ++e) {
    os << "  v" << f.tail(e) << " -> v" << f.head(e) << " [label=\"" << ename(e) << "\"";
    if (marked && marked->has_edge(e)) os << ", color=red, penwidth=2";
    os << "];\n";
  }
  auto faces = f.faces();
  os << "  legend [shape=box, label=\"";
  for (std::size_t w = 0; w < faces.walks.size(); ++w) {
    os << "face " << w << ":";
    for (int h : faces.walks[w]) os << ' ' << ename(FatGraph::edge_of(h)) << (h % 2 == 0 ? "+" : "-");
    os << "\\l";
  }
  os << "\"];\n}\n";
  return os.str();
}

inline std::vector<std::string> base_edge_names(const Problem& p, const FatGraph& base) {
  auto alpha = p.alphabet();
  std::vector<std::string> out;
  for (int e = 0; e < base.edge_count(); ++e) out.push_back(edge_name(alpha, base.label(e)));
  return out;
}

inline std::string base_dot(const Problem& p) {
  auto base = p.base();
  return fatgraph_dot(base, "base", base_edge_names(p, base));
}

/// Total fatgraph of a cover; edge (e, s) is named "<edge>/<s>".
inline std::string cover_dot(const Problem& p, const Cover& c, const std::string& name = "cover") {
  auto names = base_edge_names(p, c.base);
  std::vector<std::string> total_names;
  for (int e = 0; e < c.base.edge_count(); ++e)
    for (int s = 0; s < c.degree; ++s) total_names.push_back(names[e] + "/" + std::to_string(s));
  auto t = c.total();
  return fatgraph_dot(t, name, total_names, c.marked ? &*c.marked : nullptr);
}

/// Marked subgraph alone, as a graph on its own vertices.
inline std::string marked_dot(const Problem& p, const Cover& c) {
  auto names = base_edge_names(p, c.base);
  auto t = c.total();
  std::ostringstream os;
  os << "digraph marked {\n  node [shape=point];\n";
  if (c.marked) {
    for (int v : c.marked->vertices)
      os << "  v" << v << " [xlabel=\"" << v << "\"" << (v == c.basepoint ? ", color=red" : "") << "];\n";
    for (int e : c.marked->edges)
      os << "  v" << t.tail(e) << " -> v" << t.head(e) << " [label=\"" << names[e / c.degree] << "/" << e % c.degree
         << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

/// Ring picture of a cyclic cross-join: arcs beta_i run from the single
/// preimage A to the preimages C_i; the - side of beta_i is glued to the
/// + side of beta_(i+1). `c_walks` are the total walks hit, in arc order,
/// `a_positions` the arc feet along A.
inline std::string cyclic_join_dot(const std::vector<int>& c_walks, const std::vector<int>& a_positions,
                                   int a_walk, int c_after, int a_after) {
  int m = static_cast<int>(c_walks.size());
  std::ostringstream os;
  os << "digraph cyclic_join {\n";
  os << "  label=\"cyclic cross-join of " << m << " arcs\";\n";
  os << "  subgraph cluster_before {\n    label=\"before\";\n";
  os << "    A [shape=circle, label=\"A (walk " << a_walk << ")\"];\n";
  for (int i = 0; i < m; ++i)
    os << "    C" << i << " [shape=circle, label=\"C" << i << " (walk " << c_walks[i] << ")\"];\n";
  for (int i = 0; i < m; ++i)
    os << "    A -> C" << i << " [label=\"beta" << i << " @" << a_positions[i] << "\"];\n";
  for (int i = 0; i < m; ++i)
    os << "    C" << i << " -> C" << (i + 1) % m << " [style=dashed, label=\"-beta" << i << " to +beta" << (i + 1) % m
       << "\"];\n";
  os << "  }\n";
  os << "  subgraph cluster_after {\n    label=\"after\";\n";
  os << "    A_after [shape=circle, label=\"A (" << a_after << " preimage" << (a_after == 1 ? "" : "s") << ")\"];\n";
  os << "    C_after [shape=circle, label=\"C (" << c_after << " preimage" << (c_after == 1 ? "" : "s") << ")\"];\n";
  os << "  }\n}\n";
  return os.str();
}

/// Ring picture from the joined lifts, in arc order, and the cover after.
inline std::string cyclic_join_dot(const Corridor& cor, const std::vector<CorridorLift>& lifts, const Cover& after) {
  std::vector<int> cw, ap;
  int a_walk = -1;
  for (const auto& l : lifts) {
    cw.push_back(l.end_walk);
    ap.push_back(l.start_position);
    a_walk = l.start_walk;
  }
  auto fib = boundary_fibres(after);
  return cyclic_join_dot(cw, ap, a_walk, static_cast<int>(fib.fibres[cor.end_face].size()),
                         static_cast<int>(fib.fibres[cor.start_face].size()));
}

/// Ring pictures for every cyclic join in a certificate's log.
inline std::vector<std::string> cyclic_join_dots(const Problem& p, const json& log) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].at("op") != "cross_join" || log[i].at("kind") != "cyclic") continue;
    auto before = replay(p, log, i);
    auto cor = detail::corridor_from_json(log[i].at("corridor"));
    auto lifts = lifts_of_corridor(before, cor);
    std::vector<CorridorLift> chosen;
    for (int s : log[i].at("sheets").get<std::vector<int>>()) chosen.push_back(lifts[s]);
    out.push_back(cyclic_join_dot(cor, chosen, replay(p, log, i + 1)));
  }
  return out;
}

}  // namespace surfsep
