#pragma once

// Cross-joins of a cover along lifts of one base corridor. Cutting along a
// lift splits each crossed edge into a tail piece and a head piece. With
// faces to the right of their sides, the tail piece lies to the left (+)
// of an arc entering through the tail half, and to the right (-) of an arc
// entering through the head half. The join glues the - side of lift i to
// the + side of lift i+1, which reassigns heads cyclically among the lifts.

#include <vector>

#include "corridor.hpp"

namespace surfsep {

inline Cover cyclic_cross_join(const Cover& c, const Corridor& cor, const std::vector<CorridorLift>& lifts) {
  int m = static_cast<int>(lifts.size());
  if (m < 2) throw Error(ErrorKind::Internal, "cross-join needs at least two lifts");
  const auto& cr = cor.crossings;
  std::vector<char> seen(static_cast<std::size_t>(c.base.edge_count()) * c.degree, 0);
  for (const auto& l : lifts) {
    if (l.sheets.size() != cr.size()) throw Error(ErrorKind::Internal, "lift does not match corridor");
    for (std::size_t j = 0; j < cr.size(); ++j) {
      int te = c.total_edge(cr[j].edge, l.sheets[j]);
      if (te != l.total_edges[j]) throw Error(ErrorKind::Internal, "lift does not match corridor");
      if (seen[te]) throw Error(ErrorKind::LiftsNotDisjoint, "corridor lifts share an edge");
      seen[te] = 1;
      if (c.marked && c.marked->has_edge(te))
        throw Error(ErrorKind::MarkedViolation, "corridor lift crosses the marked subgraph");
    }
  }
  Cover out = c;
  for (std::size_t j = 0; j < cr.size(); ++j) {
    int e = cr[j].edge;
    bool tail_entry = cr[j].entry % 2 == 0;
    for (int i = 0; i < m; ++i) {
      int from = tail_entry ? (i + m - 1) % m : (i + 1) % m;
      out.perm[e][lifts[i].sheets[j]] = c.perm[e][lifts[from].sheets[j]];
    }
  }
  return out;
}

/// Pair cross-join; the special case m = 2.
inline Cover cross_join(const Cover& c, const Corridor& cor, const CorridorLift& x, const CorridorLift& y) {
  return cyclic_cross_join(c, cor, {x, y});
}

}  // namespace surfsep
