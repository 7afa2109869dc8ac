#pragma once

// Corridors: properly embedded arcs in the thickened surface, recorded by
// the edges they cross. A crossing enters edge e through side `entry` (a
// half-edge of e) and leaves through the opposite side. Inside a face the
// arc runs forward along the boundary walk from the exit side of one
// crossing to the entry side of the next.

#include <algorithm>
#include <functional>
#include <vector>

#include "cover.hpp"

namespace surfsep {

struct Crossing {
  int edge = 0;
  int entry = 0;  // half-edge of `edge`
  int exit() const { return FatGraph::opposite(entry); }
  bool operator==(const Crossing&) const = default;
};

struct Corridor {
  std::vector<Crossing> crossings;
  int start_face = 0;  // face containing the first entry side
  int end_face = 0;    // face containing the last exit side
  bool operator==(const Corridor&) const = default;
};

namespace detail {

inline int forward_distance(int from, int to, int len) { return ((to - from) % len + len) % len; }

/// z strictly inside the forward interval (x, y) of a cyclic walk of length len.
inline bool strictly_inside(int x, int y, int z, int len) {
  if (z == x || z == y) return false;
  return forward_distance(x, z, len) < forward_distance(x, y, len);
}

}  // namespace detail

/// Checks crossing consistency, distinct edges and planarity inside faces.
inline bool corridor_embedded(const FatGraph& f, const Faces& faces, const Corridor& c) {
  const auto& cr = c.crossings;
  if (cr.empty()) return false;
  std::vector<char> used(f.edge_count(), 0);
  for (const auto& x : cr) {
    if (x.edge < 0 || x.edge >= f.edge_count() || FatGraph::edge_of(x.entry) != x.edge) return false;
    if (used[x.edge]) return false;
    used[x.edge] = 1;
  }
  if (faces.face_of[cr.front().entry] != c.start_face) return false;
  if (faces.face_of[cr.back().exit()] != c.end_face) return false;
  // Each stretch of the walk the arc runs along must be free of the arc's
  // own sides; otherwise the arc meets itself where it leaves a band.
  std::vector<std::vector<int>> points(faces.walks.size());
  for (const auto& x : cr) {
    points[faces.face_of[x.entry]].push_back(faces.position[x.entry]);
    points[faces.face_of[x.exit()]].push_back(faces.position[x.exit()]);
  }
  for (std::size_t j = 0; j + 1 < cr.size(); ++j) {
    int a = cr[j].exit(), b = cr[j + 1].entry;
    int w = faces.face_of[a];
    if (w != faces.face_of[b]) return false;
    int len = static_cast<int>(faces.walks[w].size());
    for (int z : points[w])
      if (detail::strictly_inside(faces.position[a], faces.position[b], z, len)) return false;
  }
  return true;
}

/// All embedded corridors from face `from` to face `to` with at most
/// max_len crossings, shortest first, lexicographic within a length.
/// Stops after `limit` results (0 = no limit).
inline std::vector<Corridor> enumerate_corridors(const FatGraph& f, int from, int to, int max_len,
                                                 std::size_t limit = 0) {
  auto faces = f.faces();
  std::vector<std::vector<int>> sides_of(faces.walks.size());
  for (std::size_t w = 0; w < faces.walks.size(); ++w) {
    sides_of[w] = faces.walks[w];
    std::sort(sides_of[w].begin(), sides_of[w].end());
  }
  std::vector<Corridor> out;
  Corridor cur;
  cur.start_face = from;
  cur.end_face = to;
  std::vector<char> used(f.edge_count(), 0);
  std::function<bool(int, int)> dfs = [&](int face, int remaining) -> bool {
    if (remaining == 0) {
      if (face == to && corridor_embedded(f, faces, cur)) {
        out.push_back(cur);
        if (limit && out.size() >= limit) return true;
      }
      return false;
    }
    for (int h : sides_of[face]) {
      int e = FatGraph::edge_of(h);
      if (used[e]) continue;
      used[e] = 1;
      cur.crossings.push_back({e, h});
      bool stop = dfs(faces.face_of[FatGraph::opposite(h)], remaining - 1);
      cur.crossings.pop_back();
      used[e] = 0;
      if (stop) return true;
    }
    return false;
  };
  for (int len = 1; len <= max_len; ++len)
    if (dfs(from, len)) break;
  return out;
}

inline Corridor find_corridor(const FatGraph& f, int from, int to, int max_len) {
  auto found = enumerate_corridors(f, from, to, max_len, 1);
  if (found.empty()) throw Error(ErrorKind::NoCorridor, "no embedded corridor between the given boundary walks");
  return found.front();
}

/// One lift of a corridor to a cover.
struct CorridorLift {
  std::vector<int> sheets;       // edge-sheet at each crossing
  std::vector<int> total_edges;  // total edge at each crossing
  int start_walk = 0;            // total face of the lifted first entry side
  int end_walk = 0;              // total face of the lifted last exit side
  int start_position = 0;        // position of the lifted first entry side in its walk
  int end_position = 0;
};

/// Lifts of a corridor, one per sheet of the first crossed edge, in sheet
/// order. `total` and `tfaces` must belong to c.
inline std::vector<CorridorLift> lifts_of_corridor(const Cover& c, const Corridor& cor, const FatGraph& total,
                                                   const Faces& tfaces) {
  auto bfaces = c.base.faces();
  if (!corridor_embedded(c.base, bfaces, cor))
    throw Error(ErrorKind::SubdivisionMismatch, "corridor is not an embedded arc of this base");
  const auto& cr = cor.crossings;
  std::vector<int> steps;
  for (std::size_t j = 0; j + 1 < cr.size(); ++j) {
    int len = static_cast<int>(bfaces.walks[bfaces.face_of[cr[j].exit()]].size());
    steps.push_back(detail::forward_distance(bfaces.position[cr[j].exit()], bfaces.position[cr[j + 1].entry], len));
  }
  std::vector<CorridorLift> lifts;
  for (int s0 = 0; s0 < c.degree; ++s0) {
    CorridorLift l;
    int th = c.total_half(cr[0].entry, s0);
    l.start_walk = tfaces.face_of[th];
    l.start_position = tfaces.position[th];
    for (std::size_t j = 0; j < cr.size(); ++j) {
      int te = FatGraph::edge_of(th);
      SURFSEP_ASSERT(te / c.degree == cr[j].edge, "lifted walk left the corridor");
      l.sheets.push_back(te % c.degree);
      l.total_edges.push_back(te);
      th = FatGraph::opposite(th);
      if (j + 1 < cr.size()) {
        for (int r = 0; r < steps[j]; ++r) th = total.walk_next(th);
      }
    }
    l.end_walk = tfaces.face_of[th];
    l.end_position = tfaces.position[th];
    lifts.push_back(std::move(l));
  }
  return lifts;
}

inline std::vector<CorridorLift> lifts_of_corridor(const Cover& c, const Corridor& cor) {
  auto total = c.total();
  return lifts_of_corridor(c, cor, total, total.faces());
}

inline bool lift_avoids(const CorridorLift& l, const Subgraph& marked) {
  for (int e : l.total_edges)
    if (marked.has_edge(e)) return false;
  return true;
}

}  // namespace surfsep
