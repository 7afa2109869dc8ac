#pragma once

// Brute-force ground truth: enumeration of small connected covers of a
// rank-r rose, the least degree of a conservative separating cover, and an
// explicit cut-and-reglue model of cyclic cross-joins.

#include <functional>
#include <optional>
#include <vector>

#include "cover.hpp"
#include "problem.hpp"

namespace surfsep {

/// Per-generator permutations of {0..d-1}; sheet 0 is the basepoint.
using PermTuple = std::vector<Permutation>;

/// Calls visit on every transitive tuple of degree d in standard form:
/// points are numbered in order of first appearance when scanning
/// (point, slot) pairs, so each based cover (subgroup of index d) is seen
/// once. Return false from visit to stop; prune(table) may reject partial
/// tables early. Returns false if stopped.
inline bool enumerate_degree(int rank, int d, const std::function<bool(const PermTuple&)>& visit,
                             const std::function<bool(const std::vector<std::vector<int>>&)>& prune = {}) {
  int slots = 2 * rank;
  std::vector<std::vector<int>> t(d, std::vector<int>(slots, -1));
  int used = 1;
  std::function<bool()> rec = [&]() -> bool {
    if (prune && prune(t)) return true;
    int p = -1, slot = -1;
    for (int v = 0; v < used && p < 0; ++v)
      for (int s = 0; s < slots; ++s)
        if (t[v][s] < 0) {
          p = v;
          slot = s;
          break;
        }
    if (p < 0) {
      if (used < d) return true;
      PermTuple tuple(rank, Permutation(d));
      for (int g = 0; g < rank; ++g)
        for (int v = 0; v < d; ++v) tuple[g][v] = t[v][2 * g];
      return visit(tuple);
    }
    int inv = slot ^ 1;
    for (int q = 0; q <= used && q < d; ++q) {
      if (t[q][inv] >= 0) continue;
      bool fresh = q == used;
      t[p][slot] = q;
      t[q][inv] = p;
      if (fresh) ++used;
      bool go = rec();
      if (fresh) --used;
      t[p][slot] = -1;
      t[q][inv] = -1;
      if (!go) return false;
    }
    return true;
  };
  return rec();
}

inline void check_cap(int d, int cap) {
  if (d > cap) throw Error(ErrorKind::CapExceeded, "degree bound exceeds the oracle cap");
}

/// Number of connected based covers (index-d subgroups) for d = 1..D.
inline std::vector<std::int64_t> count_covers(int rank, int D, int cap = 8) {
  check_cap(D, cap);
  std::vector<std::int64_t> out;
  for (int d = 1; d <= D; ++d) {
    std::int64_t n = 0;
    enumerate_degree(rank, d, [&](const PermTuple&) {
      ++n;
      return true;
    });
    out.push_back(n);
  }
  return out;
}

/// Cover of a labelled one-vertex base from a generator tuple.
inline Cover cover_from_tuple(const FatGraph& base, const PermTuple& tuple) {
  Cover c;
  c.base = base;
  c.degree = static_cast<int>(tuple.front().size());
  c.perm.assign(base.edge_count(), Permutation{});
  const auto& paths = base.generator_paths();
  for (std::size_t g = 0; g < paths.size(); ++g)
    for (std::size_t j = 0; j < paths[g].size(); ++j) {
      if (j == 0) {
        c.perm[paths[g][j]] = tuple[g];
      } else {
        c.perm[paths[g][j]].resize(c.degree);
        std::iota(c.perm[paths[g][j]].begin(), c.perm[paths[g][j]].end(), 0);
      }
    }
  c.basepoint = 0;
  return c;
}

struct OracleResult {
  int degree = 0;
  PermTuple witness;
  std::int64_t examined = 0;
};

namespace detail {

inline int trace(const std::vector<std::vector<int>>& t, const Word& w, int start) {
  int v = start;
  for (Letter x : w) {
    v = t[v][x.slot()];
    if (v < 0) return -1;
  }
  return v;
}

inline int trace_tuple(const PermTuple& tuple, const std::vector<Permutation>& inv, const Word& w, int start) {
  int v = start;
  for (Letter x : w) v = x.inverted() ? inv[x.gen()][v] : tuple[x.gen()][v];
  return v;
}

}  // namespace detail

/// Least d <= D with a cover in which every H-generator fixes sheet 0, no
/// element of B does, and every boundary word acts as a single d-cycle.
/// This is the separability predicate, weaker than equality of subgroups.
inline std::optional<OracleResult> oracle_min_conservative_degree(const Problem& p, int D) {
  check_cap(D, p.options.oracle_cap);
  int rank = p.rank();
  auto bw = boundary_words(p.genus, p.boundary);
  OracleResult res;
  for (int d = 1; d <= D; ++d) {
    std::optional<PermTuple> found;
    auto prune = [&](const std::vector<std::vector<int>>& t) {
      for (const auto& h : p.H) {
        int end = detail::trace(t, h, 0);
        if (end >= 0 && end != 0) return true;
      }
      return false;
    };
    enumerate_degree(
        rank, d,
        [&](const PermTuple& tuple) {
          ++res.examined;
          std::vector<Permutation> inv;
          for (const auto& q : tuple) inv.push_back(inverse_permutation(q));
          for (const auto& h : p.H)
            if (detail::trace_tuple(tuple, inv, h, 0) != 0) return true;
          for (const auto& b : p.B)
            if (detail::trace_tuple(tuple, inv, b, 0) == 0) return true;
          for (const auto& w : bw) {
            int v = 0, len = 0;
            do {
              v = detail::trace_tuple(tuple, inv, w, v);
              ++len;
            } while (v != 0);
            if (len != d) return true;
          }
          found = tuple;
          return false;
        },
        prune);
    if (found) {
      res.degree = d;
      res.witness = *found;
      return res;
    }
  }
  return std::nullopt;
}

/// Cyclic cross-join done by hand on the total fatgraph: each lifted arc
/// cuts its edges into a tail piece and a head piece; the piece on the
/// right of arc i is glued to the piece on the left of arc i+1. Arcs are
/// given as (total edge, total entry side) sequences; sides are read off
/// the total graph only. Returns the reglued fatgraph.
inline FatGraph reglue_along_arcs(const FatGraph& total,
                                  const std::vector<std::vector<std::pair<int, int>>>& arcs) {
  int m = static_cast<int>(arcs.size());
  // new_head[e] = old edge whose head piece becomes the head of edge e
  std::vector<int> new_head(total.edge_count());
  std::iota(new_head.begin(), new_head.end(), 0);
  std::size_t len = arcs.front().size();
  for (std::size_t j = 0; j < len; ++j) {
    for (int i = 0; i < m; ++i) {
      auto [edge, side] = arcs[i][j];
      // Faces lie to the right of sides. Entering through the tail side the
      // arc has the tail piece on its left; through the head side, on its right.
      bool tail_on_left = side == FatGraph::tail_half(edge);
      // Tail piece of arc i meets the head piece of the arc whose right
      // (resp. left) side is glued to i's left (resp. right).
      int partner = tail_on_left ? (i + m - 1) % m : (i + 1) % m;
      new_head[edge] = arcs[partner][j].first;
    }
  }
  std::vector<int> head_owner(total.edge_count());
  for (int e = 0; e < total.edge_count(); ++e) head_owner[new_head[e]] = e;
  std::vector<std::vector<int>> rot(total.vertex_count());
  for (int v = 0; v < total.vertex_count(); ++v)
    for (int h : total.rotation(v))
      rot[v].push_back(h % 2 == 0 ? h : FatGraph::head_half(head_owner[FatGraph::edge_of(h)]));
  return FatGraph::from_rotations(total.vertex_count(), total.edge_count(), rot, total.labels());
}

}  // namespace surfsep
