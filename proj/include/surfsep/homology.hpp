#pragma once

// Cycle bases and the abelian homomorphisms used to build covers:
// H_1(F, S; Z/2) quotient maps and large cyclic maps that are nonzero on
// every boundary walk.

#include <deque>
#include <vector>

#include "cover.hpp"
#include "linalg.hpp"

namespace surfsep {

/// BFS spanning tree (or forest restricted to allowed edges) plus the
/// coordinate of every non-tree edge.
struct CycleBasis {
  int root = 0;
  std::vector<int> parent_side;   // per vertex; -1 at root, -2 unreached
  std::vector<int> coord;         // per edge; -1 for tree or disallowed edges
  std::vector<int> non_tree;      // edges by coordinate

  int size() const { return static_cast<int>(non_tree.size()); }

  std::vector<std::int64_t> coordinates(const std::vector<int>& sides) const {
    std::vector<std::int64_t> x(non_tree.size(), 0);
    for (int h : sides) {
      int c = coord[FatGraph::edge_of(h)];
      if (c >= 0) x[c] += h % 2 == 0 ? 1 : -1;
    }
    return x;
  }
};

/// allowed: edges usable at all (empty = every edge). preferred: edges the
/// tree takes first, so a connected preferred subgraph gets its own subtree.
inline CycleBasis cycle_basis(const FatGraph& f, int root, const std::vector<char>& allowed = {},
                              const std::vector<char>& preferred = {}) {
  CycleBasis cb;
  cb.root = root;
  cb.parent_side.assign(f.vertex_count(), -2);
  cb.parent_side[root] = -1;
  auto usable = [&](int e) { return allowed.empty() || allowed[e]; };
  auto grow = [&](bool only_preferred) {
    std::deque<int> queue;
    for (int v = 0; v < f.vertex_count(); ++v)
      if (cb.parent_side[v] != -2) queue.push_back(v);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int h : f.rotation(v)) {
        int e = FatGraph::edge_of(h);
        if (!usable(e) || (only_preferred && !preferred[e])) continue;
        int w = f.vertex(FatGraph::opposite(h));
        if (cb.parent_side[w] == -2) {
          cb.parent_side[w] = h;
          queue.push_back(w);
        }
      }
    }
  };
  if (!preferred.empty()) grow(true);
  grow(false);
  cb.coord.assign(f.edge_count(), -1);
  for (int e = 0; e < f.edge_count(); ++e) {
    if (!usable(e) || cb.parent_side[f.tail(e)] == -2) continue;
    if (cb.parent_side[f.head(e)] == 2 * e || cb.parent_side[f.tail(e)] == 2 * e + 1) continue;
    cb.coord[e] = static_cast<int>(cb.non_tree.size());
    cb.non_tree.push_back(e);
  }
  return cb;
}

/// Closed walk at the root through non-tree edge e.
inline std::vector<int> fundamental_cycle(const FatGraph& f, const CycleBasis& cb, int e) {
  auto sides = tree_path(f, cb.parent_side, f.tail(e));
  sides.push_back(2 * e);
  auto back = reversed_sides(tree_path(f, cb.parent_side, f.head(e)));
  sides.insert(sides.end(), back.begin(), back.end());
  return sides;
}

/// Fundamental cycles of a connected subgraph containing root.
inline std::vector<std::vector<int>> subgraph_cycles(const FatGraph& f, const Subgraph& s, int root) {
  auto m = masks_of(f, s);
  auto cb = cycle_basis(f, root, m.edge);
  std::vector<std::vector<int>> out;
  for (int e : cb.non_tree) out.push_back(fundamental_cycle(f, cb, e));
  return out;
}

/// Map H_1(F; Z/2) -> (Z/2)^m whose kernel is exactly the image of H_1(S).
inline GroupHom rel_h1_mod2(const FatGraph& f, const Subgraph& s, int root) {
  auto m = masks_of(f, s);
  auto cb = cycle_basis(f, root, {}, m.edge);
  int n = cb.size();
  auto s_cycles = subgraph_cycles(f, s, root);
  linalg::BitMatrix mat(static_cast<int>(s_cycles.size()), n);
  for (std::size_t i = 0; i < s_cycles.size(); ++i) {
    auto x = cb.coordinates(s_cycles[i]);
    for (int c = 0; c < n; ++c)
      if (x[c] & 1) mat.set(static_cast<int>(i), c, true);
  }
  auto q = mat.nullspace();
  if (q.empty()) throw Error(ErrorKind::ZeroQuotient, "S carries all of H_1 mod 2");
  if (q.size() > 24) throw Error(ErrorKind::CapExceeded, "mod 2 quotient too large for a regular cover");
  GroupHom hom;
  hom.target.kind = AbelianTarget::Kind::Elementary2;
  hom.target.m = static_cast<int>(q.size());
  hom.values.assign(f.edge_count(), 0);
  for (int c = 0; c < n; ++c) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i][c]) v |= std::int64_t{1} << i;
    hom.values[cb.non_tree[c]] = v;
  }
  for (const auto& cyc : s_cycles) SURFSEP_ASSERT(hom.along(cyc) == 0, "S loop not killed");
  return hom;
}

/// Z/p-valued map, p the least prime above max(#walks, n), vanishing on S and
/// nonzero on every boundary walk of F. Throws Inconsistent if none exists.
inline GroupHom big_cyclic_hom(const FatGraph& f, const Subgraph& s, int root, int n) {
  auto faces = f.faces();
  int k = static_cast<int>(faces.walks.size());
  if (k < 2) throw Error(ErrorKind::Inconsistent, "a single boundary walk is a product of commutators");
  std::int64_t p = linalg::next_prime_above(std::max(k, n));
  auto m = masks_of(f, s);
  auto cb = cycle_basis(f, root, {}, m.edge);
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> rhs;
  for (const auto& cyc : subgraph_cycles(f, s, root)) {
    rows.push_back(cb.coordinates(cyc));
    rhs.push_back(0);
  }
  for (int j = 0; j < k; ++j) {
    rows.push_back(cb.coordinates(faces.walks[j]));
    rhs.push_back(j == 0 ? k - 1 : -1);
  }
  auto sol = linalg::solve_mod_p(rows, rhs, p);
  if (!sol) throw Error(ErrorKind::Inconsistent, "no cyclic map kills S and spares the boundary");
  GroupHom hom;
  hom.target.kind = AbelianTarget::Kind::Cyclic;
  hom.target.p = p;
  hom.values.assign(f.edge_count(), 0);
  for (int c = 0; c < cb.size(); ++c) hom.values[cb.non_tree[c]] = (*sol)[c];
  for (const auto& w : faces.walks) SURFSEP_ASSERT(hom.along(w) != 0, "boundary walk killed");
  return hom;
}

/// Whether closed walks at root span a subgroup of H_1(F; Z) of full rank,
/// i.e. their classes are linearly independent.
inline bool loops_independent_in_h1(const FatGraph& f, const std::vector<std::vector<int>>& loops, int root) {
  if (loops.empty()) return true;
  auto cb = cycle_basis(f, root);
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& l : loops) rows.push_back(cb.coordinates(l));
  return linalg::integer_rank(rows) == static_cast<int>(loops.size());
}

/// Injectivity of H_1(S) -> H_1(F) for a connected subgraph S containing root.
inline bool h1_injective(const FatGraph& f, const Subgraph& s, int root) {
  return loops_independent_in_h1(f, subgraph_cycles(f, s, root), root);
}

}  // namespace surfsep
