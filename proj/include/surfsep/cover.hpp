#pragma once

// Finite covers of fatgraphs. A cover of degree d stores one permutation of
// the sheets {0..d-1} per base edge: the lift of edge e on sheet s runs from
// (tail(e), s) to (head(e), perm[e][s]). Total vertex (v, s) has id v*d + s
// and total edge (e, s) has id e*d + s; the cyclic order at (v, s) is the
// lift of the cyclic order at v, so the total is again a fatgraph and the
// projection is a covering of ribbon graphs.

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <vector>

#include "fatgraph.hpp"
#include "folded_graph.hpp"

namespace surfsep {

using Permutation = std::vector<int>;

inline Permutation inverse_permutation(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

inline bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

struct Cover {
  FatGraph base;
  int degree = 1;
  std::vector<Permutation> perm;  // per base edge
  int basepoint = 0;              // total vertex id
  std::optional<Subgraph> marked; // total ids

  int total_vertex(int v, int sheet) const { return v * degree + sheet; }
  int total_edge(int e, int sheet) const { return e * degree + sheet; }
  int base_vertex_of(int tv) const { return tv / degree; }
  int sheet_of(int tv_or_te) const { return tv_or_te % degree; }
  int base_basepoint() const { return basepoint / degree; }
  int basepoint_sheet() const { return basepoint % degree; }

  /// Total half-edge lying over base half-edge h on edge-sheet s.
  int total_half(int h, int sheet) const { return 2 * total_edge(FatGraph::edge_of(h), sheet) + (h & 1); }

  FatGraph total() const {
    int nv = base.vertex_count() * degree;
    int ne = base.edge_count() * degree;
    std::vector<Permutation> inv(perm.size());
    for (std::size_t e = 0; e < perm.size(); ++e) inv[e] = inverse_permutation(perm[e]);
    std::vector<std::vector<int>> rot(nv);
    for (int v = 0; v < base.vertex_count(); ++v) {
      auto r = base.rotation(v);
      for (int s = 0; s < degree; ++s) {
        auto& out = rot[total_vertex(v, s)];
        out.reserve(r.size());
        for (int h : r) {
          int e = FatGraph::edge_of(h);
          out.push_back(h % 2 == 0 ? 2 * total_edge(e, s) : 2 * total_edge(e, inv[e][s]) + 1);
        }
      }
    }
    std::vector<EdgeLabel> labels(ne);
    for (int e = 0; e < base.edge_count(); ++e)
      for (int s = 0; s < degree; ++s) labels[total_edge(e, s)] = base.label(e);
    return FatGraph::from_rotations(nv, ne, rot, std::move(labels));
  }

  /// Sheet reached at the base basepoint after lifting w from `sheet`.
  /// Requires a labelled base whose generator paths start and end at the
  /// base basepoint.
  int lift_word(const Word& w, int sheet) const {
    const auto& paths = base.generator_paths();
    for (Letter x : w) {
      if (x.gen() >= static_cast<int>(paths.size()))
        throw Error(ErrorKind::Internal, "letter outside the base alphabet");
      const auto& path = paths[x.gen()];
      if (!x.inverted()) {
        for (int e : path) sheet = perm[e][sheet];
      } else {
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
          const auto& p = perm[*it];
          sheet = static_cast<int>(std::find(p.begin(), p.end(), sheet) - p.begin());
        }
      }
    }
    return sheet;
  }
};

/// Checks permutations, basepoint and marked ids; throws on failure.
inline void validate(const Cover& c) {
  if (c.degree < 1) throw Error(ErrorKind::Internal, "cover degree must be positive");
  if (static_cast<int>(c.perm.size()) != c.base.edge_count())
    throw Error(ErrorKind::Internal, "one permutation per base edge expected");
  for (const auto& p : c.perm)
    if (static_cast<int>(p.size()) != c.degree || !is_permutation(p))
      throw Error(ErrorKind::Internal, "edge transition is not a permutation of the sheets");
  if (c.basepoint < 0 || c.basepoint >= c.base.vertex_count() * c.degree)
    throw Error(ErrorKind::Internal, "basepoint out of range");
  if (c.marked) {
    auto t = c.total();
    masks_of(t, *c.marked);
    if (!c.marked->has_vertex(c.basepoint)) throw Error(ErrorKind::Internal, "basepoint not in marked subgraph");
  }
}

inline Cover identity_cover(const FatGraph& f, int base_basepoint = 0) {
  Cover c;
  c.base = f;
  c.degree = 1;
  c.perm.assign(f.edge_count(), Permutation{0});
  c.basepoint = base_basepoint;
  return c;
}

inline bool image_contains(const Cover& c, const Word& w) {
  return c.lift_word(w, c.basepoint_sheet()) == c.basepoint_sheet();
}

/// Completes a generator's partial injection: fixed points first on
/// vertices missing both an outgoing and incoming edge, then remaining
/// tails matched to remaining heads in increasing order.
inline Permutation complete_partial_injection(const std::vector<int>& partial) {
  int n = static_cast<int>(partial.size());
  Permutation p = partial;
  std::vector<char> has_in(n, 0);
  for (int x : partial)
    if (x >= 0) has_in[x] = 1;
  std::vector<int> tails, heads;
  for (int v = 0; v < n; ++v) {
    if (p[v] < 0 && !has_in[v]) {
      p[v] = v;
      has_in[v] = 1;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (p[v] < 0) tails.push_back(v);
    if (!has_in[v]) heads.push_back(v);
  }
  SURFSEP_ASSERT(tails.size() == heads.size(), "partial injection bookkeeping");
  for (std::size_t i = 0; i < tails.size(); ++i) p[tails[i]] = heads[i];
  return p;
}

/// Finite cover in which the folded graph embeds: core vertex i sits on
/// sheet i over the base basepoint; the marked subgraph is the embedded core.
inline Cover hall_completion(const FoldedGraph& core, const FatGraph& base) {
  const auto& paths = base.generator_paths();
  if (static_cast<int>(paths.size()) != core.rank())
    throw Error(ErrorKind::Internal, "base alphabet does not match core rank");
  int d = core.vertex_count();
  Cover c;
  c.base = base;
  c.degree = d;
  c.perm.assign(base.edge_count(), Permutation{});
  for (int e = 0; e < base.edge_count(); ++e) {
    c.perm[e].resize(d);
    std::iota(c.perm[e].begin(), c.perm[e].end(), 0);
  }
  for (int g = 0; g < core.rank(); ++g) {
    std::vector<int> partial(d, -1);
    for (int v = 0; v < d; ++v) partial[v] = core.target(v, 2 * g);
    c.perm[paths[g].front()] = complete_partial_injection(partial);
  }
  c.basepoint = c.total_vertex(0, 0);
  Subgraph m;
  for (int v = 0; v < d; ++v) m.vertices.push_back(c.total_vertex(0, v));
  for (const auto& e : core.edges()) {
    const auto& path = paths[e.gen];
    for (std::size_t j = 0; j < path.size(); ++j) {
      int sheet = j == 0 ? e.tail : e.head;
      m.edges.push_back(c.total_edge(path[j], sheet));
      if (j > 0) m.vertices.push_back(c.total_vertex(base.tail(path[j]), e.head));
    }
  }
  m.normalize();
  c.marked = std::move(m);
  return c;
}

/// Target group of a homomorphism from pi_1: (Z/2)^m or Z/p.
struct AbelianTarget {
  enum class Kind { Elementary2, Cyclic } kind = Kind::Elementary2;
  int m = 0;            // for (Z/2)^m
  std::int64_t p = 1;   // for Z/p
  std::int64_t order() const { return kind == Kind::Elementary2 ? (std::int64_t{1} << m) : p; }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    return kind == Kind::Elementary2 ? (a ^ b) : ((a + b) % p + p) % p;
  }
  std::int64_t negate(std::int64_t a) const { return kind == Kind::Elementary2 ? a : (p - a) % p; }
};

/// Per-edge group values; spanning-tree edges carry 0.
struct GroupHom {
  AbelianTarget target;
  std::vector<std::int64_t> values;  // per edge of the graph it lives on

  std::int64_t along(const std::vector<int>& sides) const {
    std::int64_t acc = 0;
    for (int h : sides) {
      auto v = values[FatGraph::edge_of(h)];
      acc = target.add(acc, h % 2 == 0 ? v : target.negate(v));
    }
    return acc;
  }
};

/// Regular cover with sheets = group elements; crossing edge e on sheet g
/// lands on sheet g + hom(e). Deck group acts by translation.
inline Cover regular_cover_from_hom(const FatGraph& f, const GroupHom& hom, int base_basepoint = 0) {
  std::int64_t order = hom.target.order();
  if (order > (std::int64_t{1} << 24)) throw Error(ErrorKind::CapExceeded, "regular cover too large");
  int d = static_cast<int>(order);
  Cover c;
  c.base = f;
  c.degree = d;
  c.perm.assign(f.edge_count(), Permutation(d));
  for (int e = 0; e < f.edge_count(); ++e)
    for (int g = 0; g < d; ++g) c.perm[e][g] = static_cast<int>(hom.target.add(g, hom.values[e]));
  c.basepoint = c.total_vertex(base_basepoint, 0);
  return c;
}

/// Lifts a connected marked subgraph of the base to the sheet of the
/// basepoint. Throws DoesNotLift if a marked loop has nonzero value.
inline Cover lift_marked(Cover c, const Subgraph& base_marked, const GroupHom& hom) {
  const auto& f = c.base;
  auto m = masks_of(f, base_marked);
  int root = c.base_basepoint();
  if (!m.vertex[root]) throw Error(ErrorKind::NoMarkedSubgraph, "basepoint outside marked subgraph");
  std::vector<std::int64_t> sheet(f.vertex_count(), -1);
  sheet[root] = c.basepoint_sheet();
  std::deque<int> queue{root};
  std::vector<std::vector<int>> inc(f.vertex_count());
  for (int e : base_marked.edges) {
    inc[f.tail(e)].push_back(2 * e);
    inc[f.head(e)].push_back(2 * e + 1);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int h : inc[v]) {
      int e = FatGraph::edge_of(h);
      int w = f.vertex(FatGraph::opposite(h));
      std::int64_t val = h % 2 == 0 ? hom.values[e] : hom.target.negate(hom.values[e]);
      std::int64_t s = hom.target.add(sheet[v], val);
      if (sheet[w] < 0) {
        sheet[w] = s;
        queue.push_back(w);
      } else if (sheet[w] != s) {
        throw Error(ErrorKind::DoesNotLift, "a marked loop has nonzero value under the homomorphism");
      }
    }
  }
  Subgraph lifted;
  for (int v : base_marked.vertices) {
    if (sheet[v] < 0) throw Error(ErrorKind::NoMarkedSubgraph, "marked subgraph is not connected");
    lifted.vertices.push_back(c.total_vertex(v, static_cast<int>(sheet[v])));
  }
  for (int e : base_marked.edges) lifted.edges.push_back(c.total_edge(e, static_cast<int>(sheet[f.tail(e)])));
  lifted.normalize();
  c.marked = std::move(lifted);
  return c;
}

/// Flattens outer -> inner.total -> inner.base into one cover of inner.base.
/// Total ids agree with those of outer, so marked and basepoint carry over.
inline Cover compose(const Cover& outer, const Cover& inner) {
  if (!(outer.base == inner.total()))
    throw Error(ErrorKind::MismatchedTower, "outer cover is not a cover of the inner total");
  int d = inner.degree, d2 = outer.degree;
  Cover c;
  c.base = inner.base;
  c.degree = d * d2;
  c.perm.assign(inner.base.edge_count(), Permutation(c.degree));
  for (int e = 0; e < inner.base.edge_count(); ++e)
    for (int s = 0; s < d; ++s)
      for (int s2 = 0; s2 < d2; ++s2)
        c.perm[e][s * d2 + s2] = inner.perm[e][s] * d2 + outer.perm[inner.total_edge(e, s)][s2];
  c.basepoint = outer.basepoint;
  c.marked = outer.marked;
  return c;
}

/// Disjoint union with one extra identity sheet (sheet d). Marked subgraph
/// and basepoint stay on the old sheets.
inline Cover augment_with_base(const Cover& c) {
  int d = c.degree;
  Cover out = c;
  out.degree = d + 1;
  for (auto& p : out.perm) p.push_back(d);
  auto remap = [&](int id) { return (id / d) * (d + 1) + id % d; };
  out.basepoint = remap(c.basepoint);
  if (c.marked) {
    Subgraph m;
    for (int v : c.marked->vertices) m.vertices.push_back(remap(v));
    for (int e : c.marked->edges) m.edges.push_back(remap(e));
    m.normalize();
    out.marked = std::move(m);
  }
  return out;
}

struct FibreWalk {
  int walk = 0;     // index into total faces
  int winding = 0;  // covering degree of the walk over its base walk
};

struct BoundaryFibres {
  std::vector<std::vector<FibreWalk>> fibres;  // per base walk
  int excess = 0;
  Faces total_faces;
  Faces base_faces;

  bool conservative() const { return excess == 0; }
  /// Base walk under each total walk.
  std::vector<int> base_of_walk() const {
    std::vector<int> out(total_faces.walks.size(), -1);
    for (std::size_t b = 0; b < fibres.size(); ++b)
      for (const auto& fw : fibres[b]) out[fw.walk] = static_cast<int>(b);
    return out;
  }
};

inline BoundaryFibres boundary_fibres(const Cover& c, const FatGraph* total = nullptr) {
  BoundaryFibres bf;
  std::optional<FatGraph> owned;
  if (!total) {
    owned = c.total();
    total = &*owned;
  }
  bf.base_faces = c.base.faces();
  bf.total_faces = total->faces();
  bf.fibres.resize(bf.base_faces.walks.size());
  for (std::size_t w = 0; w < bf.total_faces.walks.size(); ++w) {
    const auto& walk = bf.total_faces.walks[w];
    SURFSEP_ASSERT(!walk.empty(), "isolated vertex in a cover total");
    int th = walk.front();
    int base_h = 2 * (FatGraph::edge_of(th) / c.degree) + (th & 1);
    int b = bf.base_faces.face_of[base_h];
    int len = static_cast<int>(bf.base_faces.walks[b].size());
    SURFSEP_ASSERT(static_cast<int>(walk.size()) % len == 0, "walk length not a multiple of its base walk");
    bf.fibres[b].push_back({static_cast<int>(w), static_cast<int>(walk.size()) / len});
  }
  int total_walks = static_cast<int>(bf.total_faces.walks.size());
  bf.excess = total_walks - static_cast<int>(bf.base_faces.walks.size());
  for (const auto& fib : bf.fibres) {
    int sum = 0;
    for (const auto& fw : fib) sum += fw.winding;
    SURFSEP_ASSERT(sum == c.degree, "fibre windings must sum to the degree");
  }
  return bf;
}

/// Generator word read along a path of total sides (segment-0 rule).
inline Word read_sides(const FatGraph& total, const std::vector<int>& sides) {
  std::vector<Letter> out;
  for (int h : sides) {
    const auto& l = total.label(FatGraph::edge_of(h));
    if (l.segment != 0) continue;
    out.push_back(h % 2 == 0 ? Letter::positive(l.generator) : Letter::negative(l.generator));
  }
  return Word::reduce(out);
}

/// BFS tree of a subgraph: for each reached vertex the side entering it.
inline std::vector<int> subgraph_tree(const FatGraph& f, const Subgraph& s, int root) {
  std::vector<std::vector<int>> inc(f.vertex_count());
  for (int e : s.edges) {
    inc[f.tail(e)].push_back(2 * e);
    inc[f.head(e)].push_back(2 * e + 1);
  }
  for (auto& l : inc) std::sort(l.begin(), l.end());
  std::vector<int> parent_side(f.vertex_count(), -2);
  parent_side[root] = -1;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int h : inc[v]) {
      int w = f.vertex(FatGraph::opposite(h));
      if (parent_side[w] == -2) {
        parent_side[w] = h;
        queue.push_back(w);
      }
    }
  }
  return parent_side;
}

inline std::vector<int> tree_path(const FatGraph& f, const std::vector<int>& parent_side, int v) {
  std::vector<int> sides;
  while (parent_side[v] >= 0) {
    sides.push_back(parent_side[v]);
    v = f.vertex(parent_side[v]);
  }
  std::reverse(sides.begin(), sides.end());
  return sides;
}

inline std::vector<int> reversed_sides(std::vector<int> sides) {
  std::reverse(sides.begin(), sides.end());
  for (auto& h : sides) h = FatGraph::opposite(h);
  return sides;
}

/// Subgroup p_*(pi_1 S) of the marked subgraph, as a canonical folded graph.
inline FoldedGraph image_subgroup_of_marked(const Cover& c) {
  if (!c.marked) throw Error(ErrorKind::NoMarkedSubgraph, "cover carries no marked subgraph");
  auto total = c.total();
  const auto& s = *c.marked;
  if (!s.has_vertex(c.basepoint)) throw Error(ErrorKind::NoMarkedSubgraph, "basepoint outside marked subgraph");
  auto parent = subgraph_tree(total, s, c.basepoint);
  for (int v : s.vertices)
    if (parent[v] == -2) throw Error(ErrorKind::NoMarkedSubgraph, "marked subgraph is not connected");
  std::vector<Word> loops;
  for (int e : s.edges) {
    int t = total.tail(e), h = total.head(e);
    if (parent[h] == 2 * e || parent[t] == 2 * e + 1) continue;  // tree edge
    auto sides = tree_path(total, parent, t);
    sides.push_back(2 * e);
    auto back = reversed_sides(tree_path(total, parent, h));
    sides.insert(sides.end(), back.begin(), back.end());
    loops.push_back(read_sides(total, sides));
  }
  int rank = static_cast<int>(c.base.generator_paths().size());
  return fold(loops, rank);
}

}  // namespace surfsep
