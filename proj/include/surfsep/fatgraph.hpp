#pragma once

// Ribbon graphs. Half-edge h belongs to edge h/2; h even is the tail end,
// h odd the head end. `next(h)` is the successor of h in the cyclic order
// at its vertex (read counter-clockwise). A side of an edge is a half-edge
// read as a traversal leaving its vertex; boundary walks follow
//
//     side h  ->  next(opposite(h))
//
// so the boundary circle of a walk lies to the right of every side on it.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "word.hpp"

namespace surfsep {

struct EdgeLabel {
  int generator = -1;  // -1 when unlabelled
  int segment = 0;     // position along the generator's subdivided path
  int segments = 1;    // path length for that generator
  bool operator==(const EdgeLabel&) const = default;
};

using BoundaryWalk = std::vector<int>;  // cyclic sequence of sides

struct SurfaceInvariants {
  int euler_characteristic = 0;
  int boundary_count = 0;
  int genus = 0;
  int components = 1;
};

/// Face data: walks in deterministic order plus the inverse index.
struct Faces {
  std::vector<BoundaryWalk> walks;
  std::vector<int> face_of;   // per side
  std::vector<int> position;  // per side, index within its walk
};

class FatGraph {
 public:
  FatGraph() = default;

  /// Builds from per-vertex cyclic orders of half-edge ids.
  static FatGraph from_rotations(int vertex_count, int edge_count,
                                 const std::vector<std::vector<int>>& rotations,
                                 std::vector<EdgeLabel> labels = {}) {
    FatGraph f;
    f.vertex_count_ = vertex_count;
    f.vertex_of_.assign(2 * edge_count, -1);
    f.next_.assign(2 * edge_count, -1);
    f.prev_.assign(2 * edge_count, -1);
    f.first_.assign(vertex_count, -1);
    if (static_cast<int>(rotations.size()) != vertex_count)
      throw Error(ErrorKind::Internal, "rotation count differs from vertex count");
    for (int v = 0; v < vertex_count; ++v) {
      const auto& rot = rotations[v];
      for (std::size_t i = 0; i < rot.size(); ++i) {
        int h = rot[i];
        if (h < 0 || h >= 2 * edge_count || f.vertex_of_[h] >= 0)
          throw Error(ErrorKind::Internal, "half-edge missing or repeated in rotations");
        f.vertex_of_[h] = v;
        f.next_[h] = rot[(i + 1) % rot.size()];
        f.prev_[rot[(i + 1) % rot.size()]] = h;
      }
      if (!rot.empty()) f.first_[v] = rot[0];
    }
    for (int h = 0; h < 2 * edge_count; ++h)
      if (f.vertex_of_[h] < 0) throw Error(ErrorKind::Internal, "half-edge without vertex");
    if (labels.empty()) labels.assign(edge_count, EdgeLabel{});
    f.labels_ = std::move(labels);
    return f;
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(vertex_of_.size() / 2); }
  int half_edge_count() const { return static_cast<int>(vertex_of_.size()); }

  static constexpr int opposite(int h) { return h ^ 1; }
  static constexpr int edge_of(int h) { return h >> 1; }
  static constexpr int tail_half(int e) { return 2 * e; }
  static constexpr int head_half(int e) { return 2 * e + 1; }

  int vertex(int h) const { return vertex_of_[h]; }
  int tail(int e) const { return vertex_of_[2 * e]; }
  int head(int e) const { return vertex_of_[2 * e + 1]; }
  int next(int h) const { return next_[h]; }
  int prev(int h) const { return prev_[h]; }
  /// Successor of side h along its boundary walk.
  int walk_next(int h) const { return next_[h ^ 1]; }
  const EdgeLabel& label(int e) const { return labels_[e]; }
  const std::vector<EdgeLabel>& labels() const { return labels_; }

  std::vector<int> rotation(int v) const {
    std::vector<int> out;
    int h0 = first_[v];
    if (h0 < 0) return out;
    int h = h0;
    do {
      out.push_back(h);
      h = next_[h];
    } while (h != h0);
    return out;
  }

  std::vector<std::vector<int>> rotations() const {
    std::vector<std::vector<int>> out(vertex_count_);
    for (int v = 0; v < vertex_count_; ++v) out[v] = rotation(v);
    return out;
  }

  /// Boundary walks, each starting at its smallest side; walks ordered by
  /// that side. Isolated vertices contribute an empty walk each (a disc).
  Faces faces() const {
    Faces f;
    int n = half_edge_count();
    f.face_of.assign(n, -1);
    f.position.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      if (f.face_of[h] >= 0) continue;
      int id = static_cast<int>(f.walks.size());
      BoundaryWalk w;
      int x = h;
      do {
        f.face_of[x] = id;
        f.position[x] = static_cast<int>(w.size());
        w.push_back(x);
        x = walk_next(x);
      } while (x != h);
      f.walks.push_back(std::move(w));
    }
    for (int v = 0; v < vertex_count_; ++v)
      if (first_[v] < 0) f.walks.emplace_back();
    return f;
  }

  std::vector<BoundaryWalk> boundary_walks() const { return faces().walks; }

  /// Component index per vertex.
  std::vector<int> component_of_vertices() const {
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int e = 0; e < edge_count(); ++e) parent[find(tail(e))] = find(head(e));
    std::map<int, int> ids;
    std::vector<int> out(vertex_count_);
    for (int v = 0; v < vertex_count_; ++v) out[v] = ids.emplace(find(v), static_cast<int>(ids.size())).first->second;
    return out;
  }

  int component_count() const {
    auto c = component_of_vertices();
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  SurfaceInvariants invariants() const {
    SurfaceInvariants s;
    s.euler_characteristic = vertex_count_ - edge_count();
    s.boundary_count = static_cast<int>(faces().walks.size());
    s.components = component_count();
    // sum over components of (2 - 2g - b) = chi
    int twice_genus = 2 * s.components - s.euler_characteristic - s.boundary_count;
    s.genus = twice_genus / 2;
    return s;
  }

  /// Generator word read along a boundary walk (labelled graphs only).
  /// A letter is emitted when a walk crosses segment 0 of a generator path.
  Word walk_word(const BoundaryWalk& walk) const {
    std::vector<Letter> out;
    for (int h : walk) {
      const auto& l = labels_[edge_of(h)];
      if (l.generator < 0) throw Error(ErrorKind::Internal, "walk_word on unlabelled edge");
      if (l.segment != 0) continue;
      out.push_back(h % 2 == 0 ? Letter::positive(l.generator) : Letter::negative(l.generator));
    }
    return Word::reduce(out);
  }

  bool operator==(const FatGraph& o) const {
    return vertex_count_ == o.vertex_count_ && vertex_of_ == o.vertex_of_ && next_ == o.next_ &&
           labels_ == o.labels_;
  }

  // Per-generator edge paths for labelled graphs (segment order).
  const std::vector<std::vector<int>>& generator_paths() const { return generator_paths_; }
  void set_generator_paths(std::vector<std::vector<int>> p) { generator_paths_ = std::move(p); }

 private:
  int vertex_count_ = 0;
  std::vector<int> vertex_of_;
  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> first_;
  std::vector<EdgeLabel> labels_;
  std::vector<std::vector<int>> generator_paths_;
};

/// One-vertex fatgraph of the surface with genus g and k boundary circles.
/// Edge i is generator i. Cyclic order: a_i b_i^- a_i^- b_i^+ per handle,
/// then c_j^+ c_j^- (superscript + = tail end). Boundary walks read the
/// standard boundary words up to rotation and inversion.
inline FatGraph standard_fatgraph(int genus, int boundary) {
  SurfaceAlphabet alpha(genus, boundary);
  int r = alpha.rank();
  std::vector<int> rot;
  for (int i = 1; i <= genus; ++i) {
    int a = alpha.a(i), b = alpha.b(i);
    rot.insert(rot.end(), {2 * a, 2 * b + 1, 2 * a + 1, 2 * b});
  }
  for (int j = 1; j < boundary; ++j) {
    int c = alpha.c(j);
    rot.insert(rot.end(), {2 * c, 2 * c + 1});
  }
  std::vector<EdgeLabel> labels(r);
  std::vector<std::vector<int>> paths(r);
  for (int g = 0; g < r; ++g) {
    labels[g] = {g, 0, 1};
    paths[g] = {g};
  }
  auto f = FatGraph::from_rotations(1, r, {rot}, labels);
  f.set_generator_paths(std::move(paths));

  auto walks = f.boundary_walks();
  SURFSEP_ASSERT(static_cast<int>(walks.size()) == boundary, "standard fatgraph face count");
  auto words = boundary_words(genus, boundary);
  std::vector<bool> used(walks.size(), false);
  for (const auto& w : words) {
    bool found = false;
    for (std::size_t i = 0; i < walks.size() && !found; ++i)
      if (!used[i] && same_cyclic_class(f.walk_word(walks[i]), w)) used[i] = found = true;
    SURFSEP_ASSERT(found, "standard fatgraph boundary words");
  }
  return f;
}

/// Replaces every edge by a path of t edges. Edge e becomes edges
/// e*t .. e*t+t-1; new vertices are appended in edge order.
inline FatGraph subdivide(const FatGraph& f, int t) {
  if (t < 1) throw Error(ErrorKind::InvalidSurface, "subdivision level must be >= 1");
  if (t == 1) return f;
  int nv = f.vertex_count(), ne = f.edge_count();
  int new_nv = nv + ne * (t - 1);
  auto mid = [&](int e, int j) { return nv + e * (t - 1) + (j - 1); };  // j in 1..t-1
  std::vector<std::vector<int>> rot(new_nv);
  for (int v = 0; v < nv; ++v)
    for (int h : f.rotation(v)) {
      int e = FatGraph::edge_of(h);
      rot[v].push_back(h % 2 == 0 ? 2 * (e * t) : 2 * (e * t + t - 1) + 1);
    }
  std::vector<EdgeLabel> labels(ne * t);
  for (int e = 0; e < ne; ++e) {
    for (int j = 1; j < t; ++j) rot[mid(e, j)] = {2 * (e * t + j - 1) + 1, 2 * (e * t + j)};
    for (int j = 0; j < t; ++j) {
      const auto& l = f.label(e);
      labels[e * t + j] = {l.generator, l.segment * t + j, l.segments * t};
    }
  }
  auto out = FatGraph::from_rotations(new_nv, ne * t, rot, labels);
  std::vector<std::vector<int>> paths;
  for (const auto& p : f.generator_paths()) {
    std::vector<int> np;
    for (int e : p)
      for (int j = 0; j < t; ++j) np.push_back(e * t + j);
    paths.push_back(std::move(np));
  }
  out.set_generator_paths(std::move(paths));
  return out;
}

/// Vertex and edge subsets; sorted and unique.
struct Subgraph {
  std::vector<int> vertices;
  std::vector<int> edges;

  void normalize() {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  bool has_vertex(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
  bool has_edge(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }
  bool operator==(const Subgraph&) const = default;
};

struct SubgraphMasks {
  std::vector<char> vertex;
  std::vector<char> edge;
};

inline SubgraphMasks masks_of(const FatGraph& f, const Subgraph& s) {
  SubgraphMasks m{std::vector<char>(f.vertex_count(), 0), std::vector<char>(f.edge_count(), 0)};
  for (int v : s.vertices) {
    if (v < 0 || v >= f.vertex_count()) throw Error(ErrorKind::NotASubgraph, "vertex out of range");
    m.vertex[v] = 1;
  }
  for (int e : s.edges) {
    if (e < 0 || e >= f.edge_count()) throw Error(ErrorKind::NotASubgraph, "edge out of range");
    if (!m.vertex[f.tail(e)] || !m.vertex[f.head(e)])
      throw Error(ErrorKind::NotASubgraph, "edge endpoint missing from subgraph");
    m.edge[e] = 1;
  }
  return m;
}

inline bool subgraph_connected(const FatGraph& f, const Subgraph& s) {
  if (s.vertices.empty()) return false;
  auto m = masks_of(f, s);
  std::vector<int> parent(f.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : s.edges) parent[find(f.tail(e))] = find(f.head(e));
  int root = find(s.vertices.front());
  return std::all_of(s.vertices.begin(), s.vertices.end(), [&](int v) { return find(v) == root; });
}

struct ComplementComponent {
  int euler_characteristic = 0;
  int circles_on_s = 0;
  int circles_on_boundary = 0;
  int genus = 0;
  bool is_disc = false;
  bool is_boundary_parallel_annulus = false;
};

struct ComplementReport {
  std::vector<ComplementComponent> components;
  bool connected = true;     // at most one component
  int boundary_circles_of_s = 0;
  int circles_shared_with_boundary = 0;  // circles of N(S) that are circles of F
};

/// Components of the closure of F minus a regular neighbourhood N(S).
/// Circles of N(S) with no edge of F \ S attached are circles of F itself
/// and are absorbed into N(S).
inline ComplementReport complement_components(const FatGraph& f, const Subgraph& s) {
  auto m = masks_of(f, s);
  int nv = f.vertex_count(), ne = f.edge_count();
  auto in_s_half = [&](int h) { return m.edge[FatGraph::edge_of(h)] != 0; };

  // Faces of the ribbon subgraph S.
  std::vector<int> s_face(2 * ne, -1);
  std::vector<int> isolated_face(nv, -1);
  int s_faces = 0;
  auto s_next = [&](int h) {  // next S half-edge after h at its vertex
    int x = f.next(h);
    while (!in_s_half(x)) x = f.next(x);
    return x;
  };
  for (int h = 0; h < 2 * ne; ++h) {
    if (!in_s_half(h) || s_face[h] >= 0) continue;
    int x = h;
    do {
      s_face[x] = s_faces;
      x = s_next(FatGraph::opposite(x));
    } while (x != h);
    ++s_faces;
  }
  for (int v = 0; v < nv; ++v) {
    if (!m.vertex[v]) continue;
    auto rot = f.rotation(v);
    if (std::none_of(rot.begin(), rot.end(), in_s_half)) isolated_face[v] = s_faces++;
  }

  // Circle of N(S) at which a non-S half-edge at an S vertex attaches.
  auto circle_of = [&](int h) {
    int v = f.vertex(h);
    if (isolated_face[v] >= 0) return isolated_face[v];
    int x = f.prev(h);
    while (!in_s_half(x)) x = f.prev(x);
    return s_face[FatGraph::opposite(x)];
  };

  // Union-find over non-S vertices [0, nv) and S circles [nv, nv + s_faces).
  std::vector<int> parent(nv + s_faces);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> circle_used(s_faces, 0);
  auto node_of = [&](int h) {
    int v = f.vertex(h);
    if (!m.vertex[v]) return v;
    int c = circle_of(h);
    circle_used[c] = 1;
    return nv + c;
  };
  for (int e = 0; e < ne; ++e) {
    if (m.edge[e]) continue;
    parent[find(node_of(2 * e))] = find(node_of(2 * e + 1));
  }

  std::map<int, int> comp_index;
  std::vector<ComplementComponent> comps;
  auto comp = [&](int node) -> ComplementComponent& {
    auto [it, fresh] = comp_index.emplace(find(node), static_cast<int>(comps.size()));
    if (fresh) comps.emplace_back();
    return comps[it->second];
  };
  for (int v = 0; v < nv; ++v)
    if (!m.vertex[v]) comp(v).euler_characteristic += 1;
  for (int e = 0; e < ne; ++e)
    if (!m.edge[e]) comp(node_of(2 * e)).euler_characteristic -= 1;
  ComplementReport rep;
  rep.boundary_circles_of_s = s_faces;
  for (int c = 0; c < s_faces; ++c) {
    if (circle_used[c])
      comp(nv + c).circles_on_s += 1;
    else
      ++rep.circles_shared_with_boundary;
  }
  auto faces = f.faces();
  for (const auto& walk : faces.walks) {
    auto it = std::find_if(walk.begin(), walk.end(), [&](int h) { return !in_s_half(h); });
    if (it != walk.end()) comp(node_of(*it)).circles_on_boundary += 1;
  }
  for (int v = 0; v < nv; ++v)
    if (!m.vertex[v] && f.rotation(v).empty()) comp(v).circles_on_boundary += 1;

  for (auto& c : comps) {
    int b = c.circles_on_s + c.circles_on_boundary;
    c.genus = (2 - c.euler_characteristic - b) / 2;
    c.is_disc = c.euler_characteristic == 1 && b == 1;
    c.is_boundary_parallel_annulus =
        c.euler_characteristic == 0 && c.circles_on_s == 1 && c.circles_on_boundary == 1;
  }
  rep.components = std::move(comps);
  rep.connected = rep.components.size() <= 1;
  return rep;
}

}  // namespace surfsep
