#pragma once

// Stallings graphs: based, generator-labelled, folded graphs representing
// finitely generated subgroups of a free group.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "word.hpp"

namespace surfsep {

/// Folded graph in canonical form: vertices numbered by BFS from the
/// basepoint (vertex 0), scanning slots a, A, b, B, ... in order. Two
/// canonical graphs are equal iff they represent the same based subgroup
/// (for cores) or the same core-with-whiskers.
class FoldedGraph {
 public:
  FoldedGraph() = default;
  explicit FoldedGraph(int rank) : rank_(rank), table_(1, std::vector<int>(2 * rank, -1)) {}

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(table_.size()); }
  int basepoint() const { return 0; }

  /// Target of the edge leaving v with label `slot`, or -1.
  int target(int v, int slot) const { return table_[v][slot]; }
  int target(int v, Letter x) const { return table_[v][x.slot()]; }

  int degree(int v) const {
    return static_cast<int>(std::count_if(table_[v].begin(), table_[v].end(), [](int t) { return t >= 0; }));
  }

  /// Positive-labelled edges (tail, generator, head), in canonical order.
  struct Edge {
    int tail;
    int gen;
    int head;
    auto operator<=>(const Edge&) const = default;
  };
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int v = 0; v < vertex_count(); ++v)
      for (int g = 0; g < rank_; ++g)
        if (table_[v][2 * g] >= 0) out.push_back({v, g, table_[v][2 * g]});
    return out;
  }
  int edge_count() const { return static_cast<int>(edges().size()); }

  /// End vertex of the path reading w from `start`, if the whole word reads.
  std::optional<int> read(const Word& w, int start = 0) const {
    int v = start;
    for (Letter x : w) {
      if (x.gen() >= rank_) return std::nullopt;
      v = table_[v][x.slot()];
      if (v < 0) return std::nullopt;
    }
    return v;
  }

  bool operator==(const FoldedGraph&) const = default;

  // Raw construction; callers must keep the folded invariant.
  static FoldedGraph from_table(int rank, std::vector<std::vector<int>> table) {
    FoldedGraph g;
    g.rank_ = rank;
    g.table_ = std::move(table);
    return g;
  }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  int rank_ = 0;
  std::vector<std::vector<int>> table_;
};

namespace detail {

/// Mutable graph supporting Stallings folds via union-find.
class FoldingBuilder {
 public:
  explicit FoldingBuilder(int rank) : rank_(rank) { add_vertex(); }

  int add_vertex() {
    adj_.emplace_back();
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(adj_.size()) - 1;
  }

  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  void add_edge(int u, Letter x, int v) {
    pending_.push_back({u, x.slot(), v});
    drain();
  }

  /// Adds the path spelling w from `start`; returns its end vertex.
  /// Existing edges are followed first so the graph stays small.
  int add_path(int start, const Word& w) {
    int v = find(start);
    for (Letter x : w) {
      auto it = adj_[v].find(x.slot());
      if (it != adj_[v].end()) {
        v = find(it->second);
        continue;
      }
      int n = add_vertex();
      add_edge(v, x, n);
      v = find(n);
    }
    return v;
  }

  void add_loop(const Word& w) {
    if (w.empty()) return;
    int base = find(0);
    std::vector<Letter> head(w.begin(), w.end() - 1);
    int end = add_path(base, Word::reduce(head));
    add_edge(end, w.letters().back(), base);
  }

  /// Removes degree-1 vertices other than the basepoint, repeatedly.
  void prune_hairs() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < static_cast<int>(adj_.size()); ++v) {
        if (find(v) != v || v == find(0) || removed(v)) continue;
        if (adj_[v].size() == 1) {
          auto [slot, w] = *adj_[v].begin();
          w = find(w);
          adj_[w].erase(slot ^ 1);
          adj_[v].clear();
          dead_.resize(adj_.size(), false);
          dead_[v] = true;
          changed = true;
        }
      }
    }
  }

  FoldedGraph canonical() {
    int root = find(0);
    std::vector<int> number(adj_.size(), -1);
    std::vector<int> order;
    std::deque<int> queue{root};
    number[root] = 0;
    order.push_back(root);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int slot = 0; slot < 2 * rank_; ++slot) {
        auto it = adj_[v].find(slot);
        if (it == adj_[v].end()) continue;
        int w = find(it->second);
        if (number[w] < 0) {
          number[w] = static_cast<int>(order.size());
          order.push_back(w);
          queue.push_back(w);
        }
      }
    }
    std::vector<std::vector<int>> table(order.size(), std::vector<int>(2 * rank_, -1));
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto [slot, w] : adj_[order[i]]) table[i][slot] = number[find(w)];
    return FoldedGraph::from_table(rank_, std::move(table));
  }

 private:
  struct Pending {
    int u, slot, v;
  };

  bool removed(int v) const { return v < static_cast<int>(dead_.size()) && dead_[v]; }

  void set(int u, int slot, int v) {
    u = find(u);
    v = find(v);
    auto it = adj_[u].find(slot);
    if (it != adj_[u].end()) {
      int w = find(it->second);
      if (w != v) merges_.push_back({w, v});
      return;
    }
    adj_[u][slot] = v;
  }

  void drain() {
    while (!pending_.empty() || !merges_.empty()) {
      if (!pending_.empty()) {
        auto p = pending_.back();
        pending_.pop_back();
        set(p.u, p.slot, p.v);
        set(p.v, p.slot ^ 1, p.u);
        continue;
      }
      auto [a, b] = merges_.back();
      merges_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (b == find(0) || (a != find(0) && b < a)) std::swap(a, b);
      // absorb b into a
      parent_[b] = a;
      auto moved = std::move(adj_[b]);
      adj_[b].clear();
      for (auto [slot, w] : moved) pending_.push_back({a, slot, w});
      // entries elsewhere that point to b resolve through find()
    }
  }

  int rank_;
  std::vector<std::map<int, int>> adj_;
  std::vector<int> parent_;
  std::vector<bool> dead_;
  std::vector<Pending> pending_;
  std::vector<std::pair<int, int>> merges_;
};

}  // namespace detail

/// Stallings graph of the subgroup generated by `generators`.
inline FoldedGraph fold(const std::vector<Word>& generators, int rank) {
  detail::FoldingBuilder b(rank);
  for (const auto& w : generators) b.add_loop(w);
  b.prune_hairs();
  return b.canonical();
}

/// Attaches a whisker path spelling each word at the basepoint, then folds.
/// Whiskers are not pruned; they carry no loops.
inline FoldedGraph attach_whiskers(const FoldedGraph& g, const std::vector<Word>& words) {
  detail::FoldingBuilder b(g.rank());
  for (int v = 1; v < g.vertex_count(); ++v) b.add_vertex();
  for (const auto& e : g.edges()) b.add_edge(e.tail, Letter::positive(e.gen), e.head);
  for (const auto& w : words) b.add_path(0, w);
  return b.canonical();
}

inline bool contains(const FoldedGraph& g, const Word& w) {
  auto end = g.read(w);
  return end && *end == g.basepoint();
}

/// A connected component of a fibre product, with hanging trees removed.
struct PullbackComponent {
  FoldedGraph graph;                       // vertex 0 = first pair found
  std::vector<std::pair<int, int>> pairs;  // product vertex of each graph vertex
  bool has_nontrivial_loop = false;
  bool contains_basepoint = false;
};

namespace detail {

struct ProductGraph {
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (slot, target)
};

inline ProductGraph product(const FoldedGraph& g1, const FoldedGraph& g2) {
  ProductGraph p;
  int n2 = g2.vertex_count();
  int rank = std::min(g1.rank(), g2.rank());
  p.pairs.resize(static_cast<std::size_t>(g1.vertex_count()) * n2);
  p.adj.resize(p.pairs.size());
  for (int u = 0; u < g1.vertex_count(); ++u)
    for (int v = 0; v < n2; ++v) {
      int id = u * n2 + v;
      p.pairs[id] = {u, v};
      for (int slot = 0; slot < 2 * rank; ++slot) {
        int a = g1.target(u, slot), b = g2.target(v, slot);
        if (a >= 0 && b >= 0) p.adj[id].push_back({slot, a * n2 + b});
      }
    }
  return p;
}

/// Vertices surviving repeated removal of degree <= 1 vertices.
inline std::vector<bool> core_mask(const ProductGraph& p) {
  std::size_t n = p.adj.size();
  std::vector<int> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = static_cast<int>(p.adj[v].size());
  std::vector<bool> alive(n, true);
  std::vector<int> stack;
  for (std::size_t v = 0; v < n; ++v)
    if (deg[v] <= 1) stack.push_back(static_cast<int>(v));
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (auto [slot, w] : p.adj[v])
      if (alive[w] && --deg[w] <= 1) stack.push_back(w);
  }
  return alive;
}

}  // namespace detail

/// Components of the (unbased) fibre product of two folded graphs. A
/// component has a nontrivial loop iff the corresponding conjugates of the
/// two subgroups intersect nontrivially.
inline std::vector<PullbackComponent> pullback_core(const FoldedGraph& g1, const FoldedGraph& g2) {
  auto p = detail::product(g1, g2);
  auto alive = detail::core_mask(p);
  int rank = std::min(g1.rank(), g2.rank());
  std::vector<int> comp(p.adj.size(), -1);
  std::vector<PullbackComponent> out;
  for (std::size_t s = 0; s < p.adj.size(); ++s) {
    if (comp[s] >= 0 || p.adj[s].empty()) continue;
    int c = static_cast<int>(out.size());
    std::vector<int> members;
    std::deque<int> queue{static_cast<int>(s)};
    comp[s] = c;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (auto [slot, w] : p.adj[v])
        if (comp[w] < 0) {
          comp[w] = c;
          queue.push_back(w);
        }
    }
    PullbackComponent pc;
    pc.contains_basepoint = comp[0] == c;
    std::vector<int> core;
    for (int v : members)
      if (alive[v]) core.push_back(v);
    pc.has_nontrivial_loop = !core.empty();
    if (core.empty()) core.push_back(pc.contains_basepoint ? 0 : members.front());
    std::map<int, int> local;
    for (int v : core) local.emplace(v, static_cast<int>(local.size()));
    std::vector<std::vector<int>> table(core.size(), std::vector<int>(2 * rank, -1));
    for (int v : core) {
      pc.pairs.push_back(p.pairs[v]);
      for (auto [slot, w] : p.adj[v])
        if (local.count(w)) table[local[v]][slot] = local[w];
    }
    pc.graph = FoldedGraph::from_table(rank, std::move(table));
    out.push_back(std::move(pc));
  }
  return out;
}

/// Folded cycle graph of a cyclically reduced nonempty word, based at 0.
inline FoldedGraph cycle_graph(const Word& w, int rank) {
  Word c = w.cyclically_reduced();
  int n = static_cast<int>(c.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(2 * rank, -1));
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    table[i][c[i].slot()] = j;
    table[j][c[i].inverse().slot()] = i;
  }
  return FoldedGraph::from_table(rank, std::move(table));
}

/// Word read along a BFS tree path from the basepoint to v.
inline Word path_word(const FoldedGraph& g, int v) {
  std::vector<std::pair<int, int>> parent(g.vertex_count(), {-1, -1});
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int slot = 0; slot < 2 * g.rank(); ++slot) {
      int w = g.target(u, slot);
      if (w >= 0 && !seen[w]) {
        seen[w] = true;
        parent[w] = {u, slot};
        queue.push_back(w);
      }
    }
  }
  std::vector<Letter> rev;
  for (int x = v; x != 0; x = parent[x].first) {
    if (parent[x].first < 0) throw Error(ErrorKind::Internal, "vertex unreachable from basepoint");
    rev.push_back(Letter::from_slot(parent[x].second));
  }
  std::reverse(rev.begin(), rev.end());
  return Word::reduce(rev);
}

struct PeripheralityResult {
  bool nonperipheral = true;
  std::optional<Word> witness;  // element of H conjugate to a power of a boundary word
  int boundary_index = -1;
};

/// Decides whether some conjugate of a nontrivial power of a boundary word
/// lies in H, via loops in the unbased fibre product with each boundary cycle.
inline PeripheralityResult is_nonperipheral(const FoldedGraph& h, const std::vector<Word>& boundary) {
  PeripheralityResult res;
  for (std::size_t j = 0; j < boundary.size(); ++j) {
    if (boundary[j].cyclically_reduced().empty()) continue;
    auto cyc = cycle_graph(boundary[j], h.rank());
    auto p = detail::product(h, cyc);
    auto alive = detail::core_mask(p);
    int start = -1;
    for (std::size_t v = 0; v < alive.size(); ++v)
      if (alive[v]) {
        start = static_cast<int>(v);
        break;
      }
    if (start < 0) continue;
    // Walk without backtracking inside the core until a vertex repeats.
    std::vector<int> visit_pos(p.adj.size(), -1);
    std::vector<int> path_v{start};
    std::vector<int> path_slot;
    visit_pos[start] = 0;
    int v = start, came = -1;
    while (true) {
      int next = -1, slot_used = -1;
      for (auto [slot, w] : p.adj[v])
        if (alive[w] && slot != (came ^ 1)) {
          next = w;
          slot_used = slot;
          break;
        }
      SURFSEP_ASSERT(next >= 0, "core vertex without continuation");
      path_slot.push_back(slot_used);
      came = slot_used;
      v = next;
      if (visit_pos[v] >= 0) break;
      visit_pos[v] = static_cast<int>(path_v.size());
      path_v.push_back(v);
    }
    std::vector<Letter> loop;
    for (std::size_t i = visit_pos[v]; i < path_slot.size(); ++i) loop.push_back(Letter::from_slot(path_slot[i]));
    Word l = Word::reduce(loop);
    Word to = path_word(h, p.pairs[v].first);
    res.nonperipheral = false;
    res.witness = to * l * to.inverse();
    res.boundary_index = static_cast<int>(j);
    return res;
  }
  return res;
}

}  // namespace surfsep
