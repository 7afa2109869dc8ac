#include <gtest/gtest.h>

#include <random>
#include <set>

#include "surfsep/folded_graph.hpp"

using namespace surfsep;

namespace {

Word random_word(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), gen(0, rank - 1), sign(0, 1);
  std::vector<Letter> w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back(sign(rng) ? Letter::positive(gen(rng)) : Letter::negative(gen(rng)));
  return Word::reduce(w);
}

// All reduced words of length <= n over `rank` generators.
std::vector<Word> all_words(int rank, int n) {
  std::vector<Word> out{Word{}}, layer{Word{}};
  for (int len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int s = 0; s < 2 * rank; ++s) {
        Letter x = Letter::from_slot(s);
        if (!w.empty() && w.letters().back() == x.inverse()) continue;
        next.push_back(w * Word::reduce({x}));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

TEST(Fold, SingleLoop) {
  SurfaceAlphabet al(1, 1);
  auto g = fold({al.parse("a1")}, 2);
  EXPECT_EQ(g.vertex_count(), 1);
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_TRUE(contains(g, al.parse("a1 a1 a1")));
  EXPECT_FALSE(contains(g, al.parse("b1")));
}

TEST(Fold, TrivialSubgroup) {
  auto g = fold({}, 2);
  EXPECT_EQ(g.vertex_count(), 1);
  EXPECT_EQ(g.edge_count(), 0);
  EXPECT_TRUE(contains(g, Word{}));
}

TEST(Fold, FoldingFindsHiddenGenerator) {
  SurfaceAlphabet al(1, 1);
  auto g = fold({al.parse("a1 b1"), al.parse("a1 b1 b1")}, 2);
  EXPECT_TRUE(contains(g, al.parse("b1")));
  EXPECT_EQ(g, fold({al.parse("a1"), al.parse("b1")}, 2));
  // Naive search: b = (ab)^-1 (ab^2) appears among short products.
  auto x = al.parse("a1 b1"), y = al.parse("a1 b1 b1");
  std::set<std::vector<Letter>> seen;
  std::vector<Word> gens{x, y, x.inverse(), y.inverse()};
  for (const auto& u : gens)
    for (const auto& v : gens) seen.insert((u * v).letters());
  EXPECT_TRUE(seen.count(al.parse("b1").letters()));
}

TEST(Fold, Idempotent) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_word(rng, 3, 5));
    auto g = fold(gens, 3);
    // Read a generating set back off the graph: tree path, edge, path back.
    std::vector<Word> loops;
    for (const auto& e : g.edges())
      loops.push_back(path_word(g, e.tail) * Word::reduce({Letter::positive(e.gen)}) * path_word(g, e.head).inverse());
    EXPECT_EQ(fold(loops, 3), g);
  }
}

TEST(Fold, MembershipAgreesWithProducts) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Word> gens;
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < n; ++i) gens.push_back(random_word(rng, 2, 5));
    auto g = fold(gens, 2);
    std::vector<Word> letters;
    for (const auto& w : gens) {
      letters.push_back(w);
      letters.push_back(w.inverse());
    }
    // Every product of at most three generators is a member.
    std::set<std::vector<Letter>> products{{}};
    std::vector<Word> frontier{Word{}};
    for (int depth = 0; depth < 3; ++depth) {
      std::vector<Word> next;
      for (const auto& u : frontier)
        for (const auto& v : letters) {
          auto p = u * v;
          if (products.insert(p.letters()).second) next.push_back(p);
        }
      frontier = std::move(next);
    }
    for (const auto& p : products) EXPECT_TRUE(contains(g, Word::reduce(p)));
    // Short words: members are exactly those whose addition leaves the subgroup unchanged.
    for (const auto& w : all_words(2, 4)) {
      auto more = gens;
      more.push_back(w);
      EXPECT_EQ(contains(g, w), fold(more, 2) == g);
      if (products.count(w.letters())) {
        EXPECT_TRUE(contains(g, w));
      }
    }
  }
}

TEST(Pullback, Examples) {
  SurfaceAlphabet t(1, 1);
  auto based_loop = [](const std::vector<PullbackComponent>& comps) {
    for (const auto& c : comps)
      if (c.contains_basepoint) return c.has_nontrivial_loop;
    return false;
  };
  auto any_loop = [](const std::vector<PullbackComponent>& comps) {
    for (const auto& c : comps)
      if (c.has_nontrivial_loop) return true;
    return false;
  };
  auto a = fold({t.parse("a1")}, 2), a2 = fold({t.parse("a1 a1")}, 2), b = fold({t.parse("b1")}, 2);
  EXPECT_TRUE(based_loop(pullback_core(a, a2)));
  EXPECT_FALSE(any_loop(pullback_core(a, b)));
  SurfaceAlphabet p(0, 3);
  auto comm = fold({commutator(p.parse("c1"), p.parse("c2"))}, 2);
  EXPECT_FALSE(any_loop(pullback_core(comm, fold({p.parse("c1")}, 2))));
}

TEST(Pullback, BasedLoopIffCommonElement) {
  std::mt19937 rng(5);
  auto words = all_words(2, 8);
  for (int trial = 0; trial < 60; ++trial) {
    auto g1 = fold({random_word(rng, 2, 3), random_word(rng, 2, 3)}, 2);
    auto g2 = fold({random_word(rng, 2, 3)}, 2);
    bool looped = false;
    for (const auto& c : pullback_core(g1, g2))
      if (c.contains_basepoint) looped = c.has_nontrivial_loop;
    bool common = false;
    for (const auto& w : words)
      if (!w.empty() && contains(g1, w) && contains(g2, w)) {
        common = true;
        break;
      }
    // Small graphs: a common element, if any, has a representative this short.
    if (g1.vertex_count() * g2.vertex_count() <= 4) {
      EXPECT_EQ(looped, common);
    } else if (common) {
      EXPECT_TRUE(looped);
    }
  }
}

TEST(Peripheral, Examples) {
  SurfaceAlphabet t(1, 1);
  EXPECT_TRUE(is_nonperipheral(fold({t.parse("a1")}, 2), boundary_words(1, 1)).nonperipheral);
  SurfaceAlphabet p(0, 3);
  auto r = is_nonperipheral(fold({p.parse("c1")}, 2), boundary_words(0, 3));
  ASSERT_FALSE(r.nonperipheral);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(same_cyclic_class(*r.witness, p.parse("c1")));
  EXPECT_TRUE(
      is_nonperipheral(fold({commutator(p.parse("c1"), p.parse("c2"))}, 2), boundary_words(0, 3)).nonperipheral);
  EXPECT_TRUE(is_nonperipheral(fold({}, 2), boundary_words(0, 3)).nonperipheral);
}

// Witness is in H and conjugate to a power of a boundary word.
TEST(Peripheral, WitnessProperty) {
  std::mt19937 rng(3);
  SurfaceAlphabet p(0, 3);
  auto bw = boundary_words(0, 3);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Word> gens{random_word(rng, 2, 4)};
    if (trial % 3 == 0) {
      auto conj = random_word(rng, 2, 2);
      gens.push_back(conj * bw[trial % 2 ? 2 : 0].pow(1 + trial % 2) * conj.inverse());
    }
    auto h = fold(gens, 2);
    auto r = is_nonperipheral(h, bw);
    if (r.nonperipheral) continue;
    ++found;
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(contains(h, *r.witness));
    bool matched = false;
    auto cw = r.witness->cyclically_reduced();
    for (const auto& w : bw)
      for (int n = -6; n <= 6 && !matched; ++n)
        if (n != 0 && w.pow(n).cyclically_reduced().size() == cw.size() && same_cyclic_class(cw, w.pow(n), false))
          matched = true;
    EXPECT_TRUE(matched) << p.format(*r.witness);
  }
  EXPECT_GT(found, 50);
}

}  // namespace
