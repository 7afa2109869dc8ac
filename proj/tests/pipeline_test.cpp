#include <gtest/gtest.h>

#include "surfsep/pipeline.hpp"

using namespace surfsep;

namespace {

Problem make(int g, int k, std::vector<std::string> h, std::vector<std::string> b) {
  Problem p;
  p.genus = g;
  p.boundary = k;
  auto al = p.alphabet();
  for (const auto& w : h) p.H.push_back(al.parse(w));
  for (const auto& w : b) p.B.push_back(al.parse(w));
  return p;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

TEST(BuildCore, LoopAndWhisker) {
  auto d = build_core(make(1, 1, {"a1"}, {"b1"}));
  EXPECT_EQ(d.core.vertex_count(), 1);
  EXPECT_EQ(d.whiskered.vertex_count(), 2);
  EXPECT_EQ(d.whiskered.edge_count(), 2);
  EXPECT_EQ(d.whisker_ends, std::vector<int>{1});
}

TEST(BuildCore, Empty) {
  auto d = build_core(make(1, 1, {}, {}));
  EXPECT_EQ(d.whiskered.vertex_count(), 1);
  EXPECT_EQ(d.whiskered.edge_count(), 0);
}

TEST(BuildCore, Errors) {
  EXPECT_EQ(kind_of([] { build_core(make(1, 1, {"a1"}, {"a1"})); }), ErrorKind::BInH);
  EXPECT_EQ(kind_of([] { build_core(make(1, 1, {"a1"}, {"a1 a1 a1"})); }), ErrorKind::BInH);
  EXPECT_EQ(kind_of([] { build_core(make(0, 3, {"c1"}, {})); }), ErrorKind::PeripheralH);
  EXPECT_EQ(kind_of([] { build_core(make(1, 1, {"a1 b1 A1 B1"}, {})); }), ErrorKind::PeripheralH);
  try {
    build_core(make(0, 3, {"c2 c1 C2"}, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PeripheralH);
    EXPECT_FALSE(e.detail().empty());
  }
}

TEST(Validate, Surfaces) {
  EXPECT_EQ(kind_of([] { validate(make(0, 1, {}, {})); }), ErrorKind::DegenerateSurface);
  EXPECT_EQ(kind_of([] { validate(make(0, 2, {}, {})); }), ErrorKind::DegenerateSurface);
  EXPECT_EQ(kind_of([] { validate(make(1, 0, {}, {})); }), ErrorKind::InvalidSurface);
  auto p = make(1, 1, {}, {});
  p.B.push_back(Word::reduce({Letter::positive(5)}));
  EXPECT_EQ(kind_of([&] { validate(p); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { separate(make(0, 2, {}, {})); }), ErrorKind::DegenerateSurface);
}

TEST(GoodCover, TorusLoop) {
  auto p = make(1, 1, {"a1"}, {"b1"});
  auto st = good_cover(p, build_core(p));
  EXPECT_EQ(st.cover.degree, 2);
  EXPECT_EQ(st.cover.perm[0], (Permutation{0, 1}));
  EXPECT_EQ(st.cover.perm[1], (Permutation{1, 0}));
  EXPECT_TRUE(image_contains(st.cover, p.H[0]));
  EXPECT_FALSE(image_contains(st.cover, p.B[0]));
}

TEST(GoodCover, Commutator) {
  auto p = make(0, 3, {"c1 c2 C1 C2"}, {});
  auto st = good_cover(p, build_core(p));
  EXPECT_EQ(st.cover.degree, 4);
  EXPECT_EQ(image_subgroup_of_marked(st.cover), fold(p.H, 2));
}

TEST(GoodCover, EmptyProblemShortCircuits) {
  auto cert = separate(make(1, 1, {}, {}));
  EXPECT_EQ(cert.cover.degree, 1);
  EXPECT_EQ(cert.log.size(), 1u);
  EXPECT_TRUE(cert.report.pass());
}

TEST(VeryGood, FromTorusGoodCover) {
  auto p = make(1, 1, {"a1"}, {"b1"});
  auto st = good_cover(p, build_core(p));
  auto t = st.cover.total();
  int m = rel_h1_mod2(t, *st.cover.marked, st.cover.basepoint).target.m;
  very_good_cover(st);
  EXPECT_EQ(st.cover.degree, 2 << m);
  auto nt = st.cover.total();
  EXPECT_EQ(nt.invariants().boundary_count % 2, 0);
  EXPECT_TRUE(complement_components(nt, *st.cover.marked).connected);
  EXPECT_TRUE(h1_injective(nt, *st.cover.marked, st.cover.basepoint));
  EXPECT_EQ(st.log.back().at("op"), "z2_cover");
}

TEST(VeryGood, PointInTorus) {
  auto base = standard_fatgraph(1, 1);
  PipelineState st;
  st.cover = identity_cover(base);
  st.cover.marked = Subgraph{{0}, {}};
  very_good_cover(st);
  EXPECT_EQ(st.cover.degree, 4);
  EXPECT_EQ(st.cover.total().invariants().boundary_count, 4);
}

TEST(VeryGood, ZeroQuotientSurfaces) {
  auto base = standard_fatgraph(1, 1);
  PipelineState st;
  st.cover = identity_cover(base);
  st.cover.marked = Subgraph{{0}, {0, 1}};
  EXPECT_EQ(kind_of([&] { very_good_cover(st); }), ErrorKind::ZeroQuotient);
}

TEST(ReduceExcess, SingleBoundaryStepsDownByOne) {
  auto p = make(1, 1, {"a1"}, {"b1"});
  auto cert = separate(p);
  EXPECT_EQ(cert.report.boundary, 1);
  int joins = 0;
  for (const auto& e : cert.log)
    if (e.at("op") == "cross_join") {
      ++joins;
      EXPECT_TRUE(e.at("augment").get<bool>());
      EXPECT_EQ(e.at("boundary_after").get<int>(), e.at("boundary_before").get<int>() - 1);
    }
  EXPECT_GT(joins, 0);
}

TEST(Separate, TorusLoop) {
  auto p = make(1, 1, {"a1"}, {"b1"});
  auto cert = separate(p);
  EXPECT_TRUE(cert.report.pass());
  EXPECT_EQ(cert.report.boundary, 1);
  EXPECT_FALSE(image_contains(cert.cover, p.B[0]));
  EXPECT_EQ(image_subgroup_of_marked(cert.cover), fold(p.H, 2));
  EXPECT_EQ(cert.report.degree, cert.cover.degree);
}

TEST(Separate, PantsCommutator) {
  auto p = make(0, 3, {"c1 c2 C1 C2"}, {"c1 C2"});
  auto cert = separate(p);
  EXPECT_TRUE(cert.report.pass());
  EXPECT_EQ(cert.report.boundary, 3);
  EXPECT_EQ(cert.report.fibre_sizes, (std::vector<int>{1, 1, 1}));
  // Pair joins drop the count by two; the cyclic finale lands on k.
  for (const auto& e : cert.log)
    if (e.at("op") == "cross_join" && e.at("kind") == "pair") {
      EXPECT_EQ(e.at("boundary_after").get<int>(), e.at("boundary_before").get<int>() - 2);
    }
}

TEST(Separate, PeripheralBReported) {
  auto p = make(0, 3, {"c1 c2 C1 C2"}, {"c1"});
  auto cert = separate(p);
  EXPECT_TRUE(cert.report.pass());
  ASSERT_EQ(cert.peripheral_B.size(), 1u);
  EXPECT_EQ(cert.peripheral_B[0], p.B[0]);
}

TEST(Separate, SubdividedBase) {
  auto p = make(1, 1, {"a1"}, {"b1"});
  p.options.subdiv = 2;
  auto cert = separate(p);
  EXPECT_TRUE(cert.report.pass());
  EXPECT_EQ(cert.cover.base.edge_count(), 4);
}

TEST(Replay, ReproducesCover) {
  for (auto p : {make(1, 1, {"a1"}, {"b1"}), make(0, 3, {"c1 c2 C1 C2"}, {"c1 C2"}), make(1, 1, {}, {})}) {
    auto cert = separate(p);
    auto again = replay(p, cert.log);
    EXPECT_EQ(again.perm, cert.cover.perm);
    EXPECT_EQ(again.basepoint, cert.cover.basepoint);
    EXPECT_EQ(again.marked, cert.cover.marked);
    // Prefixes replay to the intermediate boundary counts.
    for (std::size_t i = 1; i <= cert.log.size(); ++i)
      EXPECT_EQ(replay(p, cert.log, i).total().invariants().boundary_count,
                cert.log[i - 1].at("boundary_after").get<int>());
  }
}

TEST(Replay, RejectsBadLog) {
  auto p = make(1, 1, {"a1"}, {"b1"});
  EXPECT_EQ(kind_of([&] { replay(p, json::array({{{"op", "z2_cover"}}})); }), ErrorKind::ParseError);
}

TEST(BigCover, KeepsInvariants) {
  auto p = make(1, 2, {"a1"}, {"b1"});
  auto st = good_cover(p, build_core(p));
  very_good_cover(st);
  int before = st.cover.total().invariants().boundary_count;
  int degree = st.cover.degree;
  auto prime = big_cover(st, 3);
  EXPECT_EQ(st.cover.degree, degree * prime);
  EXPECT_EQ(st.cover.total().invariants().boundary_count, before);
  detail::check_invariants(p, st, "big cover");
  EXPECT_TRUE(h1_injective(st.cover.total(), *st.cover.marked, st.cover.basepoint));
}

}  // namespace
