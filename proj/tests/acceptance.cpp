// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Set SURFSEP_UPDATE_GOLDEN=1 to rewrite the ring-diagram golden.

#include <sys/resource.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "surfsep/surfsep.hpp"

using namespace surfsep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string data(const std::string& name) { return std::string(SURFSEP_TEST_DATA) + "/" + name; }

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return json::parse(in);
}

Problem make(int g, int k, std::vector<std::string> h, std::vector<std::string> b) {
  Problem p;
  p.genus = g;
  p.boundary = k;
  auto al = p.alphabet();
  for (const auto& w : h) p.H.push_back(al.parse(w));
  for (const auto& w : b) p.B.push_back(al.parse(w));
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

long peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss / 1024;
}

Cover random_cover(std::mt19937& rng, const FatGraph& base, int d) {
  Cover c;
  c.base = base;
  c.degree = d;
  for (int e = 0; e < base.edge_count(); ++e) {
    Permutation p(d);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    c.perm.push_back(p);
  }
  return c;
}

Cover random_connected_cover(std::mt19937& rng, const FatGraph& base, int d) {
  while (true) {
    auto c = random_cover(rng, base, d);
    if (c.total().component_count() == 1) return c;
  }
}

// Block sum of two covers of one base: sheets of y follow those of x.
Cover disjoint_union(const Cover& x, const Cover& y) {
  Cover c;
  c.base = x.base;
  c.degree = x.degree + y.degree;
  for (std::size_t e = 0; e < x.perm.size(); ++e) {
    Permutation p = x.perm[e];
    for (int s : y.perm[e]) p.push_back(s + x.degree);
    c.perm.push_back(p);
  }
  return c;
}

bool disjoint(const CorridorLift& x, const CorridorLift& y) {
  for (int e : x.total_edges)
    if (std::find(y.total_edges.begin(), y.total_edges.end(), e) != y.total_edges.end()) return false;
  return true;
}

const std::vector<std::pair<int, int>> kSurfaces{{1, 1}, {0, 3}, {1, 2}, {2, 1}, {1, 3}, {2, 2}, {2, 3}};

Outcome check_certificate(const Problem& p, const Certificate& cert, int boundary, double secs, double limit) {
  std::ostringstream os;
  os << "degree " << cert.cover.degree << ", |boundary| " << cert.report.boundary << ", " << secs << " s, peak "
     << peak_rss_mb() << " MB";
  bool ok = cert.report.pass() && cert.report.boundary == boundary &&
            image_subgroup_of_marked(cert.cover) == fold(p.H, p.rank()) && secs < limit && peak_rss_mb() < 1024;
  for (const auto& b : p.B) ok = ok && !image_contains(cert.cover, b);
  ok = ok && cert.report.complement_components <= 1 && cert.report.h1_injective;
  return {ok, os.str()};
}

Outcome criterion1() {
  auto p = make(1, 1, {"a1"}, {"b1"});
  auto t0 = std::chrono::steady_clock::now();
  auto cert = separate(p);
  return check_certificate(p, cert, 1, seconds_since(t0), 60);
}

Outcome criterion2() {
  auto p = make(0, 3, {"c1 c2 C1 C2"}, {"c1 C2"});
  auto t0 = std::chrono::steady_clock::now();
  auto cert = separate(p);
  return check_certificate(p, cert, 3, seconds_since(t0), 120);
}

// Pair cross-join boundary law under either endpoint hypothesis.
Outcome criterion3() {
  std::mt19937 rng(2024);
  int case1 = 0, case2 = 0, bad = 0;
  std::string first_bad;
  auto record = [&](const Cover& c, const Corridor& cor, const CorridorLift& x, const CorridorLift& y, int& count) {
    auto before = c.total().invariants();
    auto after = cross_join(c, cor, x, y).total().invariants();
    ++count;
    if (after.boundary_count != before.boundary_count - 2 ||
        after.euler_characteristic != before.euler_characteristic || after.components != 1) {
      ++bad;
      if (first_bad.empty())
        first_bad = std::to_string(before.boundary_count) + " -> " + std::to_string(after.boundary_count);
    }
  };
  int guard = 0;
  while (case1 + case2 < 600 && ++guard < 200000) {
    auto [g, k] = kSurfaces[rng() % kSurfaces.size()];
    auto base = standard_fatgraph(g, k);
    auto corridors = enumerate_corridors(base, static_cast<int>(rng() % k), static_cast<int>(rng() % k), 4, 0);
    if (corridors.empty()) continue;
    auto cor = corridors[rng() % corridors.size()];
    if (rng() % 2 == 0) {
      auto c = random_connected_cover(rng, base, 2 + static_cast<int>(rng() % 7));
      auto lifts = lifts_of_corridor(c, cor);
      std::shuffle(lifts.begin(), lifts.end(), rng);
      for (std::size_t i = 0; i < lifts.size(); ++i)
        for (std::size_t j = i + 1; j < lifts.size(); ++j) {
          const auto &x = lifts[i], &y = lifts[j];
          std::set<int> ends{x.start_walk, x.end_walk, y.start_walk, y.end_walk};
          if (ends.size() == 4 && disjoint(x, y)) {
            record(c, cor, x, y, case1);
            i = j = lifts.size();
          }
        }
    } else {
      int d1 = 1 + static_cast<int>(rng() % 4), d2 = 1 + static_cast<int>(rng() % 4);
      auto a = random_connected_cover(rng, base, d1), b = random_connected_cover(rng, base, d2);
      auto c = disjoint_union(a, b);
      auto lifts = lifts_of_corridor(c, cor);
      const CorridorLift *x = nullptr, *y = nullptr;
      for (const auto& l : lifts) {
        bool in_a = l.sheets.front() < d1;
        if (in_a && !x && l.start_walk == l.end_walk) x = &l;
        if (!in_a && !y && l.start_walk != l.end_walk) y = &l;
      }
      if (x && y) record(c, cor, *x, *y, case2);
    }
  }
  std::ostringstream os;
  os << case1 << " connected + " << case2 << " two-component joins, " << bad << " violations";
  if (!first_bad.empty()) os << " (first: " << first_bad << ")";
  return {bad == 0 && case1 + case2 >= 500 && case1 > 0 && case2 > 0, os.str()};
}

Subgraph random_subgraph(std::mt19937& rng, const FatGraph& f, int root, int steps) {
  Subgraph s{{root}, {}};
  for (int i = 0; i < steps; ++i) {
    int e = static_cast<int>(rng() % f.edge_count());
    if (s.has_vertex(f.tail(e)) || s.has_vertex(f.head(e))) {
      s.edges.push_back(e);
      s.vertices.push_back(f.tail(e));
      s.vertices.push_back(f.head(e));
      s.normalize();
    }
  }
  return s;
}

// Z/2 relative cover: lifted subsurface has connected complement, injective H_1.
// Sampling runs until 200 instances started with a disconnected complement.
Outcome criterion4() {
  std::mt19937 rng(77);
  int done = 0, bad = 0, disconnected_before = 0;
  while (disconnected_before < 200) {
    auto [g, k] = kSurfaces[rng() % 4];
    auto base = subdivide(standard_fatgraph(g, k), 1 + static_cast<int>(rng() % 2));
    auto cover = random_connected_cover(rng, base, 1 + static_cast<int>(rng() % 4));
    auto f = cover.total();
    auto s = random_subgraph(rng, f, 0, 2 + static_cast<int>(rng() % 40));
    auto rep = complement_components(f, s);
    if (rep.components.empty()) continue;
    bool excluded = false;
    for (const auto& c : rep.components) excluded = excluded || c.is_disc || c.is_boundary_parallel_annulus;
    if (excluded) continue;
    GroupHom hom;
    try {
      hom = rel_h1_mod2(f, s, 0);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CapExceeded || e.kind() == ErrorKind::ZeroQuotient) continue;
      throw;
    }
    if (hom.target.m > 12) continue;
    disconnected_before += !rep.connected;
    auto lifted = lift_marked(regular_cover_from_hom(f, hom, 0), s, hom);
    auto t = lifted.total();
    bool ok = complement_components(t, *lifted.marked).connected && h1_injective(t, *lifted.marked, lifted.basepoint);
    bad += !ok;
    ++done;
  }
  std::ostringstream os;
  os << done << " instances (" << disconnected_before << " with disconnected complement before), " << bad
     << " violations";
  return {bad == 0 && disconnected_before >= 200, os.str()};
}

std::vector<Problem> corpus() {
  std::vector<Problem> out;
  for (const auto& entry : std::filesystem::directory_iterator(SURFSEP_SAMPLES)) {
    try {
      auto p = problem_from_json(load(entry.path().string()));
      validate(p);
      build_core(p);
      out.push_back(p);
    } catch (const std::exception&) {
      // error samples are not part of the regression corpus
    }
  }
  out.push_back(make(1, 2, {"a1 c1"}, {"b1"}));
  out.push_back(make(0, 4, {"c1 c2 C1 C2"}, {"c3"}));
  out.push_back(make(1, 1, {}, {"a1"}));
  out.push_back(make(2, 1, {"a1 b2"}, {"b1"}));
  return out;
}

// Very good covers have even degree and an even number of boundary circles.
Outcome criterion5() {
  int n = 0, bad = 0;
  for (const auto& p : corpus()) {
    auto st = good_cover(p, build_core(p));
    very_good_cover(st);
    bad += st.cover.degree % 2 != 0 || st.cover.total().invariants().boundary_count % 2 != 0;
    ++n;
  }
  return {bad == 0 && n >= 6, std::to_string(n) + " corpus problems, " + std::to_string(bad) + " odd"};
}

Word random_word(std::mt19937& rng, int rank, int len) {
  std::vector<Letter> w;
  for (int i = 0; i < len; ++i) w.push_back(Letter::from_slot(static_cast<int>(rng() % (2 * rank))));
  return Word::reduce(w);
}

// Big cyclic covers of very good states.
Outcome criterion6() {
  std::mt19937 rng(606);
  int done = 0, bad = 0;
  std::string first_bad;
  while (done < 120) {
    auto [g, k] = kSurfaces[rng() % 3];
    Problem p;
    p.genus = g;
    p.boundary = k;
    int nh = static_cast<int>(rng() % 2);
    for (int i = 0; i < nh; ++i) p.H.push_back(random_word(rng, p.rank(), 1 + static_cast<int>(rng() % 3)));
    p.B.push_back(random_word(rng, p.rank(), 1 + static_cast<int>(rng() % 3)));
    PipelineState st;
    try {
      validate(p);
      if (p.B[0].empty()) continue;
      st = good_cover(p, build_core(p));
      very_good_cover(st);
    } catch (const Error&) {
      continue;  // peripheral H, B in H, or oversize quotient
    }
    if (st.cover.degree > 64) continue;
    auto t = st.cover.total();
    int kt = t.invariants().boundary_count;
    int n = 1 + static_cast<int>(rng() % 12);
    auto hom = big_cyclic_hom(t, *st.cover.marked, st.cover.basepoint, n);
    auto q = hom.target.p;
    auto big = lift_marked(regular_cover_from_hom(t, hom, st.cover.basepoint), *st.cover.marked, hom);
    auto bt = big.total();
    bool ok = linalg::is_prime(q) && q > std::max(kt, n) && big.degree == q &&
              bt.invariants().boundary_count == kt && boundary_fibres(big, &bt).conservative() &&
              subgraph_connected(bt, *big.marked) && big.marked->edges.size() == st.cover.marked->edges.size() &&
              complement_components(bt, *big.marked).connected;
    if (!ok && first_bad.empty()) first_bad = "p=" + std::to_string(q) + " n=" + std::to_string(n);
    bad += !ok;
    ++done;
  }
  std::ostringstream os;
  os << done << " very good states, " << bad << " violations";
  if (!first_bad.empty()) os << " (first: " << first_bad << ")";
  return {bad == 0 && done >= 100, os.str()};
}

// Five circles over c1, one over c2: one cyclic join from the c2 circle.
Outcome criterion7() {
  auto base = standard_fatgraph(0, 3);
  SurfaceAlphabet al(0, 3);
  Cover c;
  c.base = base;
  c.degree = 5;
  c.perm = {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 0}};
  c.basepoint = 0;
  c.marked = Subgraph{{0}, {}};
  auto walks = base.boundary_walks();
  int face_c = -1, face_a = -1;
  for (int i = 0; i < static_cast<int>(walks.size()); ++i) {
    if (same_cyclic_class(base.walk_word(walks[i]), al.parse("c1"))) face_c = i;
    if (same_cyclic_class(base.walk_word(walks[i]), al.parse("c2"))) face_a = i;
  }
  auto before = boundary_fibres(c);
  auto cor = find_corridor(base, face_a, face_c, 4);
  auto lifts = lifts_of_corridor(c, cor);
  std::sort(lifts.begin(), lifts.end(),
            [](const CorridorLift& x, const CorridorLift& y) { return x.start_position > y.start_position; });
  auto joined = cyclic_cross_join(c, cor, lifts);
  auto after = boundary_fibres(joined);
  auto dot = cyclic_join_dot(cor, lifts, joined);
  std::string golden_path = data("cyclic_ring.dot");
  if (std::getenv("SURFSEP_UPDATE_GOLDEN")) std::ofstream(golden_path) << dot;
  std::ifstream in(golden_path);
  std::stringstream golden;
  golden << in.rdbuf();
  std::ostringstream os;
  os << "C: " << before.fibres[face_c].size() << " -> " << after.fibres[face_c].size() << " preimages, p(A): "
     << before.fibres[face_a].size() << " -> " << after.fibres[face_a].size() << ", DOT "
     << (golden.str() == dot ? "matches" : "differs from") << " golden";
  bool ok = before.fibres[face_c].size() == 5 && after.fibres[face_c].size() == 1 &&
            after.fibres[face_a].size() == 1 && joined.total().component_count() == 1 && golden.str() == dot;
  return {ok, os.str()};
}

// Exhaustive oracle on three problems plus the gluing oracle on 200 surgeries.
Outcome criterion8() {
  std::ostringstream os;
  bool ok = true;
  for (const auto& p : {make(1, 1, {"a1"}, {"b1"}), make(0, 3, {"c1 C2"}, {"c1"}), make(1, 1, {}, {"a1"})}) {
    auto r = oracle_min_conservative_degree(p, 8);
    if (!r) {
      ok = false;
      os << "none ";
      continue;
    }
    auto c = cover_from_tuple(p.base(), r->witness);
    bool sep = boundary_fibres(c).conservative();
    for (const auto& h : p.H) sep = sep && image_contains(c, h);
    for (const auto& b : p.B) sep = sep && !image_contains(c, b);
    auto cert = separate(p);
    ok = ok && sep && cert.cover.degree >= r->degree;
    os << "d=" << r->degree << " (certificate " << cert.cover.degree << ") ";
  }
  std::mt19937 rng(88);
  int surgeries = 0, agree = 0;
  while (surgeries < 200) {
    auto [g, k] = kSurfaces[rng() % kSurfaces.size()];
    auto base = subdivide(standard_fatgraph(g, k), 1 + static_cast<int>(rng() % 2));
    auto c = random_cover(rng, base, 2 + static_cast<int>(rng() % 7));
    auto corridors = enumerate_corridors(base, static_cast<int>(rng() % k), static_cast<int>(rng() % k), 3, 0);
    if (corridors.empty()) continue;
    auto cor = corridors[rng() % corridors.size()];
    auto lifts = lifts_of_corridor(c, cor);
    std::shuffle(lifts.begin(), lifts.end(), rng);
    std::vector<CorridorLift> chosen;
    std::size_t want = 2 + rng() % 4;
    for (const auto& l : lifts)
      if (chosen.size() < want &&
          std::all_of(chosen.begin(), chosen.end(), [&](const CorridorLift& x) { return disjoint(x, l); }))
        chosen.push_back(l);
    if (chosen.size() < 2) continue;
    std::vector<std::vector<std::pair<int, int>>> arcs;
    for (const auto& l : chosen) {
      std::vector<std::pair<int, int>> arc;
      for (std::size_t j = 0; j < cor.crossings.size(); ++j)
        arc.emplace_back(l.total_edges[j], c.total_half(cor.crossings[j].entry, l.sheets[j]));
      arcs.push_back(arc);
    }
    ++surgeries;
    agree += cyclic_cross_join(c, cor, chosen).total() == reglue_along_arcs(c.total(), arcs);
  }
  os << "| gluing oracle agrees on " << agree << "/" << surgeries;
  return {ok && agree == surgeries, os.str()};
}

// Replay and re-verify every shipped golden certificate.
Outcome criterion9() {
  int n = 0, bad = 0;
  std::string first_bad;
  for (const auto* name : {"p1_torus.cert.json", "p2_pants.cert.json", "trivial.cert.json", "genus2.cert.json"}) {
    auto j = load(data(name));
    auto cert = certificate_from_json(j);
    Certificate again{cert.problem, replay(cert.problem, cert.log), cert.log, {}, cert.peripheral_B};
    again.report = verify_certificate(again.problem, again.cover);
    auto fresh = separate(cert.problem);
    bool ok = cert.report.pass() && certificate_to_json(again).dump(2) == j.dump(2) &&
              certificate_to_json(fresh).dump(2) == j.dump(2);
    if (!ok && first_bad.empty()) first_bad = name;
    bad += !ok;
    ++n;
  }
  std::string detail = std::to_string(n) + " golden certificates replayed and verified, " + std::to_string(bad) +
                       " mismatches";
  if (!first_bad.empty()) detail += " (first: " + first_bad + ")";
  return {bad == 0, detail};
}

}  // namespace

int main() {
  std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
