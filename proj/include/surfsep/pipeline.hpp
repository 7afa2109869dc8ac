#pragma once

// End-to-end construction: good cover, very good cover, then cross-joins
// until every base boundary circle has a single preimage. Every step is
// appended to a JSON log that replay() turns back into the same cover.

#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "surgery.hpp"
#include "verify.hpp"

namespace surfsep {

using json = nlohmann::json;

struct CoreData {
  FoldedGraph core;       // folded H
  FoldedGraph whiskered;  // core plus one whisker per element of B
  std::vector<int> whisker_ends;
};

inline CoreData build_core(const Problem& p) {
  CoreData d;
  d.core = fold(p.H, p.rank());
  auto per = is_nonperipheral(d.core, boundary_words(p.genus, p.boundary));
  if (!per.nonperipheral)
    throw Error(ErrorKind::PeripheralH, "H contains a peripheral element",
                p.alphabet().format(*per.witness));
  d.whiskered = attach_whiskers(d.core, p.B);
  for (const auto& b : p.B) {
    auto end = d.whiskered.read(b);
    SURFSEP_ASSERT(end.has_value(), "whisker does not spell its word");
    if (*end == d.whiskered.basepoint())
      throw Error(ErrorKind::BInH, "excluded element lies in H", p.alphabet().format(b));
    d.whisker_ends.push_back(*end);
  }
  return d;
}

struct PipelineState {
  Cover cover;
  json log = json::array();
};

struct Certificate {
  Problem problem;
  Cover cover;
  json log;
  VerificationReport report;
  std::vector<Word> peripheral_B;
};

namespace detail {

inline int boundary_count(const Cover& c) { return static_cast<int>(c.total().faces().walks.size()); }

inline json sparse_values(const GroupHom& h) {
  json out = json::array();
  for (std::size_t e = 0; e < h.values.size(); ++e)
    if (h.values[e] != 0) out.push_back({e, h.values[e]});
  return out;
}

inline GroupHom hom_from_log(const json& entry, int edge_count) {
  GroupHom h;
  if (entry.at("op") == "z2_cover") {
    h.target.kind = AbelianTarget::Kind::Elementary2;
    h.target.m = entry.at("m").get<int>();
  } else {
    h.target.kind = AbelianTarget::Kind::Cyclic;
    h.target.p = entry.at("p").get<std::int64_t>();
  }
  h.values.assign(edge_count, 0);
  for (const auto& pair : entry.at("values")) {
    int e = pair.at(0).get<int>();
    if (e < 0 || e >= edge_count) throw Error(ErrorKind::ParseError, "log edge out of range");
    h.values[e] = pair.at(1).get<std::int64_t>();
  }
  return h;
}

inline json corridor_json(const Corridor& c) {
  json cr = json::array();
  for (const auto& x : c.crossings) cr.push_back({x.edge, x.entry});
  return {{"from", c.start_face}, {"to", c.end_face}, {"crossings", cr}};
}

inline Corridor corridor_from_json(const json& j) {
  Corridor c;
  c.start_face = j.at("from").get<int>();
  c.end_face = j.at("to").get<int>();
  for (const auto& x : j.at("crossings")) c.crossings.push_back({x.at(0).get<int>(), x.at(1).get<int>()});
  return c;
}

/// Regular cover of the current total given by hom, marked lifted, tower
/// flattened.
inline void apply_regular(PipelineState& st, const GroupHom& hom) {
  auto f = st.cover.total();
  auto reg = regular_cover_from_hom(f, hom, st.cover.basepoint);
  auto lifted = lift_marked(std::move(reg), *st.cover.marked, hom);
  st.cover = compose(lifted, st.cover);
}

struct JoinPlan {
  std::string kind;  // "augment", "pair" or "cyclic"
  bool augment = false;
  Corridor corridor;
  std::vector<int> first_sheets;  // lifts named by their sheet at the first crossing
};

inline void apply_join(PipelineState& st, const JoinPlan& plan) {
  int before = boundary_count(st.cover);
  Cover c = plan.augment ? augment_with_base(st.cover) : st.cover;
  auto lifts = lifts_of_corridor(c, plan.corridor);
  std::vector<CorridorLift> chosen;
  for (int s : plan.first_sheets) {
    if (s < 0 || s >= c.degree) throw Error(ErrorKind::ParseError, "lift sheet out of range");
    chosen.push_back(lifts[s]);
  }
  st.cover = cyclic_cross_join(c, plan.corridor, chosen);
  st.log.push_back({{"op", "cross_join"},
                    {"kind", plan.kind},
                    {"augment", plan.augment},
                    {"corridor", corridor_json(plan.corridor)},
                    {"sheets", plan.first_sheets},
                    {"boundary_before", before},
                    {"boundary_after", boundary_count(st.cover)}});
}

inline void check_invariants(const Problem& p, const PipelineState& st, const char* step,
                             bool complement_connected = true) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Internal, std::string("invariant broken after ") + step + ": " + what);
  };
  const auto& c = st.cover;
  validate(c);
  if (!c.marked || !c.marked->has_vertex(c.basepoint)) fail("basepoint outside marked subgraph");
  for (const auto& h : p.H)
    if (!image_contains(c, h)) fail("lost an element of H");
  for (const auto& b : p.B)
    if (image_contains(c, b)) fail("an element of B lifts to a loop");
  auto t = c.total();
  if (t.component_count() != 1) fail("cover not connected");
  if (complement_connected && !complement_components(t, *c.marked).connected) fail("complement of marked subgraph disconnected");
  if (t.invariants().euler_characteristic != c.degree * c.base.invariants().euler_characteristic)
    fail("Euler characteristic not multiplicative");
}

}  // namespace detail

inline PipelineState good_cover(const Problem& p, const CoreData& core) {
  PipelineState st;
  st.cover = hall_completion(core.whiskered, p.base());
  for (const auto& h : p.H) SURFSEP_ASSERT(image_contains(st.cover, h), "good cover lost H");
  for (const auto& b : p.B) SURFSEP_ASSERT(!image_contains(st.cover, b), "good cover contains B");
  st.log.push_back({{"op", "hall_completion"},
                    {"degree", st.cover.degree},
                    {"boundary_after", detail::boundary_count(st.cover)}});
  return st;
}

/// Mod 2 relative homology cover; afterwards the complement of the marked
/// subgraph is connected and the boundary count is even.
inline void very_good_cover(PipelineState& st) {
  auto t = st.cover.total();
  auto rep = complement_components(t, *st.cover.marked);
  for (const auto& comp : rep.components) {
    if (comp.is_disc) throw Error(ErrorKind::HypothesisViolated, "complement of the marked subgraph has a disc");
    if (comp.is_boundary_parallel_annulus)
      throw Error(ErrorKind::HypothesisViolated, "complement of the marked subgraph has a boundary-parallel annulus");
  }
  int before = static_cast<int>(t.faces().walks.size());
  auto hom = rel_h1_mod2(t, *st.cover.marked, st.cover.basepoint);
  detail::apply_regular(st, hom);
  auto nt = st.cover.total();
  int after = static_cast<int>(nt.faces().walks.size());
  SURFSEP_ASSERT(st.cover.degree % 2 == 0, "very good cover of odd degree");
  SURFSEP_ASSERT(after % 2 == 0, "very good cover with an odd number of boundary circles");
  SURFSEP_ASSERT(complement_components(nt, *st.cover.marked).connected, "very good cover complement disconnected");
  SURFSEP_ASSERT(h1_injective(nt, *st.cover.marked, st.cover.basepoint), "very good cover not H_1-injective");
  st.log.push_back({{"op", "z2_cover"},
                    {"m", hom.target.m},
                    {"values", detail::sparse_values(hom)},
                    {"boundary_before", before},
                    {"boundary_after", after}});
}

/// Conservative Z/p cover of the current total, p the least prime above
/// max(#boundary, n). Returns p.
inline std::int64_t big_cover(PipelineState& st, int n) {
  auto t = st.cover.total();
  auto hom = big_cyclic_hom(t, *st.cover.marked, st.cover.basepoint, n);
  int before = static_cast<int>(t.faces().walks.size());
  detail::apply_regular(st, hom);
  int after = detail::boundary_count(st.cover);
  SURFSEP_ASSERT(before == after, "big cover is not conservative");
  st.log.push_back({{"op", "big_cover"},
                    {"p", hom.target.p},
                    {"values", detail::sparse_values(hom)},
                    {"boundary_before", before},
                    {"boundary_after", after}});
  return hom.target.p;
}

namespace detail {

using Selector = std::function<std::optional<JoinPlan>(const Cover&)>;

/// Runs the selector on the current cover; if it finds nothing, passes to
/// big covers with escalating primes, each built from the current state.
inline JoinPlan select_with_room(const Problem& p, PipelineState& st, const Selector& select, int needed,
                                 const char* what) {
  if (auto plan = select(st.cover)) return *plan;
  int n = needed + static_cast<int>(st.cover.marked->edges.size());
  for (int attempt = 0; attempt <= p.options.prime_retries; ++attempt) {
    PipelineState trial = st;
    auto prime = big_cover(trial, n);
    if (auto plan = select(trial.cover)) {
      st = std::move(trial);
      return *plan;
    }
    n = static_cast<int>(prime);
  }
  throw Error(ErrorKind::SelectionFailed, std::string("no qualifying corridor lifts for ") + what,
              "degree " + std::to_string(st.cover.degree) + ", boundary " + std::to_string(boundary_count(st.cover)));
}

struct LiftContext {
  FatGraph total;
  BoundaryFibres fibres;
  std::vector<CorridorLift> lifts;

  LiftContext(const Cover& c, const Corridor& cor) : total(c.total()) {
    fibres = boundary_fibres(c, &total);
    lifts = lifts_of_corridor(c, cor, total, fibres.total_faces);
  }
};

inline int first_sheet(const CorridorLift& l) { return l.sheets.front(); }

/// |dF| = 1: a corridor lift free of the marked subgraph joining two distinct
/// boundary circles, cross-joined with the same corridor in an extra base sheet.
inline std::optional<JoinPlan> select_single_boundary(const Cover& c, const std::vector<Corridor>& corridors) {
  for (const auto& cor : corridors) {
    LiftContext ctx(c, cor);
    for (const auto& l : ctx.lifts) {
      if (l.start_walk == l.end_walk || !lift_avoids(l, *c.marked)) continue;
      return JoinPlan{"augment", true, cor, {first_sheet(l), c.degree}};
    }
  }
  return std::nullopt;
}

inline std::optional<JoinPlan> select_parity(const Cover& c, const Corridor& cor) {
  LiftContext ctx(c, cor);
  for (const auto& l : ctx.lifts)
    if (lift_avoids(l, *c.marked)) return JoinPlan{"augment", true, cor, {first_sheet(l), c.degree}};
  return std::nullopt;
}

/// Two base circles with several preimages each: a pair of free lifts with
/// endpoints on four distinct boundary circles.
inline std::optional<JoinPlan> select_pair(const Cover& c, const Corridor& cor, int face_a, int face_b) {
  LiftContext ctx(c, cor);
  const auto& fa = ctx.fibres.fibres[face_a];
  const auto& fb = ctx.fibres.fibres[face_b];
  if (fa.size() < 2 || fb.size() < 2) return std::nullopt;
  auto first_free = [&](auto pred) -> const CorridorLift* {
    for (const auto& l : ctx.lifts)
      if (pred(l) && lift_avoids(l, *c.marked)) return &l;
    return nullptr;
  };
  const CorridorLift* alpha[2];
  const CorridorLift* beta[2];
  for (int i = 0; i < 2; ++i) {
    alpha[i] = first_free([&](const CorridorLift& l) { return l.start_walk == fa[i].walk; });
    beta[i] = first_free([&](const CorridorLift& l) { return l.end_walk == fb[i].walk; });
  }
  std::pair<const CorridorLift*, const CorridorLift*> order[] = {
      {alpha[0], alpha[1]}, {beta[0], beta[1]}, {alpha[1], beta[1]},
      {alpha[0], beta[0]},  {alpha[0], beta[1]}, {alpha[1], beta[0]}};
  for (auto [x, y] : order) {
    if (!x || !y || x == y) continue;
    if (x->start_walk == y->start_walk || x->end_walk == y->end_walk) continue;
    return JoinPlan{"pair", false, cor, {first_sheet(*x), first_sheet(*y)}};
  }
  return std::nullopt;
}

/// One base circle C with 2k+1 preimages: one free lift from the single
/// preimage of another circle to each preimage of C, ordered backwards
/// along that preimage.
inline std::optional<JoinPlan> select_cyclic(const Cover& c, const Corridor& cor, int face_c) {
  LiftContext ctx(c, cor);
  std::vector<const CorridorLift*> chosen;
  for (const auto& target : ctx.fibres.fibres[face_c]) {
    const CorridorLift* pick = nullptr;
    for (const auto& l : ctx.lifts)
      if (l.end_walk == target.walk && lift_avoids(l, *c.marked)) {
        pick = &l;
        break;
      }
    if (!pick) return std::nullopt;
    chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const CorridorLift* x, const CorridorLift* y) { return x->start_position > y->start_position; });
  JoinPlan plan{"cyclic", false, cor, {}};
  for (const auto* l : chosen) plan.first_sheets.push_back(first_sheet(*l));
  return plan;
}

}  // namespace detail

/// Cross-joins until the cover is conservative.
inline void reduce_excess(const Problem& p, PipelineState& st) {
  auto base = st.cover.base;
  auto bfaces = base.faces();
  int k = static_cast<int>(bfaces.walks.size());
  int max_len = p.options.max_corridor;
  bool parity_done = false;
  int guard = 4 * boundary_fibres(st.cover).excess + 8;
  while (true) {
    if (--guard < 0) throw Error(ErrorKind::Internal, "excess reduction does not terminate");
    auto bf = boundary_fibres(st.cover);
    int e = bf.excess;
    if (e == 0) break;
    int before = static_cast<int>(bf.total_faces.walks.size());
    int expected = 0;
    detail::JoinPlan plan;
    const char* step = "";
    if (k == 1) {
      auto corridors = enumerate_corridors(base, 0, 0, max_len);
      if (corridors.empty()) throw Error(ErrorKind::NoCorridor, "no corridor from the boundary to itself");
      plan = detail::select_with_room(
          p, st, [&](const Cover& c) { return detail::select_single_boundary(c, corridors); }, 1,
          "a single boundary circle");
      expected = before - 1;
      step = "single-boundary join";
    } else if (e % 2 == 1) {
      SURFSEP_ASSERT(!parity_done, "parity join repeated");
      parity_done = true;
      auto cor = find_corridor(base, 0, 1, max_len);
      plan = detail::select_with_room(
          p, st, [&](const Cover& c) { return detail::select_parity(c, cor); }, 1, "the parity join");
      expected = before + k - 2;
      step = "parity join";
    } else {
      std::vector<int> multi;
      for (int b = 0; b < k; ++b)
        if (bf.fibres[b].size() >= 2) multi.push_back(b);
      if (multi.size() >= 2) {
        auto cor = find_corridor(base, multi[0], multi[1], max_len);
        int fa = multi[0], fb = multi[1];
        plan = detail::select_with_room(
            p, st, [&](const Cover& c) { return detail::select_pair(c, cor, fa, fb); }, 4, "a pair join");
        expected = before - 2;
        step = "pair join";
      } else {
        SURFSEP_ASSERT(multi.size() == 1, "positive excess without a multi-fibre circle");
        int fc = multi[0];
        int fa = fc == 0 ? 1 : 0;
        int n = static_cast<int>(bf.fibres[fc].size());
        SURFSEP_ASSERT(n % 2 == 1, "even number of preimages in the cyclic step");
        auto cor = find_corridor(base, fa, fc, max_len);
        plan = detail::select_with_room(
            p, st, [&](const Cover& c) { return detail::select_cyclic(c, cor, fc); }, n, "the cyclic join");
        expected = k;
        step = "cyclic join";
      }
    }
    detail::apply_join(st, plan);
    detail::check_invariants(p, st, step);
    int after = st.log.back().at("boundary_after").get<int>();
    if (after != expected)
      throw Error(ErrorKind::Internal, std::string(step) + " changed the boundary count unexpectedly",
                  std::to_string(before) + " -> " + std::to_string(after) + ", expected " + std::to_string(expected));
  }
}

inline std::vector<Word> peripheral_elements(const Problem& p, const std::vector<Word>& words) {
  std::vector<Word> out;
  auto bw = boundary_words(p.genus, p.boundary);
  for (const auto& w : words)
    if (!w.empty() && !is_nonperipheral(fold({w}, p.rank()), bw).nonperipheral) out.push_back(w);
  return out;
}

inline Certificate separate(const Problem& p) {
  validate(p);
  auto core = build_core(p);
  auto st = good_cover(p, core);
  detail::check_invariants(p, st, "good cover", false);
  {
    auto t = st.cover.total();
    bool done = boundary_fibres(st.cover, &t).conservative() &&
                complement_components(t, *st.cover.marked).connected &&
                h1_injective(t, *st.cover.marked, st.cover.basepoint);
    if (!done) {
      very_good_cover(st);
      detail::check_invariants(p, st, "very good cover");
      reduce_excess(p, st);
    }
  }
  Certificate cert{p, std::move(st.cover), std::move(st.log), {}, peripheral_elements(p, p.B)};
  cert.report = verify_certificate(p, cert.cover);
  if (!cert.report.pass()) throw Error(ErrorKind::VerificationFailed, "certificate failed verification");
  return cert;
}

/// Rebuilds the cover from the problem and the first `count` log entries
/// (all of them by default).
inline Cover replay(const Problem& p, const json& log, std::size_t count = static_cast<std::size_t>(-1)) {
  validate(p);
  auto core = build_core(p);
  PipelineState st;
  bool started = false;
  for (std::size_t i = 0; i < log.size() && i < count; ++i) {
    const auto& entry = log[i];
    auto op = entry.at("op").get<std::string>();
    if (op == "hall_completion") {
      st = good_cover(p, core);
      started = true;
      continue;
    }
    if (!started) throw Error(ErrorKind::ParseError, "log must start with hall_completion");
    if (op == "z2_cover" || op == "big_cover") {
      auto t = st.cover.total();
      detail::apply_regular(st, detail::hom_from_log(entry, t.edge_count()));
    } else if (op == "cross_join") {
      detail::JoinPlan plan{entry.at("kind").get<std::string>(), entry.at("augment").get<bool>(),
                            detail::corridor_from_json(entry.at("corridor")),
                            entry.at("sheets").get<std::vector<int>>()};
      detail::apply_join(st, plan);
    } else {
      throw Error(ErrorKind::ParseError, "unknown log operation: " + op);
    }
  }
  if (!started) throw Error(ErrorKind::ParseError, "empty construction log");
  return st.cover;
}

}  // namespace surfsep
