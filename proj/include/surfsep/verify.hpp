#pragma once

// Independent re-check of a finished cover against the four target
// properties. Uses only fatgraph, folding and homology primitives.

#include <string>
#include <vector>

#include "homology.hpp"
#include "problem.hpp"

namespace surfsep {

struct Check {
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  Check structure;     // cover is well formed over the problem's base
  Check subgroup;      // (i) marked subgraph carries exactly H
  Check excluded;      // (ii) no element of B lifts to a loop
  Check complement;    // (iii) connected complement, injective H_1
  Check conservative;  // (iv) one boundary circle over each base circle
  int degree = 0;
  int boundary = 0;
  int excess = 0;
  std::vector<int> fibre_sizes;
  int complement_components = 0;
  bool h1_injective = false;

  bool pass() const {
    return structure.pass && subgroup.pass && excluded.pass && complement.pass && conservative.pass;
  }
};

inline VerificationReport verify_certificate(const Problem& p, const Cover& c) {
  VerificationReport r;
  r.degree = c.degree;
  try {
    validate(c);
    if (!(c.base == p.base())) throw Error(ErrorKind::SubdivisionMismatch, "cover base differs from the problem's");
    if (!c.marked) throw Error(ErrorKind::NoMarkedSubgraph, "no marked subgraph");
    auto t = c.total();
    if (t.component_count() != 1) throw Error(ErrorKind::Internal, "cover is not connected");
    if (!subgraph_connected(t, *c.marked)) throw Error(ErrorKind::NoMarkedSubgraph, "marked subgraph not connected");
    r.structure = {true, "ok"};
  } catch (const Error& e) {
    r.structure = {false, e.what()};
    return r;
  }
  auto alpha = p.alphabet();
  auto total = c.total();

  auto image = image_subgroup_of_marked(c);
  auto target = fold(p.H, p.rank());
  r.subgroup.pass = image == target;
  r.subgroup.detail = r.subgroup.pass ? "image subgroup equals H"
                                      : "image subgroup has " + std::to_string(image.vertex_count()) +
                                            " core vertices, H has " + std::to_string(target.vertex_count());

  r.excluded.pass = true;
  r.excluded.detail = "no element of B lifts to a loop";
  for (const auto& b : p.B) {
    if (image_contains(c, b)) {
      r.excluded.pass = false;
      r.excluded.detail = "lifts to a loop: " + alpha.format(b);
      break;
    }
  }

  auto rep = complement_components(total, *c.marked);
  r.complement_components = static_cast<int>(rep.components.size());
  r.h1_injective = h1_injective(total, *c.marked, c.basepoint);
  r.complement.pass = rep.connected && r.h1_injective;
  r.complement.detail = std::to_string(r.complement_components) + " complement component(s), H_1 map " +
                        (r.h1_injective ? "injective" : "not injective");

  auto bf = boundary_fibres(c, &total);
  r.boundary = static_cast<int>(bf.total_faces.walks.size());
  r.excess = bf.excess;
  for (const auto& f : bf.fibres) r.fibre_sizes.push_back(static_cast<int>(f.size()));
  r.conservative.pass = bf.conservative();
  r.conservative.detail = "excess " + std::to_string(bf.excess);
  return r;
}

}  // namespace surfsep
