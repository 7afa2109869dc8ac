#pragma once

#include <vector>

#include "fatgraph.hpp"
#include "word.hpp"

namespace surfsep {

struct Options {
  int subdiv = 1;          // edge subdivision level of the base fatgraph
  int prime_retries = 3;   // escalations of the big-cover prime per selection
  int oracle_cap = 8;      // largest degree the enumeration oracle accepts
  int max_corridor = 6;    // longest corridor searched, in crossings
  bool operator==(const Options&) const = default;
};

/// Surface of genus g with k boundary circles, subgroup generators H and
/// excluded elements B, all as words in the standard generators.
struct Problem {
  int genus = 1;
  int boundary = 1;
  std::vector<Word> H;
  std::vector<Word> B;
  Options options;

  SurfaceAlphabet alphabet() const { return SurfaceAlphabet(genus, boundary); }
  int rank() const { return 2 * genus + boundary - 1; }
  int euler_characteristic() const { return 1 - rank(); }
  FatGraph base() const { return subdivide(standard_fatgraph(genus, boundary), options.subdiv); }
};

/// Structural checks on the surface and the words; throws.
inline void validate(const Problem& p) {
  if (p.genus < 0 || p.boundary < 1)
    throw Error(ErrorKind::InvalidSurface, "need genus >= 0 and at least one boundary circle");
  if (p.euler_characteristic() >= 0)
    throw Error(ErrorKind::DegenerateSurface,
                "disc and annulus are excluded: every non-peripheral subgroup there is trivial");
  if (p.options.subdiv < 1) throw Error(ErrorKind::InvalidSurface, "subdivision level must be >= 1");
  if (p.options.prime_retries < 0 || p.options.oracle_cap < 1 || p.options.max_corridor < 1)
    throw Error(ErrorKind::InvalidSurface, "option out of range");
  for (const auto* list : {&p.H, &p.B})
    for (const auto& w : *list)
      for (Letter x : w)
        if (x.gen() >= p.rank()) throw Error(ErrorKind::ParseError, "word uses a generator outside the surface");
}

}  // namespace surfsep
