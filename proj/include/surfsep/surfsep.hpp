#pragma once

// Finite conservative covers of surfaces separating a subgroup from a
// finite set, with independent verification.

#include "error.hpp"
#include "word.hpp"
#include "folded_graph.hpp"
#include "fatgraph.hpp"
#include "linalg.hpp"
#include "cover.hpp"
#include "homology.hpp"
#include "corridor.hpp"
#include "surgery.hpp"
#include "problem.hpp"
#include "verify.hpp"
#include "pipeline.hpp"
#include "oracle.hpp"
#include "json_io.hpp"
#include "dot.hpp"
