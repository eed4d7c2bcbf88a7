#pragma once

#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

/// Layered time-stepping graph: layers 0..steps+1, each a p x q torus
/// grid; every cell feeds the 5-point stencil {self, up, down, left,
/// right} of the next layer (with wraparound, duplicates merged). Layer 0
/// holds the sources, the last layer the sinks.
Dag evolution(int p, int q, int steps);

/// One source s fanned out to a chain v_1..v_k, with v_1 -> t_1 and v_k
/// feeding all l sinks. Forward elimination costs k + l while reverse
/// costs 2l(k-1) + l, so the forward/reverse cost bounds are tight here.
Dag tightness_family(int k, int l);

struct MiddleOutHardInstance {
  Dag dag;
  std::vector<int> separator;  // the two fan layers
};

/// Five-layer fan graph on which separator-guided elimination with the
/// returned separator costs n^3 + 3n^2 against an optimum of 3n + 1.
MiddleOutHardInstance middleout_hard(int n);

enum class GapKind { OveGap, MecGap };

/// Integrality-gap witnesses for the two linear models.
/// OveGap(n): seven complete-bipartite layers S,A,B,M,U,W,T with
/// |S|=|T|=n^(1/4), |A|=|B|=|U|=|W|=sqrt(n); n must be a fourth power
/// >= 256. MecGap(n): matchings S-A and B-T plus a complete A x B; n
/// must be divisible by 4.
Dag gap_instance(GapKind kind, int n);

}  // namespace dagelim
