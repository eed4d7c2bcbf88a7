#pragma once

#include <map>
#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

enum class CutMode { Directed, Undirected };

struct CutResult {
  long long size = 0;            // |V|+1 sentinel when !separable
  std::vector<int> witness;      // one minimum cut, empty when !separable
  bool separable = true;
};

/// Minimum number of vertices outside A and B whose removal disconnects
/// every A->B path (Directed) or every A-B path in the underlying
/// undirected graph. Vertex-splitting reduction to unit-capacity max
/// flow. A direct A-B edge makes the instance non-separable; the result
/// then carries the sentinel value |V|+1 and an empty witness.
CutResult min_vertex_cut(const Dag& d, const std::vector<int>& a, const std::vector<int>& b,
                         CutMode mode);

/// Cut(S,v) * Cut(v,T): the product of the minimum vertex cuts isolating
/// v from the sources and from the sinks. Here only v itself is
/// protected; source and sink vertices may be cut (they are what remains
/// adjacent to v once everything between has been eliminated), so the
/// value is a floor on v's Markowitz degree at elimination time.
long long mu_star(const Dag& d, int v);

/// ceil(m_I / 2) where m_I counts edges with at least one internal
/// endpoint. Lower bound on the total elimination cost.
long long half_edge_bound(const Dag& d);

struct FinalMarkowitz {
  long long value = 0;
  bool applicable = true;  // false when the graph has a direct S-T edge
};

/// Markowitz degree of v after eliminating every other internal vertex;
/// a lower bound on the total cost when the graph has no S-T edge.
FinalMarkowitz final_markowitz_bound(const Dag& d, int v);

struct BoundsReport {
  long long half_edges = 0;
  long long mu_star_sum = 0;
  std::map<int, long long> final_markowitz;  // empty when not applicable
  long long best = 0;
};

BoundsReport bounds_report(const Dag& d);

}  // namespace dagelim
