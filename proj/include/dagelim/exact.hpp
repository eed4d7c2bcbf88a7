#pragma once

#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

enum class SolveStatus { Optimal, BudgetExceeded, TooLarge };

struct ExactResult {
  long long objective = 0;
  std::vector<int> witness;  // elimination order (OVE) or subset (MEC)
  long long nodes_explored = 0;
  SolveStatus status = SolveStatus::Optimal;
};

/// Full enumeration of the |I|! elimination orders. Refuses instances
/// with more than `limit` internal vertices (status TooLarge).
ExactResult brute_force_ove(const Dag& d, int limit = 8);

/// Depth-first branch and bound over elimination prefixes. The incumbent
/// starts from the {Fw, Rev, Mar, RMar} ensemble; a prefix is cut when
/// its cost plus max(half-edge bound, remaining mu* sum) reaches the
/// incumbent. States are merged through a transposition table keyed by
/// the eliminated set (which determines the residual graph). Returns
/// Optimal when the search space is exhausted within the node budget,
/// otherwise BudgetExceeded with the incumbent.
ExactResult bnb_ove(const Dag& d, long long budget = 100'000'000);

/// Exact minimum edge count via include/exclude search over subsets of
/// internal vertices, recomputing the elimination along the search path.
/// Refuses instances with more than `limit` internal vertices.
ExactResult exact_mec(const Dag& d, int limit = 22);

}  // namespace dagelim
