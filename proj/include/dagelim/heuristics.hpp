#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

using wide_uint = unsigned __int128;

std::string to_string(wide_uint v);

enum class Direction { Forward, Reverse };

/// Greedy selection rules. Every rule repeatedly scores the remaining
/// internal vertices on the current graph and eliminates the minimizer:
///
///   Mar   mu(v)                       RMar  mu(v) - |S_v|*|T_v|
///   MR    M(D/v)                      M2D   mu(v) + d(v)
///   DMC   mu(v) - mu*(v)              PL    pathlength(D/v)
///   PC    mu(v) / f(v)                ER    |E(D/v)|
///   MD    mu(v) - deg(v)
///
/// where M is the total Markowitz degree, d(v) = M(D/v) - M(D) + mu(v),
/// and f(v) the number of maximal paths through v. Ties break toward the
/// smaller current Markowitz degree, then the smaller id; Mar instead
/// breaks ties toward the larger total degree, then the smaller id.
enum class GreedyKind { Mar, RMar, MR, M2D, DMC, PL, PC, ER, MD };

/// Eliminates all internal vertices in (reverse) topological order of the
/// input graph; incomparable vertices go in ascending id order.
EliminationTrace topological_mode(const Dag& d, Direction direction);

/// Sum of the lengths of all maximal (source-to-sink) paths. Counts are
/// 128-bit with overflow detection.
wide_uint pathlength(const Dag& d);

/// f(v): number of maximal paths through v, i.e. (#paths from sources to
/// v) * (#paths from v to sinks), the trivial path counting 1 at the
/// endpoints. Entries for absent vertices are 0.
std::vector<wide_uint> path_counts(const Dag& d);

EliminationTrace greedy_eliminate(const Dag& d, GreedyKind rule);

/// Minimum-cardinality internal separator of S and T in the underlying
/// undirected graph. Throws NotSeparableError when an S-T edge exists.
std::vector<int> find_st_separator(const Dag& d);

/// Separator-guided elimination: splits the graph at C, eliminates the
/// source side in reverse topological order, the sink side and the
/// leftover components forward, and finally the separator itself. Costs
/// are what the concatenated sequence pays when replayed on the input.
EliminationTrace middle_out(const Dag& d, std::optional<std::vector<int>> separator = {});

struct MiddleOutTag {};

using HeuristicSpec = std::variant<Direction, GreedyKind, MiddleOutTag>;

std::string heuristic_name(const HeuristicSpec& spec);

struct MemberOutcome {
  std::string name;
  std::optional<EliminationTrace> trace;
  std::string error;  // set when the member failed
};

struct EnsembleResult {
  EliminationTrace best_ove;       // minimum total_cost member
  int best_ove_member = -1;
  long long best_min_edges = 0;    // minimum scan-mode edge count member
  int best_mec_member = -1;
  std::vector<MemberOutcome> members;
};

/// Runs every member and keeps the best total cost and, independently,
/// the best scan-mode edge count. Member failures are recorded without
/// aborting the rest; throws only if every member fails.
EnsembleResult ensemble(const Dag& d, const std::vector<HeuristicSpec>& members);

}  // namespace dagelim
