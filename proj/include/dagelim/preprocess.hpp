#pragma once

#include <optional>
#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

enum class ReductionRule { MarkowitzOne, MuStarForward, MuStarBackward };

/// The rule (if any) under which v may be pinned to the front of an
/// optimal elimination order of d.
std::optional<ReductionRule> reduction_rule(const Dag& d, int v);

struct ReductionStep {
  int vertex;
  ReductionRule rule;
  long long cost;
};

struct ReductionLog {
  std::vector<ReductionStep> prefix;
  Dag residual;
  long long accrued_cost = 0;
};

/// Exhaustively pins a prefix of some optimal total elimination order:
///   (a) any internal vertex of Markowitz degree 1;
///   (b) any v with mu(v) = mu*(v) whose fill-critical out-neighborhood
///       P+(v) = { w in N+(v) : exists u in N-(v) with (u,w) missing and
///       not a source-sink pair } lies within T and has at most one
///       member;
///   (c) the mirror-image rule on P-(v) and S.
/// Scanning goes by ascending id and restarts after every hit, so
/// OPT(D) = accrued_cost + OPT(residual).
ReductionLog reduce(const Dag& d);

}  // namespace dagelim
