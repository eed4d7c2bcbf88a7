#include "dagelim/preprocess.hpp"

#include <optional>

#include "dagelim/bounds.hpp"

namespace dagelim {

namespace {

bool s_t_pair(const Dag& d, int u, int w) {
  return d.role(u) == Role::Source && d.role(w) == Role::Sink;
}

// P+(v): out-neighbors w for which some in-neighbor u lacks the edge
// (u,w), ignoring source-sink pairs. P-(v) is the mirror image.
std::vector<int> p_plus(const Dag& d, int v) {
  std::vector<int> result;
  for (int w : d.out(v)) {
    for (int u : d.in(v)) {
      if (!d.has_edge(u, w) && !s_t_pair(d, u, w)) {
        result.push_back(w);
        break;
      }
    }
  }
  return result;
}

std::vector<int> p_minus(const Dag& d, int v) {
  std::vector<int> result;
  for (int u : d.in(v)) {
    for (int w : d.out(v)) {
      if (!d.has_edge(u, w) && !s_t_pair(d, u, w)) {
        result.push_back(u);
        break;
      }
    }
  }
  return result;
}

}  // namespace

std::optional<ReductionRule> reduction_rule(const Dag& d, int v) {
  const long long mu = markowitz(d, v);
  if (mu == 1) return ReductionRule::MarkowitzOne;
  if (mu != mu_star(d, v)) return std::nullopt;
  const auto plus = p_plus(d, v);
  if (plus.size() <= 1) {
    bool all_sinks = true;
    for (int w : plus)
      if (d.role(w) != Role::Sink) all_sinks = false;
    if (all_sinks) return ReductionRule::MuStarForward;
  }
  const auto minus = p_minus(d, v);
  if (minus.size() <= 1) {
    bool all_sources = true;
    for (int u : minus)
      if (d.role(u) != Role::Source) all_sources = false;
    if (all_sources) return ReductionRule::MuStarBackward;
  }
  return std::nullopt;
}

ReductionLog reduce(const Dag& d) {
  ReductionLog log;
  log.residual = d;
  bool hit = true;
  while (hit) {
    hit = false;
    for (int v : log.residual.internal_vertices()) {
      const auto rule = reduction_rule(log.residual, v);
      if (!rule) continue;
      auto [next, cost] = eliminate_vertex(log.residual, v);
      log.prefix.push_back({v, *rule, cost});
      log.accrued_cost += cost;
      log.residual = std::move(next);
      hit = true;
      break;  // restart the scan from the smallest id
    }
  }
  return log;
}

}  // namespace dagelim
