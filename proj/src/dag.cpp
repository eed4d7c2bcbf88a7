#include "dagelim/dag.hpp"

#include <algorithm>
#include <queue>

namespace dagelim {

namespace {

void insert_sorted(std::vector<int>& xs, int v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  if (it == xs.end() || *it != v) xs.insert(it, v);
}

bool erase_sorted(std::vector<int>& xs, int v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  if (it != xs.end() && *it == v) {
    xs.erase(it);
    return true;
  }
  return false;
}

bool contains_sorted(const std::vector<int>& xs, int v) {
  return std::binary_search(xs.begin(), xs.end(), v);
}

}  // namespace

Dag Dag::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Dag d;
  d.out_.assign(static_cast<size_t>(n), {});
  d.in_.assign(static_cast<size_t>(n), {});
  d.labels_.assign(static_cast<size_t>(n), {});
  d.present_.assign(static_cast<size_t>(n), 1);
  d.present_count_ = n;
  for (auto [u, w] : edges) {
    if (u < 0 || u >= n || w < 0 || w >= n) throw Error("edge endpoint out of range");
    if (u == w) throw CycleError("self-loop on vertex " + std::to_string(u));
    if (d.has_edge(u, w)) throw Error("duplicate edge in input");
    insert_sorted(d.out_[static_cast<size_t>(u)], w);
    insert_sorted(d.in_[static_cast<size_t>(w)], u);
    ++d.edge_count_;
  }
  d.roles_.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    const bool has_in = !d.in_[static_cast<size_t>(v)].empty();
    const bool has_out = !d.out_[static_cast<size_t>(v)].empty();
    if (!has_in && !has_out)
      throw IsolatedVertexError("vertex " + std::to_string(v) + " has no edges");
    d.roles_[static_cast<size_t>(v)] =
        !has_in ? Role::Source : (!has_out ? Role::Sink : Role::Internal);
  }
  d.check_acyclic();
  return d;
}

Dag Dag::with_roles(int n, std::span<const std::pair<int, int>> edges,
                    std::vector<Role> roles) {
  if (static_cast<int>(roles.size()) != n) throw Error("role vector size mismatch");
  Dag d;
  d.out_.assign(static_cast<size_t>(n), {});
  d.in_.assign(static_cast<size_t>(n), {});
  d.labels_.assign(static_cast<size_t>(n), {});
  d.present_.assign(static_cast<size_t>(n), 1);
  d.present_count_ = n;
  d.roles_ = std::move(roles);
  for (auto [u, w] : edges) {
    if (u < 0 || u >= n || w < 0 || w >= n) throw Error("edge endpoint out of range");
    if (u == w) throw CycleError("self-loop on vertex " + std::to_string(u));
    if (d.has_edge(u, w)) throw Error("duplicate edge in input");
    insert_sorted(d.out_[static_cast<size_t>(u)], w);
    insert_sorted(d.in_[static_cast<size_t>(w)], u);
    ++d.edge_count_;
  }
  d.check_acyclic();
  return d;
}

void Dag::check_acyclic() const {
  const int n = order();
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) indeg[static_cast<size_t>(v)] = in_degree(v);
  std::queue<int> q;
  for (int v = 0; v < n; ++v)
    if (present(v) && indeg[static_cast<size_t>(v)] == 0) q.push(v);
  int seen = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    ++seen;
    for (int w : out(v))
      if (--indeg[static_cast<size_t>(w)] == 0) q.push(w);
  }
  if (seen != present_count_) throw CycleError("input graph contains a directed cycle");
}

bool Dag::has_edge(int u, int w) const {
  return contains_sorted(out_[static_cast<size_t>(u)], w);
}

std::vector<int> Dag::vertices() const {
  std::vector<int> vs;
  vs.reserve(static_cast<size_t>(present_count_));
  for (int v = 0; v < order(); ++v)
    if (present(v)) vs.push_back(v);
  return vs;
}

std::vector<int> Dag::internal_vertices() const {
  std::vector<int> vs;
  for (int v = 0; v < order(); ++v)
    if (is_internal(v)) vs.push_back(v);
  return vs;
}

std::vector<int> Dag::sources() const {
  std::vector<int> vs;
  for (int v = 0; v < order(); ++v)
    if (present(v) && role(v) == Role::Source) vs.push_back(v);
  return vs;
}

std::vector<int> Dag::sinks() const {
  std::vector<int> vs;
  for (int v = 0; v < order(); ++v)
    if (present(v) && role(v) == Role::Sink) vs.push_back(v);
  return vs;
}

std::vector<std::pair<int, int>> Dag::edges() const {
  std::vector<std::pair<int, int>> es;
  es.reserve(static_cast<size_t>(edge_count_));
  for (int v = 0; v < order(); ++v)
    for (int w : out(v)) es.emplace_back(v, w);
  return es;
}

bool Dag::has_labels() const {
  for (int v = 0; v < order(); ++v)
    if (!labels_[static_cast<size_t>(v)].empty()) return true;
  return false;
}

std::vector<int> Dag::topological_order() const {
  const int n = order();
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) indeg[static_cast<size_t>(v)] = in_degree(v);
  // min-heap on id keeps incomparable vertices in ascending-id order
  std::priority_queue<int, std::vector<int>, std::greater<int>> q;
  for (int v = 0; v < n; ++v)
    if (present(v) && indeg[static_cast<size_t>(v)] == 0) q.push(v);
  std::vector<int> order_out;
  order_out.reserve(static_cast<size_t>(present_count_));
  while (!q.empty()) {
    const int v = q.top();
    q.pop();
    order_out.push_back(v);
    for (int w : out(v))
      if (--indeg[static_cast<size_t>(w)] == 0) q.push(w);
  }
  return order_out;
}

long long Dag::eliminate_in_place(int v) {
  const auto vu = static_cast<size_t>(v);
  const std::vector<int> preds = in_[vu];
  const std::vector<int> succs = out_[vu];
  const long long cost =
      static_cast<long long>(preds.size()) * static_cast<long long>(succs.size());

  for (int u : preds) erase_sorted(out_[static_cast<size_t>(u)], v);
  for (int w : succs) erase_sorted(in_[static_cast<size_t>(w)], v);
  edge_count_ -= static_cast<long long>(preds.size()) + static_cast<long long>(succs.size());

  for (int u : preds) {
    auto& uo = out_[static_cast<size_t>(u)];
    for (int w : succs) {
      if (!contains_sorted(uo, w)) {
        insert_sorted(uo, w);
        insert_sorted(in_[static_cast<size_t>(w)], u);
        ++edge_count_;
      }
    }
  }

  in_[vu].clear();
  out_[vu].clear();
  present_[vu] = 0;
  --present_count_;
  return cost;
}

long long markowitz(const Dag& d, int v) {
  if (v < 0 || v >= d.order() || !d.present(v))
    throw NotPresentError("vertex " + std::to_string(v) + " not present");
  if (d.role(v) != Role::Internal)
    throw NotInternalError("vertex " + std::to_string(v) + " is not internal");
  return static_cast<long long>(d.in_degree(v)) * static_cast<long long>(d.out_degree(v));
}

std::pair<Dag, long long> eliminate_vertex(const Dag& d, int v) {
  markowitz(d, v);  // validates v
  Dag r = d;
  const long long cost = r.eliminate_in_place(v);
  return {std::move(r), cost};
}

EliminationTrace eliminate_sequence(const Dag& d, std::span<const int> seq) {
  EliminationTrace t;
  t.final = d;
  t.min_edges = d.edge_count();
  t.min_edges_prefix = 0;
  t.sequence.reserve(seq.size());
  t.step_costs.reserve(seq.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    const int v = seq[i];
    const std::string at = " (sequence index " + std::to_string(i) + ")";
    if (v < 0 || v >= d.order() || !t.final.present(v))
      throw NotPresentError("vertex " + std::to_string(v) + " not present" + at);
    if (t.final.role(v) != Role::Internal)
      throw NotInternalError("vertex " + std::to_string(v) + " is not internal" + at);
    const long long cost = t.final.eliminate_in_place(v);
    t.sequence.push_back(v);
    t.step_costs.push_back(cost);
    t.total_cost += cost;
    if (t.final.edge_count() < t.min_edges) {
      t.min_edges = t.final.edge_count();
      t.min_edges_prefix = static_cast<int>(i) + 1;
    }
  }
  t.final_edges = t.final.edge_count();
  return t;
}

Dag eliminate_set(const Dag& d, std::span<const int> xs) {
  std::vector<int> order(xs.begin(), xs.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  Dag r = d;
  for (int v : order) {
    if (v < 0 || v >= d.order() || !d.present(v))
      throw NotPresentError("vertex " + std::to_string(v) + " not present");
    if (d.role(v) != Role::Internal)
      throw NotInternalError("vertex " + std::to_string(v) + " is not internal");
    r.eliminate_in_place(v);
  }
  return r;
}

std::vector<std::pair<int, int>> transitive_closure(const Dag& d) {
  const int n = d.order();
  std::vector<std::pair<int, int>> pairs;
  // BFS from every vertex; graphs here are small enough that this is fine.
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (!d.present(s)) continue;
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, s);
    seen[static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : d.out(v)) {
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    for (int t = 0; t < n; ++t)
      if (t != s && seen[static_cast<size_t>(t)]) pairs.emplace_back(s, t);
  }
  return pairs;
}

ReachSets reach_sets(const Dag& d, int v) {
  if (v < 0 || v >= d.order() || !d.present(v))
    throw NotPresentError("vertex " + std::to_string(v) + " not present");
  ReachSets rs;
  const int n = d.order();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack{v};
  seen[static_cast<size_t>(v)] = 1;
  while (!stack.empty()) {  // backward: sources reaching v (reflexive)
    const int u = stack.back();
    stack.pop_back();
    for (int w : d.in(u)) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  for (int u = 0; u < n; ++u)
    if (seen[static_cast<size_t>(u)] && d.present(u) && d.role(u) == Role::Source)
      rs.sources.push_back(u);

  std::fill(seen.begin(), seen.end(), 0);
  stack.assign(1, v);
  seen[static_cast<size_t>(v)] = 1;
  while (!stack.empty()) {  // forward: sinks reachable from v
    const int u = stack.back();
    stack.pop_back();
    for (int w : d.out(u)) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  for (int u = 0; u < n; ++u)
    if (seen[static_cast<size_t>(u)] && d.present(u) && d.role(u) == Role::Sink)
      rs.sinks.push_back(u);
  return rs;
}

}  // namespace dagelim
