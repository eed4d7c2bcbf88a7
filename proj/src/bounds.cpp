#include "dagelim/bounds.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace dagelim {

namespace {

// Dinic on unit-ish networks. Capacities are small ints; "infinite" arcs
// get a capacity larger than any possible finite cut.
struct MaxFlow {
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> level, iter;

  explicit MaxFlow(int n) : adj(static_cast<size_t>(n)) {}

  void add_arc(int from, int to, int cap) {
    adj[static_cast<size_t>(from)].push_back({to, cap, static_cast<int>(adj[static_cast<size_t>(to)].size())});
    adj[static_cast<size_t>(to)].push_back({from, 0, static_cast<int>(adj[static_cast<size_t>(from)].size()) - 1});
  }

  bool bfs(int s, int t) {
    level.assign(adj.size(), -1);
    std::queue<int> q;
    level[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const Arc& a : adj[static_cast<size_t>(v)]) {
        if (a.cap > 0 && level[static_cast<size_t>(a.to)] < 0) {
          level[static_cast<size_t>(a.to)] = level[static_cast<size_t>(v)] + 1;
          q.push(a.to);
        }
      }
    }
    return level[static_cast<size_t>(t)] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = iter[static_cast<size_t>(v)]; i < static_cast<int>(adj[static_cast<size_t>(v)].size()); ++i) {
      Arc& a = adj[static_cast<size_t>(v)][static_cast<size_t>(i)];
      if (a.cap > 0 && level[static_cast<size_t>(v)] < level[static_cast<size_t>(a.to)]) {
        const int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          adj[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  long long run(int s, int t, long long stop_at) {
    long long flow = 0;
    while (flow < stop_at && bfs(s, t)) {
      iter.assign(adj.size(), 0);
      int f;
      while (flow < stop_at && (f = dfs(s, t, 1 << 30)) > 0) flow += f;
    }
    return flow;
  }

  std::vector<char> reachable_from(int s) const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{s};
    seen[static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Arc& a : adj[static_cast<size_t>(v)]) {
        if (a.cap > 0 && !seen[static_cast<size_t>(a.to)]) {
          seen[static_cast<size_t>(a.to)] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }
};

// Vertex-split network. Cuttable vertex v becomes v_in -> v_out with unit
// capacity; protected vertices collapse to a single node.
struct SplitNet {
  // node layout: 2*n vertex slots (+2 terminals appended by the caller)
  int n;
  std::vector<char> cuttable;
  MaxFlow flow;
  int source_node, sink_node;

  SplitNet(const Dag& d, const std::vector<char>& cut_ok, long long inf_cap)
      : n(d.order()), cuttable(cut_ok), flow(2 * d.order() + 2) {
    source_node = 2 * n;
    sink_node = 2 * n + 1;
    for (int v = 0; v < n; ++v) {
      if (!d.present(v)) continue;
      if (cuttable[static_cast<size_t>(v)])
        flow.add_arc(in_node(v), out_node(v), 1);
      else
        flow.add_arc(in_node(v), out_node(v), static_cast<int>(inf_cap));
    }
  }

  int in_node(int v) const { return 2 * v; }
  int out_node(int v) const { return 2 * v + 1; }
};

CutResult finish_cut(const Dag& d, SplitNet& net, long long inf_cap) {
  CutResult r;
  const long long f = net.flow.run(net.source_node, net.sink_node, inf_cap);
  if (f >= inf_cap) {
    r.separable = false;
    r.size = static_cast<long long>(d.vertex_count()) + 1;
    return r;
  }
  r.size = f;
  const auto seen = net.flow.reachable_from(net.source_node);
  for (int v = 0; v < d.order(); ++v) {
    if (!d.present(v) || !net.cuttable[static_cast<size_t>(v)]) continue;
    if (seen[static_cast<size_t>(net.in_node(v))] && !seen[static_cast<size_t>(net.out_node(v))])
      r.witness.push_back(v);
  }
  return r;
}

}  // namespace

CutResult min_vertex_cut(const Dag& d, const std::vector<int>& a, const std::vector<int>& b,
                         CutMode mode) {
  if (a.empty() || b.empty()) throw Error("min_vertex_cut: empty terminal set");
  std::set<int> a_set(a.begin(), a.end()), b_set(b.begin(), b.end());
  for (int v : a_set)
    if (b_set.count(v)) throw Error("min_vertex_cut: terminal sets intersect");
  for (int v : a)
    if (v < 0 || v >= d.order() || !d.present(v))
      throw NotPresentError("terminal vertex " + std::to_string(v) + " not present");
  for (int v : b)
    if (v < 0 || v >= d.order() || !d.present(v))
      throw NotPresentError("terminal vertex " + std::to_string(v) + " not present");

  const long long inf_cap = static_cast<long long>(d.vertex_count()) + 1;
  std::vector<char> cut_ok(static_cast<size_t>(d.order()), 1);
  for (int v : a_set) cut_ok[static_cast<size_t>(v)] = 0;
  for (int v : b_set) cut_ok[static_cast<size_t>(v)] = 0;

  SplitNet net(d, cut_ok, inf_cap);
  for (auto [u, w] : d.edges()) {
    net.flow.add_arc(net.out_node(u), net.in_node(w), static_cast<int>(inf_cap));
    if (mode == CutMode::Undirected)
      net.flow.add_arc(net.out_node(w), net.in_node(u), static_cast<int>(inf_cap));
  }
  for (int v : a_set) net.flow.add_arc(net.source_node, net.in_node(v), static_cast<int>(inf_cap));
  for (int v : b_set) net.flow.add_arc(net.out_node(v), net.sink_node, static_cast<int>(inf_cap));
  return finish_cut(d, net, inf_cap);
}

long long mu_star(const Dag& d, int v) {
  markowitz(d, v);  // validates internal + present
  const long long inf_cap = static_cast<long long>(d.vertex_count()) + 1;

  // Everything but v may be cut, terminals included: once the rest of I
  // is gone, v's neighbors are exactly such a cut, so this floor is met
  // by every elimination order.
  std::vector<char> cut_ok(static_cast<size_t>(d.order()), 1);
  cut_ok[static_cast<size_t>(v)] = 0;

  SplitNet from_sources(d, cut_ok, inf_cap);
  for (auto [u, w] : d.edges())
    from_sources.flow.add_arc(from_sources.out_node(u), from_sources.in_node(w),
                              static_cast<int>(inf_cap));
  for (int s : d.sources())
    if (s != v)
      from_sources.flow.add_arc(from_sources.source_node, from_sources.in_node(s),
                                static_cast<int>(inf_cap));
  from_sources.flow.add_arc(from_sources.out_node(v), from_sources.sink_node,
                            static_cast<int>(inf_cap));
  const long long cut_s = from_sources.flow.run(from_sources.source_node,
                                                from_sources.sink_node, inf_cap);

  SplitNet to_sinks(d, cut_ok, inf_cap);
  for (auto [u, w] : d.edges())
    to_sinks.flow.add_arc(to_sinks.out_node(u), to_sinks.in_node(w), static_cast<int>(inf_cap));
  to_sinks.flow.add_arc(to_sinks.source_node, to_sinks.in_node(v), static_cast<int>(inf_cap));
  for (int t : d.sinks())
    if (t != v)
      to_sinks.flow.add_arc(to_sinks.out_node(t), to_sinks.sink_node, static_cast<int>(inf_cap));
  const long long cut_t = to_sinks.flow.run(to_sinks.source_node, to_sinks.sink_node, inf_cap);

  return cut_s * cut_t;
}

long long half_edge_bound(const Dag& d) {
  long long m_internal = 0;
  for (auto [u, w] : d.edges())
    if (d.role(u) == Role::Internal || d.role(w) == Role::Internal) ++m_internal;
  return (m_internal + 1) / 2;
}

FinalMarkowitz final_markowitz_bound(const Dag& d, int v) {
  markowitz(d, v);
  for (auto [u, w] : d.edges()) {
    if (d.role(u) == Role::Source && d.role(w) == Role::Sink)
      return {0, false};  // bound only holds without direct source-sink edges
  }
  std::vector<int> others;
  for (int u : d.internal_vertices())
    if (u != v) others.push_back(u);
  const Dag residual = eliminate_set(d, others);
  return {markowitz(residual, v), true};
}

BoundsReport bounds_report(const Dag& d) {
  BoundsReport r;
  r.half_edges = half_edge_bound(d);
  bool st_edge = false;
  for (auto [u, w] : d.edges())
    if (d.role(u) == Role::Source && d.role(w) == Role::Sink) st_edge = true;
  for (int v : d.internal_vertices()) {
    r.mu_star_sum += mu_star(d, v);
    if (!st_edge) {
      std::vector<int> others;
      for (int u : d.internal_vertices())
        if (u != v) others.push_back(u);
      const Dag residual = eliminate_set(d, others);
      r.final_markowitz[v] = markowitz(residual, v);
    }
  }
  r.best = std::max(r.half_edges, r.mu_star_sum);
  for (const auto& [v, val] : r.final_markowitz) r.best = std::max(r.best, val);
  return r;
}

}  // namespace dagelim
