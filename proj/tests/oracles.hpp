#pragma once

// Test-side oracles, kept independent of the library's solver internals:
// plain recursion over eliminate_vertex, per-subset recomputation, DFS
// path enumeration, and brute-force path packing.

#include <algorithm>
#include <climits>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "dagelim/dag.hpp"

namespace testutil {

using dagelim::Dag;
using dagelim::Role;

struct RandomDagSpec {
  int sources = 2;
  int internals = 4;
  int sinks = 2;
  double extra_edge_prob = 0.25;
  bool allow_st_edges = true;
};

// Layered construction: ids [0, ns) sources, [ns, ns+ni) internals,
// [ns+ni, n) sinks. Every internal vertex gets at least one in- and one
// out-edge so inferred roles match the layout; edges always point from a
// smaller id to a larger one.
inline Dag random_dag(std::mt19937_64& rng, const RandomDagSpec& spec) {
  const int ns = spec.sources, ni = spec.internals, nt = spec.sinks;
  const int n = ns + ni + nt;
  std::set<std::pair<int, int>> edges;
  auto is_source = [&](int v) { return v < ns; };
  auto is_sink = [&](int v) { return v >= ns + ni; };
  auto rand_int = [&](int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto allowed = [&](int a, int b) {
    if (a >= b || is_sink(a) || is_source(b)) return false;
    if (!spec.allow_st_edges && is_source(a) && is_sink(b)) return false;
    return true;
  };
  for (int v = ns; v < ns + ni; ++v) {
    edges.emplace(rand_int(0, v - 1), v);        // sources and earlier internals
    edges.emplace(v, rand_int(v + 1, n - 1));    // later internals and sinks
  }
  for (int s = 0; s < ns; ++s) {
    const int hi = (spec.allow_st_edges || ni == 0) ? n - 1 : ns + ni - 1;
    edges.emplace(s, rand_int(ns, hi));
  }
  for (int t = ns + ni; t < n; ++t) {
    const int lo = (spec.allow_st_edges || ni == 0) ? 0 : ns;
    edges.emplace(rand_int(lo, ns + ni - 1), t);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (allowed(a, b) && unit(rng) < spec.extra_edge_prob) edges.emplace(a, b);
  std::vector<std::pair<int, int>> list(edges.begin(), edges.end());
  return Dag::from_edges(n, list);
}

// Minimum total elimination cost by exhaustive recursion over the public
// eliminate_vertex API.
inline long long brute_min_cost(const Dag& d, std::vector<int>* witness = nullptr) {
  std::vector<int> internals = d.internal_vertices();
  if (internals.empty()) {
    if (witness) witness->clear();
    return 0;
  }
  long long best = LLONG_MAX;
  std::vector<int> best_tail;
  for (int v : internals) {
    auto [next, cost] = dagelim::eliminate_vertex(d, v);
    std::vector<int> tail;
    const long long sub = brute_min_cost(next, witness ? &tail : nullptr);
    if (cost + sub < best) {
      best = cost + sub;
      if (witness) {
        best_tail.assign(1, v);
        best_tail.insert(best_tail.end(), tail.begin(), tail.end());
      }
    }
  }
  if (witness) *witness = best_tail;
  return best;
}

// Minimum |E(D_X)| over X ⊆ I by recomputing every subset from scratch.
inline long long brute_min_edges(const Dag& d) {
  const std::vector<int> internals = d.internal_vertices();
  long long best = d.edge_count();
  for (unsigned long mask = 1; mask < (1ul << internals.size()); ++mask) {
    std::vector<int> subset;
    for (size_t i = 0; i < internals.size(); ++i)
      if (mask & (1ul << i)) subset.push_back(internals[i]);
    best = std::min(best, dagelim::eliminate_set(d, subset).edge_count());
  }
  return best;
}

inline bool reaches(const Dag& d, int from, int to) {
  std::vector<char> seen(static_cast<size_t>(d.order()), 0);
  std::vector<int> stack{from};
  seen[static_cast<size_t>(from)] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int w : d.out(v))
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return from == to;
}

// All maximal paths, enumerated explicitly.
inline void enumerate_paths(const Dag& d, std::vector<std::vector<int>>& out) {
  std::vector<int> path;
  std::vector<int> starts;
  for (int v : d.vertices())
    if (d.in_degree(v) == 0 && d.out_degree(v) > 0) starts.push_back(v);
  // single-vertex maximal paths are irrelevant to length sums
  struct Walker {
    const Dag& d;
    std::vector<std::vector<int>>& out;
    std::vector<int> path;
    void walk(int v) {
      path.push_back(v);
      if (d.out_degree(v) == 0) {
        out.push_back(path);
      } else {
        for (int w : d.out(v)) walk(w);
      }
      path.pop_back();
    }
  } walker{d, out, {}};
  for (int s : starts) walker.walk(s);
}

// Maximum number of vertex-disjoint A→B paths (interior vertices only),
// by exhaustive packing of simple paths.
inline int brute_path_packing(const Dag& d, const std::vector<int>& a, const std::vector<int>& b,
                              bool undirected) {
  std::vector<char> in_a(static_cast<size_t>(d.order()), 0), in_b(static_cast<size_t>(d.order()), 0);
  for (int v : a) in_a[static_cast<size_t>(v)] = 1;
  for (int v : b) in_b[static_cast<size_t>(v)] = 1;

  // collect all simple interior-disjoint-candidate paths from A to B
  std::vector<std::vector<int>> paths;  // interior vertices only
  std::vector<char> on_path(static_cast<size_t>(d.order()), 0);
  std::vector<int> interior;
  auto neighbors = [&](int v) {
    std::vector<int> ns = d.out(v);
    if (undirected) ns.insert(ns.end(), d.in(v).begin(), d.in(v).end());
    return ns;
  };
  struct Dfs {
    const Dag& d;
    std::vector<char>& in_a;
    std::vector<char>& in_b;
    std::vector<char>& on_path;
    std::vector<int>& interior;
    std::vector<std::vector<int>>& paths;
    std::function<std::vector<int>(int)> neighbors;
    void walk(int v) {
      for (int w : neighbors(v)) {
        if (in_b[static_cast<size_t>(w)]) paths.push_back(interior);
        if (in_a[static_cast<size_t>(w)] || in_b[static_cast<size_t>(w)] ||
            on_path[static_cast<size_t>(w)])
          continue;
        on_path[static_cast<size_t>(w)] = 1;
        interior.push_back(w);
        walk(w);
        interior.pop_back();
        on_path[static_cast<size_t>(w)] = 0;
      }
    }
  } dfs{d, in_a, in_b, on_path, interior, paths, neighbors};
  for (int s : a) dfs.walk(s);

  // maximum set of pairwise interior-disjoint paths
  int best = 0;
  struct Packer {
    const std::vector<std::vector<int>>& paths;
    std::vector<char> used;
    int order;
    int best = 0;
    void pack(size_t idx, int count) {
      best = std::max(best, count);
      for (size_t i = idx; i < paths.size(); ++i) {
        bool clash = false;
        for (int v : paths[i])
          if (used[static_cast<size_t>(v)]) clash = true;
        if (clash) continue;
        for (int v : paths[i]) used[static_cast<size_t>(v)] = 1;
        pack(i + 1, count + 1);
        for (int v : paths[i]) used[static_cast<size_t>(v)] = 0;
      }
    }
  } packer{paths, std::vector<char>(static_cast<size_t>(d.order()), 0), d.order()};
  packer.pack(0, 0);
  best = packer.best;
  return best;
}

}  // namespace testutil
