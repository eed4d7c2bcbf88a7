#include "dagelim/exact.hpp"

#include <algorithm>
#include <climits>

#include "bitgraph.hpp"
#include "dagelim/bounds.hpp"
#include "dagelim/heuristics.hpp"

namespace dagelim {

namespace {

std::vector<int> internal_list(const Dag& d) { return d.internal_vertices(); }

// ---------------------------------------------------------------------
// brute force over all |I|! orders (the reference oracle: no pruning)
// ---------------------------------------------------------------------

struct BruteSolver {
  std::vector<int> internals;
  std::vector<BitGraph> levels;
  std::vector<char> used;
  std::vector<int> prefix;
  long long best = LLONG_MAX;
  std::vector<int> best_seq;
  long long nodes = 0;

  void run(int depth, long long cost) {
    ++nodes;
    if (depth == static_cast<int>(internals.size())) {
      if (cost < best) {
        best = cost;
        best_seq = prefix;
      }
      return;
    }
    for (size_t i = 0; i < internals.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      const int v = internals[i];
      levels[static_cast<size_t>(depth) + 1] = levels[static_cast<size_t>(depth)];
      const long long mu = levels[static_cast<size_t>(depth) + 1].eliminate(v);
      prefix.push_back(v);
      run(depth + 1, cost + mu);
      prefix.pop_back();
      used[i] = 0;
    }
  }
};

// ---------------------------------------------------------------------
// branch and bound for minimum-cost total elimination
// ---------------------------------------------------------------------

struct TtEntry {
  static constexpr std::uint64_t kEmpty = ~0ull;
  std::uint64_t mask = kEmpty;
  long long best_g = 0;
  long long completion_lb = 0;
};

// Unit-capacity vertex cuts on a BitGraph, with reusable buffers. Every
// augmenting path crosses a unit splitter arc, so augmentation is by 1.
struct ScratchFlow {
  struct Arc {
    int to, rev, cap;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> prev_node, prev_arc;

  void init(int nodes) {
    if (static_cast<int>(adj.size()) < nodes) {
      adj.resize(static_cast<size_t>(nodes));
      prev_node.resize(static_cast<size_t>(nodes));
      prev_arc.resize(static_cast<size_t>(nodes));
    }
    for (int i = 0; i < nodes; ++i) adj[static_cast<size_t>(i)].clear();
  }

  void arc(int a, int b, int cap) {
    adj[static_cast<size_t>(a)].push_back({b, static_cast<int>(adj[static_cast<size_t>(b)].size()), cap});
    adj[static_cast<size_t>(b)].push_back({a, static_cast<int>(adj[static_cast<size_t>(a)].size()) - 1, 0});
  }

  int max_flow(int s, int t, int node_count, int limit) {
    int flow = 0;
    std::vector<int> queue;
    while (flow < limit) {
      std::fill(prev_node.begin(), prev_node.begin() + node_count, -1);
      queue.assign(1, s);
      prev_node[static_cast<size_t>(s)] = s;
      bool found = false;
      for (size_t qi = 0; qi < queue.size() && !found; ++qi) {
        const int v = queue[static_cast<size_t>(qi)];
        const auto& arcs = adj[static_cast<size_t>(v)];
        for (size_t ai = 0; ai < arcs.size(); ++ai) {
          const Arc& a = arcs[ai];
          if (a.cap <= 0 || prev_node[static_cast<size_t>(a.to)] >= 0) continue;
          prev_node[static_cast<size_t>(a.to)] = v;
          prev_arc[static_cast<size_t>(a.to)] = static_cast<int>(ai);
          if (a.to == t) {
            found = true;
            break;
          }
          queue.push_back(a.to);
        }
      }
      if (!found) break;
      for (int v = t; v != s; v = prev_node[static_cast<size_t>(v)]) {
        Arc& a = adj[static_cast<size_t>(prev_node[static_cast<size_t>(v)])]
                    [static_cast<size_t>(prev_arc[static_cast<size_t>(v)])];
        a.cap -= 1;
        adj[static_cast<size_t>(v)][static_cast<size_t>(a.rev)].cap += 1;
      }
      ++flow;
    }
    return flow;
  }
};

// Cut(S,v) * Cut(v,T) evaluated on the residual graph. Only v itself is
// protected; terminals may be cut, matching the per-vertex cost floor.
struct ResidualMuStar {
  static constexpr int kInf = 1 << 20;
  ScratchFlow flow;
  std::vector<int> source_ids, sink_ids;

  long long eval(const BitGraph& g, int v) {
    const int n = g.n;
    const int super = 2 * n;
    long long cut_s = 0, cut_t = 0;
    {
      flow.init(2 * n + 1);
      int limit = 0;
      for (int u = 0; u < n; ++u) {
        if (!g.present[static_cast<size_t>(u)] || u == v) continue;
        flow.arc(2 * u, 2 * u + 1, 1);
      }
      for (int a = 0; a < n; ++a) {
        if (!g.present[static_cast<size_t>(a)] || a == v) continue;
        const std::uint64_t* row = g.out_row(a);
        for (int wi = 0; wi < g.words; ++wi) {
          std::uint64_t bits = row[wi];
          while (bits) {
            const int b = wi * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            if (b == v) {
              flow.arc(2 * a + 1, 2 * v, kInf);
              ++limit;
            } else {
              flow.arc(2 * a + 1, 2 * b, kInf);
            }
          }
        }
      }
      for (int s : source_ids)
        if (g.present[static_cast<size_t>(s)] && s != v) flow.arc(super, 2 * s, kInf);
      cut_s = flow.max_flow(super, 2 * v, 2 * n + 1, limit);
    }
    {
      flow.init(2 * n + 1);
      const int limit = g.out_degree(v);
      for (int u = 0; u < n; ++u) {
        if (!g.present[static_cast<size_t>(u)] || u == v) continue;
        flow.arc(2 * u, 2 * u + 1, 1);
      }
      for (int a = 0; a < n; ++a) {
        if (!g.present[static_cast<size_t>(a)]) continue;
        const std::uint64_t* row = g.out_row(a);
        const int from = a == v ? 2 * v : 2 * a + 1;
        for (int wi = 0; wi < g.words; ++wi) {
          std::uint64_t bits = row[wi];
          while (bits) {
            const int b = wi * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            if (b == v) continue;  // arcs into v are unused from this side
            flow.arc(from, 2 * b, kInf);
          }
        }
      }
      for (int t : sink_ids)
        if (g.present[static_cast<size_t>(t)] && t != v) flow.arc(2 * t + 1, super, kInf);
      cut_t = flow.max_flow(2 * v, super, 2 * n + 1, limit);
    }
    return cut_s * cut_t;
  }
};

struct BnbSolver {
  std::vector<int> internals;
  std::vector<char> eliminated;  // by internal index
  std::vector<std::vector<long long>> level_floors;  // per-vertex mu* floors, per depth
  std::vector<BitGraph> levels;
  std::vector<std::uint64_t> rem_row;  // remaining internals as an n-bit row
  std::vector<int> prefix;
  long long incumbent = LLONG_MAX;
  std::vector<int> best_seq;
  long long budget = 0;
  long long nodes = 0;
  bool exhausted_budget = false;
  std::vector<TtEntry> table;
  std::uint64_t table_mask = 0;
  bool use_table = false;
  ResidualMuStar residual_mu;

  void set_rem(int v, bool on) {
    if (on)
      rem_row[static_cast<size_t>(v >> 6)] |= 1ull << (v & 63);
    else
      rem_row[static_cast<size_t>(v >> 6)] &= ~(1ull << (v & 63));
  }

  // ceil(m_I / 2) on the residual, counting edges touching a remaining
  // internal vertex.
  long long half_edge_lb(const BitGraph& g) const {
    long long m_internal = 0;
    for (int wi = 0; wi < g.words; ++wi) {
      std::uint64_t bits = rem_row[static_cast<size_t>(wi)];
      while (bits) {
        const int v = wi * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        m_internal += g.out_degree(v);
        const std::uint64_t* in = g.in_row(v);
        for (int k = 0; k < g.words; ++k)
          m_internal += std::popcount(in[k] & ~rem_row[static_cast<size_t>(k)]);
      }
    }
    return (m_internal + 1) / 2;
  }

  TtEntry* probe(std::uint64_t mask) {
    if (!use_table) return nullptr;
    std::uint64_t h = mask * 0x9e3779b97f4a7c15ull;
    h ^= h >> 29;
    TtEntry* victim = nullptr;
    for (int step = 0; step < 8; ++step) {
      TtEntry& e = table[static_cast<size_t>((h + static_cast<std::uint64_t>(step)) & table_mask)];
      if (e.mask == mask) return &e;
      if (e.mask == TtEntry::kEmpty) return &e;
      if (!victim || e.best_g > victim->best_g) victim = &e;
    }
    // all probed slots taken by other states; recycle the least useful
    *victim = TtEntry{};
    return victim;
  }

  // `refresh` holds internal indices whose neighborhoods changed in the
  // parent's elimination; their floors are re-evaluated on the residual
  // graph, but only once the inherited bound fails to prune (stale
  // floors stay valid because mu* never decreases under elimination).
  long long solve(int depth, std::uint64_t emask, long long g_cost,
                  const std::vector<int>& refresh) {
    if (exhausted_budget) return 0;
    if (++nodes > budget) {
      exhausted_budget = true;
      return 0;
    }
    const int k = static_cast<int>(internals.size());
    if (depth == k) {
      if (g_cost < incumbent) {
        incumbent = g_cost;
        best_seq = prefix;
      }
      return 0;
    }
    BitGraph& cur = levels[static_cast<size_t>(depth)];
    std::vector<long long>& floors = level_floors[static_cast<size_t>(depth)];
    long long mu_rem = 0;
    for (int i = 0; i < k; ++i)
      if (!eliminated[static_cast<size_t>(i)]) mu_rem += floors[static_cast<size_t>(i)];
    long long lb = std::max(half_edge_lb(cur), mu_rem);

    TtEntry* entry = use_table ? probe(emask) : nullptr;
    bool known = entry && entry->mask == emask;
    if (known) lb = std::max(lb, entry->completion_lb);
    if (g_cost + lb >= incumbent) return lb;
    if (known && entry->best_g <= g_cost) return lb;

    for (int i : refresh) {
      if (eliminated[static_cast<size_t>(i)]) continue;
      const long long fresh = residual_mu.eval(cur, internals[static_cast<size_t>(i)]);
      if (fresh > floors[static_cast<size_t>(i)]) {
        mu_rem += fresh - floors[static_cast<size_t>(i)];
        floors[static_cast<size_t>(i)] = fresh;
      }
    }
    lb = std::max(lb, mu_rem);
    if (g_cost + lb >= incumbent) return lb;
    if (entry) {
      if (!known) {
        entry->mask = emask;
        entry->completion_lb = lb;
      }
      entry->best_g = g_cost;
    }

    // children in ascending (current Markowitz, id) order; a Markowitz-1
    // vertex may go first unconditionally, collapsing the branching
    std::vector<std::pair<long long, int>> children;
    int forced = -1;
    for (int i = 0; i < k; ++i) {
      if (eliminated[static_cast<size_t>(i)]) continue;
      const long long mu = cur.markowitz(internals[static_cast<size_t>(i)]);
      if (mu <= 1 && forced < 0) forced = i;
      children.emplace_back(mu, i);
    }
    if (forced >= 0) {
      const long long mu = cur.markowitz(internals[static_cast<size_t>(forced)]);
      children.assign(1, {mu, forced});
    } else {
      std::sort(children.begin(), children.end(),
                [&](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return internals[static_cast<size_t>(a.second)] <
                         internals[static_cast<size_t>(b.second)];
                });
    }

    std::vector<int> child_refresh;
    long long proven = LLONG_MAX;
    for (auto [mu_est, i] : children) {
      const int v = internals[static_cast<size_t>(i)];
      BitGraph& child = levels[static_cast<size_t>(depth) + 1];
      child = cur;
      child_refresh.clear();
      for (int j = 0; j < k; ++j) {
        if (j == i || eliminated[static_cast<size_t>(j)]) continue;
        const int u = internals[static_cast<size_t>(j)];
        if (cur.has_edge(u, v) || cur.has_edge(v, u)) child_refresh.push_back(j);
      }
      const long long mu = child.eliminate(v);
      level_floors[static_cast<size_t>(depth) + 1] = floors;
      prefix.push_back(v);
      set_rem(v, false);
      eliminated[static_cast<size_t>(i)] = 1;
      const long long sub =
          solve(depth + 1, use_table ? emask | (1ull << i) : 0, g_cost + mu, child_refresh);
      eliminated[static_cast<size_t>(i)] = 0;
      set_rem(v, true);
      prefix.pop_back();
      if (exhausted_budget) return lb;
      proven = std::min(proven, mu + sub);
    }
    if (proven != LLONG_MAX) lb = std::max(lb, proven);
    if (entry && entry->mask == emask)
      entry->completion_lb = std::max(entry->completion_lb, lb);
    return lb;
  }
};

// ---------------------------------------------------------------------
// exact minimum edge count via include/exclude over subsets of I
// ---------------------------------------------------------------------

struct MecSolver {
  std::vector<int> internals;
  std::vector<BitGraph> levels;
  std::vector<std::uint64_t> rem_row;
  std::vector<int> chosen;
  long long best = LLONG_MAX;
  std::vector<int> best_subset;
  long long nodes = 0;
  bool degree_floor_ok = false;  // every present vertex keeps degree >= 1

  void set_rem(int v, bool on) {
    if (on)
      rem_row[static_cast<size_t>(v >> 6)] |= 1ull << (v & 63);
    else
      rem_row[static_cast<size_t>(v >> 6)] &= ~(1ull << (v & 63));
  }

  // Edges between decided vertices can never disappear; on top of that,
  // every decided vertex whose current in-edges all come from undecided
  // vertices will still end with an in-edge (degrees never drop to zero
  // once the graph has none), and those future edges have distinct heads.
  long long lower_bound(const BitGraph& g) const {
    long long persist = 0;
    long long heads = 0, tails = 0;
    for (int v = 0; v < g.n; ++v) {
      if (!g.present[static_cast<size_t>(v)]) continue;
      if ((rem_row[static_cast<size_t>(v >> 6)] >> (v & 63)) & 1) continue;
      const std::uint64_t* out = g.out_row(v);
      const std::uint64_t* in = g.in_row(v);
      int persist_out = 0, out_deg = 0, persist_in = 0, in_deg = 0;
      for (int k = 0; k < g.words; ++k) {
        persist_out += std::popcount(out[k] & ~rem_row[static_cast<size_t>(k)]);
        out_deg += std::popcount(out[k]);
        persist_in += std::popcount(in[k] & ~rem_row[static_cast<size_t>(k)]);
        in_deg += std::popcount(in[k]);
      }
      persist += persist_out;
      if (degree_floor_ok) {
        if (in_deg > 0 && persist_in == 0) ++heads;
        if (out_deg > 0 && persist_out == 0) ++tails;
      }
    }
    return persist + std::max(heads, tails);
  }

  void solve(int depth, const BitGraph& g) {
    ++nodes;
    if (depth == static_cast<int>(internals.size())) {
      if (g.edges() < best) {
        best = g.edges();
        best_subset = chosen;
      }
      return;
    }
    if (lower_bound(g) >= best) return;
    const int v = internals[static_cast<size_t>(depth)];
    set_rem(v, false);
    // include first: full elimination is often optimal or close
    levels[static_cast<size_t>(depth)] = g;
    levels[static_cast<size_t>(depth)].eliminate(v);
    chosen.push_back(v);
    solve(depth + 1, levels[static_cast<size_t>(depth)]);
    chosen.pop_back();
    solve(depth + 1, g);
    set_rem(v, true);
  }
};

}  // namespace

ExactResult brute_force_ove(const Dag& d, int limit) {
  ExactResult r;
  const auto internals = internal_list(d);
  if (static_cast<int>(internals.size()) > limit) {
    r.status = SolveStatus::TooLarge;
    return r;
  }
  BruteSolver solver;
  solver.internals = internals;
  solver.used.assign(internals.size(), 0);
  solver.levels.assign(internals.size() + 1, BitGraph{});
  solver.levels[0] = BitGraph::from(d);
  solver.run(0, 0);
  r.objective = internals.empty() ? 0 : solver.best;
  r.witness = solver.best_seq;
  r.nodes_explored = solver.nodes;
  r.status = SolveStatus::Optimal;
  return r;
}

ExactResult bnb_ove(const Dag& d, long long budget) {
  ExactResult r;
  BnbSolver solver;
  solver.internals = internal_list(d);
  const int k = static_cast<int>(solver.internals.size());

  const EnsembleResult seed = ensemble(
      d, {Direction::Forward, Direction::Reverse, GreedyKind::Mar, GreedyKind::RMar});
  solver.incumbent = seed.best_ove.total_cost;
  solver.best_seq = seed.best_ove.sequence;

  solver.level_floors.assign(static_cast<size_t>(k) + 1,
                             std::vector<long long>(static_cast<size_t>(k), 0));
  for (int i = 0; i < k; ++i)
    solver.level_floors[0][static_cast<size_t>(i)] =
        mu_star(d, solver.internals[static_cast<size_t>(i)]);
  solver.eliminated.assign(static_cast<size_t>(k), 0);
  solver.levels.assign(static_cast<size_t>(k) + 1, BitGraph{});
  solver.levels[0] = BitGraph::from(d);
  solver.rem_row.assign(static_cast<size_t>(solver.levels[0].words), 0);
  for (int v : solver.internals) solver.set_rem(v, true);
  solver.residual_mu.source_ids = d.sources();
  solver.residual_mu.sink_ids = d.sinks();
  solver.budget = budget;

  solver.use_table = k > 0 && k <= 63;
  if (solver.use_table) {
    const int bits = std::clamp(k + 1, 16, 24);
    solver.table.assign(static_cast<size_t>(1) << bits, TtEntry{});
    solver.table_mask = (static_cast<std::uint64_t>(1) << bits) - 1;
  }

  solver.solve(0, 0, 0, {});

  r.objective = solver.incumbent;
  r.witness = solver.best_seq;
  r.nodes_explored = solver.nodes;
  r.status = solver.exhausted_budget ? SolveStatus::BudgetExceeded : SolveStatus::Optimal;
  return r;
}

ExactResult exact_mec(const Dag& d, int limit) {
  ExactResult r;
  const auto internals = internal_list(d);
  if (static_cast<int>(internals.size()) > limit) {
    r.status = SolveStatus::TooLarge;
    return r;
  }
  MecSolver solver;
  solver.internals = internals;
  solver.levels.assign(internals.size() + 1, BitGraph{});
  BitGraph root = BitGraph::from(d);
  solver.rem_row.assign(static_cast<size_t>(root.words), 0);
  for (int v : internals) solver.set_rem(v, true);
  solver.degree_floor_ok = true;
  for (int v : d.vertices()) {
    const bool has_in = d.in_degree(v) > 0;
    const bool has_out = d.out_degree(v) > 0;
    if (d.role(v) == Role::Internal && (!has_in || !has_out)) solver.degree_floor_ok = false;
  }
  solver.solve(0, root);
  r.objective = solver.best;
  r.witness = solver.best_subset;
  std::sort(r.witness.begin(), r.witness.end());
  r.nodes_explored = solver.nodes;
  r.status = SolveStatus::Optimal;
  return r;
}

}  // namespace dagelim
