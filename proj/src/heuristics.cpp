#include "dagelim/heuristics.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <queue>
#include <set>

#include "dagelim/bounds.hpp"

namespace dagelim {

namespace {

using boost::multiprecision::uint256_t;

constexpr wide_uint kWideMax = ~static_cast<wide_uint>(0);

wide_uint checked_add(wide_uint a, wide_uint b) {
  if (a > kWideMax - b) throw OverflowError("path count exceeds 128 bits");
  return a + b;
}

wide_uint checked_mul(wide_uint a, wide_uint b) {
  if (a != 0 && b > kWideMax / a) throw OverflowError("path count exceeds 128 bits");
  return a * b;
}

// Structural endpoints: a maximal path starts at an in-degree-0 vertex
// and ends at an out-degree-0 vertex of the current graph.
struct PathDp {
  std::vector<wide_uint> count_in, count_out, len_in;

  explicit PathDp(const Dag& d) {
    const size_t n = static_cast<size_t>(d.order());
    count_in.assign(n, 0);
    count_out.assign(n, 0);
    len_in.assign(n, 0);
    const auto topo = d.topological_order();
    for (int v : topo) {
      if (d.in_degree(v) == 0) {
        count_in[static_cast<size_t>(v)] = 1;
        continue;
      }
      for (int u : d.in(v)) {
        count_in[static_cast<size_t>(v)] =
            checked_add(count_in[static_cast<size_t>(v)], count_in[static_cast<size_t>(u)]);
        len_in[static_cast<size_t>(v)] =
            checked_add(len_in[static_cast<size_t>(v)],
                        checked_add(len_in[static_cast<size_t>(u)], count_in[static_cast<size_t>(u)]));
      }
    }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int v = *it;
      if (d.out_degree(v) == 0) {
        count_out[static_cast<size_t>(v)] = 1;
        continue;
      }
      for (int w : d.out(v))
        count_out[static_cast<size_t>(v)] =
            checked_add(count_out[static_cast<size_t>(v)], count_out[static_cast<size_t>(w)]);
    }
  }
};

long long total_markowitz(const Dag& d) {
  long long total = 0;
  for (int v : d.internal_vertices()) total += markowitz(d, v);
  return total;
}

// Scores are compared as (key, mu, id) lexicographically, except Mar
// which uses (mu, -degree, id). PC holds exact cross-multiplied ratios.
struct Score {
  long long key = 0;
  wide_uint pl = 0;
  long long pc_mu = 0;
  wide_uint pc_f = 1;
};

bool better(GreedyKind rule, const Score& a, long long mu_a, int deg_a, int id_a,
            const Score& b, long long mu_b, int deg_b, int id_b) {
  if (rule == GreedyKind::Mar) {
    if (mu_a != mu_b) return mu_a < mu_b;
    if (deg_a != deg_b) return deg_a > deg_b;
    return id_a < id_b;
  }
  if (rule == GreedyKind::PL) {
    if (a.pl != b.pl) return a.pl < b.pl;
  } else if (rule == GreedyKind::PC) {
    // mu_a / f_a < mu_b / f_b without rounding
    const uint256_t lhs = uint256_t(static_cast<unsigned long long>(a.pc_mu)) * uint256_t(b.pc_f);
    const uint256_t rhs = uint256_t(static_cast<unsigned long long>(b.pc_mu)) * uint256_t(a.pc_f);
    if (lhs != rhs) return lhs < rhs;
  } else {
    if (a.key != b.key) return a.key < b.key;
  }
  if (mu_a != mu_b) return mu_a < mu_b;
  return id_a < id_b;
}

EliminationTrace make_trace(const Dag& d, const std::vector<int>& seq) {
  return eliminate_sequence(d, seq);
}

void assert_topo_cost_bounds(const Dag& d, Direction dir, long long cost) {
  const long long terminal_count = static_cast<long long>(
      dir == Direction::Forward ? d.sources().size() : d.sinks().size());
  if (cost > terminal_count * d.edge_count())
    throw Error("topological elimination exceeded its cost bound");
}

}  // namespace

std::string to_string(wide_uint v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

EliminationTrace topological_mode(const Dag& d, Direction direction) {
  std::vector<int> order;
  if (direction == Direction::Forward) {
    order = d.topological_order();
  } else {
    // Kahn on the reversed graph; ties still to the smaller id.
    const int n = d.order();
    std::vector<int> outdeg(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) outdeg[static_cast<size_t>(v)] = d.out_degree(v);
    std::priority_queue<int, std::vector<int>, std::greater<int>> q;
    for (int v : d.vertices())
      if (outdeg[static_cast<size_t>(v)] == 0) q.push(v);
    while (!q.empty()) {
      const int v = q.top();
      q.pop();
      order.push_back(v);
      for (int u : d.in(v))
        if (--outdeg[static_cast<size_t>(u)] == 0) q.push(u);
    }
  }
  std::vector<int> seq;
  for (int v : order)
    if (d.is_internal(v)) seq.push_back(v);
  EliminationTrace t = make_trace(d, seq);
  assert_topo_cost_bounds(d, direction, t.total_cost);
  return t;
}

wide_uint pathlength(const Dag& d) {
  PathDp dp(d);
  wide_uint total = 0;
  for (int v : d.vertices())
    if (d.out_degree(v) == 0) total = checked_add(total, dp.len_in[static_cast<size_t>(v)]);
  return total;
}

std::vector<wide_uint> path_counts(const Dag& d) {
  PathDp dp(d);
  std::vector<wide_uint> f(static_cast<size_t>(d.order()), 0);
  for (int v : d.vertices())
    f[static_cast<size_t>(v)] =
        checked_mul(dp.count_in[static_cast<size_t>(v)], dp.count_out[static_cast<size_t>(v)]);
  return f;
}

EliminationTrace greedy_eliminate(const Dag& d, GreedyKind rule) {
  Dag cur = d;
  std::vector<int> seq;
  std::vector<int> remaining = cur.internal_vertices();
  while (!remaining.empty()) {
    const long long m_total =
        (rule == GreedyKind::MR || rule == GreedyKind::M2D) ? total_markowitz(cur) : 0;
    std::vector<wide_uint> f;
    if (rule == GreedyKind::PC) f = path_counts(cur);
    std::vector<int> s_count, t_count;
    if (rule == GreedyKind::RMar) {
      s_count.assign(static_cast<size_t>(cur.order()), 0);
      t_count.assign(static_cast<size_t>(cur.order()), 0);
      for (int v : remaining) {
        const ReachSets rs = reach_sets(cur, v);
        s_count[static_cast<size_t>(v)] = static_cast<int>(rs.sources.size());
        t_count[static_cast<size_t>(v)] = static_cast<int>(rs.sinks.size());
      }
    }

    int best_v = -1;
    Score best_score;
    long long best_mu = 0;
    int best_deg = 0;
    for (int v : remaining) {
      const long long mu = markowitz(cur, v);
      const int deg = cur.in_degree(v) + cur.out_degree(v);
      Score sc;
      switch (rule) {
        case GreedyKind::Mar:
          sc.key = mu;
          break;
        case GreedyKind::RMar:
          sc.key = mu - static_cast<long long>(s_count[static_cast<size_t>(v)]) *
                            t_count[static_cast<size_t>(v)];
          break;
        case GreedyKind::MR:
          sc.key = total_markowitz(eliminate_vertex(cur, v).first);
          break;
        case GreedyKind::M2D: {
          const long long after = total_markowitz(eliminate_vertex(cur, v).first);
          sc.key = after - m_total + 2 * mu;  // mu(v) + d(v)
          break;
        }
        case GreedyKind::DMC:
          sc.key = mu - mu_star(cur, v);
          break;
        case GreedyKind::PL:
          sc.pl = pathlength(eliminate_vertex(cur, v).first);
          break;
        case GreedyKind::PC:
          sc.pc_mu = mu;
          sc.pc_f = f[static_cast<size_t>(v)];
          if (sc.pc_f == 0) throw Error("path count of an internal vertex is zero");
          break;
        case GreedyKind::ER:
          sc.key = eliminate_vertex(cur, v).first.edge_count();
          break;
        case GreedyKind::MD:
          sc.key = mu - deg;
          break;
      }
      if (best_v < 0 || better(rule, sc, mu, deg, v, best_score, best_mu, best_deg, best_v)) {
        best_v = v;
        best_score = sc;
        best_mu = mu;
        best_deg = deg;
      }
    }
    seq.push_back(best_v);
    cur = eliminate_vertex(cur, best_v).first;
    remaining.erase(std::find(remaining.begin(), remaining.end(), best_v));
  }
  return make_trace(d, seq);
}

std::vector<int> find_st_separator(const Dag& d) {
  const CutResult cut = min_vertex_cut(d, d.sources(), d.sinks(), CutMode::Undirected);
  if (!cut.separable)
    throw NotSeparableError("sources and sinks share an edge; no internal separator exists");
  return cut.witness;
}

EliminationTrace middle_out(const Dag& d, std::optional<std::vector<int>> separator) {
  std::vector<int> c = separator ? *separator : find_st_separator(d);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<char> in_c(static_cast<size_t>(d.order()), 0);
  for (int v : c) {
    if (v < 0 || v >= d.order() || !d.is_internal(v))
      throw InvalidSeparatorError("separator vertex " + std::to_string(v) + " is not internal");
    in_c[static_cast<size_t>(v)] = 1;
  }

  // Undirected components of D \ C.
  const int n = d.order();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int comp_count = 0;
  for (int start : d.vertices()) {
    if (in_c[static_cast<size_t>(start)] || comp[static_cast<size_t>(start)] >= 0) continue;
    const int cid = comp_count++;
    std::vector<int> stack{start};
    comp[static_cast<size_t>(start)] = cid;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      auto push = [&](int w) {
        if (!in_c[static_cast<size_t>(w)] && comp[static_cast<size_t>(w)] < 0) {
          comp[static_cast<size_t>(w)] = cid;
          stack.push_back(w);
        }
      };
      for (int w : d.out(v)) push(w);
      for (int w : d.in(v)) push(w);
    }
  }

  std::vector<char> has_source(static_cast<size_t>(comp_count), 0);
  std::vector<char> has_sink(static_cast<size_t>(comp_count), 0);
  for (int v : d.vertices()) {
    if (in_c[static_cast<size_t>(v)]) continue;
    if (d.role(v) == Role::Source) has_source[static_cast<size_t>(comp[static_cast<size_t>(v)])] = 1;
    if (d.role(v) == Role::Sink) has_sink[static_cast<size_t>(comp[static_cast<size_t>(v)])] = 1;
  }
  for (int i = 0; i < comp_count; ++i)
    if (has_source[static_cast<size_t>(i)] && has_sink[static_cast<size_t>(i)])
      throw InvalidSeparatorError("given set does not separate sources from sinks");

  enum class Side { Left, Right, Component };
  auto side_of = [&](int cid) {
    if (has_source[static_cast<size_t>(cid)]) return Side::Left;
    if (has_sink[static_cast<size_t>(cid)]) return Side::Right;
    return Side::Component;
  };

  // Builds the sub-DAG on `keep` plus C, drops the requested edge groups,
  // prunes isolated vertices, and returns the (reverse-)topological order
  // of the internal vertices of D it contains.
  auto phase_order = [&](const std::vector<char>& keep, bool drop_s_to_c, bool drop_c_to_t,
                         bool reverse) {
    std::vector<int> verts;
    std::vector<std::pair<int, int>> sub_edges;
    std::vector<char> touched(static_cast<size_t>(n), 0);
    for (auto [u, w] : d.edges()) {
      const bool u_in = keep[static_cast<size_t>(u)] || in_c[static_cast<size_t>(u)];
      const bool w_in = keep[static_cast<size_t>(w)] || in_c[static_cast<size_t>(w)];
      if (!u_in || !w_in) continue;
      if (in_c[static_cast<size_t>(u)] && in_c[static_cast<size_t>(w)]) continue;  // E(C)
      if (drop_s_to_c && d.role(u) == Role::Source && in_c[static_cast<size_t>(w)]) continue;
      if (drop_c_to_t && in_c[static_cast<size_t>(u)] && d.role(w) == Role::Sink) continue;
      sub_edges.emplace_back(u, w);
      touched[static_cast<size_t>(u)] = 1;
      touched[static_cast<size_t>(w)] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (touched[static_cast<size_t>(v)]) verts.push_back(v);  // ascending: local id order = id order
    std::vector<int> local_of(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < verts.size(); ++i) local_of[static_cast<size_t>(verts[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> local_edges;
    local_edges.reserve(sub_edges.size());
    for (auto [u, w] : sub_edges)
      local_edges.emplace_back(local_of[static_cast<size_t>(u)], local_of[static_cast<size_t>(w)]);
    const Dag sub = Dag::from_edges(static_cast<int>(verts.size()), local_edges);
    std::vector<int> order = sub.topological_order();
    if (reverse) {
      // reverse topological order with ascending-id ties, via the mirror graph
      order.clear();
      std::vector<int> outdeg(verts.size(), 0);
      for (size_t v = 0; v < verts.size(); ++v) outdeg[v] = sub.out_degree(static_cast<int>(v));
      std::priority_queue<int, std::vector<int>, std::greater<int>> q;
      for (size_t v = 0; v < verts.size(); ++v)
        if (outdeg[v] == 0) q.push(static_cast<int>(v));
      while (!q.empty()) {
        const int v = q.top();
        q.pop();
        order.push_back(v);
        for (int u : sub.in(v))
          if (--outdeg[static_cast<size_t>(u)] == 0) q.push(u);
      }
    }
    // Only internal vertices of the original graph are eliminated in a
    // phase; C is handled by the final pass.
    std::vector<int> seq;
    for (int local : order) {
      const int v = verts[static_cast<size_t>(local)];
      if (d.is_internal(v) && !in_c[static_cast<size_t>(v)]) seq.push_back(v);
    }
    return seq;
  };

  std::vector<int> sequence;
  {
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int v : d.vertices())
      if (!in_c[static_cast<size_t>(v)] && side_of(comp[static_cast<size_t>(v)]) == Side::Left)
        keep[static_cast<size_t>(v)] = 1;
    const auto left = phase_order(keep, /*drop_s_to_c=*/true, /*drop_c_to_t=*/false, /*reverse=*/true);
    sequence.insert(sequence.end(), left.begin(), left.end());
  }
  {
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int v : d.vertices())
      if (!in_c[static_cast<size_t>(v)] && side_of(comp[static_cast<size_t>(v)]) == Side::Right)
        keep[static_cast<size_t>(v)] = 1;
    const auto right = phase_order(keep, /*drop_s_to_c=*/false, /*drop_c_to_t=*/true, /*reverse=*/false);
    sequence.insert(sequence.end(), right.begin(), right.end());
  }
  for (int cid = 0; cid < comp_count; ++cid) {
    if (side_of(cid) != Side::Component) continue;
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int v : d.vertices())
      if (!in_c[static_cast<size_t>(v)] && comp[static_cast<size_t>(v)] == cid)
        keep[static_cast<size_t>(v)] = 1;
    const auto mid = phase_order(keep, false, false, /*reverse=*/false);
    sequence.insert(sequence.end(), mid.begin(), mid.end());
  }

  // Final pass: eliminate the separator on D with everything else gone.
  std::vector<int> non_c;
  for (int v : d.internal_vertices())
    if (!in_c[static_cast<size_t>(v)]) non_c.push_back(v);
  const Dag rest = eliminate_set(d, non_c);
  for (int v : rest.topological_order())
    if (rest.is_internal(v)) sequence.push_back(v);

  return make_trace(d, sequence);
}

std::string heuristic_name(const HeuristicSpec& spec) {
  if (std::holds_alternative<Direction>(spec))
    return std::get<Direction>(spec) == Direction::Forward ? "fw" : "rev";
  if (std::holds_alternative<MiddleOutTag>(spec)) return "mo";
  switch (std::get<GreedyKind>(spec)) {
    case GreedyKind::Mar: return "mar";
    case GreedyKind::RMar: return "rmar";
    case GreedyKind::MR: return "mr";
    case GreedyKind::M2D: return "m2d";
    case GreedyKind::DMC: return "dmc";
    case GreedyKind::PL: return "pl";
    case GreedyKind::PC: return "pc";
    case GreedyKind::ER: return "er";
    case GreedyKind::MD: return "md";
  }
  return "?";
}

EnsembleResult ensemble(const Dag& d, const std::vector<HeuristicSpec>& members) {
  if (members.empty()) throw Error("ensemble requires at least one member");
  EnsembleResult result;
  for (size_t i = 0; i < members.size(); ++i) {
    MemberOutcome outcome;
    outcome.name = heuristic_name(members[i]);
    try {
      EliminationTrace t;
      if (std::holds_alternative<Direction>(members[i]))
        t = topological_mode(d, std::get<Direction>(members[i]));
      else if (std::holds_alternative<MiddleOutTag>(members[i]))
        t = middle_out(d);
      else
        t = greedy_eliminate(d, std::get<GreedyKind>(members[i]));
      if (result.best_ove_member < 0 || t.total_cost < result.best_ove.total_cost) {
        result.best_ove = t;
        result.best_ove_member = static_cast<int>(i);
      }
      if (result.best_mec_member < 0 || t.min_edges < result.best_min_edges) {
        result.best_min_edges = t.min_edges;
        result.best_mec_member = static_cast<int>(i);
      }
      outcome.trace = std::move(t);
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    result.members.push_back(std::move(outcome));
  }
  if (result.best_ove_member < 0) throw Error("every ensemble member failed");
  return result;
}

}  // namespace dagelim
