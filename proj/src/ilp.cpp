#include "dagelim/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dagelim/bounds.hpp"
#include "dagelim/preprocess.hpp"

namespace dagelim {

namespace {

// Term accumulator that folds constants into the right-hand side.
struct RowBuilder {
  std::vector<LinTerm> terms;
  long long constant = 0;

  void add_var(int var, long long coef) {
    if (var >= 0)
      terms.push_back({var, coef});
    else
      throw Error("internal: negative var id");
  }
  void add_const(long long c) { constant += c; }
};

// A pair/triple variable reference: either a materialized variable id or
// a known constant.
struct Ref {
  int var = -1;       // -1 means constant
  long long value = 0;
  long long coef_sign = 1;  // +1, or the 1 - x substitution (const 1, coef -1)
  bool negated = false;

  static Ref constant(long long v) { return {-1, v, 1, false}; }
  static Ref variable(int id) { return {id, 0, 1, false}; }
  static Ref one_minus(int id) { return {id, 0, 1, true}; }

  void add_to(RowBuilder& row, long long coef) const {
    if (var < 0) {
      row.add_const(coef * value);
    } else if (negated) {
      row.add_const(coef);
      row.add_var(var, -coef);
    } else {
      row.add_var(var, coef);
    }
  }
};

struct ModelBuilder {
  IlpModel model;

  int new_var(std::string name, std::optional<int> fixed) {
    const int id = static_cast<int>(model.vars.size());
    model.var_index.emplace(name, id);
    model.vars.push_back({std::move(name), fixed});
    return id;
  }

  // Skips rows that hold for every binary assignment.
  void add_row(RowBuilder&& row, ConstraintSense sense, long long rhs) {
    rhs -= row.constant;
    if (row.terms.empty()) {
      const bool ok = sense == ConstraintSense::Le   ? 0 <= rhs
                      : sense == ConstraintSense::Ge ? 0 >= rhs
                                                     : rhs == 0;
      if (!ok) throw Error("internal: constant row infeasible");
      return;
    }
    long long lo = 0, hi = 0;
    for (const LinTerm& t : row.terms) (t.coef > 0 ? hi : lo) += t.coef;
    if (sense == ConstraintSense::Le && hi <= rhs) return;
    if (sense == ConstraintSense::Ge && lo >= rhs) return;
    model.constraints.push_back({std::move(row.terms), sense, rhs});
  }
};

std::string pair_name(const char* prefix, int i, int j) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

std::vector<std::vector<char>> reachability(const Dag& d) {
  const int n = d.order();
  std::vector<std::vector<char>> reach(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
  for (int s : d.vertices()) {
    std::vector<int> stack{s};
    reach[static_cast<size_t>(s)][static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : d.out(v)) {
        if (!reach[static_cast<size_t>(s)][static_cast<size_t>(w)]) {
          reach[static_cast<size_t>(s)][static_cast<size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return reach;
}

}  // namespace

size_t IlpModel::free_var_count() const {
  size_t n = 0;
  for (const auto& v : vars)
    if (!v.fixed) ++n;
  return n;
}

size_t IlpModel::fixed_var_count() const { return vars.size() - free_var_count(); }

int IlpModel::find_var(const std::string& name) const {
  const auto it = var_index.find(name);
  return it == var_index.end() ? -1 : it->second;
}

IlpModel build_ove_ilp(const Dag& d, OveVariant variant) {
  ModelBuilder mb;
  mb.model.problem = IlpProblem::OVE;
  mb.model.variant = variant;

  if (variant == OveVariant::vD) {
    ReductionLog log = reduce(d);
    mb.model.graph = std::move(log.residual);
    mb.model.accrued_cost = log.accrued_cost;
    for (const auto& step : log.prefix) mb.model.prefix.push_back(step.vertex);
  } else {
    mb.model.graph = d;
  }
  const Dag& g = mb.model.graph;
  const bool closure = variant != OveVariant::vA;
  mb.model.closure_restricted = closure;

  const std::vector<int> verts = g.vertices();
  const std::vector<int> internals = g.internal_vertices();
  const int n = g.order();
  const auto reach = closure ? reachability(g) : std::vector<std::vector<char>>{};
  auto reachable = [&](int i, int j) {
    return reach[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0;
  };

  // x variables for internal pairs i < j; everything else follows from
  // the elimination semantics: internal-before-terminal is 1, the rest 0.
  std::vector<int> x_var(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  for (size_t a = 0; a < internals.size(); ++a) {
    for (size_t b = a + 1; b < internals.size(); ++b) {
      const int i = internals[a], j = internals[b];
      x_var[static_cast<size_t>(i) * n + j] = mb.new_var(pair_name("x", i, j), std::nullopt);
    }
  }
  auto x_ref = [&](int i, int j) -> Ref {
    const bool ii = g.is_internal(i), ji = g.is_internal(j);
    if (!ii) return Ref::constant(0);
    if (!ji) return Ref::constant(1);
    if (i < j) return Ref::variable(x_var[static_cast<size_t>(i) * n + j]);
    return Ref::one_minus(x_var[static_cast<size_t>(j) * n + i]);
  };

  // e variables: fixed to 1 on input edges, elided outside the closure.
  std::vector<int> e_var(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  std::vector<char> e_elided(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int i : verts) {
    for (int j : verts) {
      if (i == j) continue;
      if (g.has_edge(i, j)) {
        e_var[static_cast<size_t>(i) * n + j] = mb.new_var(pair_name("e", i, j), 1);
      } else if (closure && !reachable(i, j)) {
        e_elided[static_cast<size_t>(i) * n + j] = 1;
      } else {
        e_var[static_cast<size_t>(i) * n + j] = mb.new_var(pair_name("e", i, j), std::nullopt);
      }
    }
  }
  auto e_ref = [&](int i, int j) -> Ref {
    if (e_elided[static_cast<size_t>(i) * n + j]) return Ref::constant(0);
    const int id = e_var[static_cast<size_t>(i) * n + j];
    if (mb.model.vars[static_cast<size_t>(id)].fixed)
      return Ref::constant(*mb.model.vars[static_cast<size_t>(id)].fixed);
    return Ref::variable(id);
  };

  // z variables, one block per internal k; all of them carry objective
  // weight 1.
  std::map<long long, int> z_var;
  auto z_key = [&](int i, int j, int k) {
    return (static_cast<long long>(k) * n + i) * n + j;
  };
  for (int k : internals) {
    for (int i : verts) {
      if (i == k) continue;
      for (int j : verts) {
        if (j == k || j == i) continue;
        if (closure && (!reachable(i, k) || !reachable(k, j))) continue;  // elided, zero
        const int id = mb.new_var(pair_name("z", i, j) + "_" + std::to_string(k), std::nullopt);
        z_var[z_key(i, j, k)] = id;
        mb.model.objective.push_back({id, 1});
      }
    }
  }
  auto z_ref = [&](int i, int j, int k) -> Ref {
    const auto it = z_var.find(z_key(i, j, k));
    return it == z_var.end() ? Ref::constant(0) : Ref::variable(it->second);
  };

  // order transitivity over internal triples (the only non-vacuous ones)
  for (int i : internals)
    for (int j : internals) {
      if (j == i) continue;
      for (int k : internals) {
        if (k == i || k == j) continue;
        RowBuilder row;
        x_ref(i, j).add_to(row, 1);
        x_ref(j, k).add_to(row, 1);
        x_ref(i, k).add_to(row, -1);
        mb.add_row(std::move(row), ConstraintSense::Le, 1);
      }
    }

  // edge persistence and payment
  for (int k : internals) {
    for (int i : verts) {
      if (i == k) continue;
      for (int j : verts) {
        if (j == k || j == i) continue;
        {
          RowBuilder row;
          x_ref(k, i).add_to(row, 1);
          x_ref(k, j).add_to(row, 1);
          e_ref(i, k).add_to(row, 1);
          e_ref(k, j).add_to(row, 1);
          e_ref(i, j).add_to(row, -1);
          mb.add_row(std::move(row), ConstraintSense::Le, 3);
        }
        {
          RowBuilder row;
          x_ref(k, i).add_to(row, 1);
          x_ref(k, j).add_to(row, 1);
          e_ref(i, k).add_to(row, 1);
          e_ref(k, j).add_to(row, 1);
          z_ref(i, j, k).add_to(row, -1);
          mb.add_row(std::move(row), ConstraintSense::Le, 3);
        }
      }
    }
  }

  if (variant == OveVariant::vC || variant == OveVariant::vD) {
    for (int k : internals) {
      RowBuilder row;
      for (int i : verts) {
        if (i == k) continue;
        for (int j : verts) {
          if (j == k || j == i) continue;
          z_ref(i, j, k).add_to(row, 1);
        }
      }
      mb.add_row(std::move(row), ConstraintSense::Ge, mu_star(g, k));
    }
    {
      RowBuilder row;
      for (const LinTerm& t : mb.model.objective) row.add_var(t.var, 1);
      mb.add_row(std::move(row), ConstraintSense::Ge, half_edge_bound(g));
    }
  }

  return mb.model;
}

IlpModel build_mec_ilp(const Dag& d, bool closure_restriction) {
  ModelBuilder mb;
  mb.model.problem = IlpProblem::MEC;
  mb.model.graph = d;
  mb.model.closure_restricted = closure_restriction;
  const Dag& g = mb.model.graph;
  const int n = g.order();
  const std::vector<int> verts = g.vertices();
  const auto reach = reachability(g);

  auto pair_allowed = [&](int i, int j) {
    if (i == j) return false;
    if (!closure_restriction) return true;
    return reach[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0;
  };

  std::vector<int> s_var(static_cast<size_t>(n), -1);
  for (int i : g.internal_vertices())
    s_var[static_cast<size_t>(i)] = mb.new_var("s_" + std::to_string(i), std::nullopt);
  auto s_ref = [&](int i) -> Ref {
    return s_var[static_cast<size_t>(i)] < 0 ? Ref::constant(0)
                                             : Ref::variable(s_var[static_cast<size_t>(i)]);
  };

  std::vector<int> w_var(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  std::vector<int> y_var(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  for (int i : verts) {
    for (int j : verts) {
      if (!pair_allowed(i, j)) continue;
      w_var[static_cast<size_t>(i) * n + j] =
          mb.new_var(pair_name("w", i, j), g.has_edge(i, j) ? std::optional<int>(1) : std::nullopt);
      const int y = mb.new_var(pair_name("y", i, j), std::nullopt);
      y_var[static_cast<size_t>(i) * n + j] = y;
      mb.model.objective.push_back({y, 1});
    }
  }
  auto w_ref = [&](int i, int j) -> Ref {
    const int id = w_var[static_cast<size_t>(i) * n + j];
    if (id < 0) return Ref::constant(0);
    if (mb.model.vars[static_cast<size_t>(id)].fixed)
      return Ref::constant(*mb.model.vars[static_cast<size_t>(id)].fixed);
    return Ref::variable(id);
  };

  // path propagation: an eliminated out-neighbor k splices its paths
  for (int i : verts) {
    for (int k : g.out(i)) {
      for (int j : verts) {
        if (j == i || j == k) continue;
        RowBuilder row;
        w_ref(i, j).add_to(row, 1);
        w_ref(k, j).add_to(row, -1);
        s_ref(k).add_to(row, -1);
        mb.add_row(std::move(row), ConstraintSense::Ge, -1);
      }
    }
  }
  // surviving-pair edges
  for (int i : verts) {
    for (int j : verts) {
      if (!pair_allowed(i, j)) continue;
      RowBuilder row;
      Ref::variable(y_var[static_cast<size_t>(i) * n + j]).add_to(row, 1);
      w_ref(i, j).add_to(row, -1);
      s_ref(i).add_to(row, 1);
      s_ref(j).add_to(row, 1);
      mb.add_row(std::move(row), ConstraintSense::Ge, 0);
    }
  }
  return mb.model;
}

void write_lp(const IlpModel& model, std::ostream& out) {
  auto name_of = [&](int var) { return model.vars[static_cast<size_t>(var)].name; };
  auto write_terms = [&](const std::vector<LinTerm>& terms) {
    std::string line = " ";
    bool first = true;
    for (const LinTerm& t : terms) {
      std::string piece;
      const long long c = t.coef;
      if (first) {
        piece = (c < 0 ? "- " : "");
        first = false;
      } else {
        piece = (c < 0 ? "- " : "+ ");
      }
      const long long mag = c < 0 ? -c : c;
      if (mag != 1) piece += std::to_string(mag) + " ";
      piece += name_of(t.var);
      if (line.size() + piece.size() + 1 > 200) {
        out << line << "\n";
        line = "   ";
      }
      line += piece + " ";
    }
    out << line;
  };

  out << "\\ " << (model.problem == IlpProblem::OVE ? "minimum-cost vertex elimination"
                                                    : "minimum edge count")
      << " model\n";
  out << "Minimize\n obj:";
  if (model.objective.empty()) {
    out << " 0\n";
  } else {
    out << "\n";
    write_terms(model.objective);
    out << "\n";
  }
  out << "Subject To\n";
  for (size_t c = 0; c < model.constraints.size(); ++c) {
    const LinConstraint& row = model.constraints[c];
    out << " c" << c << ":";
    out << "\n";
    write_terms(row.terms);
    switch (row.sense) {
      case ConstraintSense::Le: out << "<= "; break;
      case ConstraintSense::Ge: out << ">= "; break;
      case ConstraintSense::Eq: out << "= "; break;
    }
    out << row.rhs << "\n";
  }
  bool any_fixed = false;
  for (const auto& v : model.vars) any_fixed = any_fixed || v.fixed.has_value();
  if (any_fixed) {
    out << "Bounds\n";
    for (const auto& v : model.vars)
      if (v.fixed) out << " " << v.name << " = " << *v.fixed << "\n";
  }
  out << "Binaries\n";
  std::string line = " ";
  for (const auto& v : model.vars) {
    if (v.fixed) continue;
    if (line.size() + v.name.size() + 1 > 200) {
      out << line << "\n";
      line = " ";
    }
    line += v.name + " ";
  }
  if (line.size() > 1) out << line << "\n";
  out << "End\n";
  if (!out) throw IoError("failed to write LP stream");
}

ExactResult read_solution(const IlpModel& model, const std::string& text) {
  std::map<int, double> values;  // var id -> value; absent means 0
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    double value = 0.0;
    if (!(ls >> value)) throw SyntaxError("expected 'name value'", line_no);
    const int var = model.find_var(name);
    if (var < 0) continue;  // solvers may echo names we elided
    if (std::abs(value - std::round(value)) > 1e-6 ||
        (std::round(value) != 0.0 && std::round(value) != 1.0))
      throw NonIntegralError("variable " + name + " = " + std::to_string(value) +
                             " is not within 1e-6 of {0,1}");
    values[var] = value;
  }

  auto value_of = [&](int var) -> long long {
    if (var < 0) return 0;
    const auto& v = model.vars[static_cast<size_t>(var)];
    if (v.fixed) return *v.fixed;
    const auto it = values.find(var);
    return it == values.end() ? 0 : static_cast<long long>(std::llround(it->second));
  };

  double objective_value = 0.0;
  for (const LinTerm& t : model.objective)
    objective_value += static_cast<double>(t.coef) * static_cast<double>(value_of(t.var));
  const long long rounded_objective = std::llround(objective_value);

  ExactResult result;
  result.status = SolveStatus::Optimal;
  const Dag& g = model.graph;
  const int n = g.order();

  if (model.problem == IlpProblem::OVE) {
    const std::vector<int> internals = g.internal_vertices();
    auto x_val = [&](int i, int j) -> long long {
      if (i < j) return value_of(model.find_var(pair_name("x", i, j)));
      return 1 - value_of(model.find_var(pair_name("x", j, i)));
    };
    std::vector<std::pair<long long, int>> ranked;  // (#successors, vertex)
    for (int i : internals) {
      long long wins = 0;
      for (int j : internals)
        if (j != i) wins += x_val(i, j);
      ranked.emplace_back(wins, i);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> order;
    for (size_t idx = 0; idx < ranked.size(); ++idx) {
      if (idx + 1 < ranked.size() && ranked[idx].first == ranked[idx + 1].first)
        throw InconsistentOrderError("x relation is not a total order");
      order.push_back(ranked[idx].second);
    }
    for (size_t a = 0; a < order.size(); ++a)
      for (size_t b = a + 1; b < order.size(); ++b)
        if (x_val(order[a], order[b]) != 1)
          throw InconsistentOrderError("x relation is not transitive after rounding");
    const EliminationTrace replay = eliminate_sequence(g, order);
    if (replay.total_cost != rounded_objective)
      throw ReplayMismatchError("replayed cost " + std::to_string(replay.total_cost) +
                                " != objective " + std::to_string(rounded_objective));
    result.objective = replay.total_cost + model.accrued_cost;
    result.witness = model.prefix;
    result.witness.insert(result.witness.end(), order.begin(), order.end());
  } else {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (g.is_internal(i) && value_of(model.find_var("s_" + std::to_string(i))) == 1)
        subset.push_back(i);
    const Dag after = eliminate_set(g, subset);
    if (after.edge_count() != rounded_objective)
      throw ReplayMismatchError("edge count " + std::to_string(after.edge_count()) +
                                " != objective " + std::to_string(rounded_objective));
    result.objective = after.edge_count();
    result.witness = subset;
  }
  return result;
}

}  // namespace dagelim
