#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dagelim/errors.hpp"

namespace dagelim {

enum class Role : unsigned char { Source, Internal, Sink };

struct EliminationTrace;

/// Simple directed acyclic graph over dense vertex ids 0..n-1 with the
/// source / internal / sink partition frozen at construction time.
///
/// Vertices disappear when eliminated, but ids stay stable, so a value
/// derived from a graph always speaks the same id language as its origin.
/// All mutating operations are private; the public elimination API is
/// pure (see eliminate_vertex / eliminate_sequence below).
class Dag {
 public:
  Dag() = default;  // the empty graph

  /// Builds a graph from an edge list and infers roles from degrees.
  /// Rejects cycles, parallel edges are not allowed here (callers dedupe),
  /// and any vertex with neither in- nor out-edges.
  static Dag from_edges(int n, std::span<const std::pair<int, int>> edges);

  /// Builds a graph with explicit roles, validating only acyclicity and
  /// simplicity. This is the shape elimination results have: roles need
  /// not match degrees. Intended for derived graphs and advanced callers.
  static Dag with_roles(int n, std::span<const std::pair<int, int>> edges,
                        std::vector<Role> roles);

  int order() const { return static_cast<int>(out_.size()); }
  int vertex_count() const { return present_count_; }
  long long edge_count() const { return edge_count_; }

  bool present(int v) const { return present_[static_cast<size_t>(v)] != 0; }
  Role role(int v) const { return roles_[static_cast<size_t>(v)]; }
  bool is_internal(int v) const { return present(v) && role(v) == Role::Internal; }

  const std::vector<int>& out(int v) const { return out_[static_cast<size_t>(v)]; }
  const std::vector<int>& in(int v) const { return in_[static_cast<size_t>(v)]; }
  int out_degree(int v) const { return static_cast<int>(out(v).size()); }
  int in_degree(int v) const { return static_cast<int>(in(v).size()); }
  bool has_edge(int u, int w) const;

  std::vector<int> vertices() const;
  std::vector<int> internal_vertices() const;
  std::vector<int> sources() const;
  std::vector<int> sinks() const;
  std::vector<std::pair<int, int>> edges() const;

  const std::string& label(int v) const { return labels_[static_cast<size_t>(v)]; }
  void set_label(int v, std::string name) { labels_[static_cast<size_t>(v)] = std::move(name); }
  bool has_labels() const;

  /// Topological order of the present vertices; ties go to the smaller id.
  std::vector<int> topological_order() const;

 private:
  friend std::pair<Dag, long long> eliminate_vertex(const Dag& d, int v);
  friend struct EliminationTrace;
  friend class DagBuilder;
  friend EliminationTrace eliminate_sequence(const Dag& d, std::span<const int> seq);
  friend Dag eliminate_set(const Dag& d, std::span<const int> xs);

  void check_acyclic() const;
  long long eliminate_in_place(int v);  // returns the Markowitz cost paid

  std::vector<std::vector<int>> out_, in_;  // sorted neighbor ids
  std::vector<Role> roles_;
  std::vector<std::string> labels_;
  std::vector<char> present_;
  int present_count_ = 0;
  long long edge_count_ = 0;
};

/// Markowitz degree |N-(v)| * |N+(v)| of a present internal vertex.
long long markowitz(const Dag& d, int v);

/// Eliminates v: deletes it and closes every (u,v),(v,w) pair with the
/// edge (u,w), merging duplicates. Returns the new graph and the cost
/// (Markowitz degree at call time). The input is not modified.
std::pair<Dag, long long> eliminate_vertex(const Dag& d, int v);

struct EliminationTrace {
  std::vector<int> sequence;
  std::vector<long long> step_costs;
  long long total_cost = 0;
  long long min_edges = 0;       // minimum |E| over all prefixes, empty one included
  int min_edges_prefix = 0;      // shortest prefix length attaining min_edges
  long long final_edges = 0;
  Dag final;
};

/// Folds eliminate_vertex over seq, recording per-step costs and the
/// smallest intermediate edge count. Throws with the failing index on a
/// bad sequence entry.
EliminationTrace eliminate_sequence(const Dag& d, std::span<const int> seq);

/// Eliminates the set X (ascending id); the result is independent of the
/// order, so this names the graph D_X.
Dag eliminate_set(const Dag& d, std::span<const int> xs);

/// All ordered pairs (i, j), i != j, with a directed path i -> j.
std::vector<std::pair<int, int>> transitive_closure(const Dag& d);

struct ReachSets {
  std::vector<int> sources;  // S_v: sources from which v is reachable (v itself if a source)
  std::vector<int> sinks;    // T_v: sinks reachable from v (v itself if a sink)
};

ReachSets reach_sets(const Dag& d, int v);

}  // namespace dagelim
