#pragma once

#include <string>

#include "dagelim/dag.hpp"

namespace dagelim {

enum class GraphFormat { EdgeList, DotSubset };

struct ParseReport {
  int duplicate_edges = 0;  // duplicates are merged, not an error
};

/// Parses a graph description.
///
/// EdgeList: one item per line; `# comment`, `v <name>` predeclares a
/// vertex, `e <from> <to>` adds a directed edge. DotSubset: a `digraph`
/// block with `a -> b -> c;` edge statements; attributes are ignored.
/// Vertex ids are assigned in first-appearance order and roles inferred
/// from degrees.
Dag parse_graph(const std::string& text, GraphFormat format, ParseReport* report = nullptr);

/// Guesses the format from the content (a `digraph` prefix means DOT).
Dag parse_graph_auto(const std::string& text, ParseReport* report = nullptr);

std::string to_edge_list(const Dag& d);
std::string to_dot(const Dag& d);

/// Vertex display name: its label when set, else the decimal id.
std::string vertex_name(const Dag& d, int v);

}  // namespace dagelim
