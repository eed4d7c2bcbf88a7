#include <doctest.h>

#include "dagelim/io.hpp"

using namespace dagelim;

TEST_CASE("edge list parsing") {
  ParseReport report;
  const Dag d = parse_graph("e a b\ne b c\n", GraphFormat::EdgeList, &report);
  CHECK(d.order() == 3);
  CHECK(d.edge_count() == 2);
  CHECK(d.role(0) == Role::Source);
  CHECK(d.role(1) == Role::Internal);
  CHECK(d.role(2) == Role::Sink);
  CHECK(d.label(0) == "a");
  CHECK(report.duplicate_edges == 0);
}

TEST_CASE("edge list comments, predeclaration, duplicates") {
  ParseReport report;
  const Dag d = parse_graph("# heading\nv x\nv y\ne x y\ne x y\n", GraphFormat::EdgeList, &report);
  CHECK(d.order() == 2);
  CHECK(d.edge_count() == 1);
  CHECK(report.duplicate_edges == 1);
}

TEST_CASE("edge list errors") {
  CHECK_THROWS_AS(parse_graph("e a b\ne b a\n", GraphFormat::EdgeList, nullptr), CycleError);
  CHECK_THROWS_AS(parse_graph("v lonely\ne a b\n", GraphFormat::EdgeList, nullptr),
                  IsolatedVertexError);
  try {
    parse_graph("e a b\nq c d\n", GraphFormat::EdgeList, nullptr);
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
  try {
    parse_graph("e a\n", GraphFormat::EdgeList, nullptr);
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
  }
}

TEST_CASE("dot subset parsing") {
  const Dag d = parse_graph("digraph{a->b;b->c;a->c;}", GraphFormat::DotSubset, nullptr);
  CHECK(d.order() == 3);
  CHECK(d.edge_count() == 3);
  CHECK(d.internal_vertices().size() == 1);
  CHECK(d.label(1) == "b");
}

TEST_CASE("dot chains, attributes and comments") {
  const char* text = R"(// generated
digraph flow {
  a -> b -> c [weight=2, label="x"];
  b -> d;
  e [shape=box];
  e -> c;
})";
  const Dag d = parse_graph(text, GraphFormat::DotSubset, nullptr);
  CHECK(d.order() == 5);
  CHECK(d.edge_count() == 4);
}

TEST_CASE("dot errors") {
  CHECK_THROWS_AS(parse_graph("graph { a -- b; }", GraphFormat::DotSubset, nullptr), SyntaxError);
  CHECK_THROWS_AS(parse_graph("digraph { a -> ; }", GraphFormat::DotSubset, nullptr), SyntaxError);
  CHECK_THROWS_AS(parse_graph("digraph { a -> b", GraphFormat::DotSubset, nullptr), SyntaxError);
}

TEST_CASE("format autodetection and round-trip") {
  const Dag d = parse_graph_auto("digraph{a->b;}");
  CHECK(d.edge_count() == 1);
  const Dag e = parse_graph_auto(to_edge_list(d));
  CHECK(e.edge_count() == 1);
  CHECK(e.label(0) == "a");
  const Dag f = parse_graph_auto(to_dot(e));
  CHECK(f.edge_count() == 1);
}
