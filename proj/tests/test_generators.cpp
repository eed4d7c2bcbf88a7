#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dagelim/exact.hpp"
#include "dagelim/generators.hpp"
#include "dagelim/heuristics.hpp"

using namespace dagelim;

TEST_CASE("evolution sizes match the catalog fixture") {
  std::ifstream fixture(std::string(TEST_DATA_DIR) + "/evolution_sizes.txt");
  REQUIRE(fixture.good());
  std::string line;
  int rows = 0;
  while (std::getline(fixture, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string name;
    int p, q, steps;
    long long n, m;
    REQUIRE((ss >> name >> p >> q >> steps >> n >> m));
    const Dag d = evolution(p, q, steps);
    CHECK_MESSAGE(d.order() == n, name);
    CHECK_MESSAGE(d.edge_count() == m, name);
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("evolution layer structure") {
  const Dag d = evolution(4, 2, 2);
  CHECK(d.sources().size() == 8);
  CHECK(d.sinks().size() == 8);
  CHECK(d.internal_vertices().size() == 16);
  CHECK_THROWS_AS(evolution(1, 2, 1), InvalidParamsError);
  CHECK_THROWS_AS(evolution(3, 3, 0), InvalidParamsError);
}

TEST_CASE("tightness family counts and mode costs") {
  const Dag d = tightness_family(5, 3);
  CHECK(d.order() == 9);
  CHECK(d.edge_count() == 13);
  CHECK(topological_mode(d, Direction::Forward).total_cost == 5 + 3);
  CHECK(topological_mode(d, Direction::Reverse).total_cost == 2 * 3 * (5 - 1) + 3);
  CHECK_THROWS_AS(tightness_family(1, 1), InvalidParamsError);
}

TEST_CASE("tightness family: reverse-to-forward ratio approaches 2l") {
  const int k = 200, l = 3;
  const Dag d = tightness_family(k, l);
  const double fw = static_cast<double>(topological_mode(d, Direction::Forward).total_cost);
  const double rev = static_cast<double>(topological_mode(d, Direction::Reverse).total_cost);
  const double ratio = rev / fw;
  CHECK(ratio > 2.0 * l * 0.95);
  CHECK(ratio < 2.0 * l * 1.05);
}

TEST_CASE("middleout_hard published costs") {
  for (int n : {2, 3, 4, 5}) {
    const auto inst = middleout_hard(n);
    const EliminationTrace mo = middle_out(inst.dag, inst.separator);
    CHECK(mo.total_cost == static_cast<long long>(n) * n * n + 3ll * n * n);
  }
  {
    const auto inst = middleout_hard(2);
    CHECK(bnb_ove(inst.dag).objective == 7);
  }
  CHECK_THROWS_AS(middleout_hard(1), InvalidParamsError);
}

TEST_CASE("mec gap instance") {
  const Dag d = gap_instance(GapKind::MecGap, 16);
  CHECK(d.order() == 16);
  CHECK(d.edge_count() == 4 + 16 + 4);
  CHECK(exact_mec(d).objective == 16);  // n^2 / 16

  // every elimination drops the edge count by exactly one, step by step
  Dag cur = d;
  while (!cur.internal_vertices().empty()) {
    const int v = cur.internal_vertices().front();
    const long long before = cur.edge_count();
    cur = eliminate_vertex(cur, v).first;
    CHECK(cur.edge_count() == before - 1);
  }
  CHECK_THROWS_AS(gap_instance(GapKind::MecGap, 10), InvalidParamsError);
}

TEST_CASE("ove gap instance layer cardinalities") {
  const Dag d = gap_instance(GapKind::OveGap, 256);
  CHECK(d.order() == 256);
  CHECK(d.sources().size() == 4);
  CHECK(d.sinks().size() == 4);
  // complete bipartite between consecutive layers: 4*16 + 16*16 + 16*184 + 184*16 + 16*16 + 16*4
  const long long m = 4 * 16 + 16 * 16 + 16 * 184 + 184 * 16 + 16 * 16 + 16 * 4;
  CHECK(d.edge_count() == m);
  CHECK_THROWS_AS(gap_instance(GapKind::OveGap, 255), InvalidParamsError);
  CHECK_THROWS_AS(gap_instance(GapKind::OveGap, 81), InvalidParamsError);
}
