#include <doctest.h>

#include <random>

#include "dagelim/bounds.hpp"
#include "dagelim/exact.hpp"
#include "dagelim/generators.hpp"
#include "dagelim/heuristics.hpp"
#include "oracles.hpp"

using namespace dagelim;

namespace {

Dag path3() { return Dag::from_edges(3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}); }

Dag diamond() {
  return Dag::from_edges(4, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("brute force on the smallest instances") {
  CHECK(brute_force_ove(path3()).objective == 1);
  CHECK(brute_force_ove(diamond()).objective == 2);
  {
    const ExactResult r = brute_force_ove(evolution(4, 2, 2), /*limit=*/8);
    CHECK(r.status == SolveStatus::TooLarge);
  }
  {
    const ExactResult r = brute_force_ove(tightness_family(4, 2));
    const ExactResult bb = bnb_ove(tightness_family(4, 2));
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.objective == bb.objective);
    CHECK(r.objective <= topological_mode(tightness_family(4, 2), Direction::Forward).total_cost);
    CHECK(r.objective >= bounds_report(tightness_family(4, 2)).best);
    CHECK(eliminate_sequence(tightness_family(4, 2), r.witness).total_cost == r.objective);
  }
}

TEST_CASE("branch and bound matches brute force on random graphs") {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 120; ++trial) {
    testutil::RandomDagSpec spec;
    spec.sources = 1 + trial % 3;
    spec.internals = 2 + trial % 6;  // <= 7
    spec.sinks = 1 + trial % 3;
    spec.extra_edge_prob = trial % 2 ? 0.15 : 0.35;
    const Dag d = testutil::random_dag(rng, spec);
    const ExactResult bb = bnb_ove(d);
    CHECK(bb.status == SolveStatus::Optimal);
    CHECK(bb.objective == testutil::brute_min_cost(d));
    CHECK(eliminate_sequence(d, bb.witness).total_cost == bb.objective);
    CHECK(bb.objective >= bounds_report(d).best);
  }
}

TEST_CASE("branch and bound solves the small evolution instances") {
  const ExactResult a = bnb_ove(evolution(4, 2, 2));
  CHECK(a.status == SolveStatus::Optimal);
  CHECK(a.objective == 352);
  const ExactResult b = bnb_ove(evolution(3, 3, 2));
  CHECK(b.status == SolveStatus::Optimal);
  CHECK(b.objective == 630);
}

TEST_CASE("branch and bound runs without the transposition table past 64 internals") {
  // a 70-vertex chain: every step is a forced unit elimination
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < 72; ++v) edges.emplace_back(v, v + 1);
  const Dag chain = Dag::from_edges(72, edges);
  const ExactResult r = bnb_ove(chain);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 70);
  CHECK(eliminate_sequence(chain, r.witness).total_cost == 70);
}

TEST_CASE("branch and bound respects its node budget") {
  const ExactResult r = bnb_ove(evolution(3, 3, 2), /*budget=*/100);
  CHECK(r.status == SolveStatus::BudgetExceeded);
  // incumbent comes from the seeding ensemble, so it is still valid
  CHECK(r.objective == 630);
  CHECK(eliminate_sequence(evolution(3, 3, 2), r.witness).total_cost == r.objective);
}

TEST_CASE("exact MEC basics") {
  CHECK(exact_mec(path3()).objective == 1);
  CHECK(exact_mec(path3()).witness == std::vector<int>{1});
  CHECK(exact_mec(evolution(4, 2, 2), 16).objective == 64);
  CHECK(exact_mec(evolution(4, 2, 2), 15).status == SolveStatus::TooLarge);
}

TEST_CASE("exact MEC matches per-subset recomputation") {
  std::mt19937_64 rng(2002);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::RandomDagSpec spec;
    spec.sources = 1 + trial % 3;
    spec.internals = 2 + trial % 9;  // <= 10
    spec.sinks = 1 + trial % 3;
    spec.extra_edge_prob = trial % 2 ? 0.2 : 0.45;
    const Dag d = testutil::random_dag(rng, spec);
    const ExactResult r = exact_mec(d);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.objective == testutil::brute_min_edges(d));
    CHECK(eliminate_set(d, r.witness).edge_count() == r.objective);
  }
}

TEST_CASE("exact MEC lower-bounds every heuristic scan") {
  std::mt19937_64 rng(3003);
  for (int trial = 0; trial < 25; ++trial) {
    testutil::RandomDagSpec spec;
    spec.internals = 3 + trial % 6;
    const Dag d = testutil::random_dag(rng, spec);
    const long long opt = exact_mec(d).objective;
    for (GreedyKind rule : {GreedyKind::Mar, GreedyKind::ER, GreedyKind::MD})
      CHECK(opt <= greedy_eliminate(d, rule).min_edges);
    CHECK(opt <= topological_mode(d, Direction::Forward).min_edges);
  }
}

TEST_CASE("eliminate_set rejects non-internal members") {
  CHECK_THROWS_AS(eliminate_set(path3(), std::vector<int>{0}), NotInternalError);
  CHECK_THROWS_AS(eliminate_set(path3(), std::vector<int>{7}), NotPresentError);
}

TEST_CASE("witnesses replay to the reported objective") {
  const auto inst = middleout_hard(3);
  const ExactResult r = bnb_ove(inst.dag);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 10);
  CHECK(eliminate_sequence(inst.dag, r.witness).total_cost == 10);
}
