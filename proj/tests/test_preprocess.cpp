#include <doctest.h>

#include <algorithm>
#include <random>

#include "dagelim/generators.hpp"
#include "dagelim/preprocess.hpp"
#include "oracles.hpp"

using namespace dagelim;

TEST_CASE("a chain reduces completely at unit cost per vertex") {
  const Dag d =
      Dag::from_edges(4, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
  const ReductionLog log = reduce(d);
  CHECK(log.prefix.size() == 2);
  CHECK(log.accrued_cost == 2);
  CHECK(log.residual.internal_vertices().empty());
  for (const auto& step : log.prefix) CHECK(step.rule == ReductionRule::MarkowitzOne);
}

TEST_CASE("evolution graphs admit no reduction") {
  const ReductionLog log = reduce(evolution(4, 2, 2));
  CHECK(log.prefix.empty());
  CHECK(log.accrued_cost == 0);
  CHECK(log.residual.edge_count() == 96);
}

TEST_CASE("replaying the prefix reproduces the residual") {
  std::mt19937_64 rng(112);
  for (int trial = 0; trial < 80; ++trial) {
    testutil::RandomDagSpec spec;
    spec.sources = 1 + trial % 3;
    spec.internals = 2 + trial % 5;
    spec.sinks = 1 + trial % 2;
    const Dag d = testutil::random_dag(rng, spec);
    const ReductionLog log = reduce(d);
    std::vector<int> seq;
    long long cost = 0;
    for (const auto& step : log.prefix) {
      seq.push_back(step.vertex);
      cost += step.cost;
    }
    CHECK(cost == log.accrued_cost);
    const EliminationTrace t = eliminate_sequence(d, seq);
    CHECK(t.final.edges() == log.residual.edges());
    CHECK(t.total_cost == log.accrued_cost);
  }
}

TEST_CASE("reduction preserves the optimum") {
  std::mt19937_64 rng(808);
  int reduced_instances = 0;
  for (int trial = 0; trial < 150; ++trial) {
    testutil::RandomDagSpec spec;
    spec.sources = 1 + trial % 3;
    spec.internals = 2 + trial % 5;  // |I| <= 6
    spec.sinks = 1 + trial % 3;
    spec.extra_edge_prob = trial % 2 ? 0.15 : 0.4;
    const Dag d = testutil::random_dag(rng, spec);
    const ReductionLog log = reduce(d);
    if (!log.prefix.empty()) ++reduced_instances;
    CHECK(log.accrued_cost + testutil::brute_min_cost(log.residual) ==
          testutil::brute_min_cost(d));
  }
  CHECK(reduced_instances > 10);  // the suite must actually exercise the rules
}

TEST_CASE("reduce is idempotent") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 40; ++trial) {
    testutil::RandomDagSpec spec;
    spec.internals = 2 + trial % 5;
    const Dag d = testutil::random_dag(rng, spec);
    const ReductionLog log = reduce(d);
    CHECK(reduce(log.residual).prefix.empty());
  }
}

TEST_CASE("accrued cost does not depend on the scan order") {
  std::mt19937_64 rng(2718);
  auto reduce_shuffled = [&](const Dag& d) {
    Dag cur = d;
    long long accrued = 0;
    bool hit = true;
    while (hit) {
      hit = false;
      std::vector<int> internals = cur.internal_vertices();
      std::shuffle(internals.begin(), internals.end(), rng);
      for (int v : internals) {
        if (!reduction_rule(cur, v)) continue;
        auto [next, cost] = eliminate_vertex(cur, v);
        accrued += cost;
        cur = std::move(next);
        hit = true;
        break;
      }
    }
    return accrued;
  };
  for (int trial = 0; trial < 25; ++trial) {
    testutil::RandomDagSpec spec;
    spec.internals = 2 + trial % 5;
    const Dag d = testutil::random_dag(rng, spec);
    const long long reference = reduce(d).accrued_cost;
    for (int rep = 0; rep < 3; ++rep) CHECK(reduce_shuffled(d) == reference);
  }
}
