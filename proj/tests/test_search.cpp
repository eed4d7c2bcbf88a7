#include <doctest.h>

#include "dagelim/exact.hpp"
#include "dagelim/generators.hpp"
#include "dagelim/heuristics.hpp"
#include "dagelim/search.hpp"

using namespace dagelim;

TEST_CASE("simulated annealing never loses to its start state") {
  const Dag d = evolution(4, 2, 2);
  const long long fw = topological_mode(d, Direction::Forward).total_cost;
  SaParams p;
  p.iterations = 1;
  p.seed = 5;
  CHECK(simulated_annealing(d, p).total_cost <= fw);
}

TEST_CASE("simulated annealing is deterministic per seed") {
  const Dag d = evolution(4, 2, 2);
  SaParams p;
  p.iterations = 3000;
  p.seed = 42;
  const EliminationTrace a = simulated_annealing(d, p);
  const EliminationTrace b = simulated_annealing(d, p);
  CHECK(a.sequence == b.sequence);
  CHECK(a.total_cost == b.total_cost);
}

TEST_CASE("simulated annealing reaches the optimum on 2d4x2x2 across seeds") {
  const Dag d = evolution(4, 2, 2);
  int hits = 0;
  for (int s = 1; s <= 10; ++s) {
    SaParams p;
    p.seed = static_cast<std::uint64_t>(s);
    if (simulated_annealing(d, p).total_cost == 352) ++hits;
  }
  CHECK(hits >= 9);
}

TEST_CASE("simulated annealing best-so-far is monotone and replays") {
  const Dag d = tightness_family(6, 2);
  SaParams p;
  p.iterations = 2000;
  p.seed = 9;
  p.move = SaMove::RandomSwap;
  long long last = -1;
  bool monotone = true;
  const EliminationTrace t = simulated_annealing(d, p, [&](long long, long long best) {
    if (last >= 0 && best > last) monotone = false;
    last = best;
  });
  CHECK(monotone);
  CHECK(eliminate_sequence(d, t.sequence).total_cost == t.total_cost);
  CHECK(t.total_cost == last);

  SaParams bad;
  bad.iterations = 0;
  CHECK_THROWS_AS(simulated_annealing(d, bad), InvalidParamsError);
  bad.iterations = 10;
  bad.cooling = 1.5;
  CHECK_THROWS_AS(simulated_annealing(d, bad), InvalidParamsError);
}

TEST_CASE("all proposal moves keep the permutation valid") {
  const Dag d = tightness_family(7, 2);
  for (SaMove move : {SaMove::AdjacentSwap, SaMove::RandomSwap, SaMove::Reinsert}) {
    SaParams p;
    p.iterations = 500;
    p.move = move;
    p.seed = 77;
    const EliminationTrace t = simulated_annealing(d, p);
    std::vector<int> sorted = t.sequence;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == d.internal_vertices());
  }
}

TEST_CASE("mcmc with zero iterations returns the empty subset") {
  const Dag d = evolution(4, 2, 2);
  McmcParams p;
  p.iterations = 0;
  const MecSearchResult r = mcmc_edge_min(d, p);
  CHECK(r.subset.empty());
  CHECK(r.edges == d.edge_count());
}

TEST_CASE("mcmc is deterministic per seed") {
  const Dag d = evolution(4, 2, 2);
  McmcParams p;
  p.iterations = 5000;
  p.seed = 31;
  const MecSearchResult a = mcmc_edge_min(d, p);
  const MecSearchResult b = mcmc_edge_min(d, p);
  CHECK(a.subset == b.subset);
  CHECK(a.edges == b.edges);
}

TEST_CASE("mcmc finds the 64-edge representation of 2d4x2x2") {
  const Dag d = evolution(4, 2, 2);
  int hits = 0;
  for (int s = 1; s <= 10; ++s) {
    McmcParams p;
    p.seed = static_cast<std::uint64_t>(s);
    const MecSearchResult r = mcmc_edge_min(d, p);
    CHECK(eliminate_set(d, r.subset).edge_count() == r.edges);
    if (r.edges == 64) ++hits;
  }
  CHECK(hits >= 9);
}

TEST_CASE("mcmc best-so-far is monotone and matches the exact optimum on tiny graphs") {
  const Dag d = tightness_family(5, 2);
  McmcParams p;
  p.iterations = 4000;
  p.seed = 3;
  long long last = -1;
  bool monotone = true;
  const MecSearchResult r = mcmc_edge_min(d, p, [&](long long, long long best) {
    if (last >= 0 && best > last) monotone = false;
    last = best;
  });
  CHECK(monotone);
  CHECK(r.edges == exact_mec(d).objective);

  McmcParams bad;
  bad.temperature = 0.0;
  CHECK_THROWS_AS(mcmc_edge_min(d, bad), InvalidParamsError);
}

TEST_CASE("mcmc never reports fewer edges than the exact optimum") {
  for (auto [k, l] : {std::pair{4, 2}, {6, 3}, {8, 2}}) {
    const Dag d = tightness_family(k, l);
    const long long opt = exact_mec(d).objective;
    McmcParams p;
    p.iterations = 3000;
    p.seed = 17;
    CHECK(mcmc_edge_min(d, p).edges >= opt);
  }
}

TEST_CASE("split_seed decorrelates restart streams") {
  CHECK(split_seed(1, 0) != split_seed(1, 1));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
  CHECK(split_seed(1, 5) == split_seed(1, 5));
}
