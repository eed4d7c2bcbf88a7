#include "dagelim/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bitgraph.hpp"
#include "dagelim/heuristics.hpp"

namespace dagelim {

namespace {

long long replay_cost(const BitGraph& base, const std::vector<int>& order) {
  BitGraph g = base;
  long long cost = 0;
  for (int v : order) cost += g.eliminate(v);
  return cost;
}

long long subset_edges(const BitGraph& base, const std::vector<int>& internals,
                       const std::vector<char>& in_subset) {
  BitGraph g = base;
  for (size_t i = 0; i < internals.size(); ++i)
    if (in_subset[i]) g.eliminate(internals[i]);
  return g.edges();
}

std::vector<int> propose(const std::vector<int>& order, SaMove move, std::mt19937_64& rng) {
  std::vector<int> next = order;
  const size_t n = order.size();
  if (n < 2) return next;
  switch (move) {
    case SaMove::AdjacentSwap: {
      const size_t i = std::uniform_int_distribution<size_t>(0, n - 2)(rng);
      std::swap(next[i], next[i + 1]);
      break;
    }
    case SaMove::RandomSwap: {
      const size_t i = std::uniform_int_distribution<size_t>(0, n - 1)(rng);
      size_t j = std::uniform_int_distribution<size_t>(0, n - 2)(rng);
      if (j >= i) ++j;
      std::swap(next[i], next[j]);
      break;
    }
    case SaMove::Reinsert: {
      const size_t i = std::uniform_int_distribution<size_t>(0, n - 1)(rng);
      size_t j = std::uniform_int_distribution<size_t>(0, n - 2)(rng);
      if (j >= i) ++j;
      const int v = next[i];
      next.erase(next.begin() + static_cast<long>(i));
      next.insert(next.begin() + static_cast<long>(j), v);
      break;
    }
  }
  return next;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

EliminationTrace simulated_annealing(const Dag& d, const SaParams& params,
                                     const ProgressCallback& on_iteration) {
  if (params.iterations < 1) throw InvalidParamsError("iterations must be >= 1");
  if (!(params.cooling > 0.0 && params.cooling < 1.0))
    throw InvalidParamsError("cooling must lie in (0,1)");

  const BitGraph base = BitGraph::from(d);
  std::mt19937_64 rng(params.seed);

  std::vector<int> current;
  for (int v : d.topological_order())
    if (d.is_internal(v)) current.push_back(v);
  long long current_energy = replay_cost(base, current);
  std::vector<int> best = current;
  long long best_energy = current_energy;

  double temp;
  if (params.initial_temp) {
    temp = *params.initial_temp;
  } else {
    double sum = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto probe = propose(current, params.move, rng);
      sum += std::abs(static_cast<double>(replay_cost(base, probe) - current_energy));
    }
    temp = sum / 100.0;
    if (temp <= 0.0) temp = 1.0;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long long it = 0; it < params.iterations; ++it) {
    const auto candidate = propose(current, params.move, rng);
    const long long energy = replay_cost(base, candidate);
    const long long delta = energy - current_energy;
    if (delta <= 0 || unit(rng) < std::exp(-static_cast<double>(delta) / temp)) {
      current = candidate;
      current_energy = energy;
      if (energy < best_energy) {
        best_energy = energy;
        best = candidate;
      }
    }
    temp *= params.cooling;
    if (on_iteration) on_iteration(it, best_energy);
  }
  return eliminate_sequence(d, best);
}

MecSearchResult mcmc_edge_min(const Dag& d, const McmcParams& params,
                              const ProgressCallback& on_iteration) {
  if (params.temperature <= 0.0) throw InvalidParamsError("temperature must be positive");
  if (params.iterations < 0) throw InvalidParamsError("iterations must be >= 0");

  const BitGraph base = BitGraph::from(d);
  const std::vector<int> internals = d.internal_vertices();
  std::mt19937_64 rng(params.seed);

  std::vector<char> current(internals.size(), 0);
  long long current_energy = d.edge_count();
  std::vector<char> best = current;
  long long best_energy = current_energy;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long long it = 0; it < params.iterations && !internals.empty(); ++it) {
    const size_t flip = std::uniform_int_distribution<size_t>(0, internals.size() - 1)(rng);
    current[flip] ^= 1;
    const long long energy = subset_edges(base, internals, current);
    const long long delta = energy - current_energy;
    if (delta <= 0 || unit(rng) < std::exp(-static_cast<double>(delta) / params.temperature)) {
      current_energy = energy;
      if (energy < best_energy) {
        best_energy = energy;
        best = current;
      }
    } else {
      current[flip] ^= 1;  // reject
    }
    if (on_iteration) on_iteration(it, best_energy);
  }

  MecSearchResult result;
  result.edges = best_energy;
  for (size_t i = 0; i < internals.size(); ++i)
    if (best[i]) result.subset.push_back(internals[i]);
  return result;
}

}  // namespace dagelim
