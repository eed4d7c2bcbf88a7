#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

enum class SaMove { AdjacentSwap, RandomSwap, Reinsert };

/// Simulated annealing over permutations of the internal vertices.
/// Energy is the total elimination cost; acceptance is Metropolis with
/// geometric cooling. `initial_temp` unset means auto: the mean |delta|
/// over 100 sampled moves from the start state (the forward topological
/// order). Deterministic for a fixed seed (mt19937-64).
struct SaParams {
  long long iterations = 20000;
  std::optional<double> initial_temp;  // nullopt = auto
  double cooling = 0.999;
  SaMove move = SaMove::AdjacentSwap;
  std::uint64_t seed = 1;
};

using ProgressCallback = std::function<void(long long iteration, long long best_energy)>;

EliminationTrace simulated_annealing(const Dag& d, const SaParams& params,
                                     const ProgressCallback& on_iteration = {});

/// Markov-chain search for a small representation: the state is a subset
/// X of the internal vertices, the energy |E(D_X)|, and a step toggles a
/// uniformly random internal vertex with Metropolis acceptance at fixed
/// temperature. Returns the best subset seen. Deterministic per seed.
struct McmcParams {
  long long iterations = 20000;
  double temperature = 6.0;
  std::uint64_t seed = 1;
};

struct MecSearchResult {
  std::vector<int> subset;
  long long edges = 0;
};

MecSearchResult mcmc_edge_min(const Dag& d, const McmcParams& params,
                              const ProgressCallback& on_iteration = {});

/// Stream-splitting helper: derives independent per-restart seeds from a
/// base seed (splitmix64 step).
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

}  // namespace dagelim
