#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

enum class OutputFormat { Csv, Json, Markdown };

struct NamedGraph {
  std::string name;
  Dag dag;
};

/// Resolves an input: either a readable file path, or a family spec such
/// as `evolution:4,2,2`, `2d4x2x2`, `tightness:5,3`, `middleout:3`,
/// `ovegap:256`, `mecgap:16`.
NamedGraph load_input(const std::string& spec);

struct RunConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> methods;  // fw rev mar rmar mr m2d dmc pl pc er md mo sa mc2
  bool problem_ove = true;
  bool problem_mec = true;
  bool with_exact = false;           // compute exact optima and ratio columns
  long long exact_budget = 100'000'000;
  int exact_mec_limit = 22;
  std::uint64_t seed = 1;
  int restarts = 1;                  // stochastic methods: best over restarts
  long long sa_iterations = 20000;
  double sa_cooling = 0.999;
  std::optional<double> sa_temp;
  long long mcmc_iterations = 20000;
  std::optional<double> mcmc_temp;
  int jobs = 1;
};

struct RunRow {
  std::string graph;
  std::string method;
  std::optional<long long> ove_cost;   // absent for MEC-only methods
  std::optional<long long> min_edges;  // scan-mode edge minimum
  std::string ove_ratio = "?";         // "?" when the optimum is unknown
  std::string mec_ratio = "?";
  double elapsed_ms = 0.0;
  std::string error;                   // non-empty row failed
};

struct RunResult {
  std::vector<RunRow> rows;
  bool any_failure = false;
};

/// Runs every (input, method) pair, in input-major order, optionally in
/// parallel; results are merged back in submission order so output is
/// deterministic. Per-pair failures land in the row's error field.
RunResult run_experiment(const RunConfig& config);

std::string render_rows(const std::vector<RunRow>& rows, OutputFormat format, bool with_exact);

}  // namespace dagelim
