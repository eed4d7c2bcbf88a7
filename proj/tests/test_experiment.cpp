#include <doctest.h>

#include "dagelim/experiment.hpp"

using namespace dagelim;

TEST_CASE("inputs resolve from family specs") {
  CHECK(load_input("evolution:4,2,2").dag.order() == 32);
  CHECK(load_input("2d3x3x2").dag.edge_count() == 135);
  CHECK(load_input("tightness:5,3").dag.order() == 9);
  CHECK(load_input("middleout:2").dag.order() == 9);
  CHECK(load_input("mecgap:16").dag.order() == 16);
  CHECK_THROWS_AS(load_input("no_such_thing"), Error);
  CHECK_THROWS_AS(load_input("evolution:4,2"), InvalidParamsError);
}

TEST_CASE("run_experiment fills the catalog row for 2d4x2x2") {
  RunConfig cfg;
  cfg.inputs = {"evolution:4,2,2"};
  cfg.methods = {"fw", "rev", "mar", "rmar"};
  const RunResult r = run_experiment(cfg);
  REQUIRE(r.rows.size() == 4);
  for (const RunRow& row : r.rows) {
    CHECK(row.error.empty());
    CHECK(row.ove_cost == 352);
    CHECK(row.min_edges == 64);
  }
  CHECK_FALSE(r.any_failure);
}

TEST_CASE("exact backend yields unit ratios on 2d4x2x2") {
  RunConfig cfg;
  cfg.inputs = {"evolution:4,2,2"};
  cfg.methods = {"fw", "rev", "mar", "rmar"};
  cfg.with_exact = true;
  const RunResult r = run_experiment(cfg);
  for (const RunRow& row : r.rows) {
    CHECK(row.ove_ratio == "1.00");
    CHECK(row.mec_ratio == "1.00");
  }
}

TEST_CASE("configuration errors are rejected before any work") {
  RunConfig cfg;
  cfg.inputs = {"evolution:4,2,2"};
  CHECK_THROWS_AS(run_experiment(cfg), InvalidParamsError);
  cfg.methods = {"fw"};
  cfg.inputs = {};
  CHECK_THROWS_AS(run_experiment(cfg), InvalidParamsError);
}

TEST_CASE("per-input failures are reported without aborting the run") {
  RunConfig cfg;
  cfg.inputs = {"no_such_file.graph", "evolution:4,2,2"};
  cfg.methods = {"fw"};
  const RunResult r = run_experiment(cfg);
  REQUIRE(r.rows.size() == 2);
  CHECK_FALSE(r.rows[0].error.empty());
  CHECK(r.rows[1].error.empty());
  CHECK(r.rows[1].ove_cost == 352);
  CHECK(r.any_failure);
}

TEST_CASE("row order is deterministic and parallelism does not change it") {
  RunConfig cfg;
  cfg.inputs = {"evolution:4,2,2", "tightness:5,3"};
  cfg.methods = {"fw", "rev", "mar"};
  const RunResult serial = run_experiment(cfg);
  cfg.jobs = 4;
  const RunResult parallel = run_experiment(cfg);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].graph == parallel.rows[i].graph);
    CHECK(serial.rows[i].method == parallel.rows[i].method);
    CHECK(serial.rows[i].ove_cost == parallel.rows[i].ove_cost);
    CHECK(serial.rows[i].min_edges == parallel.rows[i].min_edges);
  }
  const std::string csv = render_rows(serial.rows, OutputFormat::Csv, false);
  CHECK(csv.find("graph,rule,ove_cost,min_edges,elapsed_ms") == 0);
  const std::string md = render_rows(serial.rows, OutputFormat::Markdown, false);
  CHECK(md.find("| graph | rule |") == 0);
  const std::string json = render_rows(serial.rows, OutputFormat::Json, false);
  CHECK(json.find("\"ove_cost\": 352") != std::string::npos);
}

TEST_CASE("stochastic methods run through the experiment surface") {
  RunConfig cfg;
  cfg.inputs = {"evolution:4,2,2"};
  cfg.methods = {"sa", "mc2"};
  cfg.sa_iterations = 2000;
  cfg.mcmc_iterations = 5000;
  cfg.seed = 11;
  const RunResult r = run_experiment(cfg);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].ove_cost.has_value());
  CHECK_FALSE(r.rows[1].ove_cost.has_value());  // mc2 addresses edge count only
  CHECK(r.rows[1].min_edges.has_value());
}
