// dagelim: elimination-order experiments on computational DAGs.
//
// Subcommands: run, exact, bounds, preprocess, ilp, ilp-check, gen, convert.
// Exit codes: 0 success, 1 configuration error, 2 per-input failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dagelim/bounds.hpp"
#include "dagelim/exact.hpp"
#include "dagelim/experiment.hpp"
#include "dagelim/generators.hpp"
#include "dagelim/ilp.hpp"
#include "dagelim/io.hpp"
#include "dagelim/preprocess.hpp"

namespace {

using namespace dagelim;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "markdown" || name == "md") return OutputFormat::Markdown;
  throw InvalidParamsError("unknown format '" + name + "'");
}

const std::vector<std::string> kAllMethods = {"fw", "rev", "mar", "rmar", "mr", "m2d",
                                              "dmc", "pl",  "pc",  "er",   "md", "mo"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex-elimination cost toolkit"};
  app.require_subcommand(1);
  

  std::string format_name = "csv";
  int jobs = 1;
  std::uint64_t seed = 1;
  app.add_option("--format", format_name, "output format: csv, json, markdown");
  app.add_option("--jobs", jobs, "worker threads for run");
  app.add_option("--seed", seed, "base seed for stochastic methods");

  // --- run ---------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "run heuristics over graphs");
  run_cmd->fallthrough();
  RunConfig run_cfg;
  bool run_all = false;
  std::vector<std::string> problems{"ove", "mec"};
  run_cmd->add_option("-i,--input", run_cfg.inputs, "graph file or family spec");
  run_cmd->add_option("--rule,--methods", run_cfg.methods, "methods to run");
  run_cmd->add_flag("--all", run_all, "run every deterministic heuristic");
  run_cmd->add_option("--problems", problems, "subset of {ove,mec}");
  run_cmd->add_flag("--exact", run_cfg.with_exact, "also solve exactly and report ratios");
  run_cmd->add_option("--budget", run_cfg.exact_budget, "node budget for exact OVE");
  run_cmd->add_option("--mec-limit", run_cfg.exact_mec_limit, "internal-vertex cap for exact MEC");
  run_cmd->add_option("--restarts", run_cfg.restarts, "restarts for sa / mc2");
  run_cmd->add_option("--iters", run_cfg.sa_iterations, "sa iterations");
  run_cmd->add_option("--cooling", run_cfg.sa_cooling, "sa geometric cooling factor");
  double sa_temp = -1.0, mcmc_temp = -1.0;
  long long mcmc_iters = -1;
  run_cmd->add_option("--temp", sa_temp, "sa initial temperature (default: auto)");
  run_cmd->add_option("--mc2-temp", mcmc_temp, "mc2 temperature");
  run_cmd->add_option("--mc2-iters", mcmc_iters, "mc2 iterations");
  std::string run_out;
  run_cmd->add_option("-o,--out", run_out, "output path (default stdout)");

  // --- exact -------------------------------------------------------------
  auto* exact_cmd = app.add_subcommand("exact", "exact solvers");
  exact_cmd->fallthrough();
  std::string exact_input, exact_problem = "ove";
  long long exact_budget = 100'000'000;
  int exact_limit = 22;
  exact_cmd->add_option("-i,--input", exact_input, "graph file or family spec")->required();
  exact_cmd->add_option("--problem", exact_problem, "ove or mec");
  exact_cmd->add_option("--budget", exact_budget, "node budget (ove)");
  exact_cmd->add_option("--limit", exact_limit, "internal-vertex cap (mec)");

  // --- bounds ------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "lower-bound report");
  bounds_cmd->fallthrough();
  std::string bounds_input;
  bounds_cmd->add_option("-i,--input", bounds_input, "graph file or family spec")->required();

  // --- preprocess ----------------------------------------------------------
  auto* pre_cmd = app.add_subcommand("preprocess", "safe prefix reductions");
  pre_cmd->fallthrough();
  std::string pre_input, pre_out, pre_log;
  pre_cmd->add_option("-i,--input", pre_input, "graph file or family spec")->required();
  pre_cmd->add_option("-o,--out", pre_out, "residual graph output (EdgeList)");
  pre_cmd->add_option("--log", pre_log, "reduction log output (JSON)");

  // --- ilp / ilp-check -----------------------------------------------------
  auto* ilp_cmd = app.add_subcommand("ilp", "emit an LP model");
  ilp_cmd->fallthrough();
  std::string ilp_input, ilp_problem = "ove", ilp_variant = "vC", ilp_out;
  bool ilp_no_closure = false;
  ilp_cmd->add_option("-i,--input", ilp_input, "graph file or family spec")->required();
  ilp_cmd->add_option("--problem", ilp_problem, "ove or mec");
  ilp_cmd->add_option("--variant", ilp_variant, "ove variant: vA vB vC vD");
  ilp_cmd->add_flag("--no-closure", ilp_no_closure, "mec: keep all pair variables");
  ilp_cmd->add_option("--out", ilp_out, "LP file path (default stdout)");

  auto* check_cmd = app.add_subcommand("ilp-check", "validate a solver solution");
  check_cmd->fallthrough();
  std::string check_input, check_problem = "ove", check_variant = "vC", check_solution;
  bool check_no_closure = false;
  check_cmd->add_option("-i,--input", check_input, "graph file or family spec")->required();
  check_cmd->add_option("--problem", check_problem, "ove or mec");
  check_cmd->add_option("--variant", check_variant, "ove variant used when emitting");
  check_cmd->add_flag("--no-closure", check_no_closure, "mec: model was built with --no-closure");
  check_cmd->add_option("--solution", check_solution, "solution file (name value lines)")->required();

  // --- gen / convert -------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "emit a generated family instance");
  gen_cmd->fallthrough();
  std::string gen_family, gen_params, gen_out;
  gen_cmd->add_option("--family", gen_family, "evolution tightness middleout ovegap mecgap")
      ->required();
  gen_cmd->add_option("--params", gen_params, "comma-separated parameters")->required();
  gen_cmd->add_option("-o,--out", gen_out, "output path (default stdout)");

  auto* conv_cmd = app.add_subcommand("convert", "convert between graph formats");
  conv_cmd->fallthrough();
  std::string conv_input, conv_to = "edgelist", conv_out;
  conv_cmd->add_option("-i,--input", conv_input, "graph file")->required();
  conv_cmd->add_option("--to", conv_to, "edgelist or dot");
  conv_cmd->add_option("-o,--out", conv_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      if (run_all) run_cfg.methods = kAllMethods;
      if (run_cfg.methods.empty())
        throw InvalidParamsError("no methods selected; use --rule or --all");
      run_cfg.problem_ove = run_cfg.problem_mec = false;
      for (const std::string& p : problems) {
        if (p == "ove")
          run_cfg.problem_ove = true;
        else if (p == "mec")
          run_cfg.problem_mec = true;
        else
          throw InvalidParamsError("unknown problem '" + p + "'");
      }
      if (sa_temp >= 0.0) run_cfg.sa_temp = sa_temp;
      if (mcmc_temp >= 0.0) run_cfg.mcmc_temp = mcmc_temp;
      if (mcmc_iters >= 0) run_cfg.mcmc_iterations = mcmc_iters;
      run_cfg.seed = seed;
      run_cfg.jobs = jobs;
      const RunResult result = run_experiment(run_cfg);
      emit(run_out, render_rows(result.rows, parse_format(format_name), run_cfg.with_exact));
      return result.any_failure ? 2 : 0;
    }

    if (exact_cmd->parsed()) {
      const NamedGraph g = load_input(exact_input);
      ExactResult r;
      if (exact_problem == "ove")
        r = bnb_ove(g.dag, exact_budget);
      else if (exact_problem == "mec")
        r = exact_mec(g.dag, exact_limit);
      else
        throw InvalidParamsError("unknown problem '" + exact_problem + "'");
      nlohmann::json out;
      out["graph"] = g.name;
      out["problem"] = exact_problem;
      out["status"] = r.status == SolveStatus::Optimal        ? "optimal"
                      : r.status == SolveStatus::BudgetExceeded ? "budget_exceeded"
                                                                : "too_large";
      if (r.status != SolveStatus::TooLarge) {
        out["objective"] = r.objective;
        out["witness"] = r.witness;
      }
      out["nodes_explored"] = r.nodes_explored;
      std::cout << out.dump(2) << "\n";
      return r.status == SolveStatus::TooLarge ? 2 : 0;
    }

    if (bounds_cmd->parsed()) {
      const NamedGraph g = load_input(bounds_input);
      const BoundsReport r = bounds_report(g.dag);
      if (parse_format(format_name) == OutputFormat::Json) {
        nlohmann::json out;
        out["graph"] = g.name;
        out["half_edges"] = r.half_edges;
        out["mu_star_sum"] = r.mu_star_sum;
        out["final_markowitz"] = nlohmann::json::object();
        for (const auto& [v, val] : r.final_markowitz)
          out["final_markowitz"][std::to_string(v)] = val;
        out["best"] = r.best;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "graph=" << g.name << "\n";
        std::cout << "half_edges=" << r.half_edges << "\n";
        std::cout << "mu_star_sum=" << r.mu_star_sum << "\n";
        long long fm_best = 0;
        for (const auto& [v, val] : r.final_markowitz) fm_best = std::max(fm_best, val);
        std::cout << "final_markowitz_max=" << fm_best << "\n";
        std::cout << "best=" << r.best << "\n";
      }
      return 0;
    }

    if (pre_cmd->parsed()) {
      const NamedGraph g = load_input(pre_input);
      const ReductionLog log = reduce(g.dag);
      emit(pre_out, to_edge_list(log.residual));
      nlohmann::json jlog;
      jlog["accrued_cost"] = log.accrued_cost;
      jlog["prefix"] = nlohmann::json::array();
      for (const auto& step : log.prefix) {
        nlohmann::json s;
        s["vertex"] = step.vertex;
        s["rule"] = step.rule == ReductionRule::MarkowitzOne    ? "markowitz_one"
                    : step.rule == ReductionRule::MuStarForward ? "mu_star_forward"
                                                                : "mu_star_backward";
        s["cost"] = step.cost;
        jlog["prefix"].push_back(std::move(s));
      }
      if (!pre_log.empty())
        write_file(pre_log, jlog.dump(2) + "\n");
      else if (!pre_out.empty())
        std::cout << jlog.dump(2) << "\n";
      return 0;
    }

    if (ilp_cmd->parsed()) {
      const NamedGraph g = load_input(ilp_input);
      IlpModel model;
      if (ilp_problem == "ove") {
        const std::map<std::string, OveVariant> variants = {{"vA", OveVariant::vA},
                                                            {"vB", OveVariant::vB},
                                                            {"vC", OveVariant::vC},
                                                            {"vD", OveVariant::vD}};
        const auto it = variants.find(ilp_variant);
        if (it == variants.end()) throw InvalidParamsError("unknown variant '" + ilp_variant + "'");
        model = build_ove_ilp(g.dag, it->second);
      } else if (ilp_problem == "mec") {
        model = build_mec_ilp(g.dag, !ilp_no_closure);
      } else {
        throw InvalidParamsError("unknown problem '" + ilp_problem + "'");
      }
      std::ostringstream lp;
      write_lp(model, lp);
      emit(ilp_out, lp.str());
      if (!ilp_out.empty())
        std::cerr << "wrote " << model.vars.size() << " vars (" << model.free_var_count()
                  << " free), " << model.constraints.size() << " constraints";
      if (!ilp_out.empty() && model.accrued_cost > 0)
        std::cerr << "; preprocessing pinned cost " << model.accrued_cost;
      if (!ilp_out.empty()) std::cerr << "\n";
      return 0;
    }

    if (check_cmd->parsed()) {
      const NamedGraph g = load_input(check_input);
      IlpModel model;
      if (check_problem == "ove") {
        const std::map<std::string, OveVariant> variants = {{"vA", OveVariant::vA},
                                                            {"vB", OveVariant::vB},
                                                            {"vC", OveVariant::vC},
                                                            {"vD", OveVariant::vD}};
        const auto it = variants.find(check_variant);
        if (it == variants.end())
          throw InvalidParamsError("unknown variant '" + check_variant + "'");
        model = build_ove_ilp(g.dag, it->second);
      } else {
        model = build_mec_ilp(g.dag, !check_no_closure);
      }
      const ExactResult r = read_solution(model, read_file(check_solution));
      nlohmann::json out;
      out["graph"] = g.name;
      out["objective"] = r.objective;
      out["witness"] = r.witness;
      out["valid"] = true;
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (gen_cmd->parsed()) {
      const NamedGraph g = load_input(gen_family + ":" + gen_params);
      emit(gen_out, to_edge_list(g.dag));
      return 0;
    }

    if (conv_cmd->parsed()) {
      const Dag d = parse_graph_auto(read_file(conv_input));
      if (conv_to == "edgelist")
        emit(conv_out, to_edge_list(d));
      else if (conv_to == "dot")
        emit(conv_out, to_dot(d));
      else
        throw InvalidParamsError("unknown target format '" + conv_to + "'");
      return 0;
    }
  } catch (const InvalidParamsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
