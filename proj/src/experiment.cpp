#include "dagelim/experiment.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dagelim/exact.hpp"
#include "dagelim/generators.hpp"
#include "dagelim/heuristics.hpp"
#include "dagelim/io.hpp"
#include "dagelim/search.hpp"

namespace dagelim {

namespace {

std::vector<long long> parse_params(const std::string& spec, size_t expected) {
  std::vector<long long> out;
  std::string token;
  std::istringstream ss(spec);
  while (std::getline(ss, token, ','))
    if (!token.empty()) out.push_back(std::stoll(token));
  if (out.size() != expected)
    throw InvalidParamsError("expected " + std::to_string(expected) + " parameters in '" + spec +
                             "'");
  return out;
}

std::optional<Dag> family_graph(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "evolution") {
    const auto p = parse_params(args, 3);
    return evolution(static_cast<int>(p[0]), static_cast<int>(p[1]), static_cast<int>(p[2]));
  }
  if (kind == "tightness") {
    const auto p = parse_params(args, 2);
    return tightness_family(static_cast<int>(p[0]), static_cast<int>(p[1]));
  }
  if (kind == "middleout") {
    const auto p = parse_params(args, 1);
    return middleout_hard(static_cast<int>(p[0])).dag;
  }
  if (kind == "ovegap") {
    const auto p = parse_params(args, 1);
    return gap_instance(GapKind::OveGap, static_cast<int>(p[0]));
  }
  if (kind == "mecgap") {
    const auto p = parse_params(args, 1);
    return gap_instance(GapKind::MecGap, static_cast<int>(p[0]));
  }
  // 2dPxQxT shorthand used by the catalog tables
  if (spec.size() > 2 && spec[0] == '2' && spec[1] == 'd') {
    int p = 0, q = 0, t = 0;
    char x1 = 0, x2 = 0;
    std::istringstream ss(spec.substr(2));
    if (ss >> p >> x1 >> q >> x2 >> t && x1 == 'x' && x2 == 'x') return evolution(p, q, t);
  }
  return std::nullopt;
}

struct MethodOutcome {
  std::optional<long long> ove_cost;
  std::optional<long long> min_edges;
};

MethodOutcome run_method(const Dag& d, const std::string& method, const RunConfig& cfg) {
  MethodOutcome out;
  auto trace_result = [&](const EliminationTrace& t) {
    out.ove_cost = t.total_cost;
    out.min_edges = t.min_edges;
  };
  if (method == "fw") {
    trace_result(topological_mode(d, Direction::Forward));
  } else if (method == "rev") {
    trace_result(topological_mode(d, Direction::Reverse));
  } else if (method == "mo") {
    trace_result(middle_out(d));
  } else if (method == "sa") {
    EliminationTrace best;
    for (int r = 0; r < cfg.restarts; ++r) {
      SaParams params;
      params.iterations = cfg.sa_iterations;
      params.cooling = cfg.sa_cooling;
      params.initial_temp = cfg.sa_temp;
      params.seed = split_seed(cfg.seed, static_cast<std::uint64_t>(r));
      EliminationTrace t = simulated_annealing(d, params);
      if (r == 0 || t.total_cost < best.total_cost) best = std::move(t);
    }
    trace_result(best);
  } else if (method == "mc2") {
    MecSearchResult best;
    for (int r = 0; r < cfg.restarts; ++r) {
      McmcParams params;
      params.iterations = cfg.mcmc_iterations;
      if (cfg.mcmc_temp) params.temperature = *cfg.mcmc_temp;
      params.seed = split_seed(cfg.seed, static_cast<std::uint64_t>(r));
      MecSearchResult m = mcmc_edge_min(d, params);
      if (r == 0 || m.edges < best.edges) best = std::move(m);
    }
    out.min_edges = best.edges;
  } else {
    static const std::map<std::string, GreedyKind> kinds = {
        {"mar", GreedyKind::Mar}, {"rmar", GreedyKind::RMar}, {"mr", GreedyKind::MR},
        {"m2d", GreedyKind::M2D}, {"dmc", GreedyKind::DMC},   {"pl", GreedyKind::PL},
        {"pc", GreedyKind::PC},   {"er", GreedyKind::ER},     {"md", GreedyKind::MD}};
    const auto it = kinds.find(method);
    if (it == kinds.end()) throw Error("unknown method '" + method + "'");
    trace_result(greedy_eliminate(d, it->second));
  }
  return out;
}

std::string format_ratio(long long value, long long optimum) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(2);
  ss << static_cast<double>(value) / static_cast<double>(optimum);
  return ss.str();
}

}  // namespace

NamedGraph load_input(const std::string& spec) {
  if (std::ifstream file(spec); file) {
    std::stringstream buffer;
    buffer << file.rdbuf();
    NamedGraph g{spec, parse_graph_auto(buffer.str())};
    if (g.dag.order() == 0) throw Error("input '" + spec + "' holds no graph");
    const auto slash = g.name.find_last_of('/');
    if (slash != std::string::npos) g.name = g.name.substr(slash + 1);
    return g;
  }
  if (auto d = family_graph(spec)) return {spec, std::move(*d)};
  throw Error("input '" + spec + "' is neither a readable file nor a known family spec");
}

RunResult run_experiment(const RunConfig& config) {
  if (config.inputs.empty() || config.methods.empty())
    throw InvalidParamsError("need at least one input and one method");

  struct Task {
    size_t graph_idx;
    size_t method_idx;
  };
  std::vector<NamedGraph> graphs;
  std::vector<RunRow> rows;
  std::vector<Task> tasks;
  for (size_t gi = 0; gi < config.inputs.size(); ++gi) {
    NamedGraph g{config.inputs[gi], Dag()};
    std::string load_error;
    try {
      g = load_input(config.inputs[gi]);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    graphs.push_back(std::move(g));
    for (const std::string& method : config.methods) {
      RunRow row;
      row.graph = graphs.back().name;
      row.method = method;
      row.error = load_error;
      rows.push_back(std::move(row));
    }
    if (load_error.empty())
      for (size_t mi = 0; mi < config.methods.size(); ++mi) tasks.push_back({gi, mi});
  }

  // exact optima per graph, computed once, shared by the ratio columns
  std::vector<std::optional<long long>> ove_opt(graphs.size()), mec_opt(graphs.size());
  if (config.with_exact) {
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
      if (graphs[gi].dag.order() == 0) continue;
      if (config.problem_ove) {
        const ExactResult ove = bnb_ove(graphs[gi].dag, config.exact_budget);
        if (ove.status == SolveStatus::Optimal) ove_opt[gi] = ove.objective;
      }
      if (config.problem_mec) {
        const ExactResult mec = exact_mec(graphs[gi].dag, config.exact_mec_limit);
        if (mec.status == SolveStatus::Optimal) mec_opt[gi] = mec.objective;
      }
    }
  }

  auto row_index = [&](const Task& task) {
    return task.graph_idx * config.methods.size() + task.method_idx;
  };

  std::atomic<size_t> next{0};
  std::mutex rows_mutex;
  auto worker = [&]() {
    while (true) {
      const size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      RunRow local;
      const auto start = std::chrono::steady_clock::now();
      try {
        const MethodOutcome out =
            run_method(graphs[task.graph_idx].dag, config.methods[task.method_idx], config);
        local.ove_cost = out.ove_cost;
        local.min_edges = out.min_edges;
      } catch (const std::exception& e) {
        local.error = e.what();
      }
      local.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      std::lock_guard<std::mutex> lock(rows_mutex);
      RunRow& row = rows[row_index(task)];
      row.ove_cost = config.problem_ove ? local.ove_cost : std::nullopt;
      row.min_edges = config.problem_mec ? local.min_edges : std::nullopt;
      row.error = local.error;
      row.elapsed_ms = local.elapsed_ms;
      if (local.error.empty()) {
        if (row.ove_cost && ove_opt[task.graph_idx])
          row.ove_ratio = format_ratio(*row.ove_cost, *ove_opt[task.graph_idx]);
        if (row.min_edges && mec_opt[task.graph_idx])
          row.mec_ratio = format_ratio(*row.min_edges, *mec_opt[task.graph_idx]);
      }
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  RunResult result;
  for (const RunRow& row : rows) result.any_failure = result.any_failure || !row.error.empty();

  // summary: arithmetic-mean ratio rows per method over the solved inputs
  if (config.with_exact) {
    for (const std::string& method : config.methods) {
      RunRow mean;
      mean.graph = "mean";
      mean.method = method;
      double ove_sum = 0.0, mec_sum = 0.0;
      int ove_n = 0, mec_n = 0;
      for (const RunRow& row : rows) {
        if (row.method != method || !row.error.empty()) continue;
        if (row.ove_ratio != "?") {
          ove_sum += std::stod(row.ove_ratio);
          ++ove_n;
        }
        if (row.mec_ratio != "?") {
          mec_sum += std::stod(row.mec_ratio);
          ++mec_n;
        }
      }
      auto fmt = [](double v) {
        std::ostringstream ss;
        ss.setf(std::ios::fixed);
        ss.precision(2);
        ss << v;
        return ss.str();
      };
      if (ove_n > 0) mean.ove_ratio = fmt(ove_sum / ove_n);
      if (mec_n > 0) mean.mec_ratio = fmt(mec_sum / mec_n);
      rows.push_back(std::move(mean));
    }
  }
  result.rows = std::move(rows);
  return result;
}

std::string render_rows(const std::vector<RunRow>& rows, OutputFormat format, bool with_exact) {
  auto cell = [](const std::optional<long long>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  std::ostringstream out;
  if (format == OutputFormat::Csv || format == OutputFormat::Markdown) {
    const char* sep = format == OutputFormat::Csv ? "," : " | ";
    const char* lead = format == OutputFormat::Csv ? "" : "| ";
    const char* tail = format == OutputFormat::Csv ? "" : " |";
    out << lead << "graph" << sep << "rule" << sep << "ove_cost" << sep;
    if (with_exact) out << "ove_ratio" << sep;
    out << "min_edges" << sep;
    if (with_exact) out << "mec_ratio" << sep;
    out << "elapsed_ms" << tail << "\n";
    if (format == OutputFormat::Markdown) {
      const int cols = with_exact ? 7 : 5;
      out << "|";
      for (int i = 0; i < cols; ++i) out << " --- |";
      out << "\n";
    }
    for (const RunRow& row : rows) {
      out << lead << row.graph << sep << row.method << sep << cell(row.ove_cost) << sep;
      if (with_exact) out << row.ove_ratio << sep;
      out << cell(row.min_edges) << sep;
      if (with_exact) out << row.mec_ratio << sep;
      out.setf(std::ios::fixed);
      out.precision(3);
      out << row.elapsed_ms;
      if (!row.error.empty()) out << (format == OutputFormat::Csv ? ",error=" : " error=") << row.error;
      out << tail << "\n";
    }
    return out.str();
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const RunRow& row : rows) {
    nlohmann::json obj;
    obj["graph"] = row.graph;
    obj["rule"] = row.method;
    if (row.ove_cost) obj["ove_cost"] = *row.ove_cost;
    if (row.min_edges) obj["min_edges"] = *row.min_edges;
    if (with_exact) {
      obj["ove_ratio"] = row.ove_ratio;
      obj["mec_ratio"] = row.mec_ratio;
    }
    obj["elapsed_ms"] = row.elapsed_ms;
    if (!row.error.empty()) obj["error"] = row.error;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

}  // namespace dagelim
