#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "dpbb/bench.hpp"
#include "dpbb/bnb.hpp"
#include "dpbb/generator.hpp"
#include "dpbb/mps.hpp"
#include "dpbb/stats.hpp"

namespace fs = std::filesystem;

namespace dpbb {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolverError = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string rule = "rpscost";
  double gamma = 0.2;
  int rel_threshold = 8;
  double time_limit = 60.0;
  long node_limit = std::numeric_limits<long>::max();
  double gap = 0.0;
  std::string node_selection = "best-bound";
  std::string level1_update = "all-children";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_rule) {
  if (with_rule)
    cmd->add_option("--rule", opts.rule,
                    "branching rule (mostfrac, pscost, dpscost, strong, "
                    "lookahead, rpscost, rdpscost)");
  cmd->add_option("--gamma", opts.gamma, "discount factor in [0,1]");
  cmd->add_option("--rel-threshold", opts.rel_threshold,
                  "reliability threshold (datapoints per level)");
  cmd->add_option("--time-limit", opts.time_limit, "seconds per solve");
  cmd->add_option("--node-limit", opts.node_limit, "node limit per solve");
  cmd->add_option("--gap", opts.gap, "relative gap tolerance");
  cmd->add_option("--node-selection", opts.node_selection,
                  "best-bound or dfs");
  cmd->add_option("--level1-update", opts.level1_update,
                  "all-children or down-only");
}

int fill_config(const CommonOptions& opts, SolveConfig& config) {
  if (!is_valid_rule(opts.rule)) {
    std::cerr << "error: unknown rule '" << opts.rule << "'\n";
    return kExitUsage;
  }
  if (!(opts.gamma >= 0.0 && opts.gamma <= 1.0)) {
    std::cerr << "error: --gamma must lie in [0,1]\n";
    return kExitUsage;
  }
  if (opts.rel_threshold < 1) {
    std::cerr << "error: --rel-threshold must be >= 1\n";
    return kExitUsage;
  }
  if (opts.node_selection != "best-bound" && opts.node_selection != "dfs") {
    std::cerr << "error: --node-selection must be best-bound or dfs\n";
    return kExitUsage;
  }
  if (opts.level1_update != "all-children" && opts.level1_update != "down-only") {
    std::cerr << "error: --level1-update must be all-children or down-only\n";
    return kExitUsage;
  }
  config.rule = opts.rule;
  config.score.gamma = opts.gamma;
  config.score.rel_threshold = opts.rel_threshold;
  config.time_limit = opts.time_limit;
  config.node_limit = opts.node_limit;
  config.gap_tol = opts.gap;
  config.node_selection = opts.node_selection == "dfs"
                              ? NodeSelection::Dfs
                              : NodeSelection::BestBound;
  config.level1_update = opts.level1_update == "down-only"
                             ? Level1Update::DownOnly
                             : Level1Update::AllChildren;
  return kExitOk;
}

std::vector<std::string> expand_instances(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const auto& path : paths) {
    if (fs::is_directory(path)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(path))
        if (entry.path().extension() == ".mps")
          found.push_back(entry.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(path);
    }
  }
  return files;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write to " + out_path);
  f << text;
}

long long now_unix_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

int cmd_solve(const std::string& instance_path, const CommonOptions& opts,
              std::uint64_t seed, double cutoff, bool has_cutoff,
              const std::string& json_path, const std::string& trace_path) {
  SolveConfig config;
  int rc = fill_config(opts, config);
  if (rc != kExitOk) return rc;
  config.seed = seed;
  if (has_cutoff) config.cutoff = cutoff;
  config.collect_trace = !trace_path.empty();

  Problem problem;
  try {
    problem = parse_mps_file(instance_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  problem = permute_variables(problem, seed);

  SolveResult res;
  try {
    res = solve(problem, config);
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  }

  std::printf("instance  %s\n", stem_of(instance_path).c_str());
  std::printf("rule      %s\n", config.rule.c_str());
  std::printf("status    %s\n", to_string(res.status));
  if (res.objective) std::printf("objective %.10g\n", *res.objective);
  std::printf("dualbound %.10g\n", res.dual_bound);
  std::printf("nodes     %ld\n", res.nodes);
  std::printf("time_sec  %.3f\n", res.wall_time);
  std::printf("pdi       %.6g\n", res.pdi);

  if (!trace_path.empty()) {
    std::ofstream f(trace_path);
    for (const auto& line : res.trace) f << line << "\n";
  }
  if (!json_path.empty()) {
    nlohmann::ordered_json j;
    j["instance"] = stem_of(instance_path);
    j["rule"] = config.rule;
    j["status"] = to_string(res.status);
    if (res.objective)
      j["objective"] = *res.objective;
    else
      j["objective"] = nullptr;
    j["dual_bound"] = res.dual_bound;
    j["nodes"] = res.nodes;
    j["seed"] = seed;
    // Wall-clock dependent values live under metadata so the rest of the
    // document is byte-identical across repeated runs.
    j["metadata"] = {{"time_sec", res.wall_time},
                     {"pdi", res.pdi},
                     {"timestamp_ms", now_unix_ms()}};
    std::ofstream f(json_path);
    if (!f) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return kExitUsage;
    }
    f << j.dump(2) << "\n";
  }
  return kExitOk;
}

int emit_report(const std::vector<RunRecord>& records,
                const std::string& baseline, const std::string& test,
                double time_limit, const std::string& format,
                const std::string& out_path) {
  BracketReport report = compare_report(records, baseline, test, time_limit);
  std::string text;
  if (format == "csv")
    text = render_csv(report);
  else
    text = render_table(report);
  write_output(text, out_path);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"MILP branch-and-bound solver with discounted pseudocosts"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve one MPS instance");
  std::string instance_path;
  solve_cmd->add_option("instance", instance_path, "MPS file")->required();
  CommonOptions solve_opts;
  add_common(solve_cmd, solve_opts, true);
  std::uint64_t solve_seed = 0;
  double cutoff = 0.0;
  std::string json_path, trace_path;
  solve_cmd->add_option("--seed", solve_seed, "variable-permutation seed");
  auto* cutoff_opt =
      solve_cmd->add_option("--cutoff", cutoff, "objective cutoff");
  solve_cmd->add_option("--json", json_path, "write result JSON here");
  solve_cmd->add_option("--trace", trace_path, "write tree trace here");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write benchmark instances");
  std::string family = "knapsack";
  GenParams gen_params;
  std::vector<std::uint64_t> gen_seeds = {1};
  std::string out_dir = ".";
  gen_cmd->add_option("--family", family, "knapsack, setcover or gap");
  gen_cmd->add_option("--n", gen_params.n, "items / sets / jobs");
  gen_cmd->add_option("--m", gen_params.m, "elements / agents (0 = default)");
  gen_cmd->add_option("--seeds", gen_seeds, "instance seeds")
      ->delimiter(',');
  gen_cmd->add_option("--out", out_dir, "output directory");

  // compare
  auto* cmp_cmd =
      app.add_subcommand("compare", "run two variants and report brackets");
  std::string baseline = "rpscost", testv = "rdpscost";
  std::vector<std::string> instance_paths;
  std::vector<std::uint64_t> cmp_seeds = {1};
  CommonOptions cmp_opts;
  cmp_opts.time_limit = 300.0;
  int jobs = 1;
  std::string records_path, cmp_format = "text", cmp_out;
  cmp_cmd->add_option("--baseline", baseline, "baseline rule");
  cmp_cmd->add_option("--test", testv, "test rule");
  cmp_cmd->add_option("--instances", instance_paths,
                      "MPS files or directories")
      ->required();
  cmp_cmd->add_option("--seeds", cmp_seeds, "seeds")->delimiter(',');
  add_common(cmp_cmd, cmp_opts, false);
  cmp_cmd->add_option("--jobs", jobs, "parallel workers");
  cmp_cmd->add_option("--records", records_path, "write JSON-lines here");
  cmp_cmd->add_option("--format", cmp_format, "text or csv");
  cmp_cmd->add_option("--out", cmp_out, "report output path");

  // report
  auto* rep_cmd =
      app.add_subcommand("report", "rebuild a bracket table from records");
  std::string rep_records, rep_base = "rpscost", rep_test = "rdpscost";
  double rep_limit = 300.0;
  std::string rep_format = "text", rep_out;
  rep_cmd->add_option("--records", rep_records, "JSON-lines file")->required();
  rep_cmd->add_option("--baseline", rep_base, "baseline rule");
  rep_cmd->add_option("--test", rep_test, "test rule");
  rep_cmd->add_option("--time-limit", rep_limit, "time limit used in runs");
  rep_cmd->add_option("--format", rep_format, "text or csv");
  rep_cmd->add_option("--out", rep_out, "report output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(instance_path, solve_opts, solve_seed, cutoff,
                       cutoff_opt->count() > 0, json_path, trace_path);
    }
    if (gen_cmd->parsed()) {
      fs::create_directories(out_dir);
      for (std::uint64_t seed : gen_seeds) {
        Problem p;
        try {
          p = generate_instance(family, gen_params, seed);
        } catch (const std::invalid_argument& e) {
          std::cerr << "error: " << e.what() << "\n";
          return kExitUsage;
        }
        std::string path = out_dir + "/" + p.name + ".mps";
        write_mps_file(p, path);
        std::cout << path << "\n";
      }
      return kExitOk;
    }
    if (cmp_cmd->parsed()) {
      if (!is_valid_rule(baseline) || !is_valid_rule(testv)) {
        std::cerr << "error: unknown rule\n";
        return kExitUsage;
      }
      ExperimentSpec spec;
      int rc = fill_config(cmp_opts, spec.base_config);
      if (rc != kExitOk) return rc;
      spec.seeds = cmp_seeds;
      spec.variants = {baseline, testv};
      spec.jobs = jobs;
      auto files = expand_instances(instance_paths);
      if (files.empty()) {
        std::cerr << "error: no instances found\n";
        return kExitUsage;
      }
      for (const auto& f : files) {
        try {
          spec.instances.emplace_back(stem_of(f), parse_mps_file(f));
        } catch (const std::exception& e) {
          std::cerr << "error: " << e.what() << "\n";
          return kExitUsage;
        }
      }
      auto records = run_experiment(spec);
      if (!records_path.empty()) write_output(to_jsonl(records), records_path);
      return emit_report(records, baseline, testv, cmp_opts.time_limit,
                         cmp_format, cmp_out);
    }
    if (rep_cmd->parsed()) {
      std::ifstream f(rep_records);
      if (!f) {
        std::cerr << "error: cannot read " << rep_records << "\n";
        return kExitUsage;
      }
      auto records = parse_jsonl(f);
      return emit_report(records, rep_base, rep_test, rep_limit, rep_format,
                         rep_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  }
  return kExitUsage;
}

}  // namespace dpbb
