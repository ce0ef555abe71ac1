#include "dpbb/bench.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <tuple>

namespace dpbb {

namespace {

struct Task {
  const std::string* instance_name;
  const Problem* problem;
  std::uint64_t seed;
  const std::string* variant;
};

RunRecord execute(const Task& task, const SolveConfig& base) {
  Problem permuted = permute_variables(*task.problem, task.seed);
  SolveConfig config = base;
  config.rule = *task.variant;
  config.seed = task.seed;
  SolveResult res = solve(permuted, config);
  RunRecord rec;
  rec.instance = *task.instance_name;
  rec.seed = task.seed;
  rec.variant = *task.variant;
  rec.status = to_string(res.status);
  rec.time_sec = res.wall_time;
  rec.nodes = res.nodes;
  rec.pdi = res.pdi;
  rec.objective = res.objective;
  return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec) {
  std::vector<Task> tasks;
  for (const auto& [name, problem] : spec.instances)
    for (std::uint64_t seed : spec.seeds)
      for (const auto& variant : spec.variants)
        tasks.push_back({&name, &problem, seed, &variant});

  std::vector<RunRecord> records(tasks.size());
  int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      records[i] = execute(tasks[i], spec.base_config);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          records[i] = execute(tasks[i], spec.base_config);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return std::tie(a.instance, a.seed, a.variant) <
                     std::tie(b.instance, b.seed, b.variant);
            });
  return records;
}

}  // namespace dpbb
