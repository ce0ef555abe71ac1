#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpbb/bnb.hpp"
#include "dpbb/problem.hpp"
#include "dpbb/stats.hpp"

namespace dpbb {

/// Cross product (instances x seeds x variants); each run is an isolated
/// single-threaded solve, seeds permute the variable order. Records come
/// back sorted by (instance, seed, variant) regardless of worker count.
struct ExperimentSpec {
  std::vector<std::pair<std::string, Problem>> instances;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<std::string> variants;
  SolveConfig base_config;  // rule field is overridden per variant
  int jobs = 1;
};

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec);

}  // namespace dpbb
