#pragma once

#include <cstdint>
#include <string>

#include "dpbb/problem.hpp"

namespace dpbb {

/// Deterministic pseudo-random instance families for benchmarking.
/// knapsack: n binary items, integral weights/profits, capacity = half
///           of the total weight, maximize profit.
/// setcover: m elements, n sets, random 0/1 coverage with every element
///           covered at least once (the all-ones cover is feasible),
///           minimize total set cost.
/// gap:      m agents, n jobs, assignment rows plus agent capacities
///           sized so a round-robin assignment fits, minimize cost.
Problem generate_knapsack(int n, std::uint64_t seed);
Problem generate_setcover(int elements, int sets, std::uint64_t seed);
Problem generate_gap(int agents, int jobs, std::uint64_t seed);

struct GenParams {
  int n = 10;  // items / sets / jobs
  int m = 0;   // elements / agents (0 = family default)
};

/// family is one of {knapsack, setcover, gap}.
Problem generate_instance(const std::string& family, const GenParams& params,
                          std::uint64_t seed);

}  // namespace dpbb
