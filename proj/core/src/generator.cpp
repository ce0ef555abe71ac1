#include "dpbb/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dpbb {

namespace {

// Modulo draws keep the streams deterministic across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL) {}
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng_() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
};

Variable binary_var(const std::string& name, double obj) {
  Variable v;
  v.name = name;
  v.lower = 0.0;
  v.upper = 1.0;
  v.obj_coeff = obj;
  v.integrality = Integrality::Binary;
  return v;
}

}  // namespace

Problem generate_knapsack(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("knapsack: n must be positive");
  Rng rng(seed ^ 0x6b6e617073616b31ULL);
  Problem p;
  p.name = "knapsack_n" + std::to_string(n) + "_s" + std::to_string(seed);
  p.sense = Sense::Maximize;
  Constraint cap;
  cap.name = "capacity";
  cap.relation = Relation::LessEqual;
  long total_weight = 0;
  for (int j = 0; j < n; ++j) {
    int w = rng.uniform(1, 50);
    int profit = rng.uniform(1, 50);
    total_weight += w;
    p.variables.push_back(binary_var("x" + std::to_string(j), profit));
    cap.coeffs.emplace_back(j, static_cast<double>(w));
  }
  cap.rhs = static_cast<double>(std::max<long>(1, total_weight / 2));
  p.constraints.push_back(std::move(cap));
  p.validate();
  return p;
}

Problem generate_setcover(int elements, int sets, std::uint64_t seed) {
  if (elements <= 0 || sets <= 0)
    throw std::invalid_argument("setcover: sizes must be positive");
  Rng rng(seed ^ 0x736574636f766572ULL);
  Problem p;
  p.name = "setcover_e" + std::to_string(elements) + "_n" +
           std::to_string(sets) + "_s" + std::to_string(seed);
  p.sense = Sense::Minimize;
  for (int j = 0; j < sets; ++j)
    p.variables.push_back(
        binary_var("s" + std::to_string(j), rng.uniform(1, 20)));
  std::vector<std::vector<int>> covers(elements);
  for (int e = 0; e < elements; ++e)
    for (int j = 0; j < sets; ++j)
      if (rng.uniform(0, 9) < 3) covers[e].push_back(j);
  for (int e = 0; e < elements; ++e) {
    if (covers[e].empty()) covers[e].push_back(rng.uniform(0, sets - 1));
    Constraint c;
    c.name = "cover" + std::to_string(e);
    c.relation = Relation::GreaterEqual;
    c.rhs = 1.0;
    for (int j : covers[e]) c.coeffs.emplace_back(j, 1.0);
    p.constraints.push_back(std::move(c));
  }
  p.validate();
  return p;
}

Problem generate_gap(int agents, int jobs, std::uint64_t seed) {
  if (agents <= 0 || jobs <= 0)
    throw std::invalid_argument("gap: sizes must be positive");
  Rng rng(seed ^ 0x6761705f696e7374ULL);
  Problem p;
  p.name = "gap_a" + std::to_string(agents) + "_j" + std::to_string(jobs) +
           "_s" + std::to_string(seed);
  p.sense = Sense::Minimize;
  std::vector<std::vector<int>> weight(agents, std::vector<int>(jobs));
  auto var_index = [&](int i, int j) { return i * jobs + j; };
  for (int i = 0; i < agents; ++i)
    for (int j = 0; j < jobs; ++j) {
      weight[i][j] = rng.uniform(1, 20);
      p.variables.push_back(binary_var(
          "x" + std::to_string(i) + "_" + std::to_string(j),
          rng.uniform(1, 20)));
    }
  for (int j = 0; j < jobs; ++j) {
    Constraint c;
    c.name = "assign" + std::to_string(j);
    c.relation = Relation::Equal;
    c.rhs = 1.0;
    for (int i = 0; i < agents; ++i) c.coeffs.emplace_back(var_index(i, j), 1.0);
    p.constraints.push_back(std::move(c));
  }
  // Round-robin loads guarantee feasibility.
  std::vector<long> load(agents, 0);
  for (int j = 0; j < jobs; ++j) load[j % agents] += weight[j % agents][j];
  for (int i = 0; i < agents; ++i) {
    Constraint c;
    c.name = "cap" + std::to_string(i);
    c.relation = Relation::LessEqual;
    c.rhs = static_cast<double>(load[i] + 5);
    for (int j = 0; j < jobs; ++j)
      c.coeffs.emplace_back(var_index(i, j), static_cast<double>(weight[i][j]));
    p.constraints.push_back(std::move(c));
  }
  p.validate();
  return p;
}

Problem generate_instance(const std::string& family, const GenParams& params,
                          std::uint64_t seed) {
  if (family == "knapsack") return generate_knapsack(params.n, seed);
  if (family == "setcover") {
    int elements = params.m > 0 ? params.m : std::max(3, params.n / 2);
    return generate_setcover(elements, params.n, seed);
  }
  if (family == "gap") {
    int agents = params.m > 0 ? params.m : 2;
    return generate_gap(agents, params.n, seed);
  }
  throw std::invalid_argument("unknown instance family: " + family);
}

}  // namespace dpbb
