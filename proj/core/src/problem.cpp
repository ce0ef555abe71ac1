#include "dpbb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dpbb {

namespace {

std::string fmt_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::pair<double, double> Constraint::activity_bounds() const {
  switch (relation) {
    case Relation::LessEqual:
      return {-kInf, rhs};
    case Relation::GreaterEqual:
      return {rhs, kInf};
    case Relation::Equal:
      return {rhs, rhs};
    case Relation::Ranged:
      return {rhs, rhs + range};
  }
  return {-kInf, kInf};
}

void Problem::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& v : variables) {
    if (!seen.insert(v.name).second)
      throw std::invalid_argument("duplicate variable name: " + v.name);
    if (v.lower > v.upper)
      throw std::invalid_argument("variable '" + v.name +
                                  "' has crossed bounds (trivially infeasible)");
    if (v.integrality == Integrality::Binary &&
        (v.lower < 0.0 || v.upper > 1.0))
      throw std::invalid_argument("binary variable '" + v.name +
                                  "' has bounds outside [0,1]");
  }
  seen.clear();
  for (const auto& c : constraints) {
    if (!seen.insert(c.name).second)
      throw std::invalid_argument("duplicate constraint name: " + c.name);
    if (c.relation == Relation::Ranged && !(c.range >= 0.0))
      throw std::invalid_argument("constraint '" + c.name +
                                  "' has negative range width");
    int prev = -1;
    for (const auto& [idx, val] : c.coeffs) {
      if (idx < 0 || idx >= num_vars())
        throw std::invalid_argument("constraint '" + c.name +
                                    "' references invalid variable index");
      if (idx <= prev)
        throw std::invalid_argument("constraint '" + c.name +
                                    "' has unsorted or duplicate entries");
      if (val == 0.0)
        throw std::invalid_argument("constraint '" + c.name +
                                    "' stores an explicit zero coefficient");
      prev = idx;
    }
  }
}

double Problem::objective_value(const std::vector<double>& x) const {
  double obj = 0.0;
  for (int j = 0; j < num_vars(); ++j) obj += variables[j].obj_coeff * x[j];
  return obj;
}

std::string Problem::canonical_dump() const {
  std::ostringstream os;
  os << "problem " << name << "\n";
  os << "sense " << (sense == Sense::Minimize ? "min" : "max") << "\n";
  os << "vars " << num_vars() << "\n";
  for (const auto& v : variables) {
    const char* kind = v.integrality == Integrality::Continuous ? "cont"
                       : v.integrality == Integrality::Integer  ? "int"
                                                                : "bin";
    os << "  " << v.name << " " << kind << " " << fmt_real(v.lower) << " "
       << fmt_real(v.upper) << " " << fmt_real(v.obj_coeff) << "\n";
  }
  os << "rows " << num_rows() << "\n";
  for (const auto& c : constraints) {
    const char* rel = c.relation == Relation::LessEqual      ? "<="
                      : c.relation == Relation::GreaterEqual ? ">="
                      : c.relation == Relation::Equal        ? "=="
                                                             : "rng";
    os << "  " << c.name << " " << rel << " " << fmt_real(c.rhs);
    if (c.relation == Relation::Ranged) os << " " << fmt_real(c.range);
    for (const auto& [idx, val] : c.coeffs)
      os << " " << idx << ":" << fmt_real(val);
    os << "\n";
  }
  return os.str();
}

double fractional_part(double v) {
  double f = v - std::floor(v);
  if (f >= 1.0) f = 0.0;  // rounding at the upper edge
  return f;
}

std::vector<std::pair<int, double>> fractional_candidates(
    const Problem& problem, const std::vector<double>& values, double tol) {
  std::vector<std::pair<int, double>> out;
  for (int j = 0; j < problem.num_vars(); ++j) {
    if (!problem.variables[j].is_integral()) continue;
    double f = fractional_part(values[j]);
    double dist = std::min(f, 1.0 - f);
    if (dist > tol) out.emplace_back(j, dist);
  }
  return out;
}

Problem permute_variables(const Problem& problem, std::uint64_t seed) {
  if (seed == 0) return problem;
  int n = problem.num_vars();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  // Fisher-Yates with modulo draws, deterministic across platforms.
  for (int i = n - 1; i > 0; --i) {
    int k = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[k]);
  }
  // perm[new] = old
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;

  Problem out;
  out.name = problem.name;
  out.sense = problem.sense;
  out.variables.reserve(n);
  for (int i = 0; i < n; ++i) out.variables.push_back(problem.variables[perm[i]]);
  out.constraints = problem.constraints;
  for (auto& c : out.constraints) {
    for (auto& [idx, val] : c.coeffs) idx = inv[idx];
    std::sort(c.coeffs.begin(), c.coeffs.end());
  }
  return out;
}

}  // namespace dpbb
