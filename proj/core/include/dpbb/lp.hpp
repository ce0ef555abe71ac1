#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpbb/problem.hpp"

namespace dpbb {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper, FreeNonbasic };

/// Basis snapshot over structural + logical variables; reusable as a
/// warm start for re-solves after bound changes.
struct Basis {
  std::vector<VarStatus> status;
  bool empty() const { return status.empty(); }
};

/// Sparse bound overrides; an entry replaces the variable's bounds.
struct BoundSet {
  std::map<int, std::pair<double, double>> overrides;

  std::pair<double, double> effective(const Variable& v, int index) const {
    auto it = overrides.find(index);
    if (it == overrides.end()) return {v.lower, v.upper};
    return it->second;
  }
};

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;  // in the problem's own sense
  std::vector<double> primal;
  Basis basis;
  int iterations = 0;
};

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  int refactor_every = 100;   // pivots between refactorizations
  int bland_after = 1000;     // consecutive degenerate pivots before Bland
};

/// Solves the LP relaxation of `problem` under `bounds`. With a warm
/// basis the dual simplex is run from it; otherwise primal simplex from
/// the slack basis. Deterministic for fixed inputs.
LpSolution solve_relaxation(const Problem& problem, const BoundSet& bounds,
                            const Basis* warm = nullptr,
                            int iter_limit = 100000,
                            const SimplexOptions& options = {});

struct FeasReport {
  double max_row_violation = 0.0;
  double max_bound_violation = 0.0;
  double max_violation() const {
    return max_row_violation > max_bound_violation ? max_row_violation
                                                   : max_bound_violation;
  }
};

/// Max primal infeasibility of an optimal solution; a post-solve assertion.
FeasReport check_solution(const Problem& problem, const BoundSet& bounds,
                          const LpSolution& solution, double feas_tol);

/// Basis status per variable as text, for debugging.
std::string dump_basis(const Problem& problem, const Basis& basis);

/// Recomputes duals from the returned basis: max reduced-cost sign
/// violation and the gap between the primal objective and the dual
/// objective implied by the basis.
struct DualCheck {
  double max_dual_violation = 0.0;
  double objective_gap = 0.0;
};
DualCheck check_dual(const Problem& problem, const BoundSet& bounds,
                     const LpSolution& solution);

}  // namespace dpbb
