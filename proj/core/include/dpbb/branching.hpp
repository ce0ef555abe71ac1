#pragma once

#include <string>
#include <vector>

#include "dpbb/lp.hpp"
#include "dpbb/problem.hpp"
#include "dpbb/pseudocost.hpp"

namespace dpbb {

struct ProbeBudget {
  int max_probes = 100;      // strong-branching LP probes per node
  int max_iterations = 500;  // dual simplex iterations per probe
};

struct BranchContext {
  const Problem* problem = nullptr;
  const BoundSet* node_bounds = nullptr;
  const LpSolution* lp = nullptr;  // node relaxation: value L, primal, basis
  std::vector<std::pair<int, double>> candidates;  // (var, fractionality)
  PseudocostTable* table = nullptr;
  ScoreConfig score;
  ProbeBudget budget;
  SimplexOptions lp_opts;
};

struct BranchDecision {
  int variable = -1;
  double down_est = 0.0;
  double up_est = 0.0;
  std::string rule_used;
  bool down_infeasible = false;  // child proven infeasible by a probe
  bool up_infeasible = false;
};

struct ProbeResult {
  double down_gain = 0.0;  // objective degradation of the down child
  double up_gain = 0.0;
  LpStatus down_status = LpStatus::Optimal;
  LpStatus up_status = LpStatus::Optimal;
  double down_obj = 0.0;   // child objective (problem sense)
  double up_obj = 0.0;
};

/// Cap applied to the infeasible-child gain sentinel before scoring.
inline constexpr double kInfeasibleGainCap = 1e8;

/// Solves both child LPs of `var`, warm-started from the node basis.
ProbeResult strong_branch_eval(const BranchContext& ctx, int var);

BranchDecision select_most_fractional(const BranchContext& ctx);
BranchDecision select_pseudocost(const BranchContext& ctx);
BranchDecision select_discounted_pseudocost(const BranchContext& ctx);
BranchDecision select_strong(const BranchContext& ctx);
BranchDecision select_lookahead(const BranchContext& ctx, int k_first,
                                int k_second);
BranchDecision select_reliability(const BranchContext& ctx,
                                  bool use_discounted);

/// Dispatch by public rule name: mostfrac, pscost, dpscost, strong,
/// lookahead, rpscost, rdpscost.
bool is_valid_rule(const std::string& name);
const std::vector<std::string>& rule_names();
BranchDecision select_by_rule(const std::string& rule,
                              const BranchContext& ctx);

}  // namespace dpbb
