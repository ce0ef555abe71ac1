#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dpbb/branching.hpp"
#include "dpbb/lp.hpp"
#include "dpbb/problem.hpp"
#include "dpbb/pseudocost.hpp"

namespace dpbb {

struct NodeAttr {
  int var = -1;
  Direction dir = Direction::Down;
  double frac = 0.0;  // fractional part of the variable when branched
};

struct Node {
  long id = 0;
  long parent = -1;
  int depth = 0;
  BoundSet bounds;              // cumulative local bound changes
  double parent_lp_value = 0.0; // L of the parent (inherited dual bound)
  std::optional<NodeAttr> branch;           // how this node was created
  std::optional<NodeAttr> grandparent_attr; // parent's own branch record
  std::optional<Basis> warm;
};

enum class Level1Update { AllChildren, DownOnly };
enum class NodeSelection { BestBound, Dfs };

struct SolveConfig {
  std::string rule = "rpscost";
  ScoreConfig score;
  double time_limit = 60.0;
  long node_limit = std::numeric_limits<long>::max();
  std::optional<double> cutoff;
  double gap_tol = 0.0;        // relative; 0 = prove optimality
  double int_tol = 1e-6;       // integrality tolerance
  std::uint64_t seed = 0;
  NodeSelection node_selection = NodeSelection::BestBound;
  Level1Update level1_update = Level1Update::AllChildren;
  ProbeBudget budget;          // forced to zero probes for pure rules
  SimplexOptions lp_opts;
  int lp_iter_limit = 200000;
  bool collect_trace = false;  // tab-separated per-node trace lines
};

struct GapEvent {
  double time = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  bool has_primal = false;
  bool has_dual = false;
};

struct SolveResult {
  enum class Status { Optimal, Infeasible, TimeLimit, NodeLimit, GapLimit };
  Status status = Status::Optimal;
  std::optional<std::vector<double>> incumbent;
  std::optional<double> objective;
  double dual_bound = 0.0;
  long nodes = 0;
  double wall_time = 0.0;
  double pdi = 0.0;
  bool potentially_suboptimal = false;  // an LP failure forced a prune
  std::vector<GapEvent> events;
  std::vector<std::string> trace;
};

const char* to_string(SolveResult::Status s);

/// Records the level-0 datapoint for the node's own branch and, when a
/// grandparent attribution is present, the level-1 datapoint credited to
/// the grandparent's variable and direction.
void attribute_gains(const Node& node, double node_lp_value,
                     Level1Update level1, PseudocostTable& table);

/// Time integral of the normalized primal-dual gap (piecewise constant
/// between events). Throws on an unsorted event log.
double compute_pdi(const std::vector<GapEvent>& events, double end_time);

SolveResult solve(const Problem& problem, const SolveConfig& config);

}  // namespace dpbb
