#include "dpbb/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dpbb {

namespace {

constexpr double kPruneTol = 1e-9;

std::string fmt_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Frontier over minimization-normalized bound keys. Best-bound pops the
// smallest (key, id); DFS pops the most recently pushed node.
class Frontier {
 public:
  explicit Frontier(NodeSelection sel) : sel_(sel) {}

  void push(Node&& node, double key) {
    keys_.insert(key);
    if (sel_ == NodeSelection::BestBound)
      best_.emplace(std::make_pair(key, node.id), std::move(node));
    else
      stack_.emplace_back(key, std::move(node));
  }

  bool empty() const {
    return sel_ == NodeSelection::BestBound ? best_.empty() : stack_.empty();
  }

  std::pair<Node, double> pop() {
    if (sel_ == NodeSelection::BestBound) {
      auto it = best_.begin();
      double key = it->first.first;
      Node node = std::move(it->second);
      best_.erase(it);
      keys_.erase(keys_.find(key));
      return {std::move(node), key};
    }
    auto [key, node] = std::move(stack_.back());
    stack_.pop_back();
    keys_.erase(keys_.find(key));
    return {std::move(node), key};
  }

  double best_key() const { return keys_.empty() ? kInf : *keys_.begin(); }

 private:
  NodeSelection sel_;
  std::map<std::pair<double, long>, Node> best_;
  std::vector<std::pair<double, Node>> stack_;
  std::multiset<double> keys_;
};

}  // namespace

const char* to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Optimal:
      return "optimal";
    case SolveResult::Status::Infeasible:
      return "infeasible";
    case SolveResult::Status::TimeLimit:
      return "time-limit";
    case SolveResult::Status::NodeLimit:
      return "node-limit";
    case SolveResult::Status::GapLimit:
      return "gap-limit";
  }
  return "?";
}

void attribute_gains(const Node& node, double node_lp_value,
                     Level1Update level1, PseudocostTable& table) {
  if (!node.branch)
    throw std::invalid_argument("attribute_gains: node has no branch record");
  const NodeAttr& b = *node.branch;
  double gain = std::fabs(node_lp_value - node.parent_lp_value);
  double frac = b.dir == Direction::Down ? b.frac : 1.0 - b.frac;
  table.record_gain(b.var, b.dir, 0, gain, frac);
  if (node.grandparent_attr &&
      (level1 == Level1Update::AllChildren || b.dir == Direction::Down)) {
    const NodeAttr& g = *node.grandparent_attr;
    double gfrac = g.dir == Direction::Down ? g.frac : 1.0 - g.frac;
    table.record_gain(g.var, g.dir, 1, gain, gfrac);
  }
}

double compute_pdi(const std::vector<GapEvent>& events, double end_time) {
  double g = 1.0;
  double t_prev = 0.0;
  double pdi = 0.0;
  for (const auto& e : events) {
    if (e.time < t_prev - 1e-15)
      throw std::invalid_argument("compute_pdi: event log not time-sorted");
    pdi += g * (e.time - t_prev);
    t_prev = e.time;
    if (!e.has_primal || !e.has_dual || !std::isfinite(e.dual)) {
      g = 1.0;
    } else {
      double denom =
          std::max({std::fabs(e.primal), std::fabs(e.dual), 1e-9});
      g = std::clamp(std::fabs(e.primal - e.dual) / denom, 0.0, 1.0);
    }
  }
  if (end_time < t_prev - 1e-15)
    throw std::invalid_argument("compute_pdi: end_time before last event");
  pdi += g * (end_time - t_prev);
  return pdi;
}

SolveResult solve(const Problem& problem, const SolveConfig& config) {
  problem.validate();
  if (!is_valid_rule(config.rule))
    throw std::invalid_argument("unknown branching rule: " + config.rule);
  if (!(config.score.gamma >= 0.0 && config.score.gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in [0,1]");

  const bool maximize = problem.sense == Sense::Maximize;
  auto norm = [maximize](double v) { return maximize ? -v : v; };
  auto denorm = norm;

  ProbeBudget budget = config.budget;
  if (config.rule == "mostfrac" || config.rule == "pscost" ||
      config.rule == "dpscost")
    budget.max_probes = 0;  // pure rules never probe

  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  SolveResult result;
  PseudocostTable table(problem.num_vars());
  Frontier frontier(config.node_selection);

  bool has_inc = false;
  double inc_key = kInf;
  std::vector<double> inc_solution;
  double inc_obj = 0.0;
  double cut_key = config.cutoff ? norm(*config.cutoff) : kInf;
  double dual_key = -kInf;
  long next_id = 0;

  auto prunable = [&](double key) {
    if (has_inc && key >= inc_key - kPruneTol) return true;
    if (config.cutoff && key >= cut_key + kPruneTol) return true;
    return false;
  };

  auto emit_event = [&](bool force = false) {
    GapEvent e;
    e.time = elapsed();
    e.has_primal = has_inc;
    e.primal = has_inc ? inc_obj : 0.0;
    e.has_dual = std::isfinite(dual_key);
    e.dual = e.has_dual ? denorm(dual_key) : 0.0;
    if (!force && !result.events.empty()) {
      const GapEvent& last = result.events.back();
      if (last.has_primal == e.has_primal && last.has_dual == e.has_dual &&
          last.primal == e.primal && last.dual == e.dual)
        return;
    }
    result.events.push_back(e);
  };

  auto refresh_dual = [&](double processing_key) {
    double k = std::min(frontier.best_key(), processing_key);
    if (k == kInf) return;  // frontier exhausted; final snap handles it
    if (k > dual_key) {
      dual_key = k;
      emit_event();
    }
  };

  auto gap_reached = [&] {
    if (config.gap_tol <= 0.0 || !has_inc || !std::isfinite(dual_key))
      return false;
    return std::fabs(inc_obj - denorm(dual_key)) <=
           config.gap_tol * (1.0 + std::fabs(inc_obj));
  };

  auto trace_line = [&](const Node& node, const char* status, double value,
                        bool has_value) {
    if (!config.collect_trace) return;
    std::ostringstream os;
    os << node.id << "\t" << node.parent << "\t" << node.depth << "\t";
    if (node.branch)
      os << node.branch->var << "\t" << to_string(node.branch->dir) << "\t"
         << fmt_real(node.branch->frac);
    else
      os << "-\t-\t-";
    os << "\t" << status << "\t" << (has_value ? fmt_real(value) : "-");
    result.trace.push_back(os.str());
  };

  Node root;
  root.id = next_id++;
  root.parent_lp_value = denorm(-kInf);
  frontier.push(std::move(root), -kInf);

  SolveResult::Status status = SolveResult::Status::Optimal;
  bool stopped = false;

  while (!frontier.empty()) {
    if (elapsed() > config.time_limit) {
      status = SolveResult::Status::TimeLimit;
      stopped = true;
      break;
    }
    if (result.nodes >= config.node_limit) {
      status = SolveResult::Status::NodeLimit;
      stopped = true;
      break;
    }
    auto [node, key] = frontier.pop();
    if (prunable(key)) {
      refresh_dual(kInf);
      continue;
    }

    LpSolution sol =
        solve_relaxation(problem, node.bounds, node.warm ? &*node.warm : nullptr,
                         config.lp_iter_limit, config.lp_opts);
    if (sol.status == LpStatus::IterationLimit && node.warm) {
      sol = solve_relaxation(problem, node.bounds, nullptr,
                             config.lp_iter_limit, config.lp_opts);
    }
    ++result.nodes;

    if (sol.status == LpStatus::Unbounded) {
      if (node.id == 0)
        throw std::runtime_error("LP relaxation is unbounded at the root");
      result.potentially_suboptimal = true;
      trace_line(node, "lp-failure", 0.0, false);
      refresh_dual(kInf);
      continue;
    }
    if (sol.status == LpStatus::IterationLimit) {
      if (node.id == 0)
        throw std::runtime_error("root LP hit the iteration limit");
      result.potentially_suboptimal = true;
      trace_line(node, "lp-failure", 0.0, false);
      refresh_dual(kInf);
      continue;
    }
    if (sol.status == LpStatus::Infeasible) {
      trace_line(node, "infeasible", 0.0, false);
      refresh_dual(kInf);
      continue;
    }

    trace_line(node, "optimal", sol.objective, true);
    if (node.depth >= 1)
      attribute_gains(node, sol.objective, config.level1_update, table);

    double lp_key = norm(sol.objective);
    if (prunable(lp_key)) {
      refresh_dual(kInf);
      continue;
    }

    auto candidates = fractional_candidates(problem, sol.primal, config.int_tol);
    if (candidates.empty()) {
      std::vector<double> point = sol.primal;
      for (int j = 0; j < problem.num_vars(); ++j)
        if (problem.variables[j].is_integral())
          point[j] = std::round(point[j]);
      double obj = problem.objective_value(point);
      double okey = norm(obj);
      if (!has_inc || okey < inc_key - kPruneTol) {
        has_inc = true;
        inc_key = okey;
        inc_obj = obj;
        inc_solution = std::move(point);
        emit_event(true);
      }
      refresh_dual(kInf);
      if (gap_reached() && !frontier.empty()) {
        status = SolveResult::Status::GapLimit;
        stopped = true;
        break;
      }
      continue;
    }

    BranchContext ctx;
    ctx.problem = &problem;
    ctx.node_bounds = &node.bounds;
    ctx.lp = &sol;
    ctx.candidates = std::move(candidates);
    ctx.table = &table;
    ctx.score = config.score;
    ctx.budget = budget;
    ctx.lp_opts = config.lp_opts;
    BranchDecision decision = select_by_rule(config.rule, ctx);

    int var = decision.variable;
    double v = sol.primal[var];
    double f = fractional_part(v);
    auto [vlo, vup] = node.bounds.effective(problem.variables[var], var);
    for (Direction dir : {Direction::Down, Direction::Up}) {
      if (dir == Direction::Down && decision.down_infeasible) continue;
      if (dir == Direction::Up && decision.up_infeasible) continue;
      Node child;
      child.bounds = node.bounds;
      if (dir == Direction::Down) {
        double new_up = std::floor(v);
        if (new_up < vlo - 1e-12) continue;  // crossed: child empty
        child.bounds.overrides[var] = {vlo, std::min(vup, new_up)};
      } else {
        double new_lo = std::ceil(v);
        if (new_lo > vup + 1e-12) continue;
        child.bounds.overrides[var] = {std::max(vlo, new_lo), vup};
      }
      child.id = next_id++;
      child.parent = node.id;
      child.depth = node.depth + 1;
      child.parent_lp_value = sol.objective;
      child.branch = NodeAttr{var, dir, f};
      child.grandparent_attr = node.branch;
      child.warm = sol.basis;
      frontier.push(std::move(child), lp_key);
    }
    refresh_dual(kInf);
    if (gap_reached() && !frontier.empty()) {
      status = SolveResult::Status::GapLimit;
      stopped = true;
      break;
    }
  }

  if (!stopped) {
    if (has_inc) {
      status = SolveResult::Status::Optimal;
      dual_key = inc_key;  // tree exhausted: bound meets the incumbent
      emit_event();
    } else {
      status = SolveResult::Status::Infeasible;
    }
  }

  result.status = status;
  result.wall_time = elapsed();
  if (has_inc) {
    result.incumbent = inc_solution;
    result.objective = inc_obj;
  }
  result.dual_bound = std::isfinite(dual_key) ? denorm(dual_key)
                                              : denorm(-kInf);
  result.pdi = compute_pdi(result.events, result.wall_time);
  return result;
}

}  // namespace dpbb
