#include "dpbb/branching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpbb {

namespace {

struct ChildBounds {
  BoundSet bounds;
  bool crossed = false;  // tightened bound crosses the other one
};

ChildBounds child_bounds(const BranchContext& ctx, int var, Direction dir) {
  ChildBounds out;
  out.bounds = *ctx.node_bounds;
  double v = ctx.lp->primal[var];
  auto [lo, up] = ctx.node_bounds->effective(ctx.problem->variables[var], var);
  if (dir == Direction::Down) {
    double new_up = std::floor(v);
    if (new_up < lo - 1e-12) out.crossed = true;
    out.bounds.overrides[var] = {lo, std::min(up, new_up)};
  } else {
    double new_lo = std::ceil(v);
    if (new_lo > up + 1e-12) out.crossed = true;
    out.bounds.overrides[var] = {std::max(lo, new_lo), up};
  }
  return out;
}

LpSolution solve_child(const BranchContext& ctx, int var, Direction dir,
                       BoundSet* bounds_out = nullptr) {
  ChildBounds cb = child_bounds(ctx, var, dir);
  if (bounds_out) *bounds_out = cb.bounds;
  if (cb.crossed) {
    LpSolution s;
    s.status = LpStatus::Infeasible;
    return s;
  }
  return solve_relaxation(*ctx.problem, cb.bounds, &ctx.lp->basis,
                          ctx.budget.max_iterations, ctx.lp_opts);
}

double gain_from(const BranchContext& ctx, const LpSolution& child) {
  if (child.status == LpStatus::Infeasible) return kInfeasibleGainCap;
  return std::max(std::fabs(child.objective - ctx.lp->objective), 0.0);
}

void require_candidates(const BranchContext& ctx) {
  if (ctx.candidates.empty())
    throw std::invalid_argument("branching rule invoked with no candidates");
}

struct Scored {
  int var;
  double down_est, up_est;
  bool probed = false;
  bool down_infeasible = false, up_infeasible = false;
};

BranchDecision pick_best(const BranchContext& ctx,
                         const std::vector<Scored>& scored,
                         const std::string& rule_used) {
  const Scored* best = nullptr;
  double best_score = -1.0;
  for (const auto& s : scored) {
    double sc = branching_score(s.down_est, s.up_est, ctx.score.epsilon);
    if (!best || sc > best_score) {  // first hit wins ties (index order)
      best = &s;
      best_score = sc;
    }
  }
  BranchDecision d;
  d.variable = best->var;
  d.down_est = best->down_est;
  d.up_est = best->up_est;
  d.rule_used = rule_used;
  d.down_infeasible = best->down_infeasible;
  d.up_infeasible = best->up_infeasible;
  return d;
}

// Estimated gain per direction: pseudocost times distance to the branch
// bound (down: f, up: 1-f).
Scored pscost_estimates(const BranchContext& ctx, int var, bool discounted) {
  double f = fractional_part(ctx.lp->primal[var]);
  Scored s;
  s.var = var;
  if (discounted) {
    s.down_est =
        ctx.table->discounted_pseudocost(var, Direction::Down, ctx.score.gamma) * f;
    s.up_est =
        ctx.table->discounted_pseudocost(var, Direction::Up, ctx.score.gamma) *
        (1.0 - f);
  } else {
    s.down_est = ctx.table->pseudocost(var, Direction::Down, 0) * f;
    s.up_est = ctx.table->pseudocost(var, Direction::Up, 0) * (1.0 - f);
  }
  return s;
}

bool two_level_reliable(const BranchContext& ctx, int var) {
  for (Direction dir : {Direction::Down, Direction::Up})
    for (int level = 0; level < 2; ++level)
      if (!ctx.table->is_reliable(var, dir, level,
                                  ctx.score.threshold_for_level(level)))
        return false;
  return true;
}

bool all_two_level_reliable(const BranchContext& ctx) {
  for (const auto& [var, _] : ctx.candidates)
    if (!two_level_reliable(ctx, var)) return false;
  return true;
}

}  // namespace

ProbeResult strong_branch_eval(const BranchContext& ctx, int var) {
  ProbeResult r;
  LpSolution down = solve_child(ctx, var, Direction::Down);
  LpSolution up = solve_child(ctx, var, Direction::Up);
  r.down_status = down.status;
  r.up_status = up.status;
  r.down_obj = down.objective;
  r.up_obj = up.objective;
  r.down_gain = gain_from(ctx, down);
  r.up_gain = gain_from(ctx, up);
  return r;
}

BranchDecision select_most_fractional(const BranchContext& ctx) {
  require_candidates(ctx);
  const std::pair<int, double>* best = &ctx.candidates[0];
  for (const auto& c : ctx.candidates)
    if (c.second > best->second) best = &c;
  BranchDecision d;
  d.variable = best->first;
  double f = fractional_part(ctx.lp->primal[best->first]);
  d.down_est = f;
  d.up_est = 1.0 - f;
  d.rule_used = "mostfrac";
  return d;
}

BranchDecision select_pseudocost(const BranchContext& ctx) {
  require_candidates(ctx);
  std::vector<Scored> scored;
  scored.reserve(ctx.candidates.size());
  for (const auto& [var, _] : ctx.candidates)
    scored.push_back(pscost_estimates(ctx, var, /*discounted=*/false));
  return pick_best(ctx, scored, "pscost");
}

BranchDecision select_discounted_pseudocost(const BranchContext& ctx) {
  require_candidates(ctx);
  if (!all_two_level_reliable(ctx)) {
    BranchDecision d = select_reliability(ctx, /*use_discounted=*/false);
    d.rule_used = "fallback:rpscost";
    return d;
  }
  std::vector<Scored> scored;
  scored.reserve(ctx.candidates.size());
  for (const auto& [var, _] : ctx.candidates)
    scored.push_back(pscost_estimates(ctx, var, /*discounted=*/true));
  return pick_best(ctx, scored, "dpscost");
}

BranchDecision select_strong(const BranchContext& ctx) {
  require_candidates(ctx);
  std::vector<Scored> scored;
  scored.reserve(ctx.candidates.size());
  int probes = 0;
  for (const auto& [var, _] : ctx.candidates) {
    if (probes < ctx.budget.max_probes) {
      ++probes;
      ProbeResult r = strong_branch_eval(ctx, var);
      Scored s;
      s.var = var;
      s.down_est = std::min(r.down_gain, kInfeasibleGainCap);
      s.up_est = std::min(r.up_gain, kInfeasibleGainCap);
      s.probed = true;
      s.down_infeasible = r.down_status == LpStatus::Infeasible;
      s.up_infeasible = r.up_status == LpStatus::Infeasible;
      scored.push_back(s);
    } else {
      scored.push_back(pscost_estimates(ctx, var, /*discounted=*/false));
    }
  }
  return pick_best(ctx, scored, "strong");
}

BranchDecision select_lookahead(const BranchContext& ctx, int k_first,
                                int k_second) {
  require_candidates(ctx);
  if (k_second <= 0) {
    BranchDecision d = select_strong(ctx);
    d.rule_used = "lookahead";
    return d;
  }
  int probes_left = ctx.budget.max_probes;

  // First level: strong-branch everything in budget and rank.
  struct FirstLevel {
    Scored s;
    double score;
  };
  std::vector<FirstLevel> ranked;
  ranked.reserve(ctx.candidates.size());
  for (const auto& [var, _] : ctx.candidates) {
    Scored s;
    if (probes_left > 0) {
      --probes_left;
      ProbeResult r = strong_branch_eval(ctx, var);
      s.var = var;
      s.down_est = std::min(r.down_gain, kInfeasibleGainCap);
      s.up_est = std::min(r.up_gain, kInfeasibleGainCap);
      s.probed = true;
      s.down_infeasible = r.down_status == LpStatus::Infeasible;
      s.up_infeasible = r.up_status == LpStatus::Infeasible;
    } else {
      s = pscost_estimates(ctx, var, /*discounted=*/false);
    }
    ranked.push_back(
        {s, branching_score(s.down_est, s.up_est, ctx.score.epsilon)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const FirstLevel& a, const FirstLevel& b) {
                     return a.score > b.score;
                   });
  int top = std::min<int>(k_first, static_cast<int>(ranked.size()));

  // Second level: add the best guaranteed grandchild gain per side.
  std::vector<Scored> scored;
  for (int t = 0; t < top; ++t) {
    Scored s = ranked[t].s;
    for (Direction dir : {Direction::Down, Direction::Up}) {
      bool infeasible =
          dir == Direction::Down ? s.down_infeasible : s.up_infeasible;
      double child_gain = dir == Direction::Down ? s.down_est : s.up_est;
      double total = child_gain;
      if (!infeasible) {
        BoundSet cb;
        LpSolution child = solve_child(ctx, s.var, dir, &cb);
        if (child.status == LpStatus::Optimal) {
          auto cands2 =
              fractional_candidates(*ctx.problem, child.primal, 1e-6);
          std::stable_sort(cands2.begin(), cands2.end(),
                           [](const auto& a, const auto& b) {
                             return a.second > b.second;
                           });
          BranchContext cctx = ctx;
          cctx.node_bounds = &cb;
          cctx.lp = &child;
          double best_second = 0.0;
          int evaluated = 0;
          for (const auto& [var2, _] : cands2) {
            if (evaluated >= k_second || probes_left <= 0) break;
            ++evaluated;
            --probes_left;
            ProbeResult r2 = strong_branch_eval(cctx, var2);
            best_second = std::max(best_second,
                                   std::min(r2.down_gain, r2.up_gain));
          }
          total += best_second;
        }
      }
      total = std::min(total, kInfeasibleGainCap);
      (dir == Direction::Down ? s.down_est : s.up_est) = total;
    }
    scored.push_back(s);
  }
  // Deterministic final tie-break by variable index.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.var < b.var; });
  return pick_best(ctx, scored, "lookahead");
}

BranchDecision select_reliability(const BranchContext& ctx,
                                  bool use_discounted) {
  require_candidates(ctx);
  // Discounting engages only when every candidate has both levels
  // reliable in both directions; otherwise fall back to plain PS_0.
  bool discount_active = use_discounted && all_two_level_reliable(ctx);
  std::string rule_used = !use_discounted   ? "rpscost"
                          : discount_active ? "rdpscost"
                                            : "fallback:rpscost";
  int threshold0 = ctx.score.threshold_for_level(0);
  int probes = 0;
  std::vector<Scored> scored;
  scored.reserve(ctx.candidates.size());
  for (const auto& [var, frac] : ctx.candidates) {
    bool reliable0 =
        ctx.table->is_reliable(var, Direction::Down, 0, threshold0) &&
        ctx.table->is_reliable(var, Direction::Up, 0, threshold0);
    if (!reliable0 && probes < ctx.budget.max_probes) {
      ++probes;
      ProbeResult r = strong_branch_eval(ctx, var);
      double f = fractional_part(ctx.lp->primal[var]);
      if (r.down_status == LpStatus::Optimal)
        ctx.table->record_gain(var, Direction::Down, 0, r.down_gain, f);
      if (r.up_status == LpStatus::Optimal)
        ctx.table->record_gain(var, Direction::Up, 0, r.up_gain, 1.0 - f);
      Scored s;
      s.var = var;
      s.down_est = std::min(r.down_gain, kInfeasibleGainCap);
      s.up_est = std::min(r.up_gain, kInfeasibleGainCap);
      s.probed = true;
      s.down_infeasible = r.down_status == LpStatus::Infeasible;
      s.up_infeasible = r.up_status == LpStatus::Infeasible;
      scored.push_back(s);
    } else {
      scored.push_back(pscost_estimates(ctx, var, discount_active));
    }
  }
  return pick_best(ctx, scored, rule_used);
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "mostfrac", "pscost", "dpscost", "strong",
      "lookahead", "rpscost", "rdpscost"};
  return names;
}

bool is_valid_rule(const std::string& name) {
  const auto& names = rule_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

BranchDecision select_by_rule(const std::string& rule,
                              const BranchContext& ctx) {
  if (rule == "mostfrac") return select_most_fractional(ctx);
  if (rule == "pscost") return select_pseudocost(ctx);
  if (rule == "dpscost") return select_discounted_pseudocost(ctx);
  if (rule == "strong") return select_strong(ctx);
  if (rule == "lookahead") return select_lookahead(ctx, 5, 3);
  if (rule == "rpscost") return select_reliability(ctx, false);
  if (rule == "rdpscost") return select_reliability(ctx, true);
  throw std::invalid_argument("unknown branching rule: " + rule);
}

}  // namespace dpbb
