#include "dpbb/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dpbb {

namespace {

constexpr double kPivTol = 1e-9;   // minimum acceptable pivot magnitude
constexpr double kRateTol = 1e-11; // column entries below this do not block
constexpr double kTieTol = 1e-9;

// Bounded-variable revised simplex over the system [A | -I] z = 0,
// z = (structural, logical), logical i carrying the activity interval of
// row i as its bounds. Dense explicit basis inverse with eta updates and
// periodic refactorization.
class Simplex {
 public:
  Simplex(const Problem& problem, const BoundSet& bounds,
          const SimplexOptions& options)
      : problem_(problem), opt_(options) {
    n_ = problem.num_vars();
    m_ = problem.num_rows();
    N_ = n_ + m_;
    cols_.resize(N_);
    lo_.resize(N_);
    up_.resize(N_);
    cost_.assign(N_, 0.0);
    double obj_sign = problem.sense == Sense::Maximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      auto [lo, up] = bounds.effective(problem.variables[j], j);
      lo_[j] = lo;
      up_[j] = up;
      cost_[j] = obj_sign * problem.variables[j].obj_coeff;
    }
    for (int i = 0; i < m_; ++i) {
      for (const auto& [j, v] : problem.constraints[i].coeffs)
        cols_[j].emplace_back(i, v);
      auto [lo, up] = problem.constraints[i].activity_bounds();
      lo_[n_ + i] = lo;
      up_[n_ + i] = up;
      cols_[n_ + i].emplace_back(i, -1.0);
    }
    stat_.assign(N_, VarStatus::AtLower);
    x_.assign(N_, 0.0);
    basic_.assign(m_, 0);
  }

  LpSolution run(const Basis* warm, int iter_limit) {
    iter_limit_ = iter_limit;
    iters_ = 0;
    LpSolution sol;
    for (int j = 0; j < N_; ++j) {
      if (lo_[j] > up_[j] + 1e-12) {
        sol.status = LpStatus::Infeasible;
        finish(sol);
        return sol;
      }
    }

    bool warm_ok = false;
    if (warm && static_cast<int>(warm->status.size()) == N_) {
      warm_ok = install_basis(*warm);
    }
    LpStatus st;
    if (warm_ok) {
      st = dual_simplex();
      if (st == LpStatus::Optimal) st = primal_simplex(/*phase1=*/false);
      if (st == LpStatus::Unbounded) {
        // A failed warm start is retried cold before giving up.
        warm_ok = false;
      } else {
        sol.status = st;
        finish(sol);
        return sol;
      }
    }
    install_slack_basis();
    st = primal_simplex(/*phase1=*/true);
    if (st == LpStatus::Optimal) st = primal_simplex(/*phase1=*/false);
    sol.status = st;
    finish(sol);
    return sol;
  }

 private:
  void finish(LpSolution& sol) {
    sol.iterations = iters_;
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    sol.basis.status = stat_;
    sol.objective = problem_.objective_value(sol.primal);
  }

  void install_slack_basis() {
    for (int i = 0; i < m_; ++i) basic_[i] = n_ + i;
    for (int j = 0; j < N_; ++j) stat_[j] = nonbasic_home(j);
    for (int i = 0; i < m_; ++i) stat_[n_ + i] = VarStatus::Basic;
    factorize();
    compute_primal();
  }

  VarStatus nonbasic_home(int j) const {
    if (std::isfinite(lo_[j])) return VarStatus::AtLower;
    if (std::isfinite(up_[j])) return VarStatus::AtUpper;
    return VarStatus::FreeNonbasic;
  }

  bool install_basis(const Basis& basis) {
    stat_ = basis.status;
    int k = 0;
    for (int j = 0; j < N_; ++j) {
      if (stat_[j] == VarStatus::Basic) {
        if (k >= m_) return false;
        basic_[k++] = j;
      } else {
        // Snap stale nonbasic statuses to existing bounds.
        if (stat_[j] == VarStatus::AtLower && !std::isfinite(lo_[j]))
          stat_[j] = nonbasic_home(j);
        if (stat_[j] == VarStatus::AtUpper && !std::isfinite(up_[j]))
          stat_[j] = nonbasic_home(j);
      }
    }
    if (k != m_) return false;
    if (!factorize()) return false;
    compute_primal();
    return true;
  }

  // Dense refactorization; repairs a singular basis with logicals.
  bool factorize() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
    for (int k = 0; k < m_; ++k)
      for (const auto& [i, v] : cols_[basic_[k]]) B(i, k) = v;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    lu.setThreshold(1e-10);
    if (lu.rank() < m_) {
      if (!repair_basis()) return false;
      Eigen::MatrixXd B2 = Eigen::MatrixXd::Zero(m_, m_);
      for (int k = 0; k < m_; ++k)
        for (const auto& [i, v] : cols_[basic_[k]]) B2(i, k) = v;
      Eigen::FullPivLU<Eigen::MatrixXd> lu2(B2);
      lu2.setThreshold(1e-10);
      if (lu2.rank() < m_) return false;
      binv_ = lu2.inverse();
    } else {
      binv_ = lu.inverse();
    }
    pivots_since_refactor_ = 0;
    return true;
  }

  // Greedy independent-column selection: current basics first, then
  // logicals in row order. Displaced variables move to a bound.
  bool repair_basis() {
    std::vector<int> cands;
    cands.reserve(m_ + m_);
    for (int k = 0; k < m_; ++k) cands.push_back(basic_[k]);
    for (int i = 0; i < m_; ++i) cands.push_back(n_ + i);

    Eigen::MatrixXd work = Eigen::MatrixXd::Zero(m_, m_);
    std::vector<int> pivot_row;
    std::vector<int> chosen;
    std::vector<char> taken(N_, 0);
    for (int cand : cands) {
      if (static_cast<int>(chosen.size()) == m_) break;
      if (taken[cand]) continue;
      Eigen::VectorXd col = Eigen::VectorXd::Zero(m_);
      for (const auto& [i, v] : cols_[cand]) col(i) = v;
      // Eliminate against accepted columns.
      for (std::size_t p = 0; p < chosen.size(); ++p) {
        int pr = pivot_row[p];
        double f = col(pr) / work(pr, p);
        if (f != 0.0) col -= f * work.col(p);
      }
      int best_row = -1;
      double best_mag = 1e-8;
      for (int i = 0; i < m_; ++i) {
        bool used = false;
        for (int pr : pivot_row)
          if (pr == i) used = true;
        if (!used && std::fabs(col(i)) > best_mag) {
          best_mag = std::fabs(col(i));
          best_row = i;
        }
      }
      if (best_row < 0) continue;
      work.col(static_cast<int>(chosen.size())) = col;
      pivot_row.push_back(best_row);
      chosen.push_back(cand);
      taken[cand] = 1;
    }
    if (static_cast<int>(chosen.size()) != m_) return false;
    std::vector<char> in_new(N_, 0);
    for (int j : chosen) in_new[j] = 1;
    for (int k = 0; k < m_; ++k) {
      int old = basic_[k];
      if (!in_new[old]) stat_[old] = nonbasic_home(old);
    }
    for (int k = 0; k < m_; ++k) {
      basic_[k] = chosen[k];
      stat_[chosen[k]] = VarStatus::Basic;
    }
    return true;
  }

  void compute_primal() {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < N_; ++j) {
      if (stat_[j] == VarStatus::Basic) continue;
      double v = stat_[j] == VarStatus::AtLower   ? lo_[j]
                 : stat_[j] == VarStatus::AtUpper ? up_[j]
                                                  : 0.0;
      x_[j] = v;
      if (v != 0.0)
        for (const auto& [i, a] : cols_[j]) b(i) -= a * v;
    }
    Eigen::VectorXd xb = binv_ * b;
    for (int k = 0; k < m_; ++k) x_[basic_[k]] = xb(k);
  }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    for (const auto& [i, v] : cols_[j]) a(i) = v;
    return binv_ * a;
  }

  // y = Binv^T c_B for an arbitrary cost vector restricted to basics.
  Eigen::VectorXd duals(const std::vector<double>& c) const {
    Eigen::VectorXd cb(m_);
    for (int k = 0; k < m_; ++k) cb(k) = c[basic_[k]];
    return binv_.transpose() * cb;
  }

  double reduced_cost(const std::vector<double>& c, const Eigen::VectorXd& y,
                      int j) const {
    double d = c[j];
    for (const auto& [i, v] : cols_[j]) d -= y(i) * v;
    return d;
  }

  void eta_update(int row, const Eigen::VectorXd& w) {
    double piv = w(row);
    binv_.row(row) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = w(i);
      if (f != 0.0) binv_.row(i) -= f * binv_.row(row);
    }
    if (++pivots_since_refactor_ >= opt_.refactor_every) {
      factorize();
      compute_primal();
    }
  }

  double infeasibility_of(int j) const {
    if (x_[j] < lo_[j] - opt_.feas_tol) return lo_[j] - x_[j];
    if (x_[j] > up_[j] + opt_.feas_tol) return x_[j] - up_[j];
    return 0.0;
  }

  // ---- primal simplex (phase 1 minimizes total infeasibility) ----

  LpStatus primal_simplex(bool phase1) {
    std::vector<double> pcost;
    int degen = 0;
    while (iters_ < iter_limit_) {
      const std::vector<double>* c = &cost_;
      if (phase1) {
        double total = 0.0;
        pcost.assign(N_, 0.0);
        for (int k = 0; k < m_; ++k) {
          int j = basic_[k];
          if (x_[j] < lo_[j] - opt_.feas_tol) {
            pcost[j] = -1.0;
            total += lo_[j] - x_[j];
          } else if (x_[j] > up_[j] + opt_.feas_tol) {
            pcost[j] = 1.0;
            total += x_[j] - up_[j];
          }
        }
        if (total <= opt_.feas_tol) return LpStatus::Optimal;
        c = &pcost;
      }
      bool bland = degen >= opt_.bland_after;
      Eigen::VectorXd y = duals(*c);
      int enter = -1, dir = 0;
      double best = opt_.opt_tol;
      for (int j = 0; j < N_; ++j) {
        if (stat_[j] == VarStatus::Basic) continue;
        if (lo_[j] == up_[j]) continue;  // fixed variables never move
        double d = reduced_cost(*c, y, j);
        double viol = 0.0;
        int jdir = 0;
        if (stat_[j] == VarStatus::AtLower && d < -opt_.opt_tol) {
          viol = -d;
          jdir = 1;
        } else if (stat_[j] == VarStatus::AtUpper && d > opt_.opt_tol) {
          viol = d;
          jdir = -1;
        } else if (stat_[j] == VarStatus::FreeNonbasic &&
                   std::fabs(d) > opt_.opt_tol) {
          viol = std::fabs(d);
          jdir = d < 0 ? 1 : -1;
        }
        if (jdir == 0) continue;
        if (bland) {
          enter = j;
          dir = jdir;
          break;
        }
        if (viol > best) {
          best = viol;
          enter = j;
          dir = jdir;
        }
      }
      if (enter < 0) {
        if (phase1) return LpStatus::Infeasible;  // still infeasible, no move
        return LpStatus::Optimal;
      }

      Eigen::VectorXd w = ftran(enter);
      // Ratio test: smallest blocking step for the entering direction.
      double flip_t = kInf;
      if (std::isfinite(lo_[enter]) && std::isfinite(up_[enter]))
        flip_t = up_[enter] - lo_[enter];
      double best_t = kInf;
      int leave_row = -1;
      double leave_target = 0.0;
      double leave_mag = 0.0;
      for (int k = 0; k < m_; ++k) {
        int j = basic_[k];
        double rate = -dir * w(k);
        if (std::fabs(rate) <= kRateTol) continue;
        double target;
        if (phase1 && x_[j] < lo_[j] - opt_.feas_tol) {
          if (rate <= 0) continue;  // moving further below, no block
          target = lo_[j];
        } else if (phase1 && x_[j] > up_[j] + opt_.feas_tol) {
          if (rate >= 0) continue;
          target = up_[j];
        } else {
          target = rate > 0 ? up_[j] : lo_[j];
          if (!std::isfinite(target)) continue;
        }
        double t = (target - x_[j]) / rate;
        if (t < 0.0) t = 0.0;
        bool better;
        if (leave_row < 0 || t < best_t - kTieTol) {
          better = true;
        } else if (t <= best_t + kTieTol) {
          better = bland ? j < basic_[leave_row]
                         : std::fabs(w(k)) > leave_mag + kTieTol ||
                               (std::fabs(w(k)) > leave_mag - kTieTol &&
                                j < basic_[leave_row]);
        } else {
          better = false;
        }
        if (better) {
          best_t = std::min(best_t, t);
          leave_row = k;
          leave_target = target;
          leave_mag = std::fabs(w(k));
        }
      }

      ++iters_;
      if (leave_row < 0 || flip_t < best_t - kTieTol) {
        if (!std::isfinite(flip_t))
          return phase1 ? LpStatus::Infeasible : LpStatus::Unbounded;
        // Bound flip: no basis change.
        for (int k = 0; k < m_; ++k) x_[basic_[k]] -= dir * flip_t * w(k);
        x_[enter] = dir > 0 ? up_[enter] : lo_[enter];
        stat_[enter] =
            dir > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
        degen = flip_t <= kTieTol ? degen + 1 : 0;
        continue;
      }
      double t = best_t;
      for (int k = 0; k < m_; ++k) x_[basic_[k]] -= dir * t * w(k);
      double start = stat_[enter] == VarStatus::AtLower   ? lo_[enter]
                     : stat_[enter] == VarStatus::AtUpper ? up_[enter]
                                                          : 0.0;
      x_[enter] = start + dir * t;
      int out = basic_[leave_row];
      x_[out] = leave_target;
      stat_[out] = leave_target == lo_[out] ? VarStatus::AtLower
                                            : VarStatus::AtUpper;
      basic_[leave_row] = enter;
      stat_[enter] = VarStatus::Basic;
      degen = t <= kTieTol ? degen + 1 : 0;
      if (std::fabs(w(leave_row)) < kPivTol) {
        factorize();
        compute_primal();
      } else {
        eta_update(leave_row, w);
      }
    }
    return LpStatus::IterationLimit;
  }

  // ---- dual simplex (warm starts after bound changes) ----

  LpStatus dual_simplex() {
    int degen = 0;
    while (iters_ < iter_limit_) {
      int row = -1;
      double worst = 0.0;
      for (int k = 0; k < m_; ++k) {
        double v = infeasibility_of(basic_[k]);
        if (v <= 0.0) continue;
        if (row < 0 || v > worst + kTieTol ||
            (v > worst - kTieTol && basic_[k] < basic_[row])) {
          worst = std::max(worst, v);
          row = k;
        }
      }
      if (row < 0) return LpStatus::Optimal;  // primal feasible

      int out = basic_[row];
      bool below = x_[out] < lo_[out];
      double target = below ? lo_[out] : up_[out];
      Eigen::RowVectorXd rho = binv_.row(row);
      Eigen::VectorXd y = duals(cost_);
      bool bland = degen >= opt_.bland_after;

      int enter = -1, edir = 0;
      double best_ratio = kInf;
      double best_mag = 0.0;
      for (int j = 0; j < N_; ++j) {
        if (stat_[j] == VarStatus::Basic || lo_[j] == up_[j]) continue;
        double alpha = 0.0;
        for (const auto& [i, v] : cols_[j]) alpha += rho(i) * v;
        if (std::fabs(alpha) <= kPivTol) continue;
        // x_row changes by -alpha per unit increase of j.
        int jdir;
        if (stat_[j] == VarStatus::AtLower || stat_[j] == VarStatus::FreeNonbasic) {
          jdir = below ? (alpha < 0 ? 1 : 0) : (alpha > 0 ? 1 : 0);
          if (jdir == 0 && stat_[j] == VarStatus::FreeNonbasic)
            jdir = -1;  // free variables may move either way
          else if (jdir == 0)
            continue;
        } else {  // AtUpper: may decrease
          jdir = below ? (alpha > 0 ? -1 : 0) : (alpha < 0 ? -1 : 0);
          if (jdir == 0) continue;
        }
        double d = reduced_cost(cost_, y, j);
        double dual_room;
        if (stat_[j] == VarStatus::AtLower)
          dual_room = std::max(d, 0.0);
        else if (stat_[j] == VarStatus::AtUpper)
          dual_room = std::max(-d, 0.0);
        else
          dual_room = std::fabs(d);
        double ratio = dual_room / std::fabs(alpha);
        bool better;
        if (enter < 0) {
          better = true;
        } else if (bland) {
          // Ascending index scan keeps the smallest index among ties.
          better = ratio < best_ratio - kTieTol;
        } else {
          better = ratio < best_ratio - kTieTol ||
                   (ratio <= best_ratio + kTieTol &&
                    std::fabs(alpha) > best_mag + kTieTol);
        }
        if (better) {
          best_ratio = std::min(best_ratio, ratio);
          best_mag = std::fabs(alpha);
          enter = j;
          edir = jdir;
        }
      }
      if (enter < 0) return LpStatus::Infeasible;  // dual ray

      Eigen::VectorXd w = ftran(enter);
      double alpha = w(row);
      double delta = (x_[out] - target) / alpha;  // signed move of `enter`
      (void)edir;
      // The entering variable may land outside its own bounds; it is then
      // basic and primal-infeasible and gets picked as a leaving variable
      // in a later iteration. Dual feasibility is what the ratio test keeps.
      double start = stat_[enter] == VarStatus::AtLower   ? lo_[enter]
                     : stat_[enter] == VarStatus::AtUpper ? up_[enter]
                                                          : 0.0;
      for (int k = 0; k < m_; ++k) x_[basic_[k]] -= w(k) * delta;
      x_[enter] = start + delta;
      x_[out] = target;
      stat_[out] = below ? VarStatus::AtLower : VarStatus::AtUpper;
      basic_[row] = enter;
      stat_[enter] = VarStatus::Basic;
      ++iters_;
      degen = std::fabs(delta) <= kTieTol ? degen + 1 : 0;
      if (std::fabs(alpha) < kPivTol) {
        factorize();
        compute_primal();
      } else {
        eta_update(row, w);
      }
    }
    return LpStatus::IterationLimit;
  }

  const Problem& problem_;
  const SimplexOptions& opt_;
  int n_ = 0, m_ = 0, N_ = 0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lo_, up_, cost_;
  std::vector<int> basic_;
  std::vector<VarStatus> stat_;
  std::vector<double> x_;
  Eigen::MatrixXd binv_;
  int pivots_since_refactor_ = 0;
  int iters_ = 0;
  int iter_limit_ = 0;
};

}  // namespace

LpSolution solve_relaxation(const Problem& problem, const BoundSet& bounds,
                            const Basis* warm, int iter_limit,
                            const SimplexOptions& options) {
  Simplex s(problem, bounds, options);
  return s.run(warm && !warm->empty() ? warm : nullptr, iter_limit);
}

FeasReport check_solution(const Problem& problem, const BoundSet& bounds,
                          const LpSolution& solution, double feas_tol) {
  (void)feas_tol;
  FeasReport rep;
  for (int j = 0; j < problem.num_vars(); ++j) {
    auto [lo, up] = bounds.effective(problem.variables[j], j);
    double v = solution.primal[j];
    rep.max_bound_violation =
        std::max({rep.max_bound_violation, lo - v, v - up});
  }
  for (const auto& c : problem.constraints) {
    double act = 0.0;
    for (const auto& [j, a] : c.coeffs) act += a * solution.primal[j];
    auto [lo, up] = c.activity_bounds();
    rep.max_row_violation =
        std::max({rep.max_row_violation, lo - act, act - up});
  }
  return rep;
}

std::string dump_basis(const Problem& problem, const Basis& basis) {
  std::ostringstream os;
  auto name_of = [&](int j) -> std::string {
    if (j < problem.num_vars()) return problem.variables[j].name;
    return "row:" + problem.constraints[j - problem.num_vars()].name;
  };
  for (int j = 0; j < static_cast<int>(basis.status.size()); ++j) {
    const char* s = basis.status[j] == VarStatus::Basic     ? "basic"
                    : basis.status[j] == VarStatus::AtLower ? "lower"
                    : basis.status[j] == VarStatus::AtUpper ? "upper"
                                                            : "free";
    os << name_of(j) << "\t" << s << "\n";
  }
  return os.str();
}

DualCheck check_dual(const Problem& problem, const BoundSet& bounds,
                     const LpSolution& solution) {
  int n = problem.num_vars();
  int m = problem.num_rows();
  int N = n + m;
  if (static_cast<int>(solution.basis.status.size()) != N)
    throw std::invalid_argument("basis size mismatch");

  double obj_sign = problem.sense == Sense::Maximize ? -1.0 : 1.0;
  std::vector<std::vector<std::pair<int, double>>> cols(N);
  std::vector<double> cost(N, 0.0);
  std::vector<double> lo(N), up(N);
  for (int j = 0; j < n; ++j) {
    cost[j] = obj_sign * problem.variables[j].obj_coeff;
    auto [l, u] = bounds.effective(problem.variables[j], j);
    lo[j] = l;
    up[j] = u;
  }
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, v] : problem.constraints[i].coeffs)
      cols[j].emplace_back(i, v);
    cols[n + i].emplace_back(i, -1.0);
    auto [l, u] = problem.constraints[i].activity_bounds();
    lo[n + i] = l;
    up[n + i] = u;
  }
  std::vector<int> basic;
  for (int j = 0; j < N; ++j)
    if (solution.basis.status[j] == VarStatus::Basic) basic.push_back(j);
  if (static_cast<int>(basic.size()) != m)
    throw std::invalid_argument("basis has wrong cardinality");

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (const auto& [i, v] : cols[basic[k]]) B(i, k) = v;
  Eigen::VectorXd cb(m);
  for (int k = 0; k < m; ++k) cb(k) = cost[basic[k]];
  Eigen::VectorXd y = B.transpose().fullPivLu().solve(cb);

  DualCheck out;
  double dual_obj = 0.0;  // sum over nonbasic of d_j * x_j (rhs is zero)
  for (int j = 0; j < N; ++j) {
    if (solution.basis.status[j] == VarStatus::Basic) continue;
    double d = cost[j];
    for (const auto& [i, v] : cols[j]) d -= y(i) * v;
    double xj;
    switch (solution.basis.status[j]) {
      case VarStatus::AtLower:
        xj = lo[j];
        if (lo[j] != up[j])
          out.max_dual_violation = std::max(out.max_dual_violation, -d);
        break;
      case VarStatus::AtUpper:
        xj = up[j];
        if (lo[j] != up[j])
          out.max_dual_violation = std::max(out.max_dual_violation, d);
        break;
      default:
        xj = 0.0;
        out.max_dual_violation =
            std::max(out.max_dual_violation, std::fabs(d));
        break;
    }
    dual_obj += d * xj;
  }
  double primal_min = obj_sign * solution.objective;
  out.objective_gap = std::fabs(primal_min - dual_obj);
  return out;
}

}  // namespace dpbb
