#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dpbb {

enum class Direction : std::uint8_t { Down = 0, Up = 1 };

inline const char* to_string(Direction d) {
  return d == Direction::Down ? "down" : "up";
}

struct ScoreConfig {
  double gamma = 0.2;          // discount factor, plausible range [0.2, 0.5]
  int rel_threshold = 8;       // datapoints needed before a level is reliable
  int rel_threshold_level1 = -1;  // optional override, -1 = use rel_threshold
  double epsilon = 1e-6;       // floor in the product score

  int threshold_for_level(int level) const {
    if (level == 1 && rel_threshold_level1 >= 1) return rel_threshold_level1;
    return rel_threshold;
  }
};

/// Two-level pseudocost history: per variable, per direction, per level
/// running sums and counts of unit objective gains, plus global per-level
/// per-direction accumulators backing the uninitialized-variable default.
class PseudocostTable {
 public:
  explicit PseudocostTable(int num_vars) : cells_(num_vars) {}

  int num_vars() const { return static_cast<int>(cells_.size()); }

  /// Adds datapoint obj_gain/frac. Negative gains (LP tolerance noise)
  /// are clamped to zero before accumulation. frac must lie in (0,1).
  void record_gain(int var, Direction dir, int level, double obj_gain,
                   double frac);

  /// Mean datapoint; falls back to the global per-level per-direction
  /// mean, then to 1.0 when no history exists anywhere.
  double pseudocost(int var, Direction dir, int level) const;

  /// pseudocost(level 0) + gamma * pseudocost(level 1).
  double discounted_pseudocost(int var, Direction dir, double gamma) const;

  bool is_reliable(int var, Direction dir, int level, int threshold) const {
    return cell(var, dir, level).count >= threshold;
  }

  long count(int var, Direction dir, int level) const {
    return cell(var, dir, level).count;
  }
  double gain_sum(int var, Direction dir, int level) const {
    return cell(var, dir, level).sum;
  }

  /// variable,direction,level,count,mean — one line per nonempty cell.
  std::string dump_csv() const;

 private:
  struct Cell {
    double sum = 0.0;
    long count = 0;
  };
  struct Global {
    double sum = 0.0;
    long count = 0;
  };

  const Cell& cell(int var, Direction dir, int level) const {
    return cells_[var][static_cast<int>(dir) * 2 + level];
  }
  Cell& cell(int var, Direction dir, int level) {
    return cells_[var][static_cast<int>(dir) * 2 + level];
  }

  std::vector<std::array<Cell, 4>> cells_;
  std::array<Global, 4> global_{};
};

/// Product rule combining directional gain estimates into one score.
double branching_score(double down_est, double up_est, double epsilon);

}  // namespace dpbb
