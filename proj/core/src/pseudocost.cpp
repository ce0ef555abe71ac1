#include "dpbb/pseudocost.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dpbb {

void PseudocostTable::record_gain(int var, Direction dir, int level,
                                  double obj_gain, double frac) {
  if (!(frac > 0.0 && frac < 1.0))
    throw std::invalid_argument("record_gain: frac must lie in (0,1)");
  if (level != 0 && level != 1)
    throw std::invalid_argument("record_gain: level must be 0 or 1");
  double gain = std::max(obj_gain, 0.0);
  double point = gain / frac;
  Cell& c = cell(var, dir, level);
  c.sum += point;
  c.count += 1;
  Global& g = global_[static_cast<int>(dir) * 2 + level];
  g.sum += point;
  g.count += 1;
}

double PseudocostTable::pseudocost(int var, Direction dir, int level) const {
  const Cell& c = cell(var, dir, level);
  if (c.count > 0) return c.sum / static_cast<double>(c.count);
  const Global& g = global_[static_cast<int>(dir) * 2 + level];
  if (g.count > 0) return g.sum / static_cast<double>(g.count);
  return 1.0;
}

double PseudocostTable::discounted_pseudocost(int var, Direction dir,
                                              double gamma) const {
  return pseudocost(var, dir, 0) + gamma * pseudocost(var, dir, 1);
}

std::string PseudocostTable::dump_csv() const {
  std::ostringstream os;
  os << "variable,direction,level,count,mean\n";
  for (int v = 0; v < num_vars(); ++v) {
    for (Direction dir : {Direction::Down, Direction::Up}) {
      for (int level = 0; level < 2; ++level) {
        const Cell& c = cell(v, dir, level);
        if (c.count == 0) continue;
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g",
                      c.sum / static_cast<double>(c.count));
        os << v << "," << to_string(dir) << "," << level << "," << c.count
           << "," << buf << "\n";
      }
    }
  }
  return os.str();
}

double branching_score(double down_est, double up_est, double epsilon) {
  return std::max(down_est, epsilon) * std::max(up_est, epsilon);
}

}  // namespace dpbb
