#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace dpbb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Integrality { Continuous, Integer, Binary };
enum class Relation { LessEqual, GreaterEqual, Equal, Ranged };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double obj_coeff = 0.0;
  Integrality integrality = Integrality::Continuous;

  bool is_integral() const { return integrality != Integrality::Continuous; }
};

/// A linear row. Ranged rows are stored canonically as an activity
/// interval [rhs, rhs + range].
struct Constraint {
  std::string name;
  std::vector<std::pair<int, double>> coeffs;  // sorted by variable index
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  double range = 0.0;  // Ranged rows only, width >= 0

  // Activity interval [lo, hi] implied by relation/rhs/range.
  std::pair<double, double> activity_bounds() const;
};

struct Problem {
  std::string name;
  Sense sense = Sense::Minimize;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;

  int num_vars() const { return static_cast<int>(variables.size()); }
  int num_rows() const { return static_cast<int>(constraints.size()); }

  /// Throws std::invalid_argument on bad indices, duplicate names,
  /// zero coefficients, negative range widths, or crossed variable bounds.
  void validate() const;

  double objective_value(const std::vector<double>& x) const;

  /// Deterministic text dump (fixed field order, 17 significant digits).
  std::string canonical_dump() const;
};

/// v - floor(v), in [0, 1).
double fractional_part(double v);

/// Integer/binary variables whose value is farther than tol from every
/// integer, with fractionality min(f, 1-f). Index-ordered.
std::vector<std::pair<int, double>> fractional_candidates(
    const Problem& problem, const std::vector<double>& values, double tol);

/// Returns a copy of the problem with variable order shuffled by seed
/// (constraint coefficients and objective permuted consistently).
/// seed == 0 is the identity.
Problem permute_variables(const Problem& problem, std::uint64_t seed);

}  // namespace dpbb
