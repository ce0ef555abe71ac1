#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dpbb {

/// One (instance, seed, variant) benchmark outcome.
struct RunRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::string variant;
  std::string status;  // optimal, infeasible, time-limit, ...
  double time_sec = 0.0;
  long nodes = 0;
  double pdi = 0.0;
  std::optional<double> objective;
};

/// exp(mean(ln(v + shift))) - shift. Throws on empty input.
double shifted_geomean(const std::vector<double>& values, double shift);

struct RunPair {
  RunRecord base;
  RunRecord test;
};

/// Matches records of the two variants by (instance, seed).
/// Throws listing the holes when a side is missing.
std::vector<RunPair> match_pairs(const std::vector<RunRecord>& records,
                                 const std::string& baseline,
                                 const std::string& test);

/// Pairs where at least one variant took more than X seconds
/// (unsolved runs count as time-limit time).
std::vector<RunPair> bracket_filter(const std::vector<RunPair>& pairs,
                                    double x_seconds, double time_limit);

/// Pairs where the variants differ in node count or final status.
std::vector<RunPair> affected_filter(const std::vector<RunPair>& pairs);

struct BracketRow {
  std::string label;
  int count = 0;
  int solved_base = 0;
  int solved_test = 0;
  // Baseline geomeans are absolute; the test column is a ratio.
  double time_base = 0.0, time_ratio = 0.0;
  double node_base = 0.0, node_ratio = 0.0;
  double pdi_base = 0.0, pdi_ratio = 0.0;
};

struct BracketReport {
  std::string baseline;
  std::string test;
  double time_limit = 0.0;
  bool with_pdi = true;
  std::vector<BracketRow> rows;  // All, Affected, >=0s, >=1s, ... >=1000s
};

/// Shifts: time 1 s, nodes 100, PDI 100.
inline constexpr double kTimeShift = 1.0;
inline constexpr double kNodeShift = 100.0;
inline constexpr double kPdiShift = 100.0;

BracketReport compare_report(const std::vector<RunRecord>& records,
                             const std::string& baseline,
                             const std::string& test, double time_limit);

std::string render_table(const BracketReport& report);
std::string render_csv(const BracketReport& report);

/// JSON-lines persistence; stable field names
/// (instance, seed, variant, status, time_sec, nodes, pdi, objective).
std::string to_jsonl(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_jsonl(std::istream& in);

}  // namespace dpbb
