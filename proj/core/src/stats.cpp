#include "dpbb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace dpbb {

namespace {

bool solved(const RunRecord& r) { return r.status == "optimal"; }

double effective_time(const RunRecord& r, double time_limit) {
  return solved(r) || r.status == "infeasible" ? r.time_sec : time_limit;
}

struct Geo {
  double base = 0.0;
  double ratio = 0.0;
};

Geo geo_pair(const std::vector<double>& base_vals,
             const std::vector<double>& test_vals, double shift) {
  Geo g;
  g.base = shifted_geomean(base_vals, shift);
  double t = shifted_geomean(test_vals, shift);
  g.ratio = g.base != 0.0 ? t / g.base : (t == 0.0 ? 1.0 : 1e300);
  return g;
}

BracketRow make_row(const std::string& label,
                    const std::vector<RunPair>& pairs, double time_limit) {
  BracketRow row;
  row.label = label;
  row.count = static_cast<int>(pairs.size());
  if (pairs.empty()) return row;
  std::vector<double> tb, tt, nb, nt, pb, pt;
  for (const auto& p : pairs) {
    if (solved(p.base)) ++row.solved_base;
    if (solved(p.test)) ++row.solved_test;
    tb.push_back(effective_time(p.base, time_limit));
    tt.push_back(effective_time(p.test, time_limit));
    nb.push_back(static_cast<double>(p.base.nodes));
    nt.push_back(static_cast<double>(p.test.nodes));
    pb.push_back(p.base.pdi);
    pt.push_back(p.test.pdi);
  }
  Geo t = geo_pair(tb, tt, kTimeShift);
  Geo n = geo_pair(nb, nt, kNodeShift);
  Geo p = geo_pair(pb, pt, kPdiShift);
  row.time_base = t.base;
  row.time_ratio = t.ratio;
  row.node_base = n.base;
  row.node_ratio = n.ratio;
  row.pdi_base = p.base;
  row.pdi_ratio = p.ratio;
  return row;
}

}  // namespace

double shifted_geomean(const std::vector<double>& values, double shift) {
  if (values.empty())
    throw std::invalid_argument("shifted_geomean: empty input");
  if (!(shift > 0.0))
    throw std::invalid_argument("shifted_geomean: shift must be positive");
  double acc = 0.0;
  for (double v : values) acc += std::log(v + shift);
  return std::exp(acc / static_cast<double>(values.size())) - shift;
}

std::vector<RunPair> match_pairs(const std::vector<RunRecord>& records,
                                 const std::string& baseline,
                                 const std::string& test) {
  std::map<std::pair<std::string, std::uint64_t>, RunPair> by_key;
  std::map<std::pair<std::string, std::uint64_t>, int> seen;
  for (const auto& r : records) {
    auto key = std::make_pair(r.instance, r.seed);
    if (r.variant == baseline) {
      by_key[key].base = r;
      seen[key] |= 1;
    } else if (r.variant == test) {
      by_key[key].test = r;
      seen[key] |= 2;
    }
  }
  std::string holes;
  std::vector<RunPair> out;
  for (auto& [key, mask] : seen) {
    if (mask != 3) {
      holes += " " + key.first + "/" + std::to_string(key.second) + ":" +
               (mask == 1 ? test : baseline);
      continue;
    }
    out.push_back(std::move(by_key[key]));
  }
  if (!holes.empty())
    throw std::runtime_error("missing records for:" + holes);
  return out;
}

std::vector<RunPair> bracket_filter(const std::vector<RunPair>& pairs,
                                    double x_seconds, double time_limit) {
  std::vector<RunPair> out;
  for (const auto& p : pairs) {
    double t = std::max(effective_time(p.base, time_limit),
                        effective_time(p.test, time_limit));
    if (t > x_seconds) out.push_back(p);
  }
  return out;
}

std::vector<RunPair> affected_filter(const std::vector<RunPair>& pairs) {
  std::vector<RunPair> out;
  for (const auto& p : pairs)
    if (p.base.nodes != p.test.nodes || p.base.status != p.test.status)
      out.push_back(p);
  return out;
}

BracketReport compare_report(const std::vector<RunRecord>& records,
                             const std::string& baseline,
                             const std::string& test, double time_limit) {
  auto pairs = match_pairs(records, baseline, test);
  BracketReport report;
  report.baseline = baseline;
  report.test = test;
  report.time_limit = time_limit;
  report.rows.push_back(make_row("All", pairs, time_limit));
  report.rows.push_back(
      make_row("Affected", affected_filter(pairs), time_limit));
  for (double x : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
    char label[32];
    std::snprintf(label, sizeof(label), ">=%gs", x);
    report.rows.push_back(
        make_row(label, bracket_filter(pairs, x, time_limit), time_limit));
  }
  return report;
}

std::string render_table(const BracketReport& report) {
  std::ostringstream os;
  char line[256];
  os << "Comparison: baseline=" << report.baseline << " test=" << report.test
     << " (time limit " << report.time_limit << "s)\n";
  std::snprintf(line, sizeof(line),
                "%-10s %7s | %8s %8s | %10s %8s | %10s %8s",
                "Bracket", "Count", report.baseline.substr(0, 8).c_str(),
                report.test.substr(0, 8).c_str(), "Time(1)", "ratio",
                "Node(100)", "ratio");
  os << line;
  if (report.with_pdi) {
    std::snprintf(line, sizeof(line), " | %10s %8s", "PDI(100)", "ratio");
    os << line;
  }
  os << "\n";
  for (const auto& r : report.rows) {
    if (r.count == 0) {
      std::snprintf(line, sizeof(line),
                    "%-10s %7d | %8s %8s | %10s %8s | %10s %8s",
                    r.label.c_str(), 0, "-", "-", "-", "-", "-", "-");
      os << line;
      if (report.with_pdi) os << " |          -        -";
      os << "\n";
      continue;
    }
    std::snprintf(line, sizeof(line),
                  "%-10s %7d | %8d %8d | %10.2f %8.2f | %10.2f %8.2f",
                  r.label.c_str(), r.count, r.solved_base, r.solved_test,
                  r.time_base, r.time_ratio, r.node_base, r.node_ratio);
    os << line;
    if (report.with_pdi) {
      std::snprintf(line, sizeof(line), " | %10.2f %8.2f", r.pdi_base,
                    r.pdi_ratio);
      os << line;
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const BracketReport& report) {
  std::ostringstream os;
  os << "bracket,count,solved_" << report.baseline << ",solved_" << report.test
     << ",time_geomean,time_ratio,node_geomean,node_ratio";
  if (report.with_pdi) os << ",pdi_geomean,pdi_ratio";
  os << "\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };
  for (const auto& r : report.rows) {
    os << r.label << "," << r.count << "," << r.solved_base << ","
       << r.solved_test;
    if (r.count == 0) {
      os << ",,,,";
      if (report.with_pdi) os << ",,";
      os << "\n";
      continue;
    }
    os << "," << num(r.time_base) << "," << num(r.time_ratio) << ","
       << num(r.node_base) << "," << num(r.node_ratio);
    if (report.with_pdi)
      os << "," << num(r.pdi_base) << "," << num(r.pdi_ratio);
    os << "\n";
  }
  return os.str();
}

std::string to_jsonl(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["seed"] = r.seed;
    j["variant"] = r.variant;
    j["status"] = r.status;
    j["time_sec"] = r.time_sec;
    j["nodes"] = r.nodes;
    j["pdi"] = r.pdi;
    if (r.objective)
      j["objective"] = *r.objective;
    else
      j["objective"] = nullptr;
    os << j.dump() << "\n";
  }
  return os.str();
}

std::vector<RunRecord> parse_jsonl(std::istream& in) {
  std::vector<RunRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("bad JSON on line " + std::to_string(lineno) +
                               ": " + e.what());
    }
    RunRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.variant = j.at("variant").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.time_sec = j.at("time_sec").get<double>();
    r.nodes = j.at("nodes").get<long>();
    r.pdi = j.at("pdi").get<double>();
    if (j.contains("objective") && !j.at("objective").is_null())
      r.objective = j.at("objective").get<double>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dpbb
