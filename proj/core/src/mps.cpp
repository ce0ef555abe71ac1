#include "dpbb/mps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace dpbb {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

double parse_real(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw MpsParseError(line, "bad numeric value '" + s + "'");
  }
}

enum Section {
  kNone = 0,
  kName,
  kObjsense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEndata
};

struct RowInfo {
  char type = 'N';   // N, L, G, E
  int index = -1;    // constraint index, -1 for the objective
};

std::string fmt_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Problem parse_mps(std::istream& in) {
  Problem problem;
  std::unordered_map<std::string, RowInfo> rows;
  std::unordered_map<std::string, int> cols;
  std::string obj_row_name;
  bool saw_obj_row = false;
  bool in_integer_block = false;
  bool saw_endata = false;
  Section section = kNone;
  int current_section_rank = 0;
  std::string cur_col;

  auto section_rank = [](Section s) { return static_cast<int>(s); };

  auto find_row = [&](const std::string& name, int line) -> RowInfo& {
    auto it = rows.find(name);
    if (it == rows.end())
      throw MpsParseError(line, "reference to undeclared row '" + name + "'");
    return it->second;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;

    bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (is_header) {
      const std::string& kw = toks[0];
      Section next;
      if (kw == "NAME") {
        next = kName;
        if (toks.size() > 1) problem.name = toks[1];
      } else if (kw == "OBJSENSE") {
        next = kObjsense;
        if (toks.size() > 1) {
          if (toks[1] == "MAX" || toks[1] == "MAXIMIZE")
            problem.sense = Sense::Maximize;
          else if (toks[1] == "MIN" || toks[1] == "MINIMIZE")
            problem.sense = Sense::Minimize;
          else
            throw MpsParseError(lineno, "bad OBJSENSE value '" + toks[1] + "'");
        }
      } else if (kw == "ROWS") {
        next = kRows;
      } else if (kw == "COLUMNS") {
        next = kColumns;
      } else if (kw == "RHS") {
        next = kRhs;
      } else if (kw == "RANGES") {
        next = kRanges;
      } else if (kw == "BOUNDS") {
        next = kBounds;
      } else if (kw == "ENDATA") {
        saw_endata = true;
        break;
      } else {
        throw MpsParseError(lineno, "unsupported section '" + kw + "'");
      }
      if (section_rank(next) <= current_section_rank)
        throw MpsParseError(lineno, "section '" + kw + "' out of order");
      current_section_rank = section_rank(next);
      section = next;
      continue;
    }

    switch (section) {
      case kObjsense: {
        if (toks[0] == "MAX" || toks[0] == "MAXIMIZE")
          problem.sense = Sense::Maximize;
        else if (toks[0] == "MIN" || toks[0] == "MINIMIZE")
          problem.sense = Sense::Minimize;
        else
          throw MpsParseError(lineno, "bad OBJSENSE value '" + toks[0] + "'");
        break;
      }
      case kRows: {
        if (toks.size() != 2)
          throw MpsParseError(lineno, "ROWS entry needs a type and a name");
        char type = static_cast<char>(std::toupper(
            static_cast<unsigned char>(toks[0].size() == 1 ? toks[0][0] : 0)));
        if (type != 'N' && type != 'L' && type != 'G' && type != 'E')
          throw MpsParseError(lineno, "unknown row type '" + toks[0] + "'");
        if (rows.count(toks[1]))
          throw MpsParseError(lineno, "duplicate row name '" + toks[1] + "'");
        RowInfo info;
        info.type = type;
        if (type == 'N') {
          if (saw_obj_row)
            throw MpsParseError(lineno, "more than one objective (N) row");
          saw_obj_row = true;
          obj_row_name = toks[1];
        } else {
          Constraint c;
          c.name = toks[1];
          c.relation = type == 'L'   ? Relation::LessEqual
                       : type == 'G' ? Relation::GreaterEqual
                                     : Relation::Equal;
          info.index = problem.num_rows();
          problem.constraints.push_back(std::move(c));
        }
        rows.emplace(toks[1], info);
        break;
      }
      case kColumns: {
        // Marker lines toggle the integrality block.
        bool marker = false;
        for (const auto& t : toks)
          if (t == "'MARKER'") marker = true;
        if (marker) {
          for (const auto& t : toks) {
            if (t == "'INTORG'") in_integer_block = true;
            if (t == "'INTEND'") in_integer_block = false;
          }
          break;
        }
        if (toks.size() != 3 && toks.size() != 5)
          throw MpsParseError(lineno, "COLUMNS entry needs 1 or 2 row/value pairs");
        const std::string& cname = toks[0];
        int j;
        auto it = cols.find(cname);
        if (it == cols.end()) {
          j = problem.num_vars();
          cols.emplace(cname, j);
          Variable v;
          v.name = cname;
          v.integrality =
              in_integer_block ? Integrality::Integer : Integrality::Continuous;
          problem.variables.push_back(std::move(v));
          cur_col = cname;
        } else {
          if (cname != cur_col)
            throw MpsParseError(lineno,
                                "column '" + cname + "' split or duplicated");
          j = it->second;
        }
        for (std::size_t k = 1; k + 1 < toks.size() + 1 && k + 1 <= toks.size();
             k += 2) {
          const std::string& rname = toks[k];
          double val = parse_real(toks[k + 1], lineno);
          RowInfo& info = find_row(rname, lineno);
          if (info.index < 0) {
            problem.variables[j].obj_coeff = val;
          } else if (val != 0.0) {
            auto& coeffs = problem.constraints[info.index].coeffs;
            for (const auto& [idx, _] : coeffs)
              if (idx == j)
                throw MpsParseError(lineno, "duplicate entry for column '" +
                                                cname + "' in row '" + rname +
                                                "'");
            coeffs.emplace_back(j, val);
          }
        }
        break;
      }
      case kRhs: {
        std::size_t start = (toks.size() % 2 == 1) ? 1 : 0;  // optional set name
        if (toks.size() - start == 0 || (toks.size() - start) % 2 != 0)
          throw MpsParseError(lineno, "malformed RHS entry");
        for (std::size_t k = start; k < toks.size(); k += 2) {
          RowInfo& info = find_row(toks[k], lineno);
          double val = parse_real(toks[k + 1], lineno);
          if (info.index >= 0) problem.constraints[info.index].rhs = val;
          // RHS on the objective row (a constant shift) is ignored.
        }
        break;
      }
      case kRanges: {
        std::size_t start = (toks.size() % 2 == 1) ? 1 : 0;
        if (toks.size() - start == 0 || (toks.size() - start) % 2 != 0)
          throw MpsParseError(lineno, "malformed RANGES entry");
        for (std::size_t k = start; k < toks.size(); k += 2) {
          RowInfo& info = find_row(toks[k], lineno);
          if (info.index < 0)
            throw MpsParseError(lineno, "RANGES on the objective row");
          double r = parse_real(toks[k + 1], lineno);
          Constraint& c = problem.constraints[info.index];
          double lo, hi;
          switch (info.type) {
            case 'L':
              lo = c.rhs - std::fabs(r);
              hi = c.rhs;
              break;
            case 'G':
              lo = c.rhs;
              hi = c.rhs + std::fabs(r);
              break;
            case 'E':
              if (r >= 0.0) {
                lo = c.rhs;
                hi = c.rhs + r;
              } else {
                lo = c.rhs + r;
                hi = c.rhs;
              }
              break;
            default:
              throw MpsParseError(lineno, "RANGES on unsupported row type");
          }
          c.relation = Relation::Ranged;
          c.rhs = lo;
          c.range = hi - lo;
        }
        break;
      }
      case kBounds: {
        const std::string type = toks[0];
        bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                           type == "UI" || type == "LI";
        bool no_value =
            type == "FR" || type == "MI" || type == "PL" || type == "BV";
        if (!needs_value && !no_value)
          throw MpsParseError(lineno, "unknown bound type '" + type + "'");
        std::size_t expected = needs_value ? 3 : 2;
        std::size_t start = 1;
        if (toks.size() == expected + 1)
          start = 2;  // optional bound-set name
        else if (toks.size() != expected)
          throw MpsParseError(lineno, "malformed BOUNDS entry");
        auto it = cols.find(toks[start]);
        if (it == cols.end())
          throw MpsParseError(lineno,
                              "bound on undeclared column '" + toks[start] + "'");
        Variable& v = problem.variables[it->second];
        double val =
            needs_value ? parse_real(toks[start + 1], lineno) : 0.0;
        if (type == "UP") {
          v.upper = val;
        } else if (type == "LO") {
          v.lower = val;
        } else if (type == "FX") {
          v.lower = v.upper = val;
        } else if (type == "FR") {
          v.lower = -kInf;
          v.upper = kInf;
        } else if (type == "MI") {
          v.lower = -kInf;
        } else if (type == "PL") {
          v.upper = kInf;
        } else if (type == "BV") {
          v.integrality = Integrality::Binary;
          v.lower = 0.0;
          v.upper = 1.0;
        } else if (type == "UI") {
          v.integrality = Integrality::Integer;
          v.upper = val;
        } else if (type == "LI") {
          v.integrality = Integrality::Integer;
          v.lower = val;
        }
        break;
      }
      default:
        throw MpsParseError(lineno, "data line outside any section");
    }
  }

  if (!saw_endata) throw MpsParseError(lineno, "missing ENDATA");
  if (!saw_obj_row) throw MpsParseError(lineno, "missing objective (N) row");

  for (auto& c : problem.constraints)
    std::sort(c.coeffs.begin(), c.coeffs.end());
  problem.validate();
  return problem;
}

Problem parse_mps_string(const std::string& text) {
  std::istringstream is(text);
  return parse_mps(is);
}

Problem parse_mps_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  return parse_mps(f);
}

std::string write_mps(const Problem& problem) {
  std::ostringstream os;
  os << "NAME " << (problem.name.empty() ? "PROBLEM" : problem.name) << "\n";
  if (problem.sense == Sense::Maximize) os << "OBJSENSE\n    MAX\n";
  os << "ROWS\n";
  os << " N  OBJ\n";
  for (const auto& c : problem.constraints) {
    char t = c.relation == Relation::GreaterEqual ? 'G'
             : c.relation == Relation::Equal      ? 'E'
                                                  : 'L';
    os << " " << t << "  " << c.name << "\n";
  }

  // Column-major view of the constraint matrix.
  std::vector<std::vector<std::pair<int, double>>> by_col(problem.num_vars());
  for (int i = 0; i < problem.num_rows(); ++i)
    for (const auto& [j, val] : problem.constraints[i].coeffs)
      by_col[j].emplace_back(i, val);

  os << "COLUMNS\n";
  bool in_int = false;
  int marker_id = 0;
  for (int j = 0; j < problem.num_vars(); ++j) {
    const Variable& v = problem.variables[j];
    bool wants_int = v.is_integral();
    if (wants_int != in_int) {
      os << "    M" << marker_id++ << " 'MARKER' "
         << (wants_int ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = wants_int;
    }
    bool wrote = false;
    if (v.obj_coeff != 0.0 || by_col[j].empty()) {
      os << "    " << v.name << " OBJ " << fmt_real(v.obj_coeff) << "\n";
      wrote = true;
    }
    for (const auto& [i, val] : by_col[j]) {
      os << "    " << v.name << " " << problem.constraints[i].name << " "
         << fmt_real(val) << "\n";
      wrote = true;
    }
    (void)wrote;
  }
  if (in_int) os << "    M" << marker_id++ << " 'MARKER' 'INTEND'\n";

  os << "RHS\n";
  for (const auto& c : problem.constraints) {
    double rhs = c.relation == Relation::Ranged ? c.rhs + c.range : c.rhs;
    if (rhs != 0.0) os << "    RHS " << c.name << " " << fmt_real(rhs) << "\n";
  }
  bool any_range = false;
  for (const auto& c : problem.constraints)
    if (c.relation == Relation::Ranged) any_range = true;
  if (any_range) {
    os << "RANGES\n";
    for (const auto& c : problem.constraints)
      if (c.relation == Relation::Ranged)
        os << "    RNG " << c.name << " " << fmt_real(c.range) << "\n";
  }

  os << "BOUNDS\n";
  for (const auto& v : problem.variables) {
    if (v.integrality == Integrality::Binary) {
      os << " BV BND " << v.name << "\n";
      if (v.lower != 0.0)
        os << " LO BND " << v.name << " " << fmt_real(v.lower) << "\n";
      if (v.upper != 1.0)
        os << " UP BND " << v.name << " " << fmt_real(v.upper) << "\n";
      continue;
    }
    if (v.lower == 0.0 && v.upper == kInf) continue;
    if (v.lower == -kInf && v.upper == kInf) {
      os << " FR BND " << v.name << "\n";
      continue;
    }
    if (v.lower == v.upper) {
      os << " FX BND " << v.name << " " << fmt_real(v.lower) << "\n";
      continue;
    }
    if (v.lower == -kInf)
      os << " MI BND " << v.name << "\n";
    else if (v.lower != 0.0)
      os << " LO BND " << v.name << " " << fmt_real(v.lower) << "\n";
    if (v.upper != kInf)
      os << " UP BND " << v.name << " " << fmt_real(v.upper) << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

void write_mps_file(const Problem& problem, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open file for writing: " + path);
  f << write_mps(problem);
}

}  // namespace dpbb
