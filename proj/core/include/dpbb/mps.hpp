#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "dpbb/problem.hpp"

namespace dpbb {

class MpsParseError : public std::runtime_error {
 public:
  MpsParseError(int line, const std::string& what)
      : std::runtime_error("mps parse error at line " + std::to_string(line) +
                           ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses free-format MPS (NAME, OBJSENSE, ROWS, COLUMNS with
/// INTORG/INTEND markers, RHS, RANGES, BOUNDS, ENDATA). The returned
/// problem is validated. SOS and other unsupported sections are rejected.
Problem parse_mps(std::istream& in);
Problem parse_mps_string(const std::string& text);
Problem parse_mps_file(const std::string& path);

/// Free-format MPS writer; output is deterministic and round-trips
/// dimensions, bounds and coefficients through parse_mps exactly.
std::string write_mps(const Problem& problem);
void write_mps_file(const Problem& problem, const std::string& path);

}  // namespace dpbb
