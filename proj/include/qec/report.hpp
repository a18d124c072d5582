#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qec/mc.hpp"

namespace qec {

// 10 significant digits, switching to scientific notation below 1e-4.
// Byte-stable for a given build, which is what makes reruns comparable.
std::string format_probability(double v);

void write_stats_csv(std::ostream& out, std::span<const TrialStats> rows);
void write_stats_json(std::ostream& out, std::span<const TrialStats> rows);

struct ExactCurveRow {
  std::string code;
  double p = 0.0;
  int level = 1;
  double p_error = 0.0;
};

void write_exact_csv(std::ostream& out, std::span<const ExactCurveRow> rows);
void write_exact_json(std::ostream& out, std::span<const ExactCurveRow> rows);

// "a..b" (inclusive) or a single integer; levels start at 1.
std::vector<int> parse_level_range(const std::string& text);

// Comma-separated doubles, e.g. "0.13,0.15,0.1885".
std::vector<double> parse_double_list(const std::string& text);

}  // namespace qec
