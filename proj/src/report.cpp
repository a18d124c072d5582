#include "qec/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace qec {

std::string format_probability(double v) {
  char buf[40];
  if (v != 0.0 && std::abs(v) < 1e-4) {
    std::snprintf(buf, sizeof buf, "%.9e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g", v);
  }
  return buf;
}

namespace {

const char* const kStatsHeader =
    "code,p,level,decoder,trials,failures,p_e,ci_low,ci_high,"
    "mean_conf_success,mean_conf_failure,seed";

}  // namespace

void write_stats_csv(std::ostream& out, std::span<const TrialStats> rows) {
  out << kStatsHeader << '\n';
  for (const auto& r : rows) {
    out << r.code << ',' << format_probability(r.p) << ',' << r.level << ',' << r.decoder << ','
        << r.trials << ',' << r.failures << ',' << format_probability(r.p_e) << ','
        << format_probability(r.ci_low) << ',' << format_probability(r.ci_high) << ',';
    if (r.mean_conf_success) out << format_probability(*r.mean_conf_success);
    out << ',';
    if (r.mean_conf_failure) out << format_probability(*r.mean_conf_failure);
    out << ',' << r.seed << '\n';
  }
}

void write_stats_json(std::ostream& out, std::span<const TrialStats> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json obj{
        {"code", r.code},
        {"p", r.p},
        {"level", r.level},
        {"decoder", r.decoder},
        {"trials", r.trials},
        {"failures", r.failures},
        {"p_e", r.p_e},
        {"ci_low", r.ci_low},
        {"ci_high", r.ci_high},
        {"seed", r.seed},
    };
    obj["mean_conf_success"] =
        r.mean_conf_success ? nlohmann::json(*r.mean_conf_success) : nlohmann::json(nullptr);
    obj["mean_conf_failure"] =
        r.mean_conf_failure ? nlohmann::json(*r.mean_conf_failure) : nlohmann::json(nullptr);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void write_exact_csv(std::ostream& out, std::span<const ExactCurveRow> rows) {
  out << "code,p,level,p_e\n";
  for (const auto& r : rows) {
    out << r.code << ',' << format_probability(r.p) << ',' << r.level << ','
        << format_probability(r.p_error) << '\n';
  }
}

void write_exact_json(std::ostream& out, std::span<const ExactCurveRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"code", r.code}, {"p", r.p}, {"level", r.level}, {"p_e", r.p_error}});
  }
  out << arr.dump(2) << '\n';
}

namespace {

int parse_int_strict(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse integer '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("trailing characters in '" + text + "'");
  return value;
}

}  // namespace

std::vector<int> parse_level_range(const std::string& text) {
  const auto dots = text.find("..");
  int lo, hi;
  if (dots == std::string::npos) {
    lo = hi = parse_int_strict(text);
  } else {
    lo = parse_int_strict(text.substr(0, dots));
    hi = parse_int_strict(text.substr(dots + 2));
  }
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("level range must satisfy 1 <= a <= b, got '" + text + "'");
  }
  std::vector<int> levels;
  for (int m = lo; m <= hi; ++m) levels.push_back(m);
  return levels;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse number '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("trailing characters in '" + tok + "'");
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace qec
