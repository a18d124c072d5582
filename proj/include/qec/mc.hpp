#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qec/concat.hpp"
#include "qec/rng.hpp"

namespace qec {

// Independent depolarizing noise: each qubit is hit with probability p, the
// hit picking X, Y or Z uniformly.
PauliOperator sample_error(RngStream& rng, std::size_t num_qubits, double p);
void sample_error_into(RngStream& rng, double p, PauliOperator& out);

// 95% (by default) Wilson score interval for failures out of trials.
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                          double z = 1.96);

// One (code, p, level, decoder) cell of an experiment.
struct TrialStats {
  std::string code;
  double p = 0.0;
  int level = 1;
  std::string decoder;  // "blockwise" or "bp"
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double p_e = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> mean_conf_success;  // message-passing rows only
  std::optional<double> mean_conf_failure;
  std::uint64_t seed = 0;
};

enum class DecoderSelection { Blockwise, MessagePassing, Both };

struct ExperimentConfig {
  StabilizerCode code;
  std::vector<double> p_values;
  std::vector<int> levels;
  std::uint64_t trials = 20000;
  std::uint64_t seed = 1;
  DecoderSelection decoders = DecoderSelection::Both;
  int threads = 0;  // 0 = hardware concurrency; never affects the results
};

// Runs every (p, level) cell. Both decoders see the same sampled errors, so
// their failure counts are paired. Trials are keyed by (seed, cell, trial)
// and chunk results are reduced in a fixed order, which makes the output a
// pure function of the config regardless of the worker count.
std::vector<TrialStats> run_experiment(const ExperimentConfig& config);

}  // namespace qec
