#pragma once

#include <array>
#include <cstdint>

#include "qec/concat.hpp"

namespace qec {

// Ground truth for small trees: enumerates every physical error pattern,
// buckets the probability mass by the full syndrome set, and reads off the
// conditional distribution of the top class. Exponential in the qubit count,
// so only trees with at most 12 physical qubits are accepted.
class ExhaustivePosterior {
 public:
  ExhaustivePosterior(const ConcatenatedCode& cc, const LogicalDistribution& channel_prior);

  // Syndrome sets pack into an integer key: top layer first, blocks in
  // order, generator-0 bit lowest within a block.
  std::uint64_t key_of(const SyndromeSet& syndromes) const;

  LogicalDistribution posterior(const SyndromeSet& syndromes) const;
  double total_mass(const SyndromeSet& syndromes) const;

  std::size_t key_bits() const { return key_bits_; }

 private:
  Extractor extractor_;
  std::size_t key_bits_ = 0;
  std::vector<std::array<double, 4>> mass_;
};

}  // namespace qec
