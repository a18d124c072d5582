#include "qec/enumerate.hpp"

#include <stdexcept>

namespace qec {

ExhaustivePosterior::ExhaustivePosterior(const ConcatenatedCode& cc,
                                         const LogicalDistribution& channel_prior)
    : extractor_(cc) {
  const std::size_t qubits = cc.physical_qubits();
  if (qubits > 12) {
    throw std::invalid_argument("exhaustive enumeration supports at most 12 physical qubits");
  }
  const std::size_t u = cc.base.num_checks();
  std::size_t blocks_total = 0;
  for (int m = 1; m <= cc.levels; ++m) blocks_total += cc.blocks_at_layer(m);
  key_bits_ = u * blocks_total;
  if (key_bits_ > 40) {
    throw std::invalid_argument("syndrome key exceeds 40 bits");
  }
  mass_.assign(std::size_t{1} << key_bits_, {0.0, 0.0, 0.0, 0.0});

  PauliOperator e(qubits);
  Extraction ex;
  const std::uint64_t patterns = std::uint64_t{1} << (2 * qubits);
  for (std::uint64_t idx = 0; idx < patterns; ++idx) {
    double prob = 1.0;
    for (std::size_t q = 0; q < qubits; ++q) {
      const unsigned f = (idx >> (2 * q)) & 3u;
      e.set_factor(q, static_cast<Pauli>(f));
      prob *= channel_prior[f];
    }
    if (prob == 0.0) continue;
    extractor_.extract(e, ex);
    mass_[key_of(ex.syndromes)][static_cast<unsigned>(ex.classes.top())] += prob;
  }
}

std::uint64_t ExhaustivePosterior::key_of(const SyndromeSet& syndromes) const {
  const std::size_t u = extractor_.concatenation().base.num_checks();
  std::uint64_t key = 0;
  std::size_t pos = 0;
  for (const auto& layer : syndromes.by_layer) {
    for (const Syndrome s : layer) {
      key |= static_cast<std::uint64_t>(s) << pos;
      pos += u;
    }
  }
  if (pos != key_bits_) throw std::invalid_argument("syndrome set shape mismatch");
  return key;
}

LogicalDistribution ExhaustivePosterior::posterior(const SyndromeSet& syndromes) const {
  LogicalDistribution dist;
  dist.p = mass_[key_of(syndromes)];
  if (!dist.try_normalize()) {
    throw ImpossibleSyndromeError("syndrome set has zero probability under the prior");
  }
  return dist;
}

double ExhaustivePosterior::total_mass(const SyndromeSet& syndromes) const {
  const auto& m = mass_[key_of(syndromes)];
  return m[0] + m[1] + m[2] + m[3];
}

}  // namespace qec
