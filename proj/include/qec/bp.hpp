#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qec/concat.hpp"

namespace qec {

// Upward messages of one decode: by_layer[m-1][j-1] is the posterior class
// distribution of block j at layer m given every syndrome in its subtree.
struct MessageTree {
  std::vector<std::vector<LogicalDistribution>> by_layer;

  const LogicalDistribution& top() const { return by_layer.front().front(); }
};

struct BpResult {
  LogicalDistribution top;        // P(top class | all syndromes)
  LogicalClass estimate = Pauli::I;
  double confidence = 0.0;        // largest component of top
  bool tie = false;
};

// One node update: the children's messages act as the per-qubit priors of a
// conditionally renormalized channel, so this is block_likelihood reused.
LogicalDistribution block_combine(const BlockLikelihood& kernel, Syndrome s,
                                  std::span<const LogicalDistribution> children);
LogicalDistribution block_combine(const StabilizerCode& code, Syndrome s,
                                  std::span<const LogicalDistribution> children);

// Exact maximum-likelihood decoding of the concatenation tree: a single
// bottom-up sweep of block_combine. The tree has no cycles, so the top
// message is the exact posterior rather than an approximation.
class BpDecoder {
 public:
  BpDecoder(ConcatenatedCode cc, LogicalDistribution channel_prior);

  const ConcatenatedCode& concatenation() const { return cc_; }

  // Bottom-layer message for one syndrome, straight from the cache.
  const LogicalDistribution& leaf_message(Syndrome s) const;

  BpResult decode(const SyndromeSet& syndromes, MessageTree& messages) const;
  BpResult decode(const SyndromeSet& syndromes);

 private:
  ConcatenatedCode cc_;
  LogicalDistribution prior_;
  BlockLikelihood kernel_;
  std::vector<LogicalDistribution> leaf_;
  std::vector<bool> leaf_possible_;
  MessageTree scratch_;
};

BpResult decode_bp(const ConcatenatedCode& cc, const SyndromeSet& syndromes,
                   const LogicalDistribution& channel_prior);

// Mean decoder confidence conditioned on the trial outcome. Either mean is
// absent when its side has no trials.
struct SoftReport {
  std::optional<double> mean_confidence_success;
  std::optional<double> mean_confidence_failure;
};

SoftReport soft_report(std::span<const std::pair<double, bool>> confidence_and_success);

}  // namespace qec
