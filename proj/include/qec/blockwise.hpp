#pragma once

#include <vector>

#include "qec/concat.hpp"

namespace qec {

// Outcome of hard blockwise decoding. residuals[k] is the class string left
// after correcting layer levels-k, so residuals.back() has the single factor
// whose identity-ness decides success. estimate composes all applied
// corrections into the top-level class the decoder would output.
struct BlockwiseResult {
  LogicalClass estimate = Pauli::I;
  bool success = false;
  std::vector<PauliOperator> residuals;
};

// Applies one fixed syndrome-to-class table at every layer, bottom up. Each
// block is corrected independently, then the corrected classes form the
// error string of the layer above.
class BlockwiseDecoder {
 public:
  BlockwiseDecoder(ConcatenatedCode cc, HardTable table);

  const ConcatenatedCode& concatenation() const { return extractor_.concatenation(); }
  const HardTable& table() const { return table_; }

  void decode(const PauliOperator& physical, BlockwiseResult& out) const;
  BlockwiseResult decode(const PauliOperator& physical) const;

  // Corrected-string pass only: fills the per-layer residual strings and
  // returns the final residual class. decode() adds the estimate on top;
  // callers that only care about success can stop here.
  LogicalClass residual(const PauliOperator& physical,
                        std::vector<PauliOperator>& residuals) const;

 private:
  Extractor extractor_;
  HardTable table_;
};

// Exact per-level statistics of the same decoder: the class distribution a
// decoded block hands to the next layer, and the failure probability at that
// depth. Entry m-1 describes m levels of coding over a depolarizing channel
// of strength p.
struct EffectiveChannelLevel {
  LogicalDistribution channel;
  double p_error = 0.0;
};

std::vector<EffectiveChannelLevel> exact_blockwise_recursion(const StabilizerCode& code, double p,
                                                             int levels, const HardTable& table);

// Bisection bracket for the failure threshold of blockwise decoding: below
// the returned interval the recursion drives p_error to zero, above it does
// not. Spacing of lo/hi must straddle the transition.
struct ThresholdBracket {
  double low = 0.0;
  double high = 0.0;
};

ThresholdBracket blockwise_threshold(const StabilizerCode& code, double lo, double hi,
                                     double tol = 1e-4);

}  // namespace qec
