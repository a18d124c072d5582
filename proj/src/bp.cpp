#include "qec/bp.hpp"

#include <stdexcept>

namespace qec {

LogicalDistribution block_combine(const BlockLikelihood& kernel, Syndrome s,
                                  std::span<const LogicalDistribution> children) {
  return kernel.posterior(children, s).dist;
}

LogicalDistribution block_combine(const StabilizerCode& code, Syndrome s,
                                  std::span<const LogicalDistribution> children) {
  return block_combine(BlockLikelihood(code), s, children);
}

BpDecoder::BpDecoder(ConcatenatedCode cc, LogicalDistribution channel_prior)
    : cc_(std::move(cc)), prior_(channel_prior), kernel_(cc_.base) {
  if (cc_.levels < 1) throw std::invalid_argument("concatenation needs at least one level");
  cc_.physical_qubits();
  const double total = prior_.total();
  if (!(total > 0.0)) throw std::invalid_argument("channel prior has no mass");
  for (double v : prior_.p) {
    if (!(v >= 0.0)) throw std::invalid_argument("channel prior has a negative component");
  }
  prior_.try_normalize();

  // Bottom-layer messages depend only on the syndrome, so cache all of them.
  // Syndromes that cannot occur under the prior (some factor has zero mass)
  // only matter if a decode actually consumes them.
  const std::vector<LogicalDistribution> priors(cc_.base.n(), prior_);
  leaf_.resize(cc_.base.num_syndromes());
  leaf_possible_.assign(cc_.base.num_syndromes(), true);
  for (Syndrome s = 0; s < cc_.base.num_syndromes(); ++s) {
    auto masses = kernel_.masses(priors, s);
    LogicalDistribution dist;
    dist.p = masses;
    if (dist.try_normalize()) {
      leaf_[s] = dist;
    } else {
      leaf_possible_[s] = false;
    }
  }
}

const LogicalDistribution& BpDecoder::leaf_message(Syndrome s) const {
  if (s >= leaf_.size()) throw std::out_of_range("syndrome out of range");
  if (!leaf_possible_[s]) {
    throw ImpossibleSyndromeError("syndrome " + std::to_string(s) +
                                  " has zero probability under the channel prior");
  }
  return leaf_[s];
}

BpResult BpDecoder::decode(const SyndromeSet& syndromes, MessageTree& messages) const {
  const int levels = cc_.levels;
  if (syndromes.levels() != levels) {
    throw std::invalid_argument("syndrome set has wrong number of layers");
  }
  for (int m = 1; m <= levels; ++m) {
    if (syndromes.by_layer[m - 1].size() != cc_.blocks_at_layer(m)) {
      throw std::invalid_argument("layer " + std::to_string(m) +
                                  " has the wrong number of blocks");
    }
  }
  if (messages.by_layer.size() != static_cast<std::size_t>(levels)) {
    messages.by_layer.assign(levels, {});
  }

  const std::size_t n = cc_.base.n();
  for (int m = levels; m >= 1; --m) {
    const auto& synd = syndromes.by_layer[m - 1];
    auto& out = messages.by_layer[m - 1];
    out.resize(synd.size());
    if (m == levels) {
      for (std::size_t b = 0; b < synd.size(); ++b) out[b] = leaf_message(synd[b]);
      continue;
    }
    const auto& children = messages.by_layer[m];
    for (std::size_t b = 0; b < synd.size(); ++b) {
      auto masses = kernel_.masses_flat(
          reinterpret_cast<const double*>(children.data() + b * n), synd[b]);
      LogicalDistribution dist;
      dist.p = masses;
      if (!dist.try_normalize()) {
        throw ImpossibleSyndromeError(
            "layer " + std::to_string(m) + " block " + std::to_string(b + 1) +
            ": syndrome has zero probability given the children's messages");
      }
      out[b] = dist;
    }
  }

  BpResult result;
  result.top = messages.top();
  const auto best = argmax(result.top);
  result.estimate = best.cls;
  result.confidence = best.value;
  result.tie = best.tie;
  return result;
}

BpResult BpDecoder::decode(const SyndromeSet& syndromes) { return decode(syndromes, scratch_); }

BpResult decode_bp(const ConcatenatedCode& cc, const SyndromeSet& syndromes,
                   const LogicalDistribution& channel_prior) {
  BpDecoder decoder(cc, channel_prior);
  return decoder.decode(syndromes);
}

SoftReport soft_report(std::span<const std::pair<double, bool>> confidence_and_success) {
  double sum_success = 0.0, sum_failure = 0.0;
  std::size_t n_success = 0, n_failure = 0;
  for (const auto& [confidence, success] : confidence_and_success) {
    if (success) {
      sum_success += confidence;
      ++n_success;
    } else {
      sum_failure += confidence;
      ++n_failure;
    }
  }
  SoftReport report;
  if (n_success) report.mean_confidence_success = sum_success / static_cast<double>(n_success);
  if (n_failure) report.mean_confidence_failure = sum_failure / static_cast<double>(n_failure);
  return report;
}

}  // namespace qec
