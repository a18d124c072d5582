#include "qec/blockwise.hpp"

#include <stdexcept>

namespace qec {

BlockwiseDecoder::BlockwiseDecoder(ConcatenatedCode cc, HardTable table)
    : extractor_(std::move(cc)), table_(std::move(table)) {
  if (table_.decision.size() != extractor_.concatenation().base.num_syndromes()) {
    throw std::invalid_argument("hard table does not match the code's syndrome count");
  }
}

LogicalClass BlockwiseDecoder::residual(const PauliOperator& physical,
                                        std::vector<PauliOperator>& residuals) const {
  const auto& cc = extractor_.concatenation();
  if (physical.num_qubits() != cc.physical_qubits()) {
    throw std::invalid_argument("error string length does not match the concatenation");
  }
  const std::size_t n = cc.base.n();
  const int levels = cc.levels;

  bool rebuild = residuals.size() != static_cast<std::size_t>(levels);
  for (int m = levels; m >= 1 && !rebuild; --m) {
    rebuild = residuals[levels - m].num_qubits() != cc.blocks_at_layer(m);
  }
  if (rebuild) {
    residuals.clear();
    for (int m = levels; m >= 1; --m) residuals.emplace_back(cc.blocks_at_layer(m));
  }

  const auto sc = extractor_.syndrome_contrib();
  const auto kc = extractor_.class_contrib();
  const PauliOperator* current = &physical;
  for (int m = levels; m >= 1; --m) {
    PauliOperator& next = residuals[levels - m];
    const std::size_t blocks = cc.blocks_at_layer(m);
    const auto xw = current->x_words();
    const auto zw = current->z_words();
    std::size_t q = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      std::uint32_t s = 0;
      std::uint8_t c = 0;
      for (std::size_t i = 0; i < n; ++i, ++q) {
        const unsigned x = (xw[q >> 6] >> (q & 63)) & 1u;
        const unsigned z = (zw[q >> 6] >> (q & 63)) & 1u;
        constexpr unsigned lut[4] = {0, 1, 3, 2};
        const unsigned f = lut[x | (z << 1)];
        s ^= sc[i * 4 + f];
        c ^= kc[i * 4 + f];
      }
      next.set_factor(b, static_cast<Pauli>(c) * table_.decision[s]);
    }
    current = &next;
  }
  return residuals.back().factor_at(0);
}

void BlockwiseDecoder::decode(const PauliOperator& physical, BlockwiseResult& out) const {
  const LogicalClass r = residual(physical, out.residuals);
  out.success = (r == Pauli::I);
  // The corrected and raw strings reduce to classes r and L through the same
  // homomorphism, and the decoder's output differs from the truth by r, so
  // the estimate is r * L.
  const Extraction ex = extractor_.extract(physical);
  out.estimate = r * ex.classes.top();
}

BlockwiseResult BlockwiseDecoder::decode(const PauliOperator& physical) const {
  BlockwiseResult out;
  decode(physical, out);
  return out;
}

std::vector<EffectiveChannelLevel> exact_blockwise_recursion(const StabilizerCode& code, double p,
                                                             int levels, const HardTable& table) {
  if (levels < 1) throw std::invalid_argument("need at least one level");
  if (table.decision.size() != code.num_syndromes()) {
    throw std::invalid_argument("hard table does not match the code's syndrome count");
  }
  const BlockLikelihood kernel(code);
  std::vector<EffectiveChannelLevel> out;
  out.reserve(levels);
  LogicalDistribution q = LogicalDistribution::depolarizing(p);
  std::vector<LogicalDistribution> priors(code.n());
  for (int m = 1; m <= levels; ++m) {
    priors.assign(code.n(), q);
    LogicalDistribution next{{0.0, 0.0, 0.0, 0.0}};
    for (Syndrome s = 0; s < code.num_syndromes(); ++s) {
      const auto masses = kernel.masses(priors, s);
      for (unsigned lc = 0; lc < 4; ++lc) {
        next[static_cast<Pauli>(lc) * table.decision[s]] += masses[lc];
      }
    }
    // The level map preserves total mass exactly (every error pattern lands
    // in exactly one decision bucket), so this division only removes rounding
    // drift. Left in place, that drift compounds by a factor of n per level
    // and drowns the true failure rate once it decays past ~1e-11.
    const double total = next[Pauli::I] + next[Pauli::X] + next[Pauli::Y] + next[Pauli::Z];
    for (unsigned lc = 0; lc < 4; ++lc) next[static_cast<Pauli>(lc)] /= total;
    q = next;
    out.push_back({q, 1.0 - q[Pauli::I]});
  }
  return out;
}

namespace {

// Drives the recursion until the failure probability clearly collapses or
// clearly does not. Near the transition the drift is slow, so after max_m
// levels the comparison against the halfway point decides.
bool collapses(const BlockLikelihood& kernel, const StabilizerCode& code, const HardTable& table,
               double p, int max_m = 200) {
  LogicalDistribution q = LogicalDistribution::depolarizing(p);
  std::vector<LogicalDistribution> priors(code.n());
  double mid_pe = 0.0;
  double pe = 1.0;
  for (int m = 1; m <= max_m; ++m) {
    priors.assign(code.n(), q);
    LogicalDistribution next{{0.0, 0.0, 0.0, 0.0}};
    for (Syndrome s = 0; s < code.num_syndromes(); ++s) {
      const auto masses = kernel.masses(priors, s);
      for (unsigned lc = 0; lc < 4; ++lc) {
        next[static_cast<Pauli>(lc) * table.decision[s]] += masses[lc];
      }
    }
    const double total = next[Pauli::I] + next[Pauli::X] + next[Pauli::Y] + next[Pauli::Z];
    for (unsigned lc = 0; lc < 4; ++lc) next[static_cast<Pauli>(lc)] /= total;
    q = next;
    pe = 1.0 - q[Pauli::I];
    if (pe < 1e-12) return true;
    if (pe > 0.5) return false;
    if (m == max_m / 2) mid_pe = pe;
  }
  return pe < mid_pe;
}

}  // namespace

ThresholdBracket blockwise_threshold(const StabilizerCode& code, double lo, double hi, double tol) {
  if (!(lo > 0.0 && hi < 0.75 && lo < hi)) {
    throw std::invalid_argument("bracket must satisfy 0 < lo < hi < 3/4");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const BlockLikelihood kernel(code);
  const HardTable lo_table = hard_table(code, lo);
  const HardTable hi_table = hard_table(code, hi);
  if (!collapses(kernel, code, lo_table, lo) || collapses(kernel, code, hi_table, hi)) {
    throw std::invalid_argument("bracket does not straddle the threshold");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const HardTable table = hard_table(code, mid);
    if (collapses(kernel, code, table, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace qec
