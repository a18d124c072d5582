#include "qec/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qec/blockwise.hpp"
#include "qec/bp.hpp"

namespace qec {

void sample_error_into(RngStream& rng, double p, PauliOperator& out) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  out.clear();
  const std::size_t n = out.num_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    const double u = rng.uniform();
    if (u >= p) continue;
    // u is uniform on [0, p) here, so its position inside the interval picks
    // the non-identity factor without a second draw.
    const double r = u * 3.0 / p;
    out.set_factor(q, r < 1.0 ? Pauli::X : (r < 2.0 ? Pauli::Y : Pauli::Z));
  }
}

PauliOperator sample_error(RngStream& rng, std::size_t num_qubits, double p) {
  PauliOperator out(num_qubits);
  sample_error_into(rng, p, out);
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (failures > trials) throw std::invalid_argument("failures exceed trials");
  if (!(z >= 0.0)) throw std::invalid_argument("z must be nonnegative");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(failures) / n;
  const double zz = z * z;
  const double denom = 1.0 + zz / n;
  const double center = (phat + zz / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / n + zz / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct ChunkAccum {
  std::uint64_t bp_failures = 0;
  std::uint64_t bw_failures = 0;
  double conf_success_sum = 0.0;
  double conf_failure_sum = 0.0;
};

struct CellTotals {
  std::uint64_t bp_failures = 0;
  std::uint64_t bw_failures = 0;
  double conf_success_sum = 0.0;
  double conf_failure_sum = 0.0;
};

// One (p, level) cell. Trials are split into fixed chunks handed out by an
// atomic counter; every trial reseeds its own stream, so which worker runs
// which chunk cannot change any number. The final reduction walks the chunks
// in index order with compensated addition.
CellTotals run_cell(const StabilizerCode& code, const HardTable* table, double p, int level,
                    std::uint64_t trials, std::uint64_t seed, std::uint64_t cell, bool want_bp,
                    int threads) {
  const ConcatenatedCode cc{code, level};
  const Extractor extractor(cc);
  std::optional<BpDecoder> bp;
  if (want_bp) bp.emplace(cc, LogicalDistribution::depolarizing(p));
  std::optional<BlockwiseDecoder> bw;
  if (table) bw.emplace(cc, *table);

  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t num_chunks = (trials + kChunk - 1) / kChunk;
  std::vector<ChunkAccum> chunks(num_chunks);
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&]() {
    try {
      PauliOperator e(cc.physical_qubits());
      Extraction ex;
      MessageTree tree;
      std::vector<PauliOperator> residuals;
      for (;;) {
        const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= num_chunks) break;
        ChunkAccum acc;
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(trials, begin + kChunk);
        for (std::uint64_t t = begin; t < end; ++t) {
          RngStream rng(trial_stream_seed(seed, cell, t));
          sample_error_into(rng, p, e);
          extractor.extract(e, ex);
          const LogicalClass truth = ex.classes.top();
          if (bp) {
            const BpResult r = bp->decode(ex.syndromes, tree);
            if (r.estimate != truth) {
              ++acc.bp_failures;
              acc.conf_failure_sum += r.confidence;
            } else {
              acc.conf_success_sum += r.confidence;
            }
          }
          if (bw) {
            if (bw->residual(e, residuals) != Pauli::I) ++acc.bw_failures;
          }
        }
        chunks[c] = acc;
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(num_chunks, std::memory_order_relaxed);
    }
  };

  const int workers =
      std::max<int>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), num_chunks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  CellTotals totals;
  double cs = 0.0, cs_c = 0.0, cf = 0.0, cf_c = 0.0;
  for (const auto& acc : chunks) {
    totals.bp_failures += acc.bp_failures;
    totals.bw_failures += acc.bw_failures;
    double y = acc.conf_success_sum - cs_c;
    double t = cs + y;
    cs_c = (t - cs) - y;
    cs = t;
    y = acc.conf_failure_sum - cf_c;
    t = cf + y;
    cf_c = (t - cf) - y;
    cf = t;
  }
  totals.conf_success_sum = cs;
  totals.conf_failure_sum = cf;
  return totals;
}

}  // namespace

std::vector<TrialStats> run_experiment(const ExperimentConfig& config) {
  if (auto problems = validate(config.code); !problems.empty()) {
    throw std::invalid_argument("invalid code '" + config.code.name + "': " + problems.front());
  }
  if (config.trials == 0) throw std::invalid_argument("need at least one trial");
  if (config.p_values.empty()) throw std::invalid_argument("need at least one p value");
  if (config.levels.empty()) throw std::invalid_argument("need at least one level");
  for (const double p : config.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  }
  for (const int level : config.levels) {
    if (level < 1) throw std::invalid_argument("levels must be positive");
  }

  const bool want_bp = config.decoders != DecoderSelection::Blockwise;
  const bool want_bw = config.decoders != DecoderSelection::MessagePassing;
  int threads = config.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  std::vector<TrialStats> rows;
  rows.reserve(config.p_values.size() * config.levels.size() * 2);
  for (std::size_t pi = 0; pi < config.p_values.size(); ++pi) {
    const double p = config.p_values[pi];
    std::optional<HardTable> table;
    if (want_bw) {
      // The decision table is the same for any rate in (0, 3/4), so clamping
      // the build point keeps edge rates like p = 0 usable.
      table = hard_table(config.code, std::clamp(p, 1e-9, 0.75 - 1e-9));
    }
    for (std::size_t li = 0; li < config.levels.size(); ++li) {
      const int level = config.levels[li];
      const std::uint64_t cell = pi * config.levels.size() + li;
      const CellTotals totals =
          run_cell(config.code, table ? &*table : nullptr, p, level, config.trials, config.seed,
                   cell, want_bp, threads);

      if (want_bw) {
        TrialStats row;
        row.code = config.code.name;
        row.p = p;
        row.level = level;
        row.decoder = "blockwise";
        row.trials = config.trials;
        row.failures = totals.bw_failures;
        row.p_e = static_cast<double>(totals.bw_failures) / static_cast<double>(config.trials);
        std::tie(row.ci_low, row.ci_high) = wilson_interval(totals.bw_failures, config.trials);
        row.seed = config.seed;
        rows.push_back(std::move(row));
      }
      if (want_bp) {
        TrialStats row;
        row.code = config.code.name;
        row.p = p;
        row.level = level;
        row.decoder = "bp";
        row.trials = config.trials;
        row.failures = totals.bp_failures;
        row.p_e = static_cast<double>(totals.bp_failures) / static_cast<double>(config.trials);
        std::tie(row.ci_low, row.ci_high) = wilson_interval(totals.bp_failures, config.trials);
        const std::uint64_t successes = config.trials - totals.bp_failures;
        if (successes) {
          row.mean_conf_success = totals.conf_success_sum / static_cast<double>(successes);
        }
        if (totals.bp_failures) {
          row.mean_conf_failure = totals.conf_failure_sum / static_cast<double>(totals.bp_failures);
        }
        row.seed = config.seed;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace qec
