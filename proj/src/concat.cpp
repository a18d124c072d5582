#include "qec/concat.hpp"

#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qec {

std::size_t ConcatenatedCode::physical_qubits() const {
  if (levels < 1) throw std::invalid_argument("concatenation needs at least one level");
  const std::size_t n = base.n();
  std::size_t total = 1;
  for (int m = 0; m < levels; ++m) {
    if (total > std::numeric_limits<std::size_t>::max() / n) {
      throw std::overflow_error("physical qubit count overflows");
    }
    total *= n;
  }
  return total;
}

std::size_t ConcatenatedCode::blocks_at_layer(int layer) const {
  if (layer < 1 || layer > levels) throw std::out_of_range("layer out of range");
  std::size_t count = 1;
  for (int m = 1; m < layer; ++m) count *= base.n();
  return count;
}

std::pair<std::size_t, std::size_t> block_children(const ConcatenatedCode& cc, int layer,
                                                   std::size_t block) {
  if (layer < 1 || layer >= cc.levels) throw std::out_of_range("layer has no children");
  if (block < 1 || block > cc.blocks_at_layer(layer)) throw std::out_of_range("block out of range");
  const std::size_t n = cc.base.n();
  return {(block - 1) * n + 1, block * n};
}

Extractor::Extractor(ConcatenatedCode cc) : cc_(std::move(cc)) {
  if (auto problems = validate(cc_.base); !problems.empty()) {
    throw std::invalid_argument("invalid code '" + cc_.base.name + "': " + problems.front());
  }
  if (cc_.levels < 1) throw std::invalid_argument("concatenation needs at least one level");
  if (cc_.base.num_checks() > 31) {
    throw std::invalid_argument("syndromes wider than 31 bits are not supported");
  }
  cc_.physical_qubits();  // reject overflowing sizes up front

  const std::size_t n = cc_.base.n();
  synd_contrib_.assign(n * 4, 0);
  class_contrib_.assign(n * 4, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned f = 0; f < 4; ++f) {
      PauliOperator probe(n);
      probe.set_factor(i, static_cast<Pauli>(f));
      synd_contrib_[i * 4 + f] = cc_.base.syndrome_of(probe);
      // Class bits are symplectic products with the logicals, which split
      // into per-qubit parities; encoding them as a Pauli code keeps the
      // accumulator a single XOR.
      const bool xc = !probe.commutes_with(cc_.base.logical_z);
      const bool zc = !probe.commutes_with(cc_.base.logical_x);
      class_contrib_[i * 4 + f] =
          static_cast<std::uint8_t>(pauli_from_components(xc, zc));
    }
  }
}

namespace {

// Factor code of qubit q read straight off the packed words.
inline unsigned factor_code(std::span<const std::uint64_t> xw, std::span<const std::uint64_t> zw,
                            std::size_t q) {
  const unsigned x = (xw[q >> 6] >> (q & 63)) & 1u;
  const unsigned z = (zw[q >> 6] >> (q & 63)) & 1u;
  constexpr unsigned lut[4] = {0, 1, 3, 2};  // (x, z) bits to I,X,Y,Z code
  return lut[x | (z << 1)];
}

}  // namespace

void Extractor::extract(const PauliOperator& physical, Extraction& out) const {
  if (physical.num_qubits() != cc_.physical_qubits()) {
    throw std::invalid_argument("error string length does not match the concatenation");
  }
  const std::size_t n = cc_.base.n();
  const int levels = cc_.levels;

  if (out.syndromes.by_layer.size() != static_cast<std::size_t>(levels)) {
    out.syndromes.by_layer.assign(levels, {});
  }
  bool rebuild_classes = out.classes.by_layer.size() != static_cast<std::size_t>(levels);
  if (!rebuild_classes) {
    for (int m = 1; m <= levels && !rebuild_classes; ++m) {
      rebuild_classes = out.classes.by_layer[m - 1].num_qubits() != cc_.blocks_at_layer(m);
    }
  }
  if (rebuild_classes) {
    out.classes.by_layer.clear();
    for (int m = 1; m <= levels; ++m) {
      out.classes.by_layer.emplace_back(cc_.blocks_at_layer(m));
    }
  }

  const PauliOperator* current = &physical;
  for (int m = levels; m >= 1; --m) {
    const std::size_t blocks = cc_.blocks_at_layer(m);
    auto& synd = out.syndromes.by_layer[m - 1];
    synd.resize(blocks);
    PauliOperator& next = out.classes.by_layer[m - 1];

    const auto xw = current->x_words();
    const auto zw = current->z_words();
    std::size_t q = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      std::uint32_t s = 0;
      std::uint8_t c = 0;
      for (std::size_t i = 0; i < n; ++i, ++q) {
        const unsigned f = factor_code(xw, zw, q);
        s ^= synd_contrib_[i * 4 + f];
        c ^= class_contrib_[i * 4 + f];
      }
      synd[b] = s;
      next.set_factor(b, static_cast<Pauli>(c));
    }
    current = &next;
  }
}

Extraction Extractor::extract(const PauliOperator& physical) const {
  Extraction out;
  extract(physical, out);
  return out;
}

Extraction extract(const ConcatenatedCode& cc, const PauliOperator& physical) {
  return Extractor(cc).extract(physical);
}

std::string serialize_syndromes(const SyndromeSet& s, std::size_t num_checks) {
  std::string out;
  for (const auto& layer : s.by_layer) {
    for (std::size_t b = 0; b < layer.size(); ++b) {
      if (b) out += ' ';
      out += syndrome_to_string(layer[b], num_checks);
    }
    out += '\n';
  }
  return out;
}

SyndromeSet parse_syndromes(std::istream& in, const ConcatenatedCode& cc) {
  SyndromeSet out;
  const std::size_t u = cc.base.num_checks();
  std::string line;
  int layer = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++layer;
    if (layer > cc.levels) throw std::invalid_argument("more syndrome lines than layers");
    std::istringstream fields(line);
    std::vector<Syndrome> row;
    std::string tok;
    while (fields >> tok) {
      if (tok.size() != u) {
        throw std::invalid_argument("layer " + std::to_string(layer) + ": syndrome '" + tok +
                                    "' should have " + std::to_string(u) + " bits");
      }
      row.push_back(syndrome_from_string(tok));
    }
    if (row.size() != cc.blocks_at_layer(layer)) {
      throw std::invalid_argument("layer " + std::to_string(layer) + ": expected " +
                                  std::to_string(cc.blocks_at_layer(layer)) + " syndromes, got " +
                                  std::to_string(row.size()));
    }
    out.by_layer.push_back(std::move(row));
  }
  if (layer != cc.levels) {
    throw std::invalid_argument("expected " + std::to_string(cc.levels) + " syndrome lines, got " +
                                std::to_string(layer));
  }
  return out;
}

}  // namespace qec
