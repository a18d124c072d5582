#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qec/code.hpp"

namespace qec {

// A code concatenated with itself `levels` times. Layer 1 is the top block;
// layer m holds n^(m-1) blocks; the physical qubits live at layer `levels`.
struct ConcatenatedCode {
  StabilizerCode base;
  int levels = 1;

  std::size_t physical_qubits() const;
  std::size_t blocks_at_layer(int layer) const;
};

// Children of block j (1-based) at layer m are the blocks
// (j-1)*n+1 .. j*n of layer m+1.
std::pair<std::size_t, std::size_t> block_children(const ConcatenatedCode& cc, int layer,
                                                   std::size_t block);

// syndromes.by_layer[m-1][j-1] is the syndrome of block j at layer m,
// measured on the layer's effective error string.
struct SyndromeSet {
  std::vector<std::vector<Syndrome>> by_layer;

  int levels() const { return static_cast<int>(by_layer.size()); }
  friend bool operator==(const SyndromeSet&, const SyndromeSet&) = default;
};

// classes.by_layer[m-1] is the string of logical classes the layer-m blocks
// induce, viewed as a Pauli string on n^(m-1) qubits; by_layer[0] has one
// factor, the class of the whole error.
struct LayerClasses {
  std::vector<PauliOperator> by_layer;

  LogicalClass top() const { return by_layer.front().factor_at(0); }
};

struct Extraction {
  SyndromeSet syndromes;
  LayerClasses classes;
};

// Walks the tree bottom-up: each pass reduces the current error string to
// per-block syndromes plus the class string that feeds the layer above.
// Precomputes per-factor syndrome and class contributions so one pass is
// linear in the string length.
class Extractor {
 public:
  explicit Extractor(ConcatenatedCode cc);

  const ConcatenatedCode& concatenation() const { return cc_; }

  void extract(const PauliOperator& physical, Extraction& out) const;
  Extraction extract(const PauliOperator& physical) const;

  // Per-factor contribution tables, indexed i*4 + factor code for qubit i of
  // a block: XOR-folding them over a block yields its syndrome and class.
  std::span<const std::uint32_t> syndrome_contrib() const { return synd_contrib_; }
  std::span<const std::uint8_t> class_contrib() const { return class_contrib_; }

 private:
  ConcatenatedCode cc_;
  std::vector<std::uint32_t> synd_contrib_;  // [i*4 + factor] -> syndrome bits
  std::vector<std::uint8_t> class_contrib_;  // [i*4 + factor] -> class code
};

Extraction extract(const ConcatenatedCode& cc, const PauliOperator& physical);

// One line per layer, top first; blocks separated by spaces, each syndrome a
// bit string with the bit of generator 1 first.
std::string serialize_syndromes(const SyndromeSet& s, std::size_t num_checks);
SyndromeSet parse_syndromes(std::istream& in, const ConcatenatedCode& cc);

}  // namespace qec
