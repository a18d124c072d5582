#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qec {

// Single-qubit Pauli, phases ignored. The numbering makes the phaseless
// product a plain XOR, which is also why logical classes reuse this enum.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

constexpr Pauli operator*(Pauli a, Pauli b) {
  return static_cast<Pauli>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

constexpr bool has_x_component(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
constexpr bool has_z_component(Pauli p) { return p == Pauli::Y || p == Pauli::Z; }

constexpr Pauli pauli_from_components(bool x, bool z) {
  constexpr Pauli lut[4] = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
  return lut[(x ? 1u : 0u) | (z ? 2u : 0u)];
}

constexpr char pauli_char(Pauli p) { return "IXYZ"[static_cast<unsigned>(p)]; }

// An n-qubit Pauli operator modulo phase, stored as packed X/Z bit vectors.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t num_qubits);

  // Accepts strings over {I,X,Y,Z}; anything else is rejected with the
  // offending 1-based position in the message.
  static PauliOperator parse(std::string_view text);

  std::size_t num_qubits() const { return n_; }

  Pauli factor_at(std::size_t qubit) const;
  void set_factor(std::size_t qubit, Pauli p);

  bool x_bit(std::size_t qubit) const {
    return (x_[qubit >> 6] >> (qubit & 63)) & 1u;
  }
  bool z_bit(std::size_t qubit) const {
    return (z_[qubit >> 6] >> (qubit & 63)) & 1u;
  }

  // Componentwise product (phaseless). Lengths must match.
  PauliOperator& operator*=(const PauliOperator& rhs);

  bool commutes_with(const PauliOperator& rhs) const;

  std::size_t weight() const;
  bool is_identity() const;
  void clear();

  std::string str() const;

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

PauliOperator operator*(PauliOperator lhs, const PauliOperator& rhs);

}  // namespace qec
