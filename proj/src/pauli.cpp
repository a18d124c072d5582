#include "qec/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qec {

namespace {
std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
}  // namespace

PauliOperator::PauliOperator(std::size_t num_qubits)
    : n_(num_qubits), x_(words_for(num_qubits), 0), z_(words_for(num_qubits), 0) {
  if (num_qubits == 0) throw std::invalid_argument("PauliOperator needs at least one qubit");
}

PauliOperator PauliOperator::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  PauliOperator out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': out.set_factor(i, Pauli::X); break;
      case 'Y': out.set_factor(i, Pauli::Y); break;
      case 'Z': out.set_factor(i, Pauli::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli character '" + std::string(1, text[i]) +
                                    "' at position " + std::to_string(i + 1));
    }
  }
  return out;
}

Pauli PauliOperator::factor_at(std::size_t qubit) const {
  if (qubit >= n_) throw std::out_of_range("qubit index out of range");
  return pauli_from_components(x_bit(qubit), z_bit(qubit));
}

void PauliOperator::set_factor(std::size_t qubit, Pauli p) {
  if (qubit >= n_) throw std::out_of_range("qubit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (qubit & 63);
  if (has_x_component(p)) x_[qubit >> 6] |= mask; else x_[qubit >> 6] &= ~mask;
  if (has_z_component(p)) z_[qubit >> 6] |= mask; else z_[qubit >> 6] &= ~mask;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("Pauli length mismatch in product");
  for (std::size_t w = 0; w < x_.size(); ++w) {
    x_[w] ^= rhs.x_[w];
    z_[w] ^= rhs.z_[w];
  }
  return *this;
}

PauliOperator operator*(PauliOperator lhs, const PauliOperator& rhs) {
  lhs *= rhs;
  return lhs;
}

bool PauliOperator::commutes_with(const PauliOperator& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("Pauli length mismatch in commutator");
  // Symplectic form: parity of |x & z'| + |z & x'|. XOR-folding the masked
  // words preserves the total parity.
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    acc ^= (x_[w] & rhs.z_[w]) ^ (z_[w] & rhs.x_[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

std::size_t PauliOperator::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) total += std::popcount(x_[w] | z_[w]);
  return total;
}

bool PauliOperator::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

void PauliOperator::clear() {
  std::fill(x_.begin(), x_.end(), 0);
  std::fill(z_.begin(), z_.end(), 0);
}

std::string PauliOperator::str() const {
  std::string out(n_, 'I');
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = pauli_char(pauli_from_components(x_bit(i), z_bit(i)));
  }
  return out;
}

}  // namespace qec
