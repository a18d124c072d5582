#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qec/pauli.hpp"

namespace qec {

// Logical action of an operator on the encoded qubit. Same group as the
// single-qubit Paulis, so the product stays XOR.
using LogicalClass = Pauli;

// Syndrome of an [[n,1]] block: bit j is 1 when the error anticommutes with
// generator j (counting generators from 0).
using Syndrome = std::uint32_t;

std::string syndrome_to_string(Syndrome s, std::size_t num_checks);
Syndrome syndrome_from_string(std::string_view text);

// Thrown when a conditioning event has zero probability under the prior,
// e.g. asking for the posterior of a syndrome that cannot occur.
struct ImpossibleSyndromeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Probability distribution over the four logical classes, indexed I,X,Y,Z.
struct LogicalDistribution {
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

  double operator[](Pauli c) const { return p[static_cast<unsigned>(c)]; }
  double& operator[](Pauli c) { return p[static_cast<unsigned>(c)]; }
  double operator[](std::size_t i) const { return p[i]; }
  double& operator[](std::size_t i) { return p[i]; }

  // Depolarizing channel of strength rate: I with 1-rate, X/Y/Z with rate/3.
  static LogicalDistribution depolarizing(double rate);

  double total() const { return p[0] + p[1] + p[2] + p[3]; }

  // Rescales by the max entry before dividing by the sum, so vectors that
  // have underflowed far below 1 still normalize. False when all mass is 0.
  bool try_normalize();

  friend bool operator==(const LogicalDistribution&, const LogicalDistribution&) = default;
};

struct ClassArgmax {
  Pauli cls = Pauli::I;
  double value = 0.0;
  bool tie = false;
};

// Largest entry, scanning I,X,Y,Z so exact ties resolve to the earlier
// class. Entries within 1e-9 relative of the max count as tied; genuinely
// distinct coset masses sit orders of magnitude further apart, while
// mathematically equal ones can differ by an ulp depending on summation
// order.
ClassArgmax argmax(const LogicalDistribution& dist);

// An [[n,1]] stabilizer code: n-1 commuting checks and one encoded qubit.
// pure_errors[j] is the canonical coset representative that trips check j
// alone while commuting with both logicals and the other pure errors.
struct StabilizerCode {
  std::string name;
  std::vector<PauliOperator> generators;
  PauliOperator logical_x;
  PauliOperator logical_z;
  std::vector<PauliOperator> pure_errors;

  std::size_t n() const { return logical_x.num_qubits(); }
  std::size_t num_checks() const { return generators.size(); }
  std::size_t num_syndromes() const { return std::size_t{1} << generators.size(); }

  Syndrome syndrome_of(const PauliOperator& e) const;
  PauliOperator pure_error_for(Syndrome s) const;

  // Class of the coset e belongs to: strip the pure error, then read the
  // X component off anticommutation with logical_z and the Z component off
  // logical_x.
  LogicalClass logical_class(const PauliOperator& e) const;

  PauliOperator class_representative(LogicalClass c) const;

  static StabilizerCode five_qubit();
  static StabilizerCode steane();
  static StabilizerCode repetition3();
};

// Every violated code constraint, one message each; empty means valid.
std::vector<std::string> validate(const StabilizerCode& code);

// Solves the GF(2) symplectic system for canonical pure errors. Requires the
// non-pure-error constraints to hold already and throws std::invalid_argument
// otherwise.
std::vector<PauliOperator> compute_pure_errors(const std::vector<PauliOperator>& generators,
                                               const PauliOperator& logical_x,
                                               const PauliOperator& logical_z);

// All 2^(n-1) products of generators, element g = product over set bits of g.
std::vector<PauliOperator> stabilizer_group(const StabilizerCode& code);

struct BlockPosterior {
  LogicalDistribution dist;  // P(L | s), normalized
  double total = 0.0;        // pre-normalization mass, i.e. P(s) under the prior
};

// Coset-sum kernel for one code, precomputed per syndrome. masses() returns
//   mass[L] = sum over stabilizer G of prod_i priors[i][(L rep * T(s) * G)_i]
// which is the joint probability P(class = L, syndrome = s) when the priors
// are per-qubit marginals of an independent channel.
class BlockLikelihood {
 public:
  explicit BlockLikelihood(const StabilizerCode& code);

  std::size_t n() const { return n_; }

  std::array<double, 4> masses(std::span<const LogicalDistribution> priors, Syndrome s) const;
  std::array<double, 4> masses_flat(const double* priors, Syndrome s) const;

  BlockPosterior posterior(std::span<const LogicalDistribution> priors, Syndrome s) const;

 private:
  std::size_t n_ = 0;
  std::size_t group_size_ = 0;
  std::size_t stride_ = 0;              // bytes per syndrome = 4 * group * n
  std::vector<std::uint8_t> idx_;       // [s][L][G][i] -> i*4 + factor code
};

BlockPosterior block_likelihood(const StabilizerCode& code,
                                std::span<const LogicalDistribution> priors, Syndrome s);

// Hard decision table: the most likely class for each syndrome under a
// depolarizing channel. Requires 0 < p < 3/4; within that range the argmax
// is the same for every p for the built-in codes.
struct HardTable {
  std::vector<LogicalClass> decision;
  std::vector<bool> tie;
  double built_at = 0.0;

  LogicalClass operator[](Syndrome s) const { return decision[s]; }
};

HardTable hard_table(const StabilizerCode& code, double p);

// Text format: "n=<int>" first, then one directive per line. "S" lines give
// generators, "LX"/"LZ" the logicals, optional "T" lines the pure errors
// (computed when absent). '#' starts a comment.
StabilizerCode parse_code(std::istream& in, std::string name);
StabilizerCode load_code_file(const std::string& path);

}  // namespace qec
