#include "qec/code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

namespace qec {

std::string syndrome_to_string(Syndrome s, std::size_t num_checks) {
  std::string out(num_checks, '0');
  for (std::size_t k = 0; k < num_checks; ++k) {
    if ((s >> k) & 1u) out[k] = '1';
  }
  return out;
}

Syndrome syndrome_from_string(std::string_view text) {
  if (text.empty() || text.size() > 32) {
    throw std::invalid_argument("syndrome string must have 1 to 32 bits");
  }
  Syndrome s = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '1') {
      s |= Syndrome{1} << k;
    } else if (text[k] != '0') {
      throw std::invalid_argument("invalid syndrome character '" + std::string(1, text[k]) +
                                  "' at position " + std::to_string(k + 1));
    }
  }
  return s;
}

LogicalDistribution LogicalDistribution::depolarizing(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("depolarizing rate must lie in [0, 1]");
  }
  return LogicalDistribution{{1.0 - rate, rate / 3.0, rate / 3.0, rate / 3.0}};
}

bool LogicalDistribution::try_normalize() {
  const double m = std::max({p[0], p[1], p[2], p[3]});
  if (!(m > 0.0)) return false;
  const double inv_m = 1.0 / m;
  for (double& v : p) v *= inv_m;
  const double inv_s = 1.0 / total();
  for (double& v : p) v *= inv_s;
  return true;
}

ClassArgmax argmax(const LogicalDistribution& dist) {
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (dist[static_cast<std::size_t>(i)] > dist[static_cast<std::size_t>(best)]) best = i;
  }
  const double top = dist[static_cast<std::size_t>(best)];
  const double thresh = top - std::abs(top) * 1e-9;
  int pick = -1;
  int hits = 0;
  for (int i = 0; i < 4; ++i) {
    if (dist[static_cast<std::size_t>(i)] >= thresh) {
      if (pick < 0) pick = i;
      ++hits;
    }
  }
  return {static_cast<Pauli>(pick), top, hits > 1};
}

Syndrome StabilizerCode::syndrome_of(const PauliOperator& e) const {
  Syndrome s = 0;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (!e.commutes_with(generators[j])) s |= Syndrome{1} << j;
  }
  return s;
}

PauliOperator StabilizerCode::pure_error_for(Syndrome s) const {
  if (pure_errors.size() != generators.size()) {
    throw std::runtime_error("code '" + name + "' has no pure errors");
  }
  if (s >= num_syndromes()) throw std::out_of_range("syndrome out of range");
  PauliOperator t(n());
  for (std::size_t j = 0; j < pure_errors.size(); ++j) {
    if ((s >> j) & 1u) t *= pure_errors[j];
  }
  return t;
}

LogicalClass StabilizerCode::logical_class(const PauliOperator& e) const {
  PauliOperator rest = e * pure_error_for(syndrome_of(e));
  const bool xc = !rest.commutes_with(logical_z);
  const bool zc = !rest.commutes_with(logical_x);
  return pauli_from_components(xc, zc);
}

PauliOperator StabilizerCode::class_representative(LogicalClass c) const {
  switch (c) {
    case Pauli::I: return PauliOperator(n());
    case Pauli::X: return logical_x;
    case Pauli::Y: return logical_x * logical_z;
    case Pauli::Z: return logical_z;
  }
  throw std::invalid_argument("bad logical class");
}

namespace {

StabilizerCode make_builtin(const char* name, std::initializer_list<const char*> gens,
                            const char* lx, const char* lz) {
  StabilizerCode c;
  c.name = name;
  for (const char* g : gens) c.generators.push_back(PauliOperator::parse(g));
  c.logical_x = PauliOperator::parse(lx);
  c.logical_z = PauliOperator::parse(lz);
  c.pure_errors = compute_pure_errors(c.generators, c.logical_x, c.logical_z);
  return c;
}

}  // namespace

StabilizerCode StabilizerCode::five_qubit() {
  return make_builtin("five-qubit", {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}, "XXXXX", "ZZZZZ");
}

StabilizerCode StabilizerCode::steane() {
  return make_builtin("steane",
                      {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"},
                      "XXXXXXX", "ZZZZZZZ");
}

StabilizerCode StabilizerCode::repetition3() {
  return make_builtin("repetition3", {"ZZI", "IZZ"}, "XXX", "ZZZ");
}

namespace {

// Dense GF(2) row-reduction over `cols` unknowns, with an optional RHS.
struct Gf2System {
  std::size_t cols = 0;
  std::size_t words = 0;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::uint8_t> rhs;

  explicit Gf2System(std::size_t c) : cols(c), words((c + 63) / 64) {}

  void add(std::vector<std::uint64_t> row, bool b) {
    rows.push_back(std::move(row));
    rhs.push_back(b ? 1 : 0);
  }

  static bool bit(const std::vector<std::uint64_t>& r, std::size_t c) {
    return (r[c >> 6] >> (c & 63)) & 1u;
  }

  // Gauss-Jordan elimination in place; returns the pivot columns.
  std::vector<std::size_t> eliminate() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t pr = r;
      while (pr < rows.size() && !bit(rows[pr], c)) ++pr;
      if (pr == rows.size()) continue;
      std::swap(rows[pr], rows[r]);
      std::swap(rhs[pr], rhs[r]);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k == r || !bit(rows[k], c)) continue;
        for (std::size_t w = 0; w < words; ++w) rows[k][w] ^= rows[r][w];
        rhs[k] ^= rhs[r];
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  // Solution with free unknowns set to zero, or nullopt when inconsistent.
  std::optional<std::vector<std::uint8_t>> solve() {
    const auto pivots = eliminate();
    for (std::size_t k = pivots.size(); k < rows.size(); ++k) {
      if (rhs[k]) return std::nullopt;
    }
    std::vector<std::uint8_t> x(cols, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rhs[i];
    return x;
  }
};

// Coefficients of the constraint <t, v> = b on the unknown t, where <.,.> is
// the symplectic product: the x unknowns pick up v's z bits and vice versa.
std::vector<std::uint64_t> symplectic_row(const PauliOperator& v, std::size_t n) {
  std::vector<std::uint64_t> row((2 * n + 63) / 64, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (v.z_bit(i)) row[i >> 6] |= std::uint64_t{1} << (i & 63);
    const std::size_t c = n + i;
    if (v.x_bit(i)) row[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
  return row;
}

std::vector<std::uint64_t> plain_row(const PauliOperator& v, std::size_t n) {
  std::vector<std::uint64_t> row((2 * n + 63) / 64, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (v.x_bit(i)) row[i >> 6] |= std::uint64_t{1} << (i & 63);
    const std::size_t c = n + i;
    if (v.z_bit(i)) row[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
  return row;
}

std::size_t symplectic_rank(const std::vector<PauliOperator>& ops, std::size_t n) {
  Gf2System sys(2 * n);
  for (const auto& op : ops) sys.add(plain_row(op, n), false);
  return sys.eliminate().size();
}

}  // namespace

std::vector<PauliOperator> compute_pure_errors(const std::vector<PauliOperator>& generators,
                                               const PauliOperator& logical_x,
                                               const PauliOperator& logical_z) {
  const std::size_t n = logical_x.num_qubits();
  if (n == 0) throw std::invalid_argument("logical_x is empty");
  if (logical_z.num_qubits() != n) throw std::invalid_argument("logical operator lengths differ");
  for (const auto& g : generators) {
    if (g.num_qubits() != n) throw std::invalid_argument("generator length differs from logicals");
  }
  if (generators.size() + 1 != n) {
    throw std::invalid_argument("an [[n,1]] code needs exactly n-1 generators");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (!generators[i].commutes_with(generators[j])) {
        throw std::invalid_argument("generators do not commute");
      }
    }
    if (!logical_x.commutes_with(generators[i]) || !logical_z.commutes_with(generators[i])) {
      throw std::invalid_argument("logical operators must commute with every generator");
    }
  }
  if (symplectic_rank(generators, n) != generators.size()) {
    throw std::invalid_argument("generators are not independent");
  }
  if (logical_x.commutes_with(logical_z)) {
    throw std::invalid_argument("logical_x and logical_z must anticommute");
  }

  std::vector<PauliOperator> ts;
  ts.reserve(generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    Gf2System sys(2 * n);
    for (std::size_t k = 0; k < generators.size(); ++k) {
      sys.add(symplectic_row(generators[k], n), k == j);
    }
    sys.add(symplectic_row(logical_x, n), false);
    sys.add(symplectic_row(logical_z, n), false);
    for (const auto& t : ts) sys.add(symplectic_row(t, n), false);
    auto sol = sys.solve();
    if (!sol) {
      // A valid [[n,1]] code always admits a solution; reaching this means
      // the checks above let something inconsistent through.
      throw std::runtime_error("pure error system is inconsistent");
    }
    PauliOperator t(n);
    for (std::size_t i = 0; i < n; ++i) {
      t.set_factor(i, pauli_from_components((*sol)[i], (*sol)[n + i]));
    }
    ts.push_back(std::move(t));
  }
  return ts;
}

std::vector<std::string> validate(const StabilizerCode& code) {
  std::vector<std::string> out;
  const std::size_t n = code.logical_x.num_qubits();
  if (n == 0) {
    out.push_back("logical_x is missing");
    return out;
  }
  if (code.logical_z.num_qubits() != n) {
    out.push_back("logical_z length differs from logical_x");
    return out;
  }
  bool lengths_ok = true;
  for (std::size_t j = 0; j < code.generators.size(); ++j) {
    if (code.generators[j].num_qubits() != n) {
      out.push_back("generator " + std::to_string(j + 1) + " has wrong length");
      lengths_ok = false;
    }
  }
  for (std::size_t j = 0; j < code.pure_errors.size(); ++j) {
    if (code.pure_errors[j].num_qubits() != n) {
      out.push_back("pure error " + std::to_string(j + 1) + " has wrong length");
      lengths_ok = false;
    }
  }
  if (!lengths_ok) return out;

  if (code.generators.size() + 1 != n) {
    out.push_back("an [[n,1]] code needs " + std::to_string(n - 1) + " generators, found " +
                  std::to_string(code.generators.size()));
  }
  for (std::size_t i = 0; i < code.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < code.generators.size(); ++j) {
      if (!code.generators[i].commutes_with(code.generators[j])) {
        out.push_back("generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                      " anticommute");
      }
    }
  }
  if (symplectic_rank(code.generators, n) != code.generators.size()) {
    out.push_back("generators are not independent");
  }
  for (std::size_t j = 0; j < code.generators.size(); ++j) {
    if (!code.logical_x.commutes_with(code.generators[j])) {
      out.push_back("logical_x anticommutes with generator " + std::to_string(j + 1));
    }
    if (!code.logical_z.commutes_with(code.generators[j])) {
      out.push_back("logical_z anticommutes with generator " + std::to_string(j + 1));
    }
  }
  if (code.logical_x.commutes_with(code.logical_z)) {
    out.push_back("logical_x and logical_z commute");
  }

  if (code.pure_errors.empty()) {
    out.push_back("pure errors are missing");
  } else if (code.pure_errors.size() != code.generators.size()) {
    out.push_back("expected one pure error per generator, found " +
                  std::to_string(code.pure_errors.size()));
  } else {
    for (std::size_t j = 0; j < code.pure_errors.size(); ++j) {
      const auto& t = code.pure_errors[j];
      for (std::size_t k = 0; k < code.generators.size(); ++k) {
        const bool anti = !t.commutes_with(code.generators[k]);
        if (anti != (k == j)) {
          out.push_back("pure error " + std::to_string(j + 1) + " has wrong syndrome");
          break;
        }
      }
      if (!t.commutes_with(code.logical_x)) {
        out.push_back("pure error " + std::to_string(j + 1) + " anticommutes with logical_x");
      }
      if (!t.commutes_with(code.logical_z)) {
        out.push_back("pure error " + std::to_string(j + 1) + " anticommutes with logical_z");
      }
      for (std::size_t k = j + 1; k < code.pure_errors.size(); ++k) {
        if (!t.commutes_with(code.pure_errors[k])) {
          out.push_back("pure errors " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                        " anticommute");
        }
      }
    }
  }
  return out;
}

std::vector<PauliOperator> stabilizer_group(const StabilizerCode& code) {
  std::vector<PauliOperator> out;
  out.reserve(code.num_syndromes());
  out.emplace_back(code.n());
  for (std::size_t g = 1; g < code.num_syndromes(); ++g) {
    const unsigned low = std::countr_zero(g);
    out.push_back(out[g & (g - 1)] * code.generators[low]);
  }
  return out;
}

BlockLikelihood::BlockLikelihood(const StabilizerCode& code) : n_(code.n()) {
  if (auto problems = validate(code); !problems.empty()) {
    throw std::invalid_argument("invalid code '" + code.name + "': " + problems.front());
  }
  if (code.num_checks() > 10) {
    throw std::invalid_argument("coset table would be too large; at most 10 checks supported");
  }
  const auto group = stabilizer_group(code);
  group_size_ = group.size();
  stride_ = 4 * group_size_ * n_;
  idx_.resize(code.num_syndromes() * stride_);

  std::size_t k = 0;
  for (Syndrome s = 0; s < code.num_syndromes(); ++s) {
    const PauliOperator t = code.pure_error_for(s);
    for (unsigned lc = 0; lc < 4; ++lc) {
      const PauliOperator base = code.class_representative(static_cast<Pauli>(lc)) * t;
      for (const auto& g : group) {
        const PauliOperator op = base * g;
        for (std::size_t i = 0; i < n_; ++i) {
          idx_[k++] = static_cast<std::uint8_t>(
              i * 4 + static_cast<unsigned>(op.factor_at(i)));
        }
      }
    }
  }
}

namespace {

template <std::size_t N>
double coset_sum(const double* q, const std::uint8_t*& t, std::size_t group_size) {
  double acc = 0.0;
  for (std::size_t g = 0; g < group_size; ++g) {
    double prod = q[t[0]];
    for (std::size_t i = 1; i < N; ++i) prod *= q[t[i]];
    t += N;
    acc += prod;
  }
  return acc;
}

double coset_sum_any(const double* q, const std::uint8_t*& t, std::size_t group_size,
                     std::size_t n) {
  double acc = 0.0;
  for (std::size_t g = 0; g < group_size; ++g) {
    double prod = q[t[0]];
    for (std::size_t i = 1; i < n; ++i) prod *= q[t[i]];
    t += n;
    acc += prod;
  }
  return acc;
}

}  // namespace

std::array<double, 4> BlockLikelihood::masses_flat(const double* priors, Syndrome s) const {
  if (std::size_t(s) * stride_ >= idx_.size()) throw std::out_of_range("syndrome out of range");
  const std::uint8_t* t = idx_.data() + std::size_t(s) * stride_;
  std::array<double, 4> out;
  for (int lc = 0; lc < 4; ++lc) {
    double m;
    switch (n_) {
      case 3: m = coset_sum<3>(priors, t, group_size_); break;
      case 5: m = coset_sum<5>(priors, t, group_size_); break;
      case 7: m = coset_sum<7>(priors, t, group_size_); break;
      default: m = coset_sum_any(priors, t, group_size_, n_); break;
    }
    out[static_cast<std::size_t>(lc)] = m;
  }
  return out;
}

static_assert(sizeof(LogicalDistribution) == 4 * sizeof(double));

std::array<double, 4> BlockLikelihood::masses(std::span<const LogicalDistribution> priors,
                                              Syndrome s) const {
  if (priors.size() != n_) {
    throw std::invalid_argument("expected one prior per qubit of the block");
  }
  return masses_flat(reinterpret_cast<const double*>(priors.data()), s);
}

BlockPosterior BlockLikelihood::posterior(std::span<const LogicalDistribution> priors,
                                          Syndrome s) const {
  const auto m = masses(priors, s);
  BlockPosterior out;
  out.dist.p = m;
  out.total = m[0] + m[1] + m[2] + m[3];
  if (!out.dist.try_normalize()) {
    throw ImpossibleSyndromeError("syndrome " + std::to_string(s) +
                                  " has zero probability under the prior");
  }
  return out;
}

BlockPosterior block_likelihood(const StabilizerCode& code,
                                std::span<const LogicalDistribution> priors, Syndrome s) {
  return BlockLikelihood(code).posterior(priors, s);
}

HardTable hard_table(const StabilizerCode& code, double p) {
  if (!(p > 0.0 && p < 0.75)) {
    throw std::invalid_argument("hard table requires 0 < p < 3/4");
  }
  const BlockLikelihood kernel(code);
  const std::vector<LogicalDistribution> priors(code.n(), LogicalDistribution::depolarizing(p));
  HardTable table;
  table.built_at = p;
  table.decision.resize(code.num_syndromes());
  table.tie.resize(code.num_syndromes());
  for (Syndrome s = 0; s < code.num_syndromes(); ++s) {
    const auto best = argmax(kernel.posterior(priors, s).dist);
    table.decision[s] = best.cls;
    table.tie[s] = best.tie;
  }
  return table;
}

namespace {

void strip(std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    s.clear();
    return;
  }
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
}

}  // namespace

StabilizerCode parse_code(std::istream& in, std::string name) {
  StabilizerCode code;
  code.name = std::move(name);
  std::string line;
  std::size_t lineno = 0;
  long n = -1;
  bool have_lx = false, have_lz = false;

  auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };
  auto parse_pauli = [&](const std::string& text) {
    PauliOperator op;
    try {
      op = PauliOperator::parse(text);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (op.num_qubits() != static_cast<std::size_t>(n)) {
      fail("expected " + std::to_string(n) + " factors, got " + std::to_string(op.num_qubits()));
    }
    return op;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    strip(line);
    if (line.empty()) continue;

    if (n < 0) {
      if (line.rfind("n=", 0) != 0) fail("expected n=<block length> before any directive");
      std::size_t used = 0;
      try {
        n = std::stol(line.substr(2), &used);
      } catch (const std::invalid_argument&) {
        fail("cannot parse block length");
      } catch (const std::out_of_range&) {
        fail("block length out of range");
      }
      if (used != line.size() - 2) fail("trailing characters after block length");
      if (n < 2 || n > 32) fail("block length must lie in [2, 32]");
      continue;
    }

    std::istringstream fields(line);
    std::string directive, text, extra;
    fields >> directive >> text;
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    if (text.empty()) fail("directive '" + directive + "' needs a Pauli string");

    if (directive == "S") {
      code.generators.push_back(parse_pauli(text));
    } else if (directive == "LX") {
      if (have_lx) fail("duplicate LX");
      code.logical_x = parse_pauli(text);
      have_lx = true;
    } else if (directive == "LZ") {
      if (have_lz) fail("duplicate LZ");
      code.logical_z = parse_pauli(text);
      have_lz = true;
    } else if (directive == "T") {
      code.pure_errors.push_back(parse_pauli(text));
    } else {
      fail("unknown directive '" + directive + "'");
    }
  }

  if (n < 0) throw std::invalid_argument("missing n= line");
  if (!have_lx) throw std::invalid_argument("missing LX line");
  if (!have_lz) throw std::invalid_argument("missing LZ line");

  if (code.pure_errors.empty()) {
    try {
      code.pure_errors = compute_pure_errors(code.generators, code.logical_x, code.logical_z);
    } catch (const std::invalid_argument&) {
      // Leave them empty; validate() will report what is wrong with the rest.
    }
  }
  return code;
}

StabilizerCode load_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file: " + path);
  return parse_code(in, std::filesystem::path(path).stem().string());
}

}  // namespace qec
