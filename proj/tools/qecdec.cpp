// Command line front end for the concatenated-code decoders.
//
// Exit codes: 0 success, 1 runtime/I-O failure, 2 usage or validation error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qec/blockwise.hpp"
#include "qec/bp.hpp"
#include "qec/enumerate.hpp"
#include "qec/mc.hpp"
#include "qec/report.hpp"

namespace {

qec::StabilizerCode resolve_code(const std::string& spec) {
  if (spec == "five-qubit") return qec::StabilizerCode::five_qubit();
  if (spec == "steane") return qec::StabilizerCode::steane();
  if (spec == "repetition3") return qec::StabilizerCode::repetition3();
  if (spec.rfind("file:", 0) == 0) return qec::load_code_file(spec.substr(5));
  throw std::invalid_argument("unknown code '" + spec +
                              "'; expected five-qubit, steane, repetition3, or file:<path>");
}

qec::StabilizerCode resolve_valid_code(const std::string& spec) {
  qec::StabilizerCode code = resolve_code(spec);
  if (const auto problems = qec::validate(code); !problems.empty()) {
    throw std::invalid_argument("code '" + code.name + "' is invalid: " + problems.front());
  }
  return code;
}

void check_probabilities(const std::vector<double>& ps) {
  for (const double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p must lie in [0, 1], got " + std::to_string(p));
    }
  }
}

// Runs fn against stdout or the named file.
template <typename Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return std::cout ? 0 : 1;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 1;
  }
  fn(file);
  file.flush();
  if (!file) {
    std::cerr << "error: failed writing to " << path << "\n";
    return 1;
  }
  return 0;
}

struct SimulateArgs {
  std::string code = "five-qubit";
  std::string levels = "1";
  std::string p;
  std::uint64_t trials = 20000;
  std::uint64_t seed = 1;
  std::string decoder = "both";
  std::string out;
  std::string format = "csv";
  int threads = 0;
};

int run_simulate(const SimulateArgs& args) {
  qec::ExperimentConfig config;
  config.code = resolve_valid_code(args.code);
  config.levels = qec::parse_level_range(args.levels);
  config.p_values = qec::parse_double_list(args.p);
  check_probabilities(config.p_values);
  config.trials = args.trials;
  config.seed = args.seed;
  config.threads = args.threads;
  if (args.decoder == "bp") {
    config.decoders = qec::DecoderSelection::MessagePassing;
  } else if (args.decoder == "blockwise") {
    config.decoders = qec::DecoderSelection::Blockwise;
  } else {
    config.decoders = qec::DecoderSelection::Both;
  }

  const auto rows = qec::run_experiment(config);
  return with_output(args.out, [&](std::ostream& os) {
    if (args.format == "json") {
      qec::write_stats_json(os, rows);
    } else {
      qec::write_stats_csv(os, rows);
    }
  });
}

struct ExactArgs {
  std::string code = "five-qubit";
  std::string levels = "1";
  std::string p;
  std::string out;
  std::string format = "csv";
};

int run_exact(const ExactArgs& args) {
  const qec::StabilizerCode code = resolve_valid_code(args.code);
  const auto levels = qec::parse_level_range(args.levels);
  const auto ps = qec::parse_double_list(args.p);
  check_probabilities(ps);

  std::vector<qec::ExactCurveRow> rows;
  for (const double p : ps) {
    const auto table = qec::hard_table(code, std::clamp(p, 1e-9, 0.75 - 1e-9));
    const auto curve = qec::exact_blockwise_recursion(code, p, levels.back(), table);
    for (const int m : levels) {
      rows.push_back({code.name, p, m, curve[m - 1].p_error});
    }
  }
  return with_output(args.out, [&](std::ostream& os) {
    if (args.format == "json") {
      qec::write_exact_json(os, rows);
    } else {
      qec::write_exact_csv(os, rows);
    }
  });
}

int run_validate(const std::string& spec) {
  qec::StabilizerCode code;
  try {
    code = resolve_code(spec);
  } catch (const std::invalid_argument& e) {
    std::cout << e.what() << "\n";
    return 2;
  }
  const auto problems = qec::validate(code);
  if (problems.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& msg : problems) std::cout << msg << "\n";
  return 2;
}

int run_table(const std::string& spec, double p) {
  const qec::StabilizerCode code = resolve_valid_code(spec);
  const auto table = qec::hard_table(code, p);
  for (qec::Syndrome s = 0; s < code.num_syndromes(); ++s) {
    std::cout << qec::syndrome_to_string(s, code.num_checks()) << " -> "
              << qec::pauli_char(table.decision[s]);
    if (table.tie[s]) std::cout << " (tie)";
    std::cout << "\n";
  }
  return 0;
}

struct DecodeArgs {
  std::string code = "five-qubit";
  int level = 1;
  double p = 0.1;
  std::string syndromes;
};

int run_decode(const DecodeArgs& args) {
  const qec::ConcatenatedCode cc{resolve_valid_code(args.code), args.level};
  std::ifstream in(args.syndromes);
  if (!in) {
    std::cerr << "error: cannot open syndrome file: " << args.syndromes << "\n";
    return 1;
  }
  const qec::SyndromeSet syndromes = qec::parse_syndromes(in, cc);
  const qec::BpResult result =
      qec::decode_bp(cc, syndromes, qec::LogicalDistribution::depolarizing(args.p));

  std::cout << "estimate: " << qec::pauli_char(result.estimate) << "\n";
  std::cout << "confidence: " << qec::format_probability(result.confidence) << "\n";
  std::cout << "tie: " << (result.tie ? "yes" : "no") << "\n";
  std::cout << "posterior:";
  for (unsigned c = 0; c < 4; ++c) {
    std::cout << ' ' << qec::pauli_char(static_cast<qec::Pauli>(c)) << '='
              << qec::format_probability(result.top[c]);
  }
  std::cout << "\n";
  return 0;
}

struct OracleArgs {
  std::string code = "repetition3";
  int level = 2;
  double p = 0.1;
  std::uint64_t samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

int run_oracle(const OracleArgs& args) {
  const qec::ConcatenatedCode cc{resolve_valid_code(args.code), args.level};
  if (!(args.p >= 0.0 && args.p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const auto prior = qec::LogicalDistribution::depolarizing(args.p);
  const qec::ExhaustivePosterior exact(cc, prior);
  qec::BpDecoder decoder(cc, prior);
  const qec::Extractor extractor(cc);

  qec::RngStream rng(args.seed);
  qec::PauliOperator e(cc.physical_qubits());
  qec::Extraction ex;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < args.samples; ++i) {
    qec::sample_error_into(rng, args.p, e);
    extractor.extract(e, ex);
    const auto got = decoder.decode(ex.syndromes).top;
    const auto want = exact.posterior(ex.syndromes);
    for (unsigned c = 0; c < 4; ++c) {
      worst = std::max(worst, std::abs(got[c] - want[c]));
    }
  }
  std::cout << "max deviation over " << args.samples
            << " samples: " << qec::format_probability(worst) << "\n";
  if (worst > args.tol) {
    std::cout << "exceeds tolerance " << qec::format_probability(args.tol) << "\n";
    return 1;
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoders for self-concatenated [[n,1]] stabilizer codes"};
  app.require_subcommand(1);

  const char* const code_help = "five-qubit, steane, repetition3, or file:<path>";

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo failure rates on depolarizing noise");
  sim->add_option("--code", sim_args.code, code_help);
  sim->add_option("--levels", sim_args.levels, "Concatenation levels, a..b or a")->required();
  sim->add_option("--p", sim_args.p, "Comma-separated physical error rates")->required();
  sim->add_option("--trials", sim_args.trials, "Trials per (p, level) cell")
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_args.seed, "Master seed");
  sim->add_option("--decoder", sim_args.decoder, "bp, blockwise, or both")
      ->check(CLI::IsMember({"bp", "blockwise", "both"}));
  sim->add_option("--out", sim_args.out, "Output file (default stdout)");
  sim->add_option("--format", sim_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--threads", sim_args.threads, "Worker threads, 0 = auto; never changes output");

  ExactArgs exact_args;
  auto* exact =
      app.add_subcommand("exact-blockwise", "Exact failure curve of the blockwise decoder");
  exact->add_option("--code", exact_args.code, code_help);
  exact->add_option("--levels", exact_args.levels, "Levels, a..b or a")->required();
  exact->add_option("--p", exact_args.p, "Comma-separated physical error rates")->required();
  exact->add_option("--out", exact_args.out, "Output file (default stdout)");
  exact->add_option("--format", exact_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string validate_spec;
  auto* validate = app.add_subcommand("validate-code", "Check a code definition");
  validate->add_option("code", validate_spec, code_help)->required();

  std::string table_spec = "five-qubit";
  double table_p = 0.1;
  auto* table = app.add_subcommand("table", "Print the syndrome-to-class decision table");
  table->add_option("--code", table_spec, code_help);
  table->add_option("--p", table_p, "Channel rate used to rank classes");

  DecodeArgs decode_args;
  auto* decode = app.add_subcommand("decode", "Decode one syndrome set with message passing");
  decode->add_option("--code", decode_args.code, code_help);
  decode->add_option("--levels", decode_args.level, "Concatenation depth")
      ->check(CLI::PositiveNumber);
  decode->add_option("--p", decode_args.p, "Physical error rate for the prior");
  decode->add_option("--syndromes", decode_args.syndromes, "Syndrome file, one layer per line")
      ->required();

  OracleArgs oracle_args;
  auto* oracle =
      app.add_subcommand("oracle", "Compare message passing against exhaustive enumeration");
  oracle->add_option("--code", oracle_args.code, code_help);
  oracle->add_option("--levels", oracle_args.level, "Concatenation depth")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--p", oracle_args.p, "Physical error rate");
  oracle->add_option("--samples", oracle_args.samples, "Random errors to test");
  oracle->add_option("--seed", oracle_args.seed, "Sampling seed");
  oracle->add_option("--tol", oracle_args.tol, "Largest allowed deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_args);
    if (exact->parsed()) return run_exact(exact_args);
    if (validate->parsed()) return run_validate(validate_spec);
    if (table->parsed()) return run_table(table_spec, table_p);
    if (decode->parsed()) return run_decode(decode_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
