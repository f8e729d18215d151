#include <CLI11.hpp>

#include <dfakit/channel.hpp>
#include <dfakit/channel_io.hpp>
#include <dfakit/checks.hpp>
#include <dfakit/dfa.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitIoError = 2;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char* json_bool(bool b) { return b ? "true" : "false"; }

void append_matrix_part(std::ostream& out, const dfakit::ComplexMatrix& a, bool imag) {
  out << '[';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (i > 0) out << ", ";
    out << '[';
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ", ";
      out << fmt(imag ? a(i, j).imag() : a(i, j).real());
    }
    out << ']';
  }
  out << ']';
}

void append_matrix(std::ostream& out, const dfakit::ComplexMatrix& a) {
  out << "{\"re\": ";
  append_matrix_part(out, a, false);
  out << ", \"im\": ";
  append_matrix_part(out, a, true);
  out << '}';
}

int cmd_validate(const std::string& path, double tol, bool as_json) {
  dfakit::KrausChannel ch = dfakit::read_channel(path);
  const dfakit::ChannelFlags flags = dfakit::validate(ch, tol);
  if (as_json) {
    std::cout << "{\"unital\": " << json_bool(flags.unital)
              << ", \"unital_residual\": " << fmt(flags.unital_residual)
              << ", \"trace_preserving\": " << json_bool(flags.trace_preserving)
              << ", \"trace_residual\": " << fmt(flags.trace_residual)
              << ", \"tol\": " << fmt(tol) << "}\n";
  } else {
    std::cout << "unital: " << (flags.unital ? "yes" : "no") << " (residual "
              << fmt(flags.unital_residual) << ")\n"
              << "trace preserving: " << (flags.trace_preserving ? "yes" : "no")
              << " (residual " << fmt(flags.trace_residual) << ")\n";
  }
  return flags.unital && flags.trace_preserving ? kExitOk : kExitPropertyFailure;
}

int cmd_report(const std::string& path, double tol, double rank_rtol, bool emit_basis) {
  dfakit::KrausChannel ch = dfakit::read_channel(path);
  const dfakit::RankPolicy policy{rank_rtol};

  dfakit::AlgebraReport report;
  try {
    report = dfakit::inclusion_report(ch, policy, tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitPropertyFailure;
  }

  std::ostringstream out;
  out << "{\n"
      << "  \"dim\": " << ch.dim() << ",\n"
      << "  \"num_kraus\": " << ch.num_kraus() << ",\n"
      << "  \"dim_a_commutant\": " << report.dim_a_commutant << ",\n"
      << "  \"dim_fixed\": " << report.dim_fixed << ",\n"
      << "  \"dim_dfa\": " << report.dim_dfa << ",\n"
      << "  \"dim_b_commutant\": " << report.dim_b_commutant << ",\n"
      << "  \"chain_ok\": " << json_bool(report.chain_ok) << ",\n"
      << "  \"oracle_distance\": " << fmt(report.oracle_distance) << ",\n"
      << "  \"luders_applicable\": " << json_bool(report.luders_applicable) << ",\n"
      << "  \"luders_ok\": "
      << (report.luders_ok.has_value() ? json_bool(*report.luders_ok) : "null") << ",\n"
      << "  \"unital_residual\": " << fmt(report.unital_residual) << ",\n"
      << "  \"trace_residual\": " << fmt(report.trace_residual) << ",\n"
      << "  \"a_comm_in_fixed_residual\": " << fmt(report.a_comm_in_fixed_residual) << ",\n"
      << "  \"fixed_in_dfa_residual\": " << fmt(report.fixed_in_dfa_residual) << ",\n"
      << "  \"dfa_vs_b_commutant_distance\": " << fmt(report.dfa_vs_b_commutant_distance);
  if (emit_basis) {
    const dfakit::MatrixSubspace nphi = dfakit::decoherence_free_algebra(ch, policy);
    out << ",\n  \"nphi_basis\": [\n";
    for (Eigen::Index i = 0; i < nphi.dim(); ++i) {
      out << "    ";
      append_matrix(out, nphi.basis()[static_cast<std::size_t>(i)]);
      if (i + 1 < nphi.dim()) out << ',';
      out << '\n';
    }
    out << "  ]";
  }
  out << "\n}\n";
  std::cout << out.str();

  std::cerr << "dim " << ch.dim() << ", " << ch.num_kraus() << " Kraus operators\n"
            << "dims: A' = " << report.dim_a_commutant << ", fixed = " << report.dim_fixed
            << ", N = " << report.dim_dfa << ", B' = " << report.dim_b_commutant << "\n"
            << "chain A' in fixed in N = B': " << (report.chain_ok ? "ok" : "BROKEN") << "\n"
            << "oracle distance: " << fmt(report.oracle_distance) << "\n";
  if (report.luders_applicable) {
    std::cerr << "positive Kraus operators: subspaces "
              << (*report.luders_ok ? "coincide" : "DIFFER") << "\n";
  }

  const bool ok = report.chain_ok && report.oracle_distance < tol &&
                  (!report.luders_ok.has_value() || *report.luders_ok);
  return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_random(const std::string& kind_name, Eigen::Index n, Eigen::Index k,
               std::uint64_t seed, const std::string& out_path) {
  const dfakit::RandomKind kind = dfakit::checks::parse_kind(kind_name);
  const dfakit::KrausChannel ch = dfakit::random_channel(kind, n, k, seed);
  if (out_path.empty()) {
    std::cout << dfakit::format_channel(ch);
  } else {
    dfakit::write_channel(out_path, ch);
    std::cerr << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_reduce(const std::string& path, const std::string& out_path, double rank_rtol,
               bool as_json) {
  dfakit::KrausChannel ch = dfakit::read_channel(path);
  const dfakit::ReducedKraus red = dfakit::reduce_kraus(ch, rank_rtol);

  // worst action mismatch over the matrix units
  double residual = 0.0;
  const Eigen::Index n = ch.dim();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      dfakit::ComplexMatrix e = dfakit::ComplexMatrix::Zero(n, n);
      e(r, c) = 1.0;
      residual = std::max(
          residual, (dfakit::apply(ch, e) - dfakit::apply(red.reduced, e)).norm());
    }
  }

  std::ostringstream info;
  if (as_json) {
    info << "{\"m\": " << ch.num_kraus() << ", \"l\": " << red.reduced.num_kraus()
         << ", \"action_residual\": " << fmt(residual) << "}\n";
  } else {
    info << "m = " << ch.num_kraus() << ", l = " << red.reduced.num_kraus()
         << ", action residual " << fmt(residual) << "\n";
  }

  if (out_path.empty()) {
    std::cout << dfakit::format_channel(red.reduced);
    std::cerr << info.str();
  } else {
    dfakit::write_channel(out_path, red.reduced);
    std::cout << info.str();
  }
  return kExitOk;
}

int cmd_check(const std::vector<std::string>& kind_names,
              const std::vector<Eigen::Index>& dims,
              const std::vector<Eigen::Index>& kraus_counts, int channels, int trials,
              std::uint64_t seed, double tol, double rank_rtol, bool as_json) {
  dfakit::checks::EnsembleSpec spec;
  spec.kinds.clear();
  for (const auto& name : kind_names) spec.kinds.push_back(dfakit::checks::parse_kind(name));
  spec.dims = dims;
  spec.kraus_counts = kraus_counts;
  spec.channels_per_cell = channels;
  spec.trials = trials;
  spec.seed = seed;

  const auto results = dfakit::checks::run_property_checks(spec, tol, dfakit::RankPolicy{rank_rtol});

  const dfakit::checks::PropertyResult* first_failure = nullptr;
  if (as_json) {
    std::ostringstream out;
    out << "{\n  \"properties\": [\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      if (!r.pass() && first_failure == nullptr) first_failure = &r;
      out << "    {\"name\": \"" << r.name << "\", \"pass\": " << json_bool(r.pass())
          << ", \"max_residual\": " << fmt(r.max_residual) << ", \"tol\": " << fmt(r.tol)
          << ", \"cases\": " << r.cases << ", \"worst_case\": \"" << r.worst_case << "\"}";
      if (i + 1 < results.size()) out << ',';
      out << '\n';
    }
    out << "  ],\n  \"pass\": " << json_bool(first_failure == nullptr) << "\n}\n";
    std::cout << out.str();
  } else {
    for (const auto& r : results) {
      if (!r.pass() && first_failure == nullptr) first_failure = &r;
      std::printf("%s  %-38s max %-13.6g tol %-8.1g cases %zu\n",
                  r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.max_residual, r.tol,
                  r.cases);
      if (!r.pass()) std::printf("      worst: %s\n", r.worst_case.c_str());
    }
  }

  if (first_failure != nullptr) {
    std::cerr << "FAILED: " << first_failure->name << " (max residual "
              << fmt(first_failure->max_residual) << ", tol " << fmt(first_failure->tol)
              << ", worst case " << first_failure->worst_case << ")\n";
    return kExitPropertyFailure;
  }
  std::cerr << "all " << results.size() << " properties passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decoherence-free subalgebra toolkit for Kraus channels"};
  app.require_subcommand(1);

  // validate
  auto* validate = app.add_subcommand("validate", "check a channel file for unitality and trace preservation");
  std::string validate_path;
  double validate_tol = 1e-8;
  bool validate_json = false;
  validate->add_option("path", validate_path, "channel file")->required();
  validate->add_option("--tol", validate_tol, "residual tolerance");
  validate->add_flag("--json", validate_json, "machine-readable output");

  // report
  auto* report = app.add_subcommand("report", "compute the subalgebra chain A' in fixed in N = B'");
  std::string report_path;
  double report_tol = 1e-8;
  double report_rank_rtol = 1e-12;
  bool report_emit_basis = false;
  report->add_option("path", report_path, "channel file")->required();
  report->add_option("--tol", report_tol, "subspace comparison tolerance");
  report->add_option("--rank-rtol", report_rank_rtol, "relative singular value cut");
  report->add_flag("--emit-basis", report_emit_basis, "include the N basis matrices");

  // random
  auto* random = app.add_subcommand("random", "generate a random channel file");
  std::string random_kind;
  Eigen::Index random_n = 0;
  Eigen::Index random_k = 0;
  std::uint64_t random_seed = 0;
  std::string random_out;
  random->add_option("kind", random_kind, "mixed_unitary, luders, or padded")->required();
  random->add_option("n", random_n, "matrix dimension")->required()->check(CLI::PositiveNumber);
  random->add_option("k", random_k, "number of Kraus operators")->required()->check(CLI::PositiveNumber);
  random->add_option("--seed", random_seed, "64-bit seed")->envname("DFAKIT_SEED");
  random->add_option("--out", random_out, "output path (default: standard output)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "rewrite a channel on a linearly independent Kraus family");
  std::string reduce_path;
  std::string reduce_out;
  double reduce_rank_rtol = 1e-12;
  bool reduce_json = false;
  reduce->add_option("path", reduce_path, "channel file")->required();
  reduce->add_option("--out", reduce_out, "output path (default: standard output)");
  reduce->add_option("--rank-rtol", reduce_rank_rtol, "relative cut on the Gram spectrum");
  reduce->add_flag("--json", reduce_json, "machine-readable summary");

  // check
  auto* check = app.add_subcommand("check", "run the property suite over a random ensemble");
  std::vector<std::string> check_kinds{"mixed_unitary", "luders", "padded"};
  std::vector<Eigen::Index> check_dims{2, 3, 4};
  std::vector<Eigen::Index> check_counts{1, 2, 3, 4};
  int check_channels = 25;
  int check_trials = 20;
  std::uint64_t check_seed = 0;
  double check_tol = 1e-8;
  double check_rank_rtol = 1e-12;
  bool check_json = false;
  check->add_option("--kinds", check_kinds, "channel kinds")->delimiter(',');
  check->add_option("--dims", check_dims, "matrix dimensions")->delimiter(',');
  check->add_option("--kraus-counts", check_counts, "operator counts to cycle through")->delimiter(',');
  check->add_option("--channels", check_channels, "channels per kind and dimension")->check(CLI::PositiveNumber);
  check->add_option("--trials", check_trials, "random probes per channel")->check(CLI::PositiveNumber);
  check->add_option("--seed", check_seed, "64-bit ensemble seed")->envname("DFAKIT_SEED");
  check->add_option("--tol", check_tol, "subspace comparison tolerance");
  check->add_option("--rank-rtol", check_rank_rtol, "relative singular value cut");
  check->add_flag("--json", check_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitIoError;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_path, validate_tol, validate_json);
    if (report->parsed()) {
      return cmd_report(report_path, report_tol, report_rank_rtol, report_emit_basis);
    }
    if (random->parsed()) {
      return cmd_random(random_kind, random_n, random_k, random_seed, random_out);
    }
    if (reduce->parsed()) return cmd_reduce(reduce_path, reduce_out, reduce_rank_rtol, reduce_json);
    if (check->parsed()) {
      return cmd_check(check_kinds, check_dims, check_counts, check_channels, check_trials,
                       check_seed, check_tol, check_rank_rtol, check_json);
    }
  } catch (const dfakit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitIoError;
}
