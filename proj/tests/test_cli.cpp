#include <doctest.h>

#include <dfakit/channel.hpp>
#include <dfakit/channel_io.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "fixtures.hpp"

namespace {

struct CmdResult {
  int exit_code;
  std::string output;
};

// runs the binary through the shell; stderr is dropped unless the caller
// redirects it inside args
CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DFAKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), output};
}

CmdResult run_cli_merged(const std::string& args) {
  const std::string cmd = std::string(DFAKIT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), output};
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "dfakit_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("validate accepts the dephasing channel") {
  const auto path = work_dir() / "dephasing.json";
  dfakit::write_channel(path, fixtures::dephasing());
  const auto res = run_cli("validate " + path.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("unital: yes") != std::string::npos);
  CHECK(res.output.find("trace preserving: yes") != std::string::npos);
}

TEST_CASE("validate --json emits a parseable document") {
  const auto path = work_dir() / "dephasing.json";
  dfakit::write_channel(path, fixtures::dephasing());
  const auto res = run_cli("validate --json " + path.string());
  CHECK(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  CHECK(doc["unital"] == true);
  CHECK(doc["trace_preserving"] == true);
  CHECK(doc["unital_residual"].get<double>() < 1e-12);
}

TEST_CASE("validate rejects a non-unital channel with exit 1") {
  const auto path = work_dir() / "projector.json";
  dfakit::write_channel(path, dfakit::KrausChannel(2, {fixtures::unit(2, 0, 0)}));
  const auto res = run_cli("validate " + path.string());
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("unital: no") != std::string::npos);
}

TEST_CASE("validate exits 2 on a truncated file") {
  const auto path = work_dir() / "truncated.json";
  std::ofstream(path) << "{\"dim\": 2, \"kraus\": [";
  CHECK(run_cli("validate " + path.string()).exit_code == 2);
}

TEST_CASE("validate exits 2 on a missing file") {
  CHECK(run_cli("validate " + (work_dir() / "no_such_file.json").string()).exit_code == 2);
}

TEST_CASE("report on the dephasing channel") {
  const auto path = work_dir() / "dephasing.json";
  dfakit::write_channel(path, fixtures::dephasing());
  const auto res = run_cli("report " + path.string());
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  CHECK(doc["dim_a_commutant"] == 2);
  CHECK(doc["dim_fixed"] == 2);
  CHECK(doc["dim_dfa"] == 2);
  CHECK(doc["dim_b_commutant"] == 2);
  CHECK(doc["chain_ok"] == true);
  CHECK(doc["luders_applicable"] == true);
  CHECK(doc["luders_ok"] == true);
  CHECK(doc["oracle_distance"].get<double>() < 1e-8);
  // every report field is present
  for (const char* key :
       {"unital_residual", "trace_residual", "a_comm_in_fixed_residual",
        "fixed_in_dfa_residual", "dfa_vs_b_commutant_distance"}) {
    CHECK(doc.contains(key));
  }
  CHECK_FALSE(doc.contains("nphi_basis"));
}

TEST_CASE("report --emit-basis includes the basis matrices") {
  const auto path = work_dir() / "dephasing.json";
  dfakit::write_channel(path, fixtures::dephasing());
  const auto res = run_cli("report --emit-basis " + path.string());
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  REQUIRE(doc.contains("nphi_basis"));
  REQUIRE(doc["nphi_basis"].size() == 2);
  CHECK(doc["nphi_basis"][0].contains("re"));
  CHECK(doc["nphi_basis"][0].contains("im"));
}

TEST_CASE("report on a unitary channel finds the full algebra") {
  dfakit::Rng rng(42);
  const auto path = work_dir() / "unitary.json";
  dfakit::write_channel(path, dfakit::KrausChannel(3, {dfakit::haar_unitary(3, rng)}));
  const auto res = run_cli("report " + path.string());
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  CHECK(doc["dim_dfa"] == 9);
  CHECK(doc["oracle_distance"].get<double>() < 1e-7);
}

TEST_CASE("report refuses a non-trace-preserving channel with exit 1") {
  const auto path = work_dir() / "shift.json";
  dfakit::write_channel(
      path, dfakit::KrausChannel(2, {fixtures::unit(2, 0, 1), fixtures::unit(2, 0, 0)}));
  CHECK(run_cli("report " + path.string()).exit_code == 1);
}

TEST_CASE("random produces identical files for one seed") {
  const auto p1 = work_dir() / "r1.json";
  const auto p2 = work_dir() / "r2.json";
  CHECK(run_cli("random mixed_unitary 2 2 --seed 42 --out " + p1.string()).exit_code == 0);
  CHECK(run_cli("random mixed_unitary 2 2 --seed 42 --out " + p2.string()).exit_code == 0);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(run_cli("validate " + p1.string()).exit_code == 0);

  const auto p3 = work_dir() / "r3.json";
  CHECK(run_cli("random mixed_unitary 2 2 --seed 43 --out " + p3.string()).exit_code == 0);
  CHECK(slurp(p1) != slurp(p3));
}

TEST_CASE("random luders channels store positive operators") {
  const auto path = work_dir() / "luders.json";
  CHECK(run_cli("random luders 3 2 --seed 7 --out " + path.string()).exit_code == 0);
  const dfakit::KrausChannel ch = dfakit::read_channel(path);
  for (const auto& a : ch.kraus()) CHECK(dfakit::is_positive_operator(a, 1e-10));
}

TEST_CASE("random without --out prints the channel") {
  const auto res = run_cli("random padded 2 1 --seed 5");
  CHECK(res.exit_code == 0);
  const dfakit::KrausChannel ch = dfakit::parse_channel(res.output);
  CHECK(ch.dim() == 2);
  CHECK(ch.num_kraus() == 3);
}

TEST_CASE("DFAKIT_SEED env var sets the default seed") {
  const auto via_flag = run_cli("random mixed_unitary 2 2 --seed 99");
  const std::string cmd =
      "DFAKIT_SEED=99 " + std::string(DFAKIT_CLI_PATH) + " random mixed_unitary 2 2 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string via_env;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) via_env.append(buf, got);
  pclose(pipe);
  CHECK(via_flag.output == via_env);
}

TEST_CASE("random rejects an unknown kind with exit 2") {
  CHECK(run_cli("random gaussian 2 2").exit_code == 2);
}

TEST_CASE("reduce merges duplicated Kraus operators") {
  dfakit::Rng rng(11);
  const dfakit::ComplexMatrix u = dfakit::haar_unitary(2, rng);
  const double s = 1.0 / std::sqrt(2.0);
  const auto path = work_dir() / "dup.json";
  dfakit::write_channel(path, dfakit::KrausChannel(2, {s * u, s * u}));

  const auto out = work_dir() / "dup_reduced.json";
  const auto res = run_cli("reduce " + path.string() + " --out " + out.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("m = 2, l = 1") != std::string::npos);
  CHECK(dfakit::read_channel(out).num_kraus() == 1);
}

TEST_CASE("reduce --json reports the counts") {
  const auto path = work_dir() / "dephasing.json";
  dfakit::write_channel(path, fixtures::dephasing());
  const auto out = work_dir() / "dephasing_reduced.json";
  const auto res = run_cli("reduce --json " + path.string() + " --out " + out.string());
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  CHECK(doc["m"] == 2);
  CHECK(doc["l"] == 2);
  CHECK(doc["action_residual"].get<double>() < 1e-12);
  // an independent family comes back unchanged
  CHECK(slurp(out) == dfakit::format_channel(fixtures::dephasing()));
}

TEST_CASE("reduce drops a zero operator") {
  dfakit::Rng rng(12);
  const auto path = work_dir() / "zero_pad.json";
  dfakit::write_channel(path, dfakit::KrausChannel(
                                  2, {dfakit::ginibre(2, 2, rng),
                                      dfakit::ComplexMatrix::Zero(2, 2)}));
  const auto res = run_cli("reduce " + path.string() + " --out " +
                           (work_dir() / "zero_dropped.json").string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("m = 2, l = 1") != std::string::npos);
}

TEST_CASE("check passes on a small ensemble") {
  const auto res = run_cli("check --dims 2 --channels 2 --trials 4 --seed 3");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("FAIL") == std::string::npos);
  CHECK(res.output.find("kadison_positivity") != std::string::npos);
  CHECK(res.output.find("dfa_matches_oracle") != std::string::npos);
}

TEST_CASE("check --json lists every property") {
  const auto res = run_cli("check --json --dims 2 --channels 2 --trials 4 --seed 3");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  CHECK(doc["pass"] == true);
  CHECK(doc["properties"].size() >= 16);
  for (const auto& p : doc["properties"]) {
    CHECK(p.contains("name"));
    CHECK(p.contains("max_residual"));
    CHECK(p.contains("tol"));
    CHECK(p["pass"] == true);
  }
}

TEST_CASE("check names the first failing property under an absurd tolerance") {
  const auto res =
      run_cli_merged("check --dims 2 --channels 2 --trials 4 --seed 3 --tol 1e-18");
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("FAILED: ") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("validate").exit_code == 2);
  CHECK(run_cli("random mixed_unitary 0 2").exit_code == 2);
}

TEST_CASE("--help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("report --help").exit_code == 0);
}
