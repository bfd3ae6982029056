#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "xxchain/cli.hpp"
#include "xxchain/sweep.hpp"

using Catch::Approx;
using namespace xxchain;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

// RAII temp file in the test working directory
struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("concurrence subcommand prints the full pair table") {
  const CliRun r = run({"concurrence", "--n", "3", "--couplings", "1,1,1"});
  REQUIRE(r.code == kExitSuccess);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "pair_i,pair_j,concurrence,lambda1,lambda2,lambda3,lambda4");
  CHECK(lines[1].rfind("1,2,0.4571067811865", 0) == 0);
  CHECK(lines[3].rfind("2,3,0.4571067811865", 0) == 0);
  const std::vector<std::string> c13 = fields_of(lines[2]);
  REQUIRE(c13.size() == 7);
  CHECK(c13[0] == "1");
  CHECK(c13[1] == "3");
  CHECK(std::stod(c13[2]) <= 1e-8);
}

TEST_CASE("concurrence at extreme temperature gives the maximally mixed table") {
  const CliRun r = run({"concurrence", "--n", "2", "--couplings", "1,1", "-T", "1e9"});
  REQUIRE(r.code == kExitSuccess);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  const std::vector<std::string> f = fields_of(lines[1]);
  REQUIRE(f.size() == 7);
  CHECK(f[0] == "1");
  CHECK(f[1] == "2");
  CHECK(std::stod(f[2]) == Approx(0.0).margin(1e-12));
  for (int k = 3; k < 7; ++k) CHECK(std::stod(f[static_cast<std::size_t>(k)]) ==
                                    Approx(0.25).margin(1e-6));
}

TEST_CASE("concurrence reproduces the six-qubit flagship number") {
  const CliRun r = run({"concurrence", "--n", "6", "--couplings", "0.1,1,10,10,1,0.1",
                        "--pair", "1,6"});
  REQUIRE(r.code == kExitSuccess);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].rfind("1,6,0.960976510", 0) == 0);
}

TEST_CASE("concurrence validates pairs, couplings, and temperature") {
  CHECK(run({"concurrence", "--n", "3", "--couplings", "1,1,1", "--pair", "2,2"}).code ==
        kExitInvalidInput);
  CHECK(run({"concurrence", "--n", "3", "--couplings", "1,1"}).code == kExitInvalidInput);
  CHECK(run({"concurrence", "--n", "3", "--couplings", "1,1,1", "--temperature=-1"}).code ==
        kExitInvalidInput);

  // repeated pairs collapse to one row
  const CliRun dedup = run({"concurrence", "--n", "3", "--couplings", "1,1,1", "--pair", "1,2",
                            "--pair", "1,2"});
  REQUIRE(dedup.code == kExitSuccess);
  CHECK(lines_of(dedup.out).size() == 2);
}

TEST_CASE("missing required options exit with the invalid-input code") {
  const CliRun r = run({"concurrence", "--n", "3"});
  CHECK(r.code == kExitInvalidInput);
  CHECK(r.err.find("--couplings") != std::string::npos);
}

TEST_CASE("sweep of the transfer scenario emits the documented CSV") {
  const CliRun r = run({"sweep", "--scenario", "fig4", "--j-steps", "61", "--t", "0.05"});
  REQUIRE(r.code == kExitSuccess);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 1 + 61 * 1 * 4);
  CHECK(lines[0] == "scenario,n,J1,J2,J3,J4,temperature,pair_i,pair_j,concurrence");
  for (std::size_t k = 1; k < lines.size(); ++k) CHECK(lines[k].rfind("fig4,4,", 0) == 0);
}

TEST_CASE("sweep of the kernel scenario reaches a high distant-pair point") {
  const CliRun r = run({"sweep", "--scenario", "fig5", "--j-min", "0.02", "--j-max", "1",
                        "--j-steps", "50", "--t", "0,0.05,0.1"});
  REQUIRE(r.code == kExitSuccess);
  bool found = false;
  const std::vector<std::string> lines = lines_of(r.out);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::vector<std::string> f = fields_of(lines[k]);
    REQUIRE(f.size() == 10);
    if (f[7] == "1" && f[8] == "4" && std::stod(f[9]) >= 0.95) found = true;
  }
  CHECK(found);
}

TEST_CASE("sweep rejects an unknown scenario and lists the valid names") {
  const CliRun r = run({"sweep", "--scenario", "nope"});
  CHECK(r.code == kExitInvalidInput);
  for (const char* name : {"fig1", "fig2", "fig4", "fig5", "six-qubit"})
    CHECK(r.err.find(name) != std::string::npos);
}

TEST_CASE("sweep scenario selection rules") {
  CHECK(run({"sweep", "--scenario", "fig1", "--n", "3", "--impurity-site", "1"}).code ==
        kExitInvalidInput);
  CHECK(run({"sweep", "--n", "3"}).code == kExitInvalidInput);
  CHECK(run({"sweep", "--n", "3", "--impurity-site", "1", "--boundary"}).code ==
        kExitInvalidInput);

  // assembled scenario: n + boundary rule, restricted pairs
  const CliRun r = run({"sweep", "--n", "4", "--boundary", "--j-min", "0.5", "--j-max", "1",
                        "--j-steps", "2", "--t", "0", "--pair", "1,4"});
  REQUIRE(r.code == kExitSuccess);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "scenario,n,J1,J2,J3,J4,temperature,pair_i,pair_j,concurrence");
  CHECK(lines[1].find("n4-boundary") == 0);
}

TEST_CASE("sweep --out writes a CSV that round-trips through the reader") {
  TempFile tmp("cli_test_sweep.csv");
  const CliRun r = run({"sweep", "--scenario", "fig1", "--j-steps", "5", "--t", "0,0.5",
                        "--out", tmp.path});
  REQUIRE(r.code == kExitSuccess);
  CHECK(r.out.empty());  // table went to the file, not stdout

  const SweepResult loaded = read_sweep_csv(tmp.path);
  CHECK(loaded.scenario_name == "fig1");
  CHECK(loaded.n == 3);
  CHECK(loaded.pairs.size() == 3);
  CHECK(loaded.t_grid == std::vector<double>{0.0, 0.5});
  CHECK(loaded.rows.size() == 5 * 2 * 3);
}

TEST_CASE("unwritable output paths exit with the I/O code") {
  const CliRun r = run({"concurrence", "--n", "2", "--couplings", "1,1", "--out",
                        "/nonexistent-dir/table.csv"});
  CHECK(r.code == kExitIoError);
  CHECK(r.err.find("i/o error") != std::string::npos);
}

TEST_CASE("verify six-qubit passes and prints its measurement") {
  const CliRun r = run({"verify", "--claims", "six-qubit"});
  REQUIRE(r.code == kExitSuccess);
  CHECK(r.out.find("PASS six-qubit") != std::string::npos);
  CHECK(r.out.find("measured 0.960976510") != std::string::npos);
  CHECK(r.out.find("1 claims: 1 passed, 0 failed") != std::string::npos);
}

TEST_CASE("verify rejects an unknown claim set") {
  CHECK(run({"verify", "--claims", "bogus"}).code == kExitInvalidInput);
}

TEST_CASE("verify --n restricts the parity battery") {
  const CliRun r = run({"verify", "--claims", "parity", "--n", "5"});
  REQUIRE(r.code == kExitSuccess);
  CHECK(r.out.find("PASS parity-n5") != std::string::npos);
  CHECK(r.out.find("parity-n3") == std::string::npos);
}

TEST_CASE("an unreachable tolerance makes verify exit with the claim-failure code") {
  const CliRun r = run({"verify", "--claims", "transfer", "--transfer-eps", "1e-16"});
  CHECK(r.code == kExitClaimFailure);
  CHECK(r.out.find("FAIL transfer-law") != std::string::npos);
  CHECK(r.out.find("1 claims: 0 passed, 1 failed") != std::string::npos);
}

TEST_CASE("verify writes a machine-readable JSON report") {
  TempFile tmp("cli_test_report.json");
  const CliRun r = run({"verify", "--claims", "six-qubit", "--report", tmp.path});
  REQUIRE(r.code == kExitSuccess);

  std::ifstream file(tmp.path);
  REQUIRE(file.good());
  const nlohmann::json doc = nlohmann::json::parse(file);
  CHECK(doc.at("all_passed").get<bool>());
  REQUIRE(doc.at("claims").size() == 1);
  const nlohmann::json& claim = doc.at("claims").at(0);
  CHECK(claim.at("id").get<std::string>() == "six-qubit");
  CHECK(claim.at("passed").get<bool>());
  CHECK(claim.at("measured").get<double>() == Approx(0.96098).margin(1e-3));
  CHECK(claim.at("witnesses").size() >= 1);
}

TEST_CASE("verify writes the transfer table with decay columns") {
  TempFile tmp("cli_test_transfer.csv");
  const CliRun r = run({"verify", "--claims", "transfer", "--transfer-table", tmp.path});
  REQUIRE(r.code == kExitSuccess);

  std::ifstream file(tmp.path);
  REQUIRE(file.good());
  std::string header;
  REQUIRE(std::getline(file, header));
  CHECK(header ==
        "J,temperature,C12,C23,C34,C14,min_neighbor,deviation,"
        "decay_T_C12,decay_T_C23,decay_T_C34,decay_T_C14");
  std::size_t rows = 0;
  for (std::string line; std::getline(file, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 61 * 7);
}

TEST_CASE("optimize reports the best point of a scan") {
  const CliRun r = run({"optimize", "--scenario", "fig1", "--pair", "1,2", "--j-min", "0.5",
                        "--j-max", "2", "--grid-points", "11"});
  REQUIRE(r.code == kExitSuccess);
  CHECK(r.out.find("scenario = fig1") != std::string::npos);
  CHECK(r.out.find("pair = (1, 2)") != std::string::npos);
  CHECK(r.out.find("C* = 0.4571067811865") != std::string::npos);
  CHECK(r.out.find("evaluations = ") != std::string::npos);
}

TEST_CASE("optimize validates pair and temperature bounds") {
  CHECK(run({"optimize", "--scenario", "fig1", "--pair", "1,5"}).code == kExitInvalidInput);
  CHECK(run({"optimize", "--scenario", "fig1", "--pair", "xy"}).code == kExitInvalidInput);
  CHECK(run({"optimize", "--scenario", "fig1", "--pair", "1,2", "--t-min", "0"}).code ==
        kExitInvalidInput);
}

TEST_CASE("a config file supplies option values and flags take precedence") {
  TempFile tmp("cli_test_config.ini");
  {
    std::ofstream cfg(tmp.path);
    cfg << "[concurrence]\n"
        << "n=2\n"
        << "couplings=1,1\n"
        << "temperature=1e9\n";
  }

  const CliRun from_config = run({"--config", tmp.path, "concurrence"});
  REQUIRE(from_config.code == kExitSuccess);
  {
    const std::vector<std::string> lines = lines_of(from_config.out);
    REQUIRE(lines.size() == 2);
    CHECK(std::stod(fields_of(lines[1])[2]) == Approx(0.0).margin(1e-12));  // hot: no entanglement
  }

  // a command-line temperature overrides the config value
  const CliRun overridden = run({"--config", tmp.path, "concurrence", "-T", "0"});
  REQUIRE(overridden.code == kExitSuccess);
  {
    const std::vector<std::string> lines = lines_of(overridden.out);
    REQUIRE(lines.size() == 2);
    CHECK(std::stod(fields_of(lines[1])[2]) ==
          Approx(1.0).margin(1e-9));  // ground state is a singlet
  }
}

TEST_CASE("help and the bare invocation list the subcommands") {
  for (const CliRun& r : {run({"--help"}), run({})}) {
    CHECK(r.code == kExitSuccess);
    const std::string& text = r.out;
    for (const char* sub : {"concurrence", "sweep", "verify", "optimize"})
      CHECK(text.find(sub) != std::string::npos);
  }
}

TEST_CASE("an unknown subcommand exits with the invalid-input code") {
  CHECK(run({"badcmd"}).code == kExitInvalidInput);
}
