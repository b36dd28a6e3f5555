// Copyright 2026 The swapcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swapcert/certify.hpp"
#include "swapcert/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = swapcert::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("swapcert_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

int tool_exit(const std::string& args) {
  const std::string cmd = std::string(SWAPCERT_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("verify: exact scenarios") {
  const Run r = run({"verify"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* key : {"scenario", "beta_ave", "q", "eta_star", "bound", "qsep", "verdict", "fidelities"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["scenario"] == "bsm");
  CHECK(j["q"].get<double>() == 1.0);
  CHECK(j["verdict"] == "entangled-certified");
  CHECK(j["fidelities"].size() == 4);

  const Run t = run({"verify", "--scenario", "tilted", "--theta", "0.39269908169872414"});
  CHECK(t.code == 0);
  CHECK(json::parse(t.out)["scenario"] == "tilted");

  const Run g = run({"verify", "--scenario", "ghz"});
  CHECK(g.code == 0);
  CHECK(json::parse(g.out)["fidelities"].size() == 8);
}

TEST_CASE("verify: robust pipeline") {
  const Run r = run({"verify", "--noise", "werner", "--v", "0.98"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  const double beta = 2.0 * std::sqrt(2.0) * 0.9604;
  CHECK(j["beta_ave"].get<double>() == doctest::Approx(beta).epsilon(1e-8));
  CHECK(j["bound"].get<double>() == doctest::Approx(swapcert::robust_bound(beta)).epsilon(1e-8));

  const std::string v93 = std::to_string(std::sqrt(0.93));
  CHECK(run({"verify", "--noise", "werner", "--v", v93}).code == 1);
  const Run inc = run({"verify", "--noise", "werner", "--v", v93, "--expect", "inconclusive"});
  CHECK(inc.code == 0);
  CHECK(json::parse(inc.out)["verdict"] == "inconclusive");

  CHECK(run({"verify", "--noise", "povm", "--p", "0.03"}).code == 0);
}

TEST_CASE("verify: precondition failures") {
  const Run g = run({"verify", "--scenario", "ghz", "--noise", "werner", "--v", "0.99"});
  CHECK(g.code == 1);
  const json j = json::parse(g.out);
  CHECK(j["verdict"] == "precondition-failed");
  CHECK(j["detail"].get<std::string>().find("Mermin") != std::string::npos);

  CHECK(run({"verify", "--noise", "werner", "--v", "0.8"}).code == 1);
  CHECK(run({"verify", "--noise", "misalign", "--angle", "1.5707963"}).code == 1);
}

TEST_CASE("curve") {
  const auto start = std::chrono::steady_clock::now();
  const Run r = run({"curve"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(r.code == 0);
  CHECK(secs < 5.0);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  CHECK(header == "beta_ave,q,eta_star,bound");
  CHECK(rows.size() == 201);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k][0] > rows[k - 1][0]);
    CHECK(rows[k][3] >= rows[k - 1][3] - 1e-9);
  }
  CHECK(rows.front()[0] == 2.6);
  CHECK(rows.back()[0] == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(rows.back()[3] == 1.0);
  CHECK(r.out.find("\n2.82842712,1,0,1\n") != std::string::npos);

  // The inserted root row.
  double root = 0.0;
  for (const auto& row : rows)
    if (std::abs(row[3] - 0.5) < 1e-8) root = row[0];
  CHECK(root == doctest::Approx(2.689).epsilon(0.01 / 2.689));

  CHECK(run({"curve"}).out == r.out);

  std::string h2;
  const auto stepped = parse_csv(run({"curve", "--from", "2.7", "--to", "2.8", "--step", "0.01"}).out, h2);
  CHECK(stepped.size() == 11);

  CHECK(run({"curve", "--from", "1.9"}).code == 2);
  CHECK(run({"curve", "--to", "2.9"}).code == 2);
  CHECK(run({"curve", "--step", "-1"}).code == 2);
}

TEST_CASE("noise threshold") {
  const Run r = run({"noise-threshold"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["noise"].get<double>() >= 0.049);
  CHECK(j["noise"].get<double>() <= 0.051);
  CHECK(j["v_star_squared"].get<double>() * 2.0 * std::sqrt(2.0) == doctest::Approx(2.689).epsilon(1e-3));
  CHECK(j["certified_at_v1"] == true);
  CHECK(run({"noise-threshold", "--noise", "povm"}).code == 2);
}

TEST_CASE("suite") {
  const Run r = run({"suite"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  int lines = 0;
  for (std::string line; std::getline(in, line); ++lines) CHECK(line.rfind("PASS ", 0) == 0);
  CHECK(lines == 5);
  CHECK(run({"suite", "--seed", "7"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--scenario", "w"}).code == 2);
  CHECK(run({"verify", "--noise", "dephasing"}).code == 2);
  CHECK(run({"verify", "--v", "1.5"}).code == 2);
  CHECK(run({"verify", "--theta", "1.2"}).code == 2);
  CHECK(run({"verify", "--expect", "maybe"}).code == 2);
  CHECK(run({"verify", "--bogus"}).code == 2);
  CHECK(run({"verify", "--scenario", "ghz", "--noise", "misalign"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output files and configuration") {
  const fs::path dir = scratch_dir();
  const fs::path csv = dir / "curve.csv";
  REQUIRE(run({"curve", "--rows", "20", "--out", csv.string()}).code == 0);
  CHECK(fs::exists(csv));
  CHECK_FALSE(fs::exists(dir / "curve.csv.tmp"));
  std::ifstream f(csv);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == run({"curve", "--rows", "20"}).out);

  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# Werner sources\nnoise=werner\nv=0.98\n";
  const Run a = run({"verify", "--config", cfg.string()});
  CHECK(a.code == 0);
  CHECK(json::parse(a.out)["noise"]["v"].get<double>() == 0.98);
  const Run b = run({"verify", "--config", cfg.string(), "--v", "0.99"});
  CHECK(json::parse(b.out)["noise"]["v"].get<double>() == 0.99);

  std::ofstream(dir / "bad.cfg") << "noise=werner\nv=oops\n";
  CHECK(run({"verify", "--config", (dir / "bad.cfg").string()}).code == 2);
  CHECK(run({"verify", "--config", (dir / "missing.cfg").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("executable exit codes") {
  CHECK(tool_exit("verify") == 0);
  CHECK(tool_exit("verify --scenario ghz --noise werner --v 0.99") == 1);
  CHECK(tool_exit("verify --v 2") == 2);
  CHECK(tool_exit("") == 2);
}
