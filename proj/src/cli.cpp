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

#include "swapcert/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swapcert/suites.hpp"

namespace swapcert::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string verb;
  std::string scenario = "bsm";
  std::string noise = "none";
  double v = 1.0;
  double p = 0.0;
  double angle = 0.0;
  double theta = kPi / 8;
  double from = 2.6;
  double to = kTsirelson;
  std::optional<double> step;
  int rows = 200;
  std::uint64_t seed = 20240611;
  std::string out;
  std::string expect = "entangled-certified";
};

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

// Round-trips through 9 significant digits so that JSON output is stable.
double r9(double x) { return std::isfinite(x) ? std::stod(fmt9(x)) : x; }

json r9(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(r9(x));
  return a;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomic(cfg.out, content);
  }
}

json report_json(const CertReport& r, const RunConfig& cfg) {
  json j;
  j["scenario"] = r.scenario;
  j["beta_ave"] = r9(r.beta_ave);
  j["q"] = r9(r.q);
  j["eta_star"] = r9(r.eta_star);
  j["bound"] = r9(r.bound);
  j["qsep"] = r9(r.qsep);
  j["verdict"] = to_string(r.verdict);
  j["fidelities"] = r9(r.fidelities);
  j["probabilities"] = r9(r.probabilities);
  j["betas"] = r9(r.betas);
  j["constructive"] = r9(r.constructive);
  j["identity_residual"] = r9(r.identity_residual);
  j["state_residual"] = r9(r.state_residual);
  j["marginal_bias_a"] = r9(r.marginal_bias_a);
  j["marginal_bias_c"] = r9(r.marginal_bias_c);
  j["marginals_within_eta_star"] = r.marginals_within_eta_star;
  j["extraction_deficit"] = r9(r.extraction_deficit);
  j["noise"] = {{"model", cfg.noise}, {"v", r9(cfg.v)}, {"p", r9(cfg.p)}, {"angle", r9(cfg.angle)}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

void check_range(double x, double lo, double hi, const char* name) {
  if (!(x >= lo && x <= hi)) throw UsageError(std::string(name) + " out of range");
}

SwapScenario swap_scenario(const RunConfig& cfg, const ScenarioKind& kind) {
  if (cfg.noise == "none") return ideal_swap_scenario(kind);
  if (cfg.noise == "werner") return werner_swap_scenario(cfg.v, cfg.v, kind);
  if (cfg.noise == "povm") return with_povm_noise(ideal_swap_scenario(kind), cfg.p);
  if (cfg.noise == "misalign") return misaligned_scenario(ideal_swap_scenario(kind), cfg.angle);
  throw UsageError("unknown noise model " + cfg.noise);
}

StarScenario star_scenario(const RunConfig& cfg) {
  if (cfg.noise == "none") return ideal_star_scenario();
  if (cfg.noise == "werner") return werner_star_scenario(cfg.v);
  if (cfg.noise == "povm") {
    StarScenario s = ideal_star_scenario();
    s.rob = noisy_measurement(s.rob, cfg.p);
    return s;
  }
  throw UsageError("noise model " + cfg.noise + " is not available for the ghz scenario");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.expect != "entangled-certified" && cfg.expect != "inconclusive") {
    throw UsageError("--expect must be entangled-certified or inconclusive");
  }
  CertReport r;
  try {
    if (cfg.scenario == "bsm") {
      const SwapScenario s = swap_scenario(cfg, ScenarioKind::bsm());
      r = cfg.noise == "none" ? theorem1_verify(s) : theorem2_certify(s);
    } else if (cfg.scenario == "tilted") {
      const ScenarioKind kind = ScenarioKind::tilted(cfg.theta);
      r = tilted_verify(cfg.theta, swap_scenario(cfg, kind));
    } else if (cfg.scenario == "ghz") {
      r = ghz_verify(star_scenario(cfg));
    } else {
      throw UsageError("unknown scenario " + cfg.scenario);
    }
  } catch (const PreconditionError& e) {
    json j{{"scenario", cfg.scenario}, {"verdict", "precondition-failed"}, {"detail", e.what()}};
    emit(cfg, j.dump(2) + "\n", out);
    return 1;
  }
  emit(cfg, report_json(r, cfg).dump(2) + "\n", out);
  return to_string(r.verdict) == cfg.expect ? 0 : 1;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.from > 2.0 && cfg.to <= kTsirelson + 1e-12 && cfg.from < cfg.to)) {
    throw UsageError("curve range must satisfy 2 < from < to <= 2 sqrt 2");
  }
  int n = cfg.rows;
  if (cfg.step) {
    if (!(*cfg.step > 0.0)) throw UsageError("--step must be positive");
    n = static_cast<int>(std::floor((cfg.to - cfg.from) / *cfg.step + 1e-9)) + 1;
  }
  if (n < 2) throw UsageError("curve needs at least two rows");
  std::vector<BoundPoint> pts = bound_curve(cfg.from, cfg.to, n);
  if (robust_bound(cfg.from) < 0.5 && robust_bound(cfg.to) > 0.5) {
    const BoundPoint root = bound_point(bound_root(cfg.from, cfg.to));
    pts.insert(std::upper_bound(pts.begin(), pts.end(), root,
                                [](const BoundPoint& a, const BoundPoint& b) { return a.beta_ave < b.beta_ave; }),
               root);
  }
  std::string csv = "beta_ave,q,eta_star,bound\n";
  for (const auto& p : pts) {
    csv += fmt9(p.beta_ave) + "," + fmt9(p.q) + "," + fmt9(p.eta_star) + "," + fmt9(p.bound) + "\n";
  }
  emit(cfg, csv, out);
  return 0;
}

int cmd_noise_threshold(const RunConfig& cfg, std::ostream& out) {
  if (cfg.noise != "werner" && cfg.noise != "none") throw UsageError("noise-threshold uses Werner noise on both sources");
  const NoiseThreshold t = werner_noise_threshold();
  const CertReport at_one = theorem2_certify(werner_swap_scenario(1.0, 1.0));
  json j{{"noise_model", "werner-both-sources"},
         {"v_star", r9(t.v_star)},
         {"noise", r9(t.noise)},
         {"v_star_squared", r9(t.v_star * t.v_star)},
         {"beta_ave", r9(t.beta_ave)},
         {"bound_at_threshold", r9(robust_bound(t.beta_ave))},
         {"certified_at_v1", at_one.verdict == Verdict::entangled_certified}};
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

int cmd_suite(const RunConfig& cfg, std::ostream& out) {
  bool ok = true;
  std::string text;
  for (const auto& s : run_all_suites(cfg.seed)) {
    text += std::string(s.passed ? "PASS " : "FAIL ") + s.name + ": " + s.detail + "\n";
    ok = ok && s.passed;
  }
  emit(cfg, text, out);
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Self-testing of entangled measurements through entanglement swapping", "swapcert"};
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
  app.add_option("verb", cfg.verb, "verify | curve | noise-threshold | suite")
      ->required()
      ->check(CLI::IsMember({"verify", "curve", "noise-threshold", "suite"}));
  app.add_option("--scenario", cfg.scenario, "bsm | tilted | ghz")->check(CLI::IsMember({"bsm", "tilted", "ghz"}));
  app.add_option("--noise", cfg.noise, "none | werner | povm | misalign")
      ->check(CLI::IsMember({"none", "werner", "povm", "misalign"}));
  app.add_option("--v", cfg.v, "Werner visibility on every source");
  app.add_option("--p", cfg.p, "white-noise weight on the joint measurement");
  app.add_option("--angle", cfg.angle, "misalignment of the last party's settings (rad)");
  app.add_option("--theta", cfg.theta, "tilt angle in (0, pi/4]");
  app.add_option("--from", cfg.from, "curve start");
  app.add_option("--to", cfg.to, "curve end");
  app.add_option("--step", cfg.step, "curve spacing (overrides --rows)");
  app.add_option("--rows", cfg.rows, "curve grid size");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--out", cfg.out, "output file (written atomically); stdout if absent");
  app.add_option("--expect", cfg.expect, "expected verdict for verify");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    check_range(cfg.v, 0.0, 1.0, "--v");
    check_range(cfg.p, 0.0, 1.0, "--p");
    check_range(cfg.theta, 1e-12, kPi / 4 + 1e-15, "--theta");
    if (cfg.verb == "verify") return cmd_verify(cfg, out);
    if (cfg.verb == "curve") return cmd_curve(cfg, out);
    if (cfg.verb == "noise-threshold") return cmd_noise_threshold(cfg, out);
    return cmd_suite(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace swapcert::cli
