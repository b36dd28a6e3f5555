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

#include "swapcert/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swapcert {

namespace {

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

CMatrix basis_projector(int k) {
  Vec v = Vec::Zero(4);
  v[k] = 1.0;
  return projector(v, {2, 2});
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

Measurement mixed_product_bell_basis() {
  return Measurement({basis_projector(0), basis_projector(3), bell_state(2).mat(), bell_state(3).mat()});
}

Measurement product_basis() {
  return Measurement({basis_projector(0), basis_projector(1), basis_projector(2), basis_projector(3)});
}

SuiteResult swap_lemma_suite(std::uint64_t seed, int trials, Exec exec) {
  const auto residuals = seeded_trials(
      seed, trials,
      [](Rng& rng, int i) {
        const int d = 2 * (1 + i % 3);
        const AnticommutingPair p = random_anticommuting_pair(d, rng);
        const CMatrix s = swap_gate(p.x, p.z);
        const CMatrix id = identity(d), id2 = identity(2);
        const double r1 = frobenius_distance(s * kron(id2, p.x), kron(pauli_x(), id) * s);
        const double r2 = frobenius_distance(s * kron(id2, p.z), kron(pauli_z(), id) * s);
        const double r3 = frobenius_distance(swap_gate(-p.x, p.z), kron(pauli_z(), p.z) * s);
        const double r4 = frobenius_distance(swap_gate(p.x, -p.z), kron(pauli_x(), p.x) * s);
        const double ru = frobenius_distance(s.adjoint() * s, identity(2 * d));
        return std::max({r1, r2, r3, r4, ru});
      },
      exec);
  const double worst = max_of(residuals);
  return {"swap-lemma", worst <= 1e-9, worst, "max residual " + fmt(worst) + " over " + std::to_string(trials) + " pairs"};
}

SuiteResult lemma1_suite() {
  std::vector<double> cs;
  for (int k = 0; k <= 9; ++k) cs.push_back(0.5 + 0.05 * k);
  cs.push_back(0.99);
  double worst_margin = INFINITY;
  try {
    for (double c : cs) worst_margin = std::min(worst_margin, lemma_marginal_dual_check(c).margin);
  } catch (const std::exception& e) {
    return {"lemma1-dual", false, worst_margin, e.what()};
  }
  for (double theta : {kPi / 12, kPi / 8, kPi / 6}) {
    const double c = 0.5 * (1.0 + std::sin(2 * theta));
    const DensityOperator psi = tilted_bell_state(theta, 0);
    const double overlap = hs_inner(psi.mat(), bell_state(0).mat());
    const Spectrum sp = eig_hermitian(partial_trace(psi.mat(), {0}));
    const double eta = 2.0 * std::sqrt(c * (1.0 - c));
    const double err = std::max({std::abs(overlap - c), std::abs(sp.values[0] - 0.5 * (1 + eta)),
                                 std::abs(sp.values[1] - 0.5 * (1 - eta))});
    if (err > 1e-10) return {"lemma1-dual", false, worst_margin, "saturation fails at theta = " + std::to_string(theta)};
  }
  return {"lemma1-dual", true, worst_margin, "min dual margin " + fmt(worst_margin) + " on 11 grid points"};
}

SuiteResult lemma2_suite(std::uint64_t seed, int trials, const std::function<double(double)>& t, Exec exec) {
  const double worst = min_of(lemma2_sweep(seed, trials, t, exec));
  return {"lemma2-inequality", worst >= -1e-9, worst,
          "min margin " + fmt(worst) + " over " + std::to_string(trials) + " states"};
}

SuiteResult qsep_suite() {
  struct Case {
    const char* name;
    Measurement m;
    double expected;
  };
  const Case cases[] = {{"bsm", measurement_basis(ScenarioKind::bsm()), 0.5},
                        {"mixed", mixed_product_bell_basis(), 0.75},
                        {"product", product_basis(), 1.0}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const double refined = qsep_refined_bound(c.m);
    const double witness = qsep_achievability(c.m).first;
    worst = std::max({worst, std::abs(refined - c.expected), std::abs(witness - c.expected)});
    if (std::abs(refined - c.expected) > 1e-12 || std::abs(witness - refined) > 1e-12) {
      return {"qsep", false, worst, std::string("threshold or witness mismatch for ") + c.name};
    }
  }
  return {"qsep", true, worst, "bsm 1/2, mixed 3/4, product 1 with matching witnesses"};
}

SuiteResult tensor_suite(std::uint64_t seed, int trials, Exec exec) {
  const auto residuals = seeded_trials(
      seed, trials,
      [](Rng& rng, int i) {
        const int n = 2 + i % 2;
        std::vector<ChoiChannel> chs;
        std::vector<Mat> big{Mat::Identity(1, 1)};
        int in = 1;
        for (int k = 0; k < n; ++k) {
          const int din = 2 + static_cast<int>(rng() % 2);
          const int dout = 2 + static_cast<int>(rng() % 2);
          const auto kraus = random_kraus(dout, din, 2, rng);
          chs.push_back(choi_from_kraus(kraus));
          std::vector<Mat> next;
          for (const auto& a : big) {
            for (const auto& b : kraus) next.push_back(kron(CMatrix(a), CMatrix(b)).mat());
          }
          big = std::move(next);
          in *= din;
        }
        const CMatrix omega = random_hermitian(in, rng);
        const CMatrix single = choi_tensor_apply(chs, omega);
        const double r1 = frobenius_distance(single, choi_factorwise_apply(chs, omega));
        const double r2 = frobenius_distance(single, kraus_apply(big, omega));
        return std::max(r1, r2);
      },
      exec);
  const double worst = max_of(residuals);
  return {"tensor-choi", worst <= 1e-9, worst, "max residual " + fmt(worst) + " over " + std::to_string(trials) + " inputs"};
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, const std::function<double(double)>& t) {
  return {swap_lemma_suite(seed), lemma1_suite(), lemma2_suite(seed, 1000, t), qsep_suite(), tensor_suite(seed)};
}

}  // namespace swapcert
