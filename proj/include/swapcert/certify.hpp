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

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swapcert/channels.hpp"
#include "swapcert/network.hpp"

namespace swapcert {

/// A verifier's hypothesis does not hold for the given scenario.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A certificate that should hold numerically does not.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bound functions.
inline const double kXStar = (16.0 + 14.0 * std::sqrt(2.0)) / 17.0;

double g_extraction(double beta);
double s_of(double eta);
double t_of(double eta);
double a_of(double eta);
double b_of(double eta);
double eta_star(double q);

struct BoundPoint {
  double beta_ave;
  double q;
  double eta_star;
  double bound;
};

/// Analytic lower bound on the simulation quality from the average CHSH value.
double robust_bound(double beta_ave);
BoundPoint bound_point(double beta_ave);

enum class Verdict { entangled_certified, inconclusive };
const char* to_string(Verdict v);

struct CertReport {
  std::string scenario;
  double beta_ave = 0.0;
  double q = 0.0;
  double eta_star = 0.0;
  double bound = 0.0;
  double qsep = 0.5;
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> fidelities;
  std::vector<double> probabilities;
  std::vector<double> betas;

  /// Simulation objective at the constructed channel pair (not device
  /// independent; needs the sources).
  double constructive = 0.0;
  /// Exact cases: largest residual of the channel identities.
  double identity_residual = 0.0;
  double state_residual = 0.0;
  double marginal_bias_a = 0.0;
  double marginal_bias_c = 0.0;
  bool marginals_within_eta_star = true;
  double extraction_deficit = 0.0;
  std::string detail;
};

double q_of_simulation(const Measurement& real, const Measurement& ideal, const std::vector<ChoiChannel>& chs);
double q_of_simulation(const Measurement& real, const Measurement& ideal, const ChoiChannel& ch1,
                       const ChoiChannel& ch2);
double q_trivial_lower(const Measurement& real, const Measurement& ideal);

/// Largest Schmidt coefficient of each (rank-1) element across the cut after
/// the first factor.
std::vector<double> max_schmidt_coefficients(const Measurement& ideal);
double qsep_schmidt_bound(const Measurement& ideal);
double qsep_refined_bound(const Measurement& ideal);
/// Best assignment of the computational product basis to the outcomes.
std::pair<double, Measurement> qsep_achievability(const Measurement& ideal);

struct FormalPaulis {
  CMatrix x;
  CMatrix z;
};

/// Z = r(A0), X = r(A1).
FormalPaulis formal_paulis_direct(const Settings& s);
/// Z = r(C0 + C1), X = r(C0 - C1).
FormalPaulis formal_paulis_sum(const Settings& s);
/// X = r(P0), Z = r(i[P1, P0] / 2).
FormalPaulis formal_paulis_commutator(const Settings& s);

/// Exact-case construction: swap extraction on both outer parties and the
/// Choi pair 2 sigma. Residuals are Frobenius distances to `targets`.
struct ExactConstruction {
  ChoiChannel gamma_a;
  ChoiChannel gamma_c;
  ChoiChannel lambda1;
  ChoiChannel lambda2;
  std::vector<double> state_residuals;
  std::vector<double> identity_residuals;
  std::vector<CMatrix> mapped;  // (Lambda1 (x) Lambda2)(B^b)
};

ExactConstruction exact_swap_construction(const SwapScenario& s, const std::vector<CMatrix>& targets);

CertReport theorem1_verify(const SwapScenario& s);
CertReport tilted_verify(double theta, const SwapScenario& s);
CertReport ghz_verify(const StarScenario& s);
CertReport theorem2_certify(const SwapScenario& s);

/// beta_ave in [lo, hi] where robust_bound crosses 1/2 (bisection).
double bound_root(double lo = 2.6, double hi = 2.0 * std::sqrt(2.0), double tol = 1e-12);

struct NoiseThreshold {
  double v_star;    // Werner visibility on each source at the threshold
  double noise;     // 1 - v_star^2
  double beta_ave;  // simulated average CHSH value at the threshold
};

/// Bisection on the simulated Werner pipeline for bound = 1/2.
NoiseThreshold werner_noise_threshold(double tol = 1e-10);

struct DualCertificate {
  double lambda1;
  double lambda2;
  double objective;
  double margin;  // min eigenvalue of the dual slack
};

/// Dual certificate for the marginal/fidelity tradeoff at overlap c.
DualCertificate lemma_marginal_dual_check(double c);

/// min_eig(mu - s nu + t (1/2 (x) nu_B)) for a qubit (x) qudit state nu.
double lemma_rescale_margin(const DensityOperator& nu,
                            const std::function<double(double)>& t = t_of);
double lemma_rescale_check(const DensityOperator& nu);

}  // namespace swapcert
