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

#include "swapcert/certify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace swapcert {

namespace {

constexpr double kExactTol = 1e-7;
constexpr double kTiltedTol = 1e-6;

// Grid scan followed by golden-section refinement around the best node.
double minimize_1d(const std::function<double(double)>& f, double lo, double hi) {
  constexpr int kGrid = 10000;
  if (hi <= lo) return f(lo);
  const double h = (hi - lo) / kGrid;
  int best = 0;
  double fbest = f(lo);
  for (int k = 1; k <= kGrid; ++k) {
    const double v = f(lo + k * h);
    if (v < fbest) {
      fbest = v;
      best = k;
    }
  }
  double a = lo + std::max(best - 1, 0) * h;
  double b = lo + std::min(best + 1, kGrid) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({fbest, fc, fd});
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

void require_exact_values(const std::vector<double>& values, double target, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] < target - kExactTol) {
      throw PreconditionError(std::string(what) + " for outcome " + std::to_string(k) + " is " +
                              std::to_string(values[k]) + ", below the maximum " + std::to_string(target) +
                              "; use the robust pipeline");
    }
  }
}

CMatrix normalized(const CMatrix& m) { return (1.0 / m.trace().real()) * m; }

void finish_exact(CertReport& r, const Measurement& real, const Measurement& ideal, const std::vector<ChoiChannel>& chs,
                  double tol) {
  r.constructive = q_of_simulation(real, ideal, chs);
  r.q = r.bound = r.constructive;
  r.eta_star = 0.0;
  r.qsep = qsep_refined_bound(ideal);
  const bool ok = r.identity_residual < tol && r.state_residual < tol;
  r.verdict = ok && r.bound > r.qsep + 1e-12 ? Verdict::entangled_certified : Verdict::inconclusive;
  if (!ok) r.detail = "channel identities fail beyond tolerance";
}

}  // namespace

double g_extraction(double beta) {
  return std::max(0.5, 0.5 + (beta - kXStar) / (2.0 * (kTsirelson - kXStar)));
}

double s_of(double eta) { return 2.0 / std::sqrt(1.0 - eta * eta); }

double t_of(double eta) { return 4.0 / std::sqrt(1.0 - eta * eta) - 4.0 / (1.0 + eta); }

double a_of(double eta) {
  return (std::sqrt(1.0 + eta) + std::sqrt(1.0 - eta)) / std::sqrt(2.0 * (1.0 - eta * eta));
}

double b_of(double eta) {
  return (std::sqrt(1.0 + eta) - std::sqrt(1.0 - eta)) / std::sqrt(2.0 * (1.0 - eta * eta));
}

double eta_star(double q) { return 2.0 * std::sqrt(std::max(q * (1.0 - q), 0.0)); }

BoundPoint bound_point(double beta_ave) {
  if (!(beta_ave > 2.0 && beta_ave <= kTsirelson + 1e-9)) {
    throw std::invalid_argument("robust_bound: beta_ave must lie in (2, 2 sqrt 2]");
  }
  const double q = g_extraction(std::min(beta_ave, kTsirelson));
  const double es = eta_star(q);
  // 4 s(eta) q - t(eta), written so that q = 1/2 stays finite at eta = 1.
  const auto f = [q](double eta) {
    const double lead = 8.0 * q - 4.0;
    return (lead == 0.0 ? 0.0 : lead / std::sqrt(1.0 - eta * eta)) + 4.0 / (1.0 + eta);
  };
  const double m = minimize_1d(f, 0.0, es);
  return {beta_ave, q, es, m / (8.0 * (1.0 + es))};
}

double robust_bound(double beta_ave) { return bound_point(beta_ave).bound; }

const char* to_string(Verdict v) {
  return v == Verdict::entangled_certified ? "entangled-certified" : "inconclusive";
}

double q_of_simulation(const Measurement& real, const Measurement& ideal, const std::vector<ChoiChannel>& chs) {
  if (real.size() != ideal.size()) throw std::invalid_argument("q_of_simulation: outcome counts differ");
  int out = 1;
  for (const auto& ch : chs) {
    if (!ch.is_unital()) throw std::invalid_argument("q_of_simulation: channel is not unital");
    out *= ch.out_dim();
  }
  if (out != ideal.dim()) throw std::invalid_argument("q_of_simulation: channel outputs do not match the ideal space");
  double acc = 0.0;
  for (std::size_t j = 0; j < real.size(); ++j) acc += hs_inner(choi_tensor_apply(chs, real[j]), ideal[j]);
  return acc / out;
}

double q_of_simulation(const Measurement& real, const Measurement& ideal, const ChoiChannel& ch1,
                       const ChoiChannel& ch2) {
  return q_of_simulation(real, ideal, std::vector<ChoiChannel>{ch1, ch2});
}

double q_trivial_lower(const Measurement& real, const Measurement& ideal) {
  if (real.size() != ideal.size()) throw std::invalid_argument("q_trivial_lower: outcome counts differ");
  double acc = 0.0;
  for (std::size_t j = 0; j < real.size(); ++j) acc += real[j].trace().real() * ideal[j].trace().real();
  return acc / (real.dim() * ideal.dim());
}

std::vector<double> max_schmidt_coefficients(const Measurement& ideal) {
  if (ideal.dims().size() < 2) throw std::invalid_argument("qsep: ideal measurement has no bipartition");
  const int d1 = ideal.dims()[0], d2 = ideal.dim() / d1;
  std::vector<double> out;
  for (const auto& e : ideal.elements()) {
    const Spectrum s = eig_hermitian(e);
    bool rank_one = std::abs(s.values[0] - 1.0) < 1e-9;
    for (Eigen::Index k = 1; k < s.values.size(); ++k) rank_one = rank_one && std::abs(s.values[k]) < 1e-9;
    if (!rank_one) throw std::invalid_argument("qsep: ideal elements must be rank-1 projectors");
    out.push_back(schmidt_coefficients(s.vectors.col(0), d1, d2).front());
  }
  return out;
}

double qsep_schmidt_bound(const Measurement& ideal) {
  const double a = max_of(max_schmidt_coefficients(ideal));
  return a * a;
}

double qsep_refined_bound(const Measurement& ideal) {
  std::vector<double> alpha = max_schmidt_coefficients(ideal);
  std::sort(alpha.begin(), alpha.end(), std::greater<>());
  const double total = ideal.dim();
  double allocated = 0.0, value = 0.0;
  for (double a : alpha) {
    const double tr = std::max(0.0, std::min(1.0 / (a * a), total - allocated));
    value += a * a * tr;
    allocated += tr;
  }
  return value / total;
}

std::pair<double, Measurement> qsep_achievability(const Measurement& ideal) {
  const int d = ideal.dim();
  const int n = static_cast<int>(ideal.size());
  if (n != d || ideal.dims().size() < 2 || d > 8) {
    throw std::invalid_argument("qsep_achievability: unsupported ideal basis");
  }
  std::vector<std::vector<double>> overlap(n, std::vector<double>(d));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < d; ++k) overlap[j][k] = ideal[j].mat()(k, k).real();
  }
  std::vector<int> perm(d), best;
  std::iota(perm.begin(), perm.end(), 0);
  double best_value = -1.0;
  do {
    double v = 0.0;
    for (int j = 0; j < n; ++j) v += overlap[j][perm[j]];
    if (v > best_value + 1e-15) {
      best_value = v;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<CMatrix> el;
  for (int j = 0; j < n; ++j) {
    Mat p = Mat::Zero(d, d);
    p(best[j], best[j]) = 1.0;
    el.emplace_back(std::move(p), ideal.dims());
  }
  return {best_value / d, Measurement(std::move(el), ideal.labels())};
}

FormalPaulis formal_paulis_direct(const Settings& s) { return {regularize(s.o1), regularize(s.o0)}; }

FormalPaulis formal_paulis_sum(const Settings& s) {
  return {regularize(hermitian_part(s.o0 - s.o1)), regularize(hermitian_part(s.o0 + s.o1))};
}

FormalPaulis formal_paulis_commutator(const Settings& s) {
  const CMatrix comm = Complex(0.0, 0.5) * (s.o1 * s.o0 - s.o0 * s.o1);
  return {regularize(s.o0), regularize(hermitian_part(comm))};
}

ExactConstruction exact_swap_construction(const SwapScenario& s, const std::vector<CMatrix>& targets) {
  if (targets.size() != 4) throw std::invalid_argument("exact_swap_construction: need four targets");
  const auto outcomes = run_swap(s);
  const FormalPaulis pa = formal_paulis_direct(s.alice);
  const FormalPaulis pc = formal_paulis_sum(s.charlie);
  const ChoiChannel ga = swap_channel(pa.x, pa.z);
  const ChoiChannel gc = swap_channel(pc.x, pc.z);

  std::vector<double> state_res;
  for (int b = 0; b < 4; ++b) {
    if (outcomes[b].degenerate) {
      state_res.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    state_res.push_back(frobenius_distance(apply_normalized({ga, gc}, outcomes[b].state).state, targets[b]));
  }

  const DensityOperator sigma_ab1(normalized(apply_on_factor(ga, s.tau_ab1.mat(), 0)));
  const DensityOperator sigma_b2c(normalized(apply_on_factor(gc, s.tau_b2c.mat(), 1)));
  const ChoiChannel l1 = choi_from_state(sigma_ab1, 2.0, FactorOrder::out_in);
  const ChoiChannel l2 = choi_from_state(sigma_b2c, 2.0, FactorOrder::in_out);

  std::vector<double> id_res;
  std::vector<CMatrix> mapped;
  for (int b = 0; b < 4; ++b) {
    mapped.push_back(choi_tensor_apply({l1, l2}, s.bob[b]));
    id_res.push_back(frobenius_distance(mapped.back(), targets[b]));
  }
  return {ga, gc, l1, l2, std::move(state_res), std::move(id_res), std::move(mapped)};
}

CertReport theorem1_verify(const SwapScenario& s) {
  const auto outcomes = run_swap(s);
  CertReport r;
  r.scenario = "bsm";
  for (int b = 0; b < 4; ++b) {
    const auto& o = outcomes[b];
    r.probabilities.push_back(o.p);
    r.betas.push_back(o.degenerate ? -kTsirelson : hs_inner(o.state, chsh_operator(b, s.alice, s.charlie)));
  }
  require_exact_values(r.betas, kTsirelson, "CHSH value");
  r.beta_ave = beta_ave(outcomes);

  const Measurement ideal = measurement_basis(ScenarioKind::bsm());
  const ExactConstruction ec = exact_swap_construction(s, ideal.elements());
  r.state_residual = max_of(ec.state_residuals);
  r.identity_residual = max_of(ec.identity_residuals);
  for (double res : ec.state_residuals) r.fidelities.push_back(1.0 - 0.5 * res * res);
  finish_exact(r, s.bob, ideal, {ec.lambda1, ec.lambda2}, kExactTol);
  return r;
}

CertReport tilted_verify(double theta, const SwapScenario& s) {
  if (std::abs(theta - kPi / 4) < 1e-12) return theorem1_verify(s);
  const ScenarioKind kind = ScenarioKind::tilted(theta);
  const double eta = tilt_weight(theta);
  const auto outcomes = run_swap(s);
  CertReport r;
  r.scenario = "tilted";
  for (std::size_t b = 0; b < outcomes.size(); ++b) {
    const auto& o = outcomes[b];
    r.probabilities.push_back(o.p);
    r.betas.push_back(o.degenerate ? -tilted_chsh_max(eta)
                                   : hs_inner(o.state, tilted_chsh_operator(static_cast<int>(b), eta, s.alice, s.charlie)));
  }
  require_exact_values(r.betas, tilted_chsh_max(eta), "tilted CHSH value");
  double avg = 0.0;
  for (std::size_t b = 0; b < outcomes.size(); ++b) avg += r.probabilities[b] * r.betas[b];
  r.beta_ave = avg;

  const Measurement ideal = measurement_basis(kind);
  const ExactConstruction ec = exact_swap_construction(s, ideal.elements());
  r.state_residual = max_of(ec.state_residuals);
  r.identity_residual = max_of(ec.identity_residuals);
  for (double res : ec.state_residuals) r.fidelities.push_back(1.0 - 0.5 * res * res);
  finish_exact(r, s.bob, ideal, {ec.lambda1, ec.lambda2}, kTiltedTol);
  return r;
}

CertReport ghz_verify(const StarScenario& s) {
  const auto outcomes = run_star(s);
  CertReport r;
  r.scenario = "ghz";
  for (const auto& o : outcomes) {
    r.probabilities.push_back(o.p);
    r.betas.push_back(o.degenerate ? -4.0 : o.beta);
  }
  require_exact_values(r.betas, 4.0, "Mermin value");
  for (std::size_t k = 0; k < outcomes.size(); ++k) r.beta_ave += r.probabilities[k] * r.betas[k];

  std::vector<ChoiChannel> gammas, lambdas;
  for (int k = 0; k < 3; ++k) {
    const FormalPaulis fp = formal_paulis_commutator(s.parties[k]);
    gammas.push_back(swap_channel(fp.x, fp.z));
    const DensityOperator sigma(normalized(apply_on_factor(gammas.back(), s.sources[k].mat(), 0)));
    lambdas.push_back(choi_from_state(sigma, 2.0, FactorOrder::out_in));
  }

  const Measurement ideal = measurement_basis(ScenarioKind::ghz());
  for (int q = 0; q < 8; ++q) {
    const double id_res = frobenius_distance(choi_tensor_apply(lambdas, s.rob[q]), ideal[q]);
    r.identity_residual = std::max(r.identity_residual, id_res);
    const double st_res = outcomes[q].degenerate
                              ? std::numeric_limits<double>::infinity()
                              : frobenius_distance(apply_normalized(gammas, outcomes[q].state).state, ideal[q]);
    r.state_residual = std::max(r.state_residual, st_res);
    r.fidelities.push_back(1.0 - 0.5 * st_res * st_res);
  }
  finish_exact(r, s.rob, ideal, lambdas, kExactTol);
  return r;
}

CertReport theorem2_certify(const SwapScenario& s) {
  if (s.kind.family != ScenarioKind::Family::bsm || s.tilt != 0.0) {
    throw std::invalid_argument("theorem2_certify: the robust bound applies to the Bell-state measurement");
  }
  const auto outcomes = run_swap(s);
  CertReport r;
  r.scenario = "bsm";
  for (const auto& o : outcomes) {
    r.probabilities.push_back(o.p);
    r.betas.push_back(o.degenerate ? -kTsirelson : o.beta);
  }
  // eta_star has infinite slope at q = 1, so rounding noise just below the
  // maximum would cost ~1e-7 in the bound.
  r.beta_ave = beta_ave(outcomes);
  if (r.beta_ave > kTsirelson - 1e-12) r.beta_ave = kTsirelson;
  if (!(r.beta_ave > 2.0)) {
    throw PreconditionError("average CHSH value " + std::to_string(r.beta_ave) + " does not exceed 2");
  }

  const Measurement ideal = measurement_basis(ScenarioKind::bsm());
  const FormalPaulis pa = formal_paulis_direct(s.alice);
  const FormalPaulis pc = formal_paulis_sum(s.charlie);
  const ChoiChannel ga = swap_channel(pa.x, pa.z);
  const ChoiChannel gc = swap_channel(pc.x, pc.z);

  for (int b = 0; b < 4; ++b) {
    if (outcomes[b].degenerate) {
      r.fidelities.push_back(0.0);
      continue;
    }
    const NormalizedOutput out = apply_normalized({ga, gc}, outcomes[b].state);
    r.extraction_deficit = std::max(r.extraction_deficit, std::abs(out.deficit));
    r.fidelities.push_back(fidelity_with_pure(hermitian_part(out.state), ideal[b]));
  }

  const CMatrix sa = apply_on_factor(ga, s.tau_ab1.mat(), 0);
  const CMatrix sc = apply_on_factor(gc, s.tau_b2c.mat(), 1);
  const DensityOperator sigma_ab1(hermitian_part(normalized(sa)));
  const DensityOperator sigma_b2c(hermitian_part(normalized(sc)));
  const RobustChoiPair pair = robust_choi_pair(sigma_ab1, sigma_b2c);

  const BoundPoint bp = bound_point(r.beta_ave);
  r.q = bp.q;
  r.eta_star = bp.eta_star;
  r.bound = bp.bound;
  r.qsep = qsep_refined_bound(ideal);
  r.marginal_bias_a = pair.marginal_bias_a;
  r.marginal_bias_c = pair.marginal_bias_c;
  r.marginals_within_eta_star = pair.marginal_bias_a <= bp.eta_star + 1e-9 && pair.marginal_bias_c <= bp.eta_star + 1e-9;
  r.constructive = q_of_simulation(s.bob, ideal, pair.first, pair.second);
  r.verdict = r.bound > r.qsep + 1e-12 ? Verdict::entangled_certified : Verdict::inconclusive;
  return r;
}

double bound_root(double lo, double hi, double tol) {
  const auto f = [](double beta) { return robust_bound(beta) - 0.5; };
  if (f(lo) > 0.0 || f(hi) < 0.0) throw std::invalid_argument("bound_root: interval does not bracket the root");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

NoiseThreshold werner_noise_threshold(double tol) {
  const auto bound_at = [](double v) { return theorem2_certify(werner_swap_scenario(v, v)).bound; };
  // 2 sqrt 2 v^2 > 2 requires v > 2^{-1/4}.
  double lo = 0.85, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (bound_at(mid) > 0.5 ? hi : lo) = mid;
  }
  const double v = 0.5 * (lo + hi);
  return {v, 1.0 - v * v, beta_ave(run_swap(werner_swap_scenario(v, v)))};
}

DualCertificate lemma_marginal_dual_check(double c) {
  if (!(c >= 0.5 && c < 1.0)) throw std::invalid_argument("lemma_marginal_dual_check: c must lie in [1/2, 1)");
  DualCertificate cert;
  cert.lambda1 = std::sqrt(c / (1.0 - c));
  cert.lambda2 = (2.0 * c - 1.0) / std::sqrt(c * (1.0 - c));
  cert.objective = cert.lambda1 - cert.lambda2 * c;
  const CMatrix slack = cert.lambda1 * identity(Dims{2, 2}) - cert.lambda2 * bell_state(0).mat() -
                        kron(pauli_z(), identity(2));
  cert.margin = min_eig(slack);
  if (cert.margin < -1e-9) throw CertificateError("dual certificate infeasible at c = " + std::to_string(c));
  if (std::abs(cert.objective - 2.0 * std::sqrt(c * (1.0 - c))) > 1e-10) {
    throw CertificateError("dual objective mismatch at c = " + std::to_string(c));
  }
  return cert;
}

double lemma_rescale_margin(const DensityOperator& nu, const std::function<double(double)>& t) {
  if (nu.mat().num_factors() != 2 || nu.dims()[0] != 2) {
    throw std::invalid_argument("lemma_rescale_margin: expected a qubit (x) qudit state");
  }
  const CMatrix na = partial_trace(nu.mat(), {0});
  const CMatrix nb = partial_trace(nu.mat(), {1});
  const double eta = marginal_bias(na);
  if (eta >= 1.0 - 1e-8) throw std::domain_error("lemma_rescale_margin: qubit marginal too close to pure");
  const CMatrix m = kron(inv_sqrtm(na), identity(nu.dims()[1]));
  const CMatrix mu = m * nu.mat() * m;
  const CMatrix slack = mu - s_of(eta) * nu.mat() + t(eta) * kron(0.5 * identity(2), nb);
  return min_eig(hermitian_part(slack));
}

double lemma_rescale_check(const DensityOperator& nu) {
  const double margin = lemma_rescale_margin(nu);
  if (margin < -1e-9) throw CertificateError("operator inequality violated: margin " + std::to_string(margin));
  return margin;
}

}  // namespace swapcert
