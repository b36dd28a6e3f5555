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

#include "swapcert/network.hpp"

#include <stdexcept>

#include "swapcert/random.hpp"

namespace swapcert {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Projects `global` with `m` (already lifted to the full space) and reduces
// onto `keep`.
ConditionalOutcome condition(const CMatrix& global, const CMatrix& m, std::span<const int> keep, std::string label) {
  const CMatrix projected = m * global;
  ConditionalOutcome out;
  out.label = std::move(label);
  out.p = projected.trace().real();
  if (out.p < kDegenerateProb) {
    out.degenerate = true;
    return out;
  }
  // Tr_B[(1 (x) B) rho] is Hermitian; the explicit symmetrization only
  // removes rounding residue.
  out.state = (1.0 / out.p) * hermitian_part(partial_trace(projected, keep));
  return out;
}

Settings conjugate(const Settings& s, const Mat& u) {
  return {CMatrix(u * s.o0.mat() * u.adjoint(), s.o0.dims()), CMatrix(u * s.o1.mat() * u.adjoint(), s.o1.dims())};
}

CMatrix ket0() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  return CMatrix(m);
}

// tau on (P, R) -> tau (x) |00><00| regrouped as (P a, R r), then rotated.
DensityOperator embed_source(const DensityOperator& tau, const Mat& up, const Mat& ur) {
  CMatrix t = permute_factors(kron({tau.mat(), ket0(), ket0()}), {0, 2, 1, 3});
  t = merge_factors(merge_factors(t, 2, 4), 0, 2);
  const Mat u = kron(CMatrix(up), CMatrix(ur)).mat();
  return DensityOperator(CMatrix(u * t.mat() * u.adjoint(), t.dims()));
}

Settings embed_settings(const Settings& s, const Mat& u) {
  const CMatrix id = identity(2);
  Settings big{kron(s.o0, id), kron(s.o1, id)};
  big.o0 = big.o0.with_dims({big.o0.dim()});
  big.o1 = big.o1.with_dims({big.o1.dim()});
  return conjugate(big, u);
}

// Measurement on n input factors -> the same measurement with an ancilla
// qubit appended to every factor flagged in `augment`, conjugated by the
// tensor product of `us` (sized for the enlarged factors).
Measurement embed_measurement(const Measurement& m, const std::vector<Mat>& us, const std::vector<bool>& augment) {
  const int n = static_cast<int>(us.size());
  require(m.elements().front().num_factors() == n, "embed_ancilla: measurement factorization mismatch");
  // Factor order after appending ancillas: inputs 0..n-1, then one ancilla per
  // augmented input. perm interleaves each ancilla behind its input.
  std::vector<int> perm;
  Dims dims;
  int next = n;
  for (int k = 0; k < n; ++k) {
    perm.push_back(k);
    if (augment[k]) perm.push_back(next++);
    dims.push_back(m.dims()[k] * (augment[k] ? 2 : 1));
  }
  CMatrix u = CMatrix(us[0]);
  for (int k = 1; k < n; ++k) u = kron(u, CMatrix(us[k]));

  std::vector<CMatrix> el;
  for (const auto& e : m.elements()) {
    CMatrix big = e;
    for (int k = 0; k < n; ++k) {
      if (augment[k]) big = kron(big, identity(2));
    }
    big = permute_factors(big, perm).with_dims(dims);
    el.emplace_back(u.mat() * big.mat() * u.mat().adjoint(), dims);
  }
  return {std::move(el), m.labels()};
}

}  // namespace

void SwapScenario::validate() const {
  require(tau_ab1.mat().num_factors() == 2 && tau_b2c.mat().num_factors() == 2,
          "SwapScenario: sources must be bipartite");
  require(bob.elements().front().num_factors() == 2, "SwapScenario: Bob's measurement must act on B1 (x) B2");
  require(bob.dims()[0] == tau_ab1.dims()[1] && bob.dims()[1] == tau_b2c.dims()[0],
          "SwapScenario: Bob's measurement does not match the sources");
  require(alice.o0.dim() == tau_ab1.dims()[0] && alice.o1.dim() == tau_ab1.dims()[0],
          "SwapScenario: Alice's observables do not match her system");
  require(charlie.o0.dim() == tau_b2c.dims()[1] && charlie.o1.dim() == tau_b2c.dims()[1],
          "SwapScenario: Charlie's observables do not match his system");
  require(bob.size() == 4, "SwapScenario: Bob's measurement must have four outcomes");
}

void StarScenario::validate() const {
  require(rob.size() == 8, "StarScenario: Rob's measurement must have eight outcomes");
  require(rob.elements().front().num_factors() == 3, "StarScenario: Rob's measurement must act on three inputs");
  for (int k = 0; k < 3; ++k) {
    require(sources[k].mat().num_factors() == 2, "StarScenario: sources must be bipartite");
    require(rob.dims()[k] == sources[k].dims()[1], "StarScenario: Rob's measurement does not match the sources");
    require(parties[k].o0.dim() == sources[k].dims()[0], "StarScenario: party observables do not match");
  }
}

CMatrix swap_bell_operator(const SwapScenario& s, int b) {
  return s.tilt == 0.0 ? chsh_operator(b, s.alice, s.charlie) : tilted_chsh_operator(b, s.tilt, s.alice, s.charlie);
}

std::vector<ConditionalOutcome> run_swap(const SwapScenario& s) {
  s.validate();
  const CMatrix global = kron(s.tau_ab1.mat(), s.tau_b2c.mat());
  const CMatrix ia = identity(s.tau_ab1.dims()[0]);
  const CMatrix ic = identity(s.tau_b2c.dims()[1]);
  static constexpr int keep[] = {0, 3};
  std::vector<ConditionalOutcome> out;
  for (int b = 0; b < 4; ++b) {
    ConditionalOutcome o = condition(global, kron({ia, s.bob[b], ic}), keep, s.bob.labels()[b]);
    if (!o.degenerate) {
      o.state = o.state.with_dims({s.tau_ab1.dims()[0], s.tau_b2c.dims()[1]});
      o.beta = hs_inner(o.state, swap_bell_operator(s, b));
    }
    out.push_back(std::move(o));
  }
  return out;
}

double beta_ave(const std::vector<ConditionalOutcome>& outcomes) {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.p * (o.degenerate ? -kTsirelson : o.beta);
  return acc;
}

std::vector<ConditionalOutcome> run_star(const StarScenario& s) {
  s.validate();
  CMatrix global = kron({s.sources[0].mat(), s.sources[1].mat(), s.sources[2].mat()});
  global = permute_factors(global, {0, 2, 4, 1, 3, 5});
  const CMatrix iabc = identity(Dims{s.sources[0].dims()[0], s.sources[1].dims()[0], s.sources[2].dims()[0]});
  static constexpr int keep[] = {0, 1, 2};
  std::vector<ConditionalOutcome> out;
  for (int r = 0; r < 8; ++r) {
    ConditionalOutcome o = condition(global, kron(iabc, s.rob[r]), keep, s.rob.labels()[r]);
    if (!o.degenerate) {
      o.beta = hs_inner(o.state, mermin_operator(GhzLabel::from_index(r), s.parties[0], s.parties[1], s.parties[2]));
    }
    out.push_back(std::move(o));
  }
  return out;
}

SwapScenario misaligned_scenario(const SwapScenario& base, double angle) {
  // exp(-i angle sigma_y / 2) on Charlie's first qubit.
  Mat r(2, 2);
  r << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2);
  const int rest = base.charlie.o0.dim() / 2;
  require(rest * 2 == base.charlie.o0.dim(), "misaligned_scenario: Charlie holds no qubit");
  const Mat u = kron(CMatrix(r), identity(rest)).mat();
  SwapScenario s = base;
  s.charlie = conjugate(base.charlie, u);
  return s;
}

SwapScenario ideal_swap_scenario(const ScenarioKind& kind) { return werner_swap_scenario(1.0, 1.0, kind); }

SwapScenario werner_swap_scenario(double v1, double v2, const ScenarioKind& kind) {
  require(kind.family != ScenarioKind::Family::ghz, "werner_swap_scenario: use the star scenario for ghz");
  const auto obs = ideal_observables(kind);
  const double tilt = kind.family == ScenarioKind::Family::tilted ? tilt_weight(kind.theta) : 0.0;
  return {werner_source(v1), werner_source(v2), measurement_basis(kind), obs[0], obs[1], tilt, kind};
}

SwapScenario with_povm_noise(const SwapScenario& s, double p) {
  SwapScenario out = s;
  out.bob = noisy_measurement(s.bob, p);
  return out;
}

StarScenario ideal_star_scenario() { return werner_star_scenario(1.0); }

StarScenario werner_star_scenario(double v) {
  const auto obs = ideal_observables(ScenarioKind::ghz());
  const DensityOperator w = werner_source(v);
  return {{w, w, w}, measurement_basis(ScenarioKind::ghz()), {obs[0], obs[1], obs[2]}};
}

SwapScenario embed_ancilla(const SwapScenario& s, std::uint64_t seed) {
  s.validate();
  Rng rng = make_rng(seed);
  const Mat ua = haar_unitary(2 * s.tau_ab1.dims()[0], rng);
  const Mat ub1 = haar_unitary(2 * s.tau_ab1.dims()[1], rng);
  const Mat ub2 = haar_unitary(2 * s.tau_b2c.dims()[0], rng);
  const Mat uc = haar_unitary(2 * s.tau_b2c.dims()[1], rng);
  SwapScenario out = s;
  out.tau_ab1 = embed_source(s.tau_ab1, ua, ub1);
  out.tau_b2c = embed_source(s.tau_b2c, ub2, uc);
  out.bob = embed_measurement(s.bob, {ub1, ub2}, {true, true});
  out.alice = embed_settings(s.alice, ua);
  out.charlie = embed_settings(s.charlie, uc);
  return out;
}

StarScenario embed_ancilla(const StarScenario& s, std::uint64_t seed) {
  s.validate();
  // Only the first source is augmented: three augmented sources would span
  // a 4096-dimensional global space.
  Rng rng = make_rng(seed);
  const Mat up = haar_unitary(2 * s.sources[0].dims()[0], rng);
  const Mat ur = haar_unitary(2 * s.sources[0].dims()[1], rng);
  std::vector<Mat> rob_us{ur, Mat::Identity(s.sources[1].dims()[1], s.sources[1].dims()[1]),
                          Mat::Identity(s.sources[2].dims()[1], s.sources[2].dims()[1])};
  StarScenario out = s;
  out.sources[0] = embed_source(s.sources[0], up, ur);
  out.parties[0] = embed_settings(s.parties[0], up);
  out.rob = embed_measurement(s.rob, rob_us, {true, false, false});
  return out;
}

}  // namespace swapcert
