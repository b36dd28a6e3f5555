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

#include "oracle.hpp"
#include "swapcert/network.hpp"
#include "swapcert/random.hpp"

using namespace swapcert;

namespace {

// p_r tau^r on A B C for three sources on (P, R_P) and an element on R_A R_B R_C,
// by explicit index sums in the interleaved source order.
oracle::M star_conditional(const std::array<oracle::M, 3>& rho, const oracle::M& e) {
  oracle::M out = oracle::M::Zero(8, 8);
  for (int x = 0; x < 8; ++x)
    for (int xp = 0; xp < 8; ++xp)
      for (int r = 0; r < 8; ++r)
        for (int rp = 0; rp < 8; ++rp) {
          oracle::C acc = e(rp, r);
          for (int k = 0; k < 3; ++k) {
            const int sh = 2 - k;
            const int p = (x >> sh) & 1, pp = (xp >> sh) & 1, q = (r >> sh) & 1, qp = (rp >> sh) & 1;
            acc *= rho[k](p * 2 + q, pp * 2 + qp);
          }
          out(x, xp) += acc;
        }
  return out;
}

Measurement random_povm(int d, int n, Rng& rng) {
  // Square-root measurement built from random positive operators.
  std::vector<CMatrix> raw;
  CMatrix sum = 0.0 * identity(d);
  for (int k = 0; k < n; ++k) {
    raw.push_back(random_density(d, rng, 1 + k % d));
    sum += raw.back();
  }
  const CMatrix w = inv_sqrtm(sum);
  std::vector<CMatrix> el;
  for (const auto& r : raw) el.push_back(hermitian_part(w * r * w).with_dims({2, 2}));
  return Measurement(el);
}

double sum_p(const std::vector<ConditionalOutcome>& out) {
  double s = 0;
  for (const auto& o : out) s += o.p;
  return s;
}

}  // namespace

TEST_CASE("ideal swap scenario") {
  const auto out = run_swap(ideal_swap_scenario());
  REQUIRE(out.size() == 4);
  for (int b = 0; b < 4; ++b) {
    CHECK(out[b].p == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(frobenius_distance(out[b].state, bell_state(b).mat()) < 1e-14);
    CHECK(out[b].beta == doctest::Approx(kTsirelson).epsilon(1e-14));
    CHECK_FALSE(out[b].degenerate);
  }
  CHECK(beta_ave(out) == doctest::Approx(kTsirelson).epsilon(1e-14));
}

TEST_CASE("Werner swap scenario against the brute-force oracle") {
  for (double v : {1.0, 0.975, 0.9, 0.7, 0.3}) {
    const auto out = run_swap(werner_swap_scenario(v, v));
    const oracle::M rho = oracle::werner(v);
    for (int b = 0; b < 4; ++b) {
      const oracle::M cond = oracle::conditional(rho, rho, oracle::proj(oracle::bell(b)));
      const double p = oracle::trace_re(cond);
      CHECK(out[b].p == doctest::Approx(p).epsilon(1e-13));
      CHECK((out[b].state.mat() - cond / p).norm() < 1e-13);
      CHECK(out[b].beta == doctest::Approx(oracle::trace_re(cond / p * oracle::chsh(b))).epsilon(1e-13));
      CHECK(out[b].beta == doctest::Approx(kTsirelson * v * v).epsilon(1e-13));
    }
  }
  CHECK(beta_ave(run_swap(werner_swap_scenario(0.975, 0.975))) == doctest::Approx(2.6887).epsilon(5e-5));
}

TEST_CASE("beta_ave") {
  std::vector<ConditionalOutcome> out(4);
  for (auto& o : out) {
    o.p = 0.25;
    o.beta = 2.5;
  }
  CHECK(beta_ave(out) == doctest::Approx(2.5));
  out[0].p = 0.5;
  out[1].p = 0.5;
  out[1].beta = 2.0;
  out[2].p = out[3].p = 0.0;
  out[2].degenerate = out[3].degenerate = true;
  CHECK(beta_ave(out) == doctest::Approx(2.25));
}

TEST_CASE("tilted swap scenarios") {
  for (double theta : {kPi / 8, kPi / 6}) {
    const auto out = run_swap(ideal_swap_scenario(ScenarioKind::tilted(theta)));
    const double want = std::sqrt(8.0 + 2.0 * tilt_weight(theta) * tilt_weight(theta));
    for (int b = 0; b < 4; ++b) {
      CHECK(out[b].p == doctest::Approx(0.25).epsilon(1e-13));
      CHECK(frobenius_distance(out[b].state, tilted_bell_state(theta, b).mat()) < 1e-13);
      CHECK(out[b].beta == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("random scenarios") {
  for (int t = 0; t < 200; ++t) {
    Rng rng = make_rng(1111, t);
    SwapScenario s = ideal_swap_scenario();
    s.tau_ab1 = DensityOperator(random_density(4, rng, 1 + t % 4).with_dims({2, 2}));
    s.tau_b2c = DensityOperator(random_density(4, rng, 1 + t % 3).with_dims({2, 2}));
    s.bob = random_povm(4, 4, rng);
    const auto out = run_swap(s);
    REQUIRE(sum_p(out) == doctest::Approx(1.0).epsilon(1e-10));

    CMatrix mix = 0.0 * identity(Dims{2, 2});
    for (int b = 0; b < 4; ++b) {
      const auto& o = out[b];
      REQUIRE(std::abs(o.beta) <= 4.0 + 1e-9);
      if (o.degenerate) continue;
      REQUIRE(o.state.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
      REQUIRE(min_eig(hermitian_part(o.state)) >= -1e-10);
      REQUIRE((o.state.mat() - oracle::conditional(s.tau_ab1.mat().mat(), s.tau_b2c.mat().mat(), s.bob[b].mat()) / o.p)
                  .norm() < 1e-10);
      mix += o.p * o.state;
    }
    const CMatrix ac = kron(partial_trace(s.tau_ab1.mat(), {0}), partial_trace(s.tau_b2c.mat(), {1}));
    REQUIRE(frobenius_distance(mix, ac) < 1e-10);
  }
}

TEST_CASE("separable sources with a product measurement stay local") {
  for (int t = 0; t < 100; ++t) {
    Rng rng = make_rng(1212, t);
    SwapScenario s = ideal_swap_scenario();
    auto product_source = [&]() {
      CMatrix rho = 0.0 * identity(Dims{2, 2});
      for (int k = 0; k < 3; ++k) rho += (1.0 / 3.0) * kron(random_density(2, rng), random_density(2, rng));
      return DensityOperator(rho);
    };
    s.tau_ab1 = product_source();
    s.tau_b2c = product_source();
    std::vector<CMatrix> el;
    const Mat u1 = haar_unitary(2, rng), u2 = haar_unitary(2, rng);
    for (int b = 0; b < 4; ++b) {
      Vec e1 = u1.col(b / 2), e2 = u2.col(b % 2);
      el.push_back(kron(projector(e1, {2}), projector(e2, {2})));
    }
    s.bob = Measurement(el);
    REQUIRE(beta_ave(run_swap(s)) <= 2.0 + 1e-9);
  }
}

TEST_CASE("degenerate outcomes") {
  SwapScenario s = ideal_swap_scenario();
  Vec e = Vec::Zero(4);
  e[0] = 1.0;
  const DensityOperator zero(projector(e, {2, 2}));
  s.tau_ab1 = zero;
  s.tau_b2c = zero;
  std::vector<CMatrix> el;
  for (int b = 0; b < 4; ++b) {
    Vec k = Vec::Zero(4);
    k[b] = 1.0;
    el.push_back(projector(k, {2, 2}));
  }
  s.bob = Measurement(el);
  const auto out = run_swap(s);
  CHECK_FALSE(out[0].degenerate);
  for (int b = 1; b < 4; ++b) {
    CHECK(out[b].degenerate);
    CHECK(out[b].beta == 0.0);
  }
  CHECK(beta_ave(out) == doctest::Approx(out[0].beta));
}

TEST_CASE("scenario validation") {
  SwapScenario s = ideal_swap_scenario();
  s.alice.o0 = identity(3);
  CHECK_THROWS_AS(run_swap(s), std::invalid_argument);
  SwapScenario t = ideal_swap_scenario();
  t.tau_b2c = DensityOperator(0.125 * identity(Dims{4, 2}));
  CHECK_THROWS_AS(run_swap(t), std::invalid_argument);
}

TEST_CASE("misalignment") {
  const SwapScenario base = ideal_swap_scenario();
  const auto b0 = run_swap(base);
  const auto same = run_swap(misaligned_scenario(base, 0.0));
  for (int b = 0; b < 4; ++b) CHECK(same[b].beta == doctest::Approx(b0[b].beta).epsilon(1e-14));

  // Independent evaluation at a quarter turn.
  const double phi = kPi / 2;
  oracle::M r(2, 2);
  r << std::cos(phi / 2), -std::sin(phi / 2), std::sin(phi / 2), std::cos(phi / 2);
  const oracle::M c0 = r * (oracle::sz() + oracle::sx()) / oracle::kSqrt2 * r.adjoint();
  const oracle::M c1 = r * (oracle::sz() - oracle::sx()) / oracle::kSqrt2 * r.adjoint();
  const oracle::M a0 = oracle::sz(), a1 = oracle::sx();
  const oracle::M w0 = oracle::kron(a0, c0) + oracle::kron(a0, c1) + oracle::kron(a1, c0) - oracle::kron(a1, c1);
  const double want = oracle::trace_re(oracle::proj(oracle::bell(0)) * w0);
  const auto quarter = run_swap(misaligned_scenario(base, phi));
  CHECK(quarter[0].beta == doctest::Approx(want).epsilon(1e-13));
  CHECK(std::abs(quarter[0].beta) < 1e-12);

  double prev = beta_ave(b0);
  for (int k = 1; k <= 314; ++k) {
    const double cur = beta_ave(run_swap(misaligned_scenario(base, 0.01 * k)));
    REQUIRE(std::abs(cur - prev) < 0.2);
    prev = cur;
  }
}

TEST_CASE("POVM noise") {
  const auto out = run_swap(with_povm_noise(ideal_swap_scenario(), 0.1));
  // B^b = 0.9 Phi^b + 0.1 I/4: conditional states are 0.9 Phi^b + 0.1 I/4.
  for (int b = 0; b < 4; ++b) {
    CHECK(out[b].p == doctest::Approx(0.25));
    CHECK(out[b].beta == doctest::Approx(0.9 * kTsirelson).epsilon(1e-13));
  }
}

TEST_CASE("ancilla embedding leaves statistics unchanged") {
  for (const auto& kind : {ScenarioKind::bsm(), ScenarioKind::tilted(kPi / 8)}) {
    const SwapScenario s = werner_swap_scenario(0.95, 0.9, kind);
    const auto plain = run_swap(s);
    const auto emb = run_swap(embed_ancilla(s, 42));
    for (int b = 0; b < 4; ++b) {
      CHECK(emb[b].p == doctest::Approx(plain[b].p).epsilon(1e-12));
      CHECK(emb[b].beta == doctest::Approx(plain[b].beta).epsilon(1e-12));
      CHECK(emb[b].state.dim() == 16);
    }
  }
  const auto star = run_star(werner_star_scenario(0.9));
  const auto estar = run_star(embed_ancilla(werner_star_scenario(0.9), 7));
  for (int r = 0; r < 8; ++r) {
    CHECK(estar[r].p == doctest::Approx(star[r].p).epsilon(1e-12));
    CHECK(estar[r].beta == doctest::Approx(star[r].beta).epsilon(1e-12));
  }
}

TEST_CASE("GHZ star network") {
  const auto out = run_star(ideal_star_scenario());
  REQUIRE(out.size() == 8);
  for (int r = 0; r < 8; ++r) {
    CHECK(out[r].p == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(frobenius_distance(out[r].state, ghz_state(GhzLabel::from_index(r)).mat()) < 1e-14);
    CHECK(out[r].beta == doctest::Approx(4.0).epsilon(1e-14));
  }
  CHECK(sum_p(out) == doctest::Approx(1.0));

  for (double v : {0.95, 0.8}) {
    const auto w = run_star(werner_star_scenario(v));
    const oracle::M rho = oracle::werner(v);
    for (int r = 0; r < 8; ++r) {
      const oracle::M cond =
          star_conditional({rho, rho, rho}, ghz_state(GhzLabel::from_index(r)).mat().mat());
      const double p = oracle::trace_re(cond);
      CHECK(w[r].p == doctest::Approx(p).epsilon(1e-13));
      CHECK((w[r].state.mat() - cond / p).norm() < 1e-13);
      CHECK(w[r].beta == doctest::Approx(4.0 * v * v * v).epsilon(1e-13));
    }
    CHECK(sum_p(w) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
