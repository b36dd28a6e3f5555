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

#include "swapcert/optimize.hpp"

#include <stdexcept>
#include <vector>

#include "swapcert/random.hpp"

namespace swapcert {

namespace {

// Kraus stack K = [K_1 ... K_r] (out x r*in) with K K^dagger = 1.
struct Stack {
  Mat k;
  int out;
  int in;
};

CMatrix choi_of(const Stack& s) {
  const int r = static_cast<int>(s.k.cols()) / s.in;
  std::vector<Mat> kraus;
  for (int j = 0; j < r; ++j) kraus.push_back(s.k.middleCols(j * s.in, s.in));
  return choi_from_kraus(kraus).choi();
}

Stack random_stack(int out, int in, Rng& rng) {
  const int width = out * in * in;
  return {haar_unitary(width, rng).topRows(out), out, in};
}

Stack stack_from(const ChoiChannel& ch) {
  const int out = ch.out_dim(), in = ch.in_dim();
  const int width = out * in * in;
  Stack s{Mat::Zero(out, width), out, in};
  const auto kraus = ch.kraus();
  if (static_cast<int>(kraus.size()) * in > width) throw std::invalid_argument("q_heuristic_search: Kraus rank too large");
  for (std::size_t j = 0; j < kraus.size(); ++j) s.k.middleCols(j * in, in) = kraus[j];
  return s;
}

// Tr(C G) with C = sum_j vec(K_j) vec(K_j)^dagger.
double value_of(const Stack& s, const Mat& g) { return (choi_of(s).mat() * g).trace().real(); }

// One minorize-maximize step: K <- polar(G-shifted gradient).
void polar_step(Stack& s, const Mat& g) {
  const int r = static_cast<int>(s.k.cols()) / s.in;
  const int n = s.out * s.in;
  const double shift = std::max(0.0, -eig_hermitian(CMatrix(g)).values.minCoeff());
  const Mat gp = g + shift * Mat::Identity(n, n);
  Mat w(s.out, s.k.cols());
  for (int j = 0; j < r; ++j) {
    Vec v(n);
    for (int o = 0; o < s.out; ++o) {
      for (int i = 0; i < s.in; ++i) v[o * s.in + i] = s.k(o, j * s.in + i);
    }
    const Vec gv = gp * v;
    for (int o = 0; o < s.out; ++o) {
      for (int i = 0; i < s.in; ++i) w(o, j * s.in + i) = gv[o * s.in + i];
    }
  }
  Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() < 1e-14) return;  // no unique ascent direction
  s.k = svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

HeuristicResult q_heuristic_search(const Measurement& real, const Measurement& ideal, int seeds, std::uint64_t seed,
                                   const std::optional<std::pair<ChoiChannel, ChoiChannel>>& warm) {
  if (real.size() != ideal.size()) throw std::invalid_argument("q_heuristic_search: outcome counts differ");
  if (real.dims().size() != 2 || ideal.dims().size() != 2) {
    throw std::invalid_argument("q_heuristic_search: measurements must be bipartite");
  }
  const int i1 = real.dims()[0], i2 = real.dims()[1];
  const int o1 = ideal.dims()[0], o2 = ideal.dims()[1];
  if (i1 > 4 || i2 > 4 || o1 > 4 || o2 > 4) throw std::invalid_argument("q_heuristic_search: dimensions too large");

  // Objective = sum_j Tr[M_j (C1 (x) C2)] / (o1 o2), M_j on (o1, i1, o2, i2).
  std::vector<CMatrix> ms;
  for (std::size_t j = 0; j < real.size(); ++j) {
    const CMatrix pf = kron(ideal[j].with_dims({o1, o2}), real[j].transpose().with_dims({i1, i2}));
    ms.push_back(permute_factors(pf, {0, 2, 1, 3}));
  }
  const double norm = 1.0 / (o1 * o2);
  const auto grad1 = [&](const CMatrix& c2) {
    Mat g = Mat::Zero(o1 * i1, o1 * i1);
    const CMatrix lift = kron(identity(Dims{o1, i1}), c2.with_dims({o2, i2}));
    for (const auto& m : ms) g += partial_trace(m * lift, {0, 1}).mat();
    return Mat(norm * 0.5 * (g + g.adjoint()));
  };
  const auto grad2 = [&](const CMatrix& c1) {
    Mat g = Mat::Zero(o2 * i2, o2 * i2);
    const CMatrix lift = kron(c1.with_dims({o1, i1}), identity(Dims{o2, i2}));
    for (const auto& m : ms) g += partial_trace(m * lift, {2, 3}).mat();
    return Mat(norm * 0.5 * (g + g.adjoint()));
  };

  std::vector<std::pair<Stack, Stack>> starts;
  if (warm) starts.emplace_back(stack_from(warm->first), stack_from(warm->second));
  if (i1 == o1 && i2 == o2) starts.emplace_back(stack_from(identity_channel(o1)), stack_from(identity_channel(o2)));
  for (int k = 0; k < seeds; ++k) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(k));
    Stack a = random_stack(o1, i1, rng);
    Stack b = random_stack(o2, i2, rng);
    starts.emplace_back(std::move(a), std::move(b));
  }
  if (starts.empty()) throw std::invalid_argument("q_heuristic_search: no starting points");

  std::optional<HeuristicResult> best;
  for (auto& [s1, s2] : starts) {
    double prev = -1.0;
    for (int it = 0; it < 300; ++it) {
      for (int inner = 0; inner < 3; ++inner) polar_step(s1, grad1(choi_of(s2)));
      for (int inner = 0; inner < 3; ++inner) polar_step(s2, grad2(choi_of(s1)));
      const double cur = value_of(s1, grad1(choi_of(s2)));
      if (cur - prev < 1e-13) break;
      prev = cur;
    }
    const ChoiChannel c1(choi_of(s1), o1, i1), c2(choi_of(s2), o2, i2);
    if (!c1.is_cp() || !c1.is_unital() || !c2.is_cp() || !c2.is_unital()) continue;
    const double v = q_of_simulation(real, ideal, c1, c2);
    if (!best || v > best->value) best = HeuristicResult{v, c1, c2};
  }
  if (!best) throw std::runtime_error("q_heuristic_search: no valid channel pair found");
  return *best;
}

double q_heuristic_optimize(const Measurement& real, const Measurement& ideal, int seeds, std::uint64_t seed) {
  return q_heuristic_search(real, ideal, seeds, seed).value;
}

}  // namespace swapcert
