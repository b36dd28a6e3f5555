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

#include "swapcert/sweep.hpp"

#include <exception>
#include <stdexcept>

namespace swapcert {

namespace {

// Runs body(i) for i < n. Exceptions are captured per index and the first one
// (in index order) is rethrown, so both modes fail identically.
template <typename Body>
void for_each_index(int n, Exec exec, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<double> seeded_trials(std::uint64_t seed, int n, const std::function<double(Rng&, int)>& f, Exec exec) {
  std::vector<double> out(n);
  for_each_index(n, exec, [&](int i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    out[i] = f(rng, i);
  });
  return out;
}

std::vector<BoundPoint> bound_curve(double from, double to, int n, Exec exec) {
  if (n < 2 || !(from < to)) throw std::invalid_argument("bound_curve: need n >= 2 and from < to");
  std::vector<BoundPoint> out(n);
  for_each_index(n, exec, [&](int i) {
    const double beta = i == n - 1 ? to : from + (to - from) * i / (n - 1);
    out[i] = bound_point(beta);
  });
  return out;
}

std::vector<double> lemma2_sweep(std::uint64_t seed, int trials, const std::function<double(double)>& t,
                                 Exec exec) {
  return seeded_trials(
      seed, trials,
      [&t](Rng& rng, int i) {
        const int db = 2 + i % 3;
        const int rank = 1 + (i / 3) % (2 * db);
        const CMatrix nu = random_density(2 * db, rng, rank).with_dims({2, db});
        return lemma_rescale_margin(DensityOperator(nu), t);
      },
      exec);
}

std::vector<WernerPoint> werner_sweep(const std::vector<double>& vs, Exec exec) {
  const int n = static_cast<int>(vs.size());
  std::vector<WernerPoint> out(n);
  for_each_index(n, exec, [&](int i) {
    const CertReport r = theorem2_certify(werner_swap_scenario(vs[i], vs[i]));
    WernerPoint& w = out[i];
    w.v = vs[i];
    w.beta_ave = r.beta_ave;
    w.bound = r.bound;
    w.constructive = r.constructive;
    w.marginals_within_eta_star = r.marginals_within_eta_star;
    w.fidelities = r.fidelities;
    for (double b : r.betas) w.g_values.push_back(g_extraction(b));
  });
  return out;
}

}  // namespace swapcert
