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

#include <cstdint>
#include <functional>
#include <vector>

#include "swapcert/certify.hpp"
#include "swapcert/random.hpp"

namespace swapcert {

/// Serial kernels are the reference; parallel kernels must agree bit for bit.
enum class Exec { serial, parallel };

/// Evaluates f(rng_i, i) for i < n, with rng_i = make_rng(seed, i).
std::vector<double> seeded_trials(std::uint64_t seed, int n, const std::function<double(Rng&, int)>& f,
                                  Exec exec = Exec::parallel);

/// n equally spaced points on [from, to] (both ends included).
std::vector<BoundPoint> bound_curve(double from, double to, int n, Exec exec = Exec::parallel);

/// Operator-inequality margins on `trials` random qubit (x) qudit states,
/// d_B cycling through 2, 3, 4 and the rank through all values.
std::vector<double> lemma2_sweep(std::uint64_t seed, int trials,
                                 const std::function<double(double)>& t = t_of, Exec exec = Exec::parallel);

struct WernerPoint {
  double v;
  double beta_ave;
  double bound;
  double constructive;
  bool marginals_within_eta_star;
  std::vector<double> fidelities;
  std::vector<double> g_values;  // g(beta_b)
};

/// Robust pipeline on Werner sources with visibility v on both sides.
std::vector<WernerPoint> werner_sweep(const std::vector<double>& vs, Exec exec = Exec::parallel);

}  // namespace swapcert
