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
#include <string>
#include <vector>

#include "swapcert/sweep.hpp"

namespace swapcert {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // worst residual or margin, suite-specific
  std::string detail;
};

/// Swap-gate relabeling identities on random anticommuting pairs
/// (dimensions 2, 4, 6), plus unitarity of the gate.
SuiteResult swap_lemma_suite(std::uint64_t seed, int trials = 100, Exec exec = Exec::parallel);

/// Dual certificates on c in {0.50, 0.55, ..., 0.95, 0.99} and saturation by
/// partially entangled states at theta in {pi/12, pi/8, pi/6}.
SuiteResult lemma1_suite();

/// Operator inequality on random qubit (x) qudit states. `t` is injectable so
/// that a corrupted t(eta) can be shown to fail.
SuiteResult lemma2_suite(std::uint64_t seed, int trials = 1000, const std::function<double(double)>& t = t_of,
                         Exec exec = Exec::parallel);

/// Separable thresholds and their product-basis witnesses.
SuiteResult qsep_suite();

/// Single-trace tensor application against factor-wise application.
SuiteResult tensor_suite(std::uint64_t seed, int trials = 100, Exec exec = Exec::parallel);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, const std::function<double(double)>& t = t_of);

/// Measurement with elements |00>, |11>, Phi^2, Phi^3.
Measurement mixed_product_bell_basis();
/// Computational product basis on two qubits.
Measurement product_basis();

}  // namespace swapcert
