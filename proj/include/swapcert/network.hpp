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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "swapcert/qobjects.hpp"

namespace swapcert {

/// Entanglement swapping: tau_{AB1} (x) tau_{B2C}, Bob measures B1B2, Alice and
/// Charlie hold two settings each. Factor order A, B1, B2, C throughout.
struct SwapScenario {
  DensityOperator tau_ab1;
  DensityOperator tau_b2c;
  Measurement bob;
  Settings alice;
  Settings charlie;
  /// Weight of the single-party term in the conditional Bell operators; 0
  /// selects plain CHSH_b.
  double tilt = 0.0;
  ScenarioKind kind = ScenarioKind::bsm();

  void validate() const;
};

/// GHZ star: tau_{P R_P} for P = A, B, C; Rob measures R_A R_B R_C.
/// Global factor order A, B, C, R_A, R_B, R_C.
struct StarScenario {
  std::array<DensityOperator, 3> sources;
  Measurement rob;
  std::array<Settings, 3> parties;

  void validate() const;
};

struct ConditionalOutcome {
  std::string label;
  double p = 0.0;
  CMatrix state;  // unspecified when degenerate
  double beta = 0.0;
  bool degenerate = false;
};

inline constexpr double kDegenerateProb = 1e-12;

/// Bell operator attached to outcome b of a swap scenario.
CMatrix swap_bell_operator(const SwapScenario& s, int b);

std::vector<ConditionalOutcome> run_swap(const SwapScenario& s);
/// Sum_b p_b beta_b, degenerate outcomes counted at -2 sqrt 2.
double beta_ave(const std::vector<ConditionalOutcome>& outcomes);
std::vector<ConditionalOutcome> run_star(const StarScenario& s);

/// Rotates Charlie's settings by exp(-i angle sigma_y / 2) on his first qubit.
SwapScenario misaligned_scenario(const SwapScenario& base, double angle);

SwapScenario ideal_swap_scenario(const ScenarioKind& kind = ScenarioKind::bsm());
SwapScenario werner_swap_scenario(double v1, double v2, const ScenarioKind& kind = ScenarioKind::bsm());
SwapScenario with_povm_noise(const SwapScenario& s, double p);
StarScenario ideal_star_scenario();
StarScenario werner_star_scenario(double v);

/// Adds |0> ancilla qubits and hides them under seeded random local unitaries;
/// statistics are unchanged. The swap version augments every system, the star
/// version both ends of the first source.
SwapScenario embed_ancilla(const SwapScenario& s, std::uint64_t seed);
StarScenario embed_ancilla(const StarScenario& s, std::uint64_t seed);

}  // namespace swapcert
