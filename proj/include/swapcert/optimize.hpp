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
#include <optional>
#include <utility>

#include "swapcert/certify.hpp"

namespace swapcert {

struct HeuristicResult {
  double value;  // q_of_simulation at the returned pair
  ChoiChannel first;
  ChoiChannel second;
};

/// Seeded alternating ascent over pairs of unital CP maps for the simulation
/// objective of two-factor measurements. Each step maximizes the linearized
/// objective over a Kraus stack K with K K^dagger = 1 (a polar decomposition),
/// which never decreases the objective. When input and output dimensions
/// agree the identity pair is tried first. The result is a lower bound on Q.
HeuristicResult q_heuristic_search(const Measurement& real, const Measurement& ideal, int seeds,
                                   std::uint64_t seed = 1,
                                   const std::optional<std::pair<ChoiChannel, ChoiChannel>>& warm = std::nullopt);

double q_heuristic_optimize(const Measurement& real, const Measurement& ideal, int seeds, std::uint64_t seed = 1);

}  // namespace swapcert
