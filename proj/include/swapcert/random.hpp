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
#include <random>
#include <vector>

#include "swapcert/qlinalg.hpp"

namespace swapcert {

using Rng = std::mt19937_64;

/// Generator for trial `index` of a seeded family. Every trial owns its own
/// stream, so results do not depend on evaluation order.
Rng make_rng(std::uint64_t seed, std::uint64_t index = 0);

Mat haar_unitary(int d, Rng& rng);
Vec random_pure_state(int d, Rng& rng);
/// Ginibre-induced density matrix; rank <= 0 means full rank.
CMatrix random_density(int d, Rng& rng, int rank = 0);
CMatrix random_hermitian(int d, Rng& rng);

struct AnticommutingPair {
  CMatrix x;
  CMatrix z;
};

/// X = U(sx (x) 1)U^dagger, Z = U(sz (x) 1)U^dagger on an even dimension d.
AnticommutingPair random_anticommuting_pair(int d, Rng& rng);

/// Kraus operators (out x in) of a random trace-preserving map.
std::vector<Mat> random_kraus(int out, int in, int rank, Rng& rng);

}  // namespace swapcert
