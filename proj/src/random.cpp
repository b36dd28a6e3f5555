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

#include "swapcert/random.hpp"

#include <stdexcept>

namespace swapcert {

namespace {

Mat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Mat g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Mat haar_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(ginibre(d, d, rng));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  // Fix column phases so that Q is Haar distributed.
  for (int k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

Vec random_pure_state(int d, Rng& rng) {
  Vec v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_density(int d, Rng& rng, int rank) {
  const int k = rank <= 0 ? d : rank;
  const Mat g = ginibre(d, k, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return CMatrix(std::move(rho));
}

CMatrix random_hermitian(int d, Rng& rng) {
  const Mat g = ginibre(d, d, rng);
  return CMatrix(0.5 * (g + g.adjoint()));
}

AnticommutingPair random_anticommuting_pair(int d, Rng& rng) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("random_anticommuting_pair: dimension must be even");
  Mat sx = Mat::Zero(2, 2), sz = Mat::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const CMatrix id = identity(d / 2);
  const Mat u = haar_unitary(d, rng);
  const Mat x = u * kron(CMatrix(sx), id).mat() * u.adjoint();
  const Mat z = u * kron(CMatrix(sz), id).mat() * u.adjoint();
  return {CMatrix(0.5 * (x + x.adjoint())), CMatrix(0.5 * (z + z.adjoint()))};
}

std::vector<Mat> random_kraus(int out, int in, int rank, Rng& rng) {
  if (rank * out < in) throw std::invalid_argument("random_kraus: rank too small for a trace-preserving map");
  // Stacked Kraus operators form an isometry C^in -> C^(rank*out).
  const Mat v = haar_unitary(rank * out, rng).leftCols(in);
  std::vector<Mat> kraus;
  for (int k = 0; k < rank; ++k) kraus.push_back(v.middleRows(k * out, out));
  return kraus;
}

}  // namespace swapcert
