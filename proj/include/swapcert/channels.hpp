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

#include <utility>
#include <vector>

#include "swapcert/qobjects.hpp"

namespace swapcert {

/// Linear map in Choi form, C on H_out (x) H_in with the pairing
///   Lambda(X) = Tr_in[(1_out (x) X^T) C],
/// so that CP <=> C >= 0, unital <=> Tr_in C = 1, trace preserving <=> Tr_out C = 1.
class ChoiChannel {
 public:
  ChoiChannel(CMatrix choi, int out_dim, int in_dim);

  const CMatrix& choi() const { return choi_; }
  int in_dim() const { return in_; }
  int out_dim() const { return out_; }

  double cp_margin() const { return min_eig(choi_); }
  double unital_residual() const;
  double tp_residual() const;
  bool is_cp(double tol = 1e-9) const { return cp_margin() >= -tol; }
  bool is_unital(double tol = 1e-9) const { return unital_residual() <= tol; }
  bool is_trace_preserving(double tol = 1e-9) const { return tp_residual() <= tol; }

  /// Kraus operators (d_out x d_in) from the spectral decomposition; CP only.
  std::vector<Mat> kraus(double zero_tol = kZeroTol) const;

 private:
  CMatrix choi_;
  int out_;
  int in_;
};

ChoiChannel choi_from_kraus(const std::vector<Mat>& kraus);
ChoiChannel identity_channel(int d);
ChoiChannel unitary_channel(const Mat& u);
/// X -> Tr(X)/d_in * 1_out.
ChoiChannel depolarizing_channel(int out_dim, int in_dim);

CMatrix choi_apply(const ChoiChannel& ch, const CMatrix& x);
/// sum_k K x K^dagger; used as an independent reference for choi_apply.
CMatrix kraus_apply(const std::vector<Mat>& kraus, const CMatrix& x);

/// Applies `ch` to tensor factor `factor` of omega, leaving the others alone.
CMatrix apply_on_factor(const ChoiChannel& ch, const CMatrix& omega, int factor);

/// (Lambda_1 (x) ... (x) Lambda_n)(omega) evaluated as a single trace against
/// the reordered tensor product of the Choi operators. omega's factors must
/// match the channels' input spaces in order.
CMatrix choi_tensor_apply(const std::vector<ChoiChannel>& chs, const CMatrix& omega);
/// Same map applied one factor at a time.
CMatrix choi_factorwise_apply(const std::vector<ChoiChannel>& chs, const CMatrix& omega);

enum class FactorOrder { out_in, in_out };

/// Choi operator scale * sigma^T, sigma given in `order` (the output factor is
/// the ideal qubit, the input factor the real system).
ChoiChannel choi_from_state(const DensityOperator& sigma, double scale, FactorOrder order = FactorOrder::out_in);

struct RobustChoiPair {
  ChoiChannel first;   // B1 -> A'
  ChoiChannel second;  // B2 -> C'
  double marginal_bias_a;
  double marginal_bias_c;
};

/// Choi pair built from sigma_{A'B1} (A' first) and sigma_{B2C'} (C' last).
/// Throws std::domain_error if a qubit marginal has min eigenvalue <= 1e-8.
RobustChoiPair robust_choi_pair(const DensityOperator& sigma_ab1, const DensityOperator& sigma_b2c);

/// lambda_max - lambda_min of a qubit state.
double marginal_bias(const CMatrix& qubit_state);

/// Sign of o with eigenvalues |lambda| < zero_tol sent to +1.
CMatrix regularize(const CMatrix& o, double zero_tol = kZeroTol);

/// Gate on H' (x) H built from X, Z on H; H' is a fresh qubit (first factor).
CMatrix swap_gate(const CMatrix& x, const CMatrix& z);

/// rho -> Tr_H[S (|0><0| (x) rho) S^dagger], output on the fresh qubit. Not
/// trace preserving when S fails to be isometric on |0> (x) H.
ChoiChannel swap_channel(const CMatrix& x, const CMatrix& z);

struct NormalizedOutput {
  CMatrix state;
  double deficit;  // 1 - trace before renormalization
};

/// Applies the channels factor-wise to a unit-trace omega and renormalizes.
NormalizedOutput apply_normalized(const std::vector<ChoiChannel>& chs, const CMatrix& omega);

}  // namespace swapcert
