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

#include "swapcert/channels.hpp"

#include <stdexcept>

namespace swapcert {

namespace {

double max_abs_diff_identity(const CMatrix& m) {
  return (m.mat() - Mat::Identity(m.dim(), m.dim())).cwiseAbs().maxCoeff();
}

}  // namespace

ChoiChannel::ChoiChannel(CMatrix choi, int out_dim, int in_dim) : out_(out_dim), in_(in_dim) {
  if (out_dim <= 0 || in_dim <= 0 || choi.dim() != out_dim * in_dim || !choi.is_square()) {
    throw std::invalid_argument("ChoiChannel: Choi operator does not match the declared dimensions");
  }
  choi_ = choi.with_dims({out_dim, in_dim});
}

double ChoiChannel::unital_residual() const { return max_abs_diff_identity(partial_trace(choi_, {0})); }

double ChoiChannel::tp_residual() const { return max_abs_diff_identity(partial_trace(choi_, {1})); }

std::vector<Mat> ChoiChannel::kraus(double zero_tol) const {
  const Spectrum s = eig_hermitian(hermitian_part(choi_));
  if (s.values.minCoeff() < -1e-9) throw std::domain_error("ChoiChannel::kraus: map is not completely positive");
  std::vector<Mat> out;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    if (s.values[k] <= zero_tol) continue;
    const Vec v = std::sqrt(s.values[k]) * s.vectors.col(k);
    Mat kr(out_, in_);
    for (int o = 0; o < out_; ++o) {
      for (int i = 0; i < in_; ++i) kr(o, i) = v[o * in_ + i];
    }
    out.push_back(std::move(kr));
  }
  return out;
}

ChoiChannel choi_from_kraus(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("choi_from_kraus: no operators");
  const int out = static_cast<int>(kraus.front().rows());
  const int in = static_cast<int>(kraus.front().cols());
  Mat c = Mat::Zero(out * in, out * in);
  for (const auto& k : kraus) {
    if (k.rows() != out || k.cols() != in) throw std::invalid_argument("choi_from_kraus: shape mismatch");
    Vec v(out * in);
    for (int o = 0; o < out; ++o) {
      for (int i = 0; i < in; ++i) v[o * in + i] = k(o, i);
    }
    c += v * v.adjoint();
  }
  return {CMatrix(std::move(c)), out, in};
}

ChoiChannel identity_channel(int d) { return choi_from_kraus({Mat::Identity(d, d)}); }

ChoiChannel unitary_channel(const Mat& u) { return choi_from_kraus({u}); }

ChoiChannel depolarizing_channel(int out_dim, int in_dim) {
  const int d = out_dim * in_dim;
  return {CMatrix(Mat::Identity(d, d) / static_cast<double>(in_dim)), out_dim, in_dim};
}

CMatrix choi_apply(const ChoiChannel& ch, const CMatrix& x) {
  if (x.dim() != ch.in_dim() || !x.is_square()) throw std::invalid_argument("choi_apply: input dimension mismatch");
  const int out = ch.out_dim(), in = ch.in_dim();
  const Mat& c = ch.choi().mat();
  const Mat& xm = x.mat();
  Mat y = Mat::Zero(out, out);
  for (int o2 = 0; o2 < out; ++o2) {
    for (int o1 = 0; o1 < out; ++o1) {
      Complex acc = 0.0;
      for (int i = 0; i < in; ++i) {
        for (int j = 0; j < in; ++j) acc += c(o1 * in + j, o2 * in + i) * xm(j, i);
      }
      y(o1, o2) = acc;
    }
  }
  return CMatrix(std::move(y));
}

CMatrix kraus_apply(const std::vector<Mat>& kraus, const CMatrix& x) {
  if (kraus.empty()) throw std::invalid_argument("kraus_apply: no operators");
  Mat y = Mat::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) y += k * x.mat() * k.adjoint();
  return CMatrix(std::move(y));
}

CMatrix apply_on_factor(const ChoiChannel& ch, const CMatrix& omega, int factor) {
  const int n = omega.num_factors();
  if (factor < 0 || factor >= n) throw std::invalid_argument("apply_on_factor: factor out of range");
  if (omega.dims()[factor] != ch.in_dim()) throw std::invalid_argument("apply_on_factor: input dimension mismatch");

  // Bring the target factor to the front, keeping the others in order.
  std::vector<int> perm{factor};
  for (int k = 0; k < n; ++k) {
    if (k != factor) perm.push_back(k);
  }
  const CMatrix front = permute_factors(omega, perm);
  const int in = ch.in_dim(), out = ch.out_dim();
  const int rest = omega.dim() / in;
  const Mat& c = ch.choi().mat();
  const Mat& w = front.mat();

  Mat r = Mat::Zero(out * rest, out * rest);
  for (int o2 = 0; o2 < out; ++o2) {
    for (int o1 = 0; o1 < out; ++o1) {
      for (int i = 0; i < in; ++i) {
        for (int j = 0; j < in; ++j) {
          const Complex cij = c(o1 * in + j, o2 * in + i);
          if (cij == Complex(0.0)) continue;
          r.block(o1 * rest, o2 * rest, rest, rest) += cij * w.block(j * rest, i * rest, rest, rest);
        }
      }
    }
  }

  Dims dims = front.dims();
  dims[0] = out;
  std::vector<int> back(n);
  for (int m = 0; m < n; ++m) back[m] = m == factor ? 0 : (m < factor ? m + 1 : m);
  return permute_factors(CMatrix(std::move(r), std::move(dims)), back);
}

CMatrix choi_tensor_apply(const std::vector<ChoiChannel>& chs, const CMatrix& omega) {
  if (chs.empty()) throw std::invalid_argument("choi_tensor_apply: no channels");
  const int n = static_cast<int>(chs.size());
  CMatrix total = chs.front().choi();
  for (int k = 1; k < n; ++k) total = kron(total, chs[k].choi());
  // (o1, i1, o2, i2, ...) -> (o1, ..., on, i1, ..., in)
  std::vector<int> perm;
  for (int k = 0; k < n; ++k) perm.push_back(2 * k);
  for (int k = 0; k < n; ++k) perm.push_back(2 * k + 1);
  total = permute_factors(total, perm);

  Dims out_dims;
  int out = 1, in = 1;
  for (const auto& ch : chs) {
    out_dims.push_back(ch.out_dim());
    out *= ch.out_dim();
    in *= ch.in_dim();
  }
  if (omega.dim() != in) throw std::invalid_argument("choi_tensor_apply: input dimension mismatch");
  const CMatrix y = choi_apply(ChoiChannel(total, out, in), omega);
  return y.with_dims(std::move(out_dims));
}

CMatrix choi_factorwise_apply(const std::vector<ChoiChannel>& chs, const CMatrix& omega) {
  if (chs.empty()) throw std::invalid_argument("choi_factorwise_apply: no channels");
  Dims in_dims;
  for (const auto& ch : chs) in_dims.push_back(ch.in_dim());
  CMatrix cur = omega.with_dims(in_dims);
  for (int k = 0; k < static_cast<int>(chs.size()); ++k) cur = apply_on_factor(chs[k], cur, k);
  return cur;
}

ChoiChannel choi_from_state(const DensityOperator& sigma, double scale, FactorOrder order) {
  if (!(scale > 0.0)) throw std::invalid_argument("choi_from_state: scale must be positive");
  if (sigma.mat().num_factors() != 2) throw std::invalid_argument("choi_from_state: state must be bipartite");
  CMatrix s = order == FactorOrder::out_in ? sigma.mat() : permute_factors(sigma.mat(), {1, 0});
  const int out = s.dims()[0], in = s.dims()[1];
  return {scale * s.transpose(), out, in};
}

double marginal_bias(const CMatrix& qubit_state) {
  if (qubit_state.dim() != 2) throw std::invalid_argument("marginal_bias: expected a qubit operator");
  const Spectrum s = eig_hermitian(qubit_state);
  return s.values[0] - s.values[1];
}

RobustChoiPair robust_choi_pair(const DensityOperator& sigma_ab1, const DensityOperator& sigma_b2c) {
  if (sigma_ab1.mat().num_factors() != 2 || sigma_b2c.mat().num_factors() != 2 ||
      sigma_ab1.dims()[0] != 2 || sigma_b2c.dims()[1] != 2) {
    throw std::invalid_argument("robust_choi_pair: expected qubit (x) system and system (x) qubit states");
  }
  const CMatrix sa = partial_trace(sigma_ab1.mat(), {0});
  const CMatrix sc = partial_trace(sigma_b2c.mat(), {1});
  const CMatrix sb2 = partial_trace(sigma_b2c.mat(), {0});
  if (min_eig(sa) <= 1e-8 || min_eig(sc) <= 1e-8) {
    throw std::domain_error("robust_choi_pair: rank-deficient qubit marginal");
  }

  const CMatrix m = kron(inv_sqrtm(sa), identity(sigma_ab1.dims()[1]));
  const CMatrix lambda1_t = m * sigma_ab1.mat() * m;

  const double eta_c = marginal_bias(sc);
  const double k = 2.0 / (1.0 + eta_c);
  const CMatrix lambda2_t = k * sigma_b2c.mat() + kron(sb2, identity(2) - k * sc);

  const int d1 = sigma_ab1.dims()[1], d2 = sigma_b2c.dims()[0];
  return {ChoiChannel(lambda1_t.transpose(), 2, d1),
          ChoiChannel(permute_factors(lambda2_t.transpose(), {1, 0}), 2, d2), marginal_bias(sa), eta_c};
}

CMatrix regularize(const CMatrix& o, double zero_tol) {
  return mat_func(o, [](double x) { return x > 0 ? 1.0 : -1.0; }, Singular::to_one, zero_tol);
}

CMatrix swap_gate(const CMatrix& x, const CMatrix& z) {
  if (x.dim() != z.dim() || !x.is_square() || !z.is_square()) {
    throw std::invalid_argument("swap_gate: X and Z must act on the same space");
  }
  const int d = x.dim();
  const Mat id = Mat::Identity(d, d);
  const Mat plus = 0.5 * (id + z.mat());
  const Mat minus = 0.5 * (id - z.mat());
  Mat s(2 * d, 2 * d);
  s.block(0, 0, d, d) = plus;
  s.block(0, d, d, d) = x.mat() * plus;
  s.block(d, 0, d, d) = x.mat() * minus;
  s.block(d, d, d, d) = minus;
  Dims dims{2};
  dims.insert(dims.end(), x.dims().begin(), x.dims().end());
  return {std::move(s), std::move(dims)};
}

ChoiChannel swap_channel(const CMatrix& x, const CMatrix& z) {
  const CMatrix s = swap_gate(x, z);
  const int d = x.dim();
  // V = S (|0> (x) 1); trace out H by splitting V into d Kraus operators.
  const Mat v = s.mat().leftCols(d);
  std::vector<Mat> kraus;
  for (int k = 0; k < d; ++k) {
    Mat kr(2, d);
    kr.row(0) = v.row(k);
    kr.row(1) = v.row(d + k);
    kraus.push_back(std::move(kr));
  }
  return choi_from_kraus(kraus);
}

NormalizedOutput apply_normalized(const std::vector<ChoiChannel>& chs, const CMatrix& omega) {
  const CMatrix y = choi_factorwise_apply(chs, omega);
  const double tr = y.trace().real();
  if (tr <= 1e-12) throw std::domain_error("apply_normalized: output has vanishing trace");
  return {(1.0 / tr) * y, 1.0 - tr};
}

}  // namespace swapcert
