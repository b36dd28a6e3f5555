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

#include "swapcert/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swapcert {

namespace {

int product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void require_dims(const CMatrix& m, const char* what) {
  if (m.num_factors() == 0 || !m.is_square()) {
    throw std::invalid_argument(std::string(what) + ": operator has no factorization");
  }
}

void require_hermitian(const CMatrix& m, const char* what) {
  if (!m.is_square() || m.hermiticity_error() > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": operator is not Hermitian");
  }
}

// Row-major strides of a factorization.
std::vector<int> strides(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    s[k] = s[k + 1] * dims[k + 1];
  }
  return s;
}

}  // namespace

CMatrix::CMatrix(Mat m) : m_(std::move(m)) {
  if (is_square()) dims_ = {rows()};
}

CMatrix::CMatrix(Mat m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {
  if (!dims_.empty() && (!is_square() || product(dims_) != rows())) {
    throw std::invalid_argument("CMatrix: factor dimensions do not multiply to the matrix size");
  }
  if (dims_.empty() && is_square()) dims_ = {rows()};
}

double CMatrix::hermiticity_error() const {
  if (!is_square()) return INFINITY;
  if (m_.size() == 0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.rows() != rows() || o.cols() != cols()) throw std::invalid_argument("CMatrix +: shape mismatch");
  m_ += o.m_;
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.rows() != rows() || o.cols() != cols()) throw std::invalid_argument("CMatrix -: shape mismatch");
  m_ -= o.m_;
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(const CMatrix& a) { return {-a.mat(), a.dims()}; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("CMatrix *: shape mismatch");
  Mat p = a.mat() * b.mat();
  if (p.rows() == p.cols() && a.is_square()) return {std::move(p), a.dims()};
  return CMatrix(std::move(p));
}

CMatrix identity(int d) { return CMatrix(Mat::Identity(d, d)); }

CMatrix identity(const Dims& dims) {
  const int d = product(dims);
  return {Mat::Identity(d, d), dims};
}

CMatrix projector(const Vec& psi, Dims dims) { return {psi * psi.adjoint(), std::move(dims)}; }

CMatrix hermitian_part(const CMatrix& m) { return {0.5 * (m.mat() + m.mat().adjoint()), m.dims()}; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Mat& x = a.mat();
  const Mat& y = b.mat();
  Mat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  if (!a.is_square() || !b.is_square()) return CMatrix(std::move(out));
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return {std::move(out), std::move(dims)};
}

CMatrix kron(std::initializer_list<CMatrix> factors) {
  if (factors.size() == 0) throw std::invalid_argument("kron: no factors");
  auto it = factors.begin();
  CMatrix acc = *it;
  for (++it; it != factors.end(); ++it) acc = kron(acc, *it);
  return acc;
}

CMatrix partial_trace(const CMatrix& m, std::span<const int> keep) {
  require_dims(m, "partial_trace");
  const Dims& dims = m.dims();
  const int n = m.num_factors();
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n || kept[k]) throw std::invalid_argument("partial_trace: invalid factor index");
    kept[k] = true;
  }

  Dims kdims, tdims;
  for (int k = 0; k < n; ++k) (kept[k] ? kdims : tdims).push_back(dims[k]);
  const int dk = product(kdims);

  // Split every full index into its kept and traced parts.
  const int d = m.dim();
  std::vector<int> kidx(d), tidx(d);
  const auto st = strides(dims);
  for (int i = 0; i < d; ++i) {
    int ki = 0, ti = 0;
    for (int k = 0; k < n; ++k) {
      const int digit = (i / st[k]) % dims[k];
      if (kept[k]) {
        ki = ki * dims[k] + digit;
      } else {
        ti = ti * dims[k] + digit;
      }
    }
    kidx[i] = ki;
    tidx[i] = ti;
  }

  Mat out = Mat::Zero(dk, dk);
  const Mat& x = m.mat();
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (tidx[i] == tidx[j]) out(kidx[i], kidx[j]) += x(i, j);
    }
  }
  if (kdims.empty()) kdims = {1};
  return {std::move(out), std::move(kdims)};
}

CMatrix partial_trace(const CMatrix& m, std::initializer_list<int> keep) {
  return partial_trace(m, std::span<const int>(keep.begin(), keep.size()));
}

CMatrix permute_factors(const CMatrix& m, std::span<const int> perm) {
  require_dims(m, "permute_factors");
  const Dims& dims = m.dims();
  const int n = m.num_factors();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permute_factors: invalid permutation");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("permute_factors: invalid permutation");
    seen[p] = true;
  }

  Dims ndims(n);
  for (int i = 0; i < n; ++i) ndims[i] = dims[perm[i]];
  const auto ost = strides(dims);
  const auto nst = strides(ndims);

  // source[i] = old index of new basis vector i.
  const int d = m.dim();
  std::vector<int> source(d);
  for (int i = 0; i < d; ++i) {
    int old = 0;
    for (int k = 0; k < n; ++k) old += ((i / nst[k]) % ndims[k]) * ost[perm[k]];
    source[i] = old;
  }

  Mat out(d, d);
  const Mat& x = m.mat();
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) out(i, j) = x(source[i], source[j]);
  }
  return {std::move(out), std::move(ndims)};
}

CMatrix permute_factors(const CMatrix& m, std::initializer_list<int> perm) {
  return permute_factors(m, std::span<const int>(perm.begin(), perm.size()));
}

CMatrix merge_factors(const CMatrix& m, int first, int last) {
  require_dims(m, "merge_factors");
  if (first < 0 || last > m.num_factors() || first >= last) {
    throw std::invalid_argument("merge_factors: invalid range");
  }
  Dims dims(m.dims().begin(), m.dims().begin() + first);
  dims.push_back(std::accumulate(m.dims().begin() + first, m.dims().begin() + last, 1, std::multiplies<>()));
  dims.insert(dims.end(), m.dims().begin() + last, m.dims().end());
  return m.with_dims(std::move(dims));
}

Spectrum eig_hermitian(const CMatrix& m) {
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.mat());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  const Eigen::Index d = m.mat().rows();
  Spectrum s{Eigen::VectorXd(d), Mat(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    s.values[k] = solver.eigenvalues()[d - 1 - k];
    s.vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }
  return s;
}

CMatrix mat_func(const CMatrix& m, const std::function<double(double)>& f, Singular policy, double zero_tol) {
  const Spectrum s = eig_hermitian(m);
  Eigen::VectorXd fv(s.values.size());
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    const double lam = s.values[k];
    if (std::abs(lam) < zero_tol && policy != Singular::evaluate) {
      fv[k] = policy == Singular::to_zero ? 0.0 : 1.0;
      continue;
    }
    fv[k] = f(lam);
    if (!std::isfinite(fv[k])) {
      throw std::domain_error("mat_func: function undefined at eigenvalue " + std::to_string(lam));
    }
  }
  return {s.vectors * fv.cast<Complex>().asDiagonal() * s.vectors.adjoint(), m.dims()};
}

CMatrix sqrtm(const CMatrix& m) {
  return mat_func(m, [](double x) { return std::sqrt(std::max(x, 0.0)); }, Singular::to_zero);
}

CMatrix inv_sqrtm(const CMatrix& m) {
  return mat_func(m, [](double x) { return 1.0 / std::sqrt(x); }, Singular::to_zero);
}

double hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("hs_inner: dimension mismatch");
  // Tr(ab) = sum_ij a_ij b_ji
  return (a.mat().transpose().cwiseProduct(b.mat())).sum().real();
}

double min_eig(const CMatrix& m) { return eig_hermitian(m).values.minCoeff(); }

double max_eig(const CMatrix& m) { return eig_hermitian(m).values.maxCoeff(); }

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  }
  return (a.mat() - b.mat()).norm();
}

double fidelity_with_pure(const CMatrix& rho, const CMatrix& proj) {
  const Spectrum s = eig_hermitian(proj);
  bool rank_one = std::abs(s.values[0] - 1.0) < 1e-9;
  for (Eigen::Index k = 1; k < s.values.size(); ++k) rank_one = rank_one && std::abs(s.values[k]) < 1e-9;
  if (!rank_one) throw std::invalid_argument("fidelity_with_pure: target is not a rank-1 projector");
  return hs_inner(rho, proj);
}

}  // namespace swapcert
