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

// Independent reference computations for the tests. Nothing here calls into
// the library's linear algebra beyond the Eigen container types.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline const double kSqrt2 = std::sqrt(2.0);
inline const double kTsirelson = 2.0 * std::sqrt(2.0);
inline const double kXStar = (16.0 + 14.0 * std::sqrt(2.0)) / 17.0;

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline M sx() { M m(2, 2); m << 0, 1, 1, 0; return m; }
inline M sy() { M m(2, 2); m << 0, C(0, -1), C(0, 1), 0; return m; }
inline M sz() { M m(2, 2); m << 1, 0, 0, -1; return m; }
inline M id(int d) { return M::Identity(d, d); }

inline V ket(std::initializer_list<double> amps) {
  V v(static_cast<int>(amps.size()));
  int i = 0;
  for (double a : amps) v[i++] = a;
  return v;
}

inline M proj(const V& v) { return v * v.adjoint(); }

// Bell vectors written out by hand: phi+, phi-, psi+, psi-.
inline V bell(int b) {
  const double h = 1.0 / kSqrt2;
  switch (b) {
    case 0: return ket({h, 0, 0, h});
    case 1: return ket({h, 0, 0, -h});
    case 2: return ket({0, h, h, 0});
    default: return ket({0, h, -h, 0});
  }
}

inline M werner(double v) { return v * proj(bell(0)) + (1.0 - v) / 4.0 * id(4); }

// Partial trace by explicit multi-index enumeration.
inline M partial_trace(const M& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  int dk = 1;
  for (int k : keep) dk *= dims[k];
  M out = M::Zero(dk, dk);
  const int d = static_cast<int>(m.rows());
  auto digits = [&](int idx) {
    std::vector<int> dg(n);
    for (int k = n - 1; k >= 0; --k) {
      dg[k] = idx % dims[k];
      idx /= dims[k];
    }
    return dg;
  };
  for (int i = 0; i < d; ++i) {
    const auto di = digits(i);
    for (int j = 0; j < d; ++j) {
      const auto dj = digits(j);
      bool same = true;
      for (int k = 0; k < n; ++k) {
        bool kept = false;
        for (int q : keep) kept = kept || q == k;
        if (!kept && di[k] != dj[k]) same = false;
      }
      if (!same) continue;
      int ki = 0, kj = 0;
      for (int q : keep) {
        ki = ki * dims[q] + di[q];
        kj = kj * dims[q] + dj[q];
      }
      out(ki, kj) += m(i, j);
    }
  }
  return out;
}

// Unnormalized conditional state on A (x) C for rho1 on A B1, rho2 on B2 C and
// an element e on B1 B2, by explicit index sums. All local dimensions 2.
inline M conditional(const M& rho1, const M& rho2, const M& e) {
  M out = M::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2) {
          C acc = 0;
          for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
              for (int b1p = 0; b1p < 2; ++b1p)
                for (int b2p = 0; b2p < 2; ++b2p)
                  acc += e(b1p * 2 + b2p, b1 * 2 + b2) * rho1(a * 2 + b1, a2 * 2 + b1p) * rho2(b2 * 2 + c, b2p * 2 + c2);
          out(a * 2 + c, a2 * 2 + c2) = acc;
        }
  return out;
}

inline double trace_re(const M& m) { return m.trace().real(); }

// CHSH operators with the textbook settings.
inline M chsh(int b) {
  const M a0 = sz(), a1 = sx();
  const M c0 = (sz() + sx()) / kSqrt2, c1 = (sz() - sx()) / kSqrt2;
  const M w0 = kron(a0, c0) + kron(a0, c1) + kron(a1, c0) - kron(a1, c1);
  const M w1 = kron(a0, c0) + kron(a0, c1) - kron(a1, c0) + kron(a1, c1);
  switch (b) {
    case 0: return w0;
    case 1: return w1;
    case 2: return -w1;
    default: return -w0;
  }
}

inline double g(double beta) {
  const double lin = 0.5 + (beta - kXStar) / (2.0 * (kTsirelson - kXStar));
  return lin < 0.5 ? 0.5 : lin;
}

// Minimizer of (8q-4)/sqrt(1-e^2) + 4/(1+e) over [0, es] located from the
// sign of the derivative by bisection.
inline double bound(double beta) {
  const double q = g(beta);
  const double es = 2.0 * std::sqrt(q * (1.0 - q));
  const double A = 8.0 * q - 4.0;
  auto f = [&](double e) { return A / std::sqrt(1.0 - e * e) + 4.0 / (1.0 + e); };
  auto df = [&](double e) { return A * e / std::pow(1.0 - e * e, 1.5) - 4.0 / ((1.0 + e) * (1.0 + e)); };
  double best = std::min(f(0.0), f(es));
  if (df(0.0) < 0.0 && df(es) > 0.0) {
    double lo = 0.0, hi = es;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (df(mid) < 0.0 ? lo : hi) = mid;
    }
    best = std::min(best, f(0.5 * (lo + hi)));
  }
  return best / (8.0 * (1.0 + es));
}

inline double a_fn(double eta) {
  return (std::sqrt(1 + eta) + std::sqrt(1 - eta)) / std::sqrt(2 * (1 - eta * eta));
}
inline double b_fn(double eta) {
  return (std::sqrt(1 + eta) - std::sqrt(1 - eta)) / std::sqrt(2 * (1 - eta * eta));
}

inline double min_eig(const M& m) {
  Eigen::SelfAdjointEigenSolver<M> es(m);
  return es.eigenvalues().minCoeff();
}

// Map applied through Kraus operators, one term at a time.
inline M kraus_map(const std::vector<M>& ks, const M& x) {
  M out = M::Zero(ks[0].rows(), ks[0].rows());
  for (const M& k : ks) out += k * x * k.adjoint();
  return out;
}

// C = sum_ij L(|i><j|) (x) |i><j|, output factor first.
inline M choi_of(const std::vector<M>& ks) {
  const int in = static_cast<int>(ks[0].cols()), out = static_cast<int>(ks[0].rows());
  M c = M::Zero(out * in, out * in);
  for (int i = 0; i < in; ++i)
    for (int j = 0; j < in; ++j) {
      M e = M::Zero(in, in);
      e(i, j) = 1.0;
      const M l = kraus_map(ks, e);
      for (int a = 0; a < out; ++a)
        for (int b = 0; b < out; ++b) c(a * in + i, b * in + j) = l(a, b);
    }
  return c;
}

// L(X)_ab = sum_ik X_ki C_(a,k),(b,i).
inline M choi_map(const M& c, int out, int in, const M& x) {
  M r = M::Zero(out, out);
  for (int a = 0; a < out; ++a)
    for (int b = 0; b < out; ++b)
      for (int i = 0; i < in; ++i)
        for (int k = 0; k < in; ++k) r(a, b) += x(k, i) * c(a * in + k, b * in + i);
  return r;
}

// Inverse square root of a positive definite matrix via its eigenbasis.
inline M inv_sqrt(const M& m) {
  Eigen::SelfAdjointEigenSolver<M> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().cast<C>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace oracle
