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

#include <complex>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace swapcert {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Dims = std::vector<int>;

/// Default threshold below which an eigenvalue counts as zero.
inline constexpr double kZeroTol = 1e-10;

/// Dense complex matrix with an optional tensor factorization.
///
/// `dims` lists the factor dimensions of a square operator, outermost factor
/// first (row-major Kronecker ordering). A matrix built without dims is a
/// single factor. Values are immutable once built.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(Mat m);
  CMatrix(Mat m, Dims dims);

  const Mat& mat() const { return m_; }
  const Dims& dims() const { return dims_; }
  int rows() const { return static_cast<int>(m_.rows()); }
  int cols() const { return static_cast<int>(m_.cols()); }
  int dim() const { return rows(); }
  int num_factors() const { return static_cast<int>(dims_.size()); }
  bool is_square() const { return m_.rows() == m_.cols(); }

  /// Largest entry of |M - M^dagger|.
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() <= tol; }

  Complex trace() const { return m_.trace(); }
  CMatrix adjoint() const { return {m_.adjoint(), dims_}; }
  CMatrix transpose() const { return {m_.transpose(), dims_}; }
  /// Same entries, new factorization. Throws if the product does not match.
  CMatrix with_dims(Dims dims) const { return {m_, std::move(dims)}; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

 private:
  Mat m_;
  Dims dims_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(const CMatrix& a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);

CMatrix identity(int d);
CMatrix identity(const Dims& dims);
/// |psi><psi| with the given factorization.
CMatrix projector(const Vec& psi, Dims dims);
/// Explicit (M + M^dagger)/2. Nothing in the library symmetrizes silently.
CMatrix hermitian_part(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron(std::initializer_list<CMatrix> factors);

/// Reduced operator on the factors listed in `keep` (any order of distinct
/// indices; the output keeps them in ascending order).
CMatrix partial_trace(const CMatrix& m, std::span<const int> keep);
CMatrix partial_trace(const CMatrix& m, std::initializer_list<int> keep);

/// Reorders tensor factors: output factor i is input factor perm[i].
CMatrix permute_factors(const CMatrix& m, std::span<const int> perm);
CMatrix permute_factors(const CMatrix& m, std::initializer_list<int> perm);

/// Collapses adjacent factors [first, last) into one factor.
CMatrix merge_factors(const CMatrix& m, int first, int last);

struct Spectrum {
  Eigen::VectorXd values;  // descending
  Mat vectors;             // column k belongs to values[k]
};

/// Throws std::invalid_argument unless `m` is Hermitian within 1e-10.
Spectrum eig_hermitian(const CMatrix& m);

/// How mat_func treats eigenvalues with |lambda| < zero_tol.
enum class Singular {
  evaluate,  // apply f anyway; a non-finite result is an error
  to_zero,   // pseudo-inverse convention
  to_one,    // regularization convention
};

CMatrix mat_func(const CMatrix& m, const std::function<double(double)>& f,
                 Singular policy = Singular::evaluate, double zero_tol = kZeroTol);

CMatrix sqrtm(const CMatrix& m);
/// Inverse square root; zero eigenvalues are mapped to zero.
CMatrix inv_sqrtm(const CMatrix& m);

/// Tr(a b) for Hermitian a, b of equal dimension; imaginary residue dropped.
double hs_inner(const CMatrix& a, const CMatrix& b);
double min_eig(const CMatrix& m);
double max_eig(const CMatrix& m);
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// <proj, rho> for a rank-1 projector `proj`.
double fidelity_with_pure(const CMatrix& rho, const CMatrix& proj);

}  // namespace swapcert
