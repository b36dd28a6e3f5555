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

#include <cmath>
#include <string>
#include <vector>

#include "swapcert/qlinalg.hpp"

namespace swapcert {

inline constexpr double kPi = 3.14159265358979323846;
inline const double kSqrt2 = std::sqrt(2.0);
inline const double kTsirelson = 2.0 * std::sqrt(2.0);

/// Unit-trace positive semidefinite operator. Construction validates
/// Hermiticity (1e-10), positivity (min eigenvalue >= -1e-10) and trace.
class DensityOperator {
 public:
  explicit DensityOperator(CMatrix m);

  const CMatrix& mat() const { return m_; }
  const Dims& dims() const { return m_.dims(); }
  int dim() const { return m_.dim(); }
  DensityOperator marginal(std::initializer_list<int> keep) const;
  DensityOperator permuted(std::initializer_list<int> perm) const;

 private:
  CMatrix m_;
};

/// Ordered POVM. Elements must be PSD (>= -1e-10) and sum to identity (1e-9).
class Measurement {
 public:
  Measurement(std::vector<CMatrix> elements, std::vector<std::string> labels = {});

  const std::vector<CMatrix>& elements() const { return elements_; }
  const CMatrix& operator[](std::size_t j) const { return elements_[j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return elements_.size(); }
  const Dims& dims() const { return elements_.front().dims(); }
  int dim() const { return elements_.front().dim(); }
  double completeness_residual() const;
  Measurement relabeled(const std::vector<int>& perm) const;

 private:
  std::vector<CMatrix> elements_;
  std::vector<std::string> labels_;
};

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// The two +/-1 settings of one party.
struct Settings {
  CMatrix o0;
  CMatrix o1;
};

struct ScenarioKind {
  enum class Family { bsm, tilted, ghz };
  Family family = Family::bsm;
  double theta = kPi / 4;

  static ScenarioKind bsm() { return {Family::bsm, kPi / 4}; }
  static ScenarioKind tilted(double theta);
  static ScenarioKind ghz() { return {Family::ghz, kPi / 4}; }
  std::string name() const;
};

/// Bell basis: 0 = phi+, 1 = phi-, 2 = psi+, 3 = psi-.
Vec bell_vector(int b);
DensityOperator bell_state(int b);

/// Partially entangled basis with cos/sin(theta) weights, 0 < theta <= pi/4.
Vec tilted_bell_vector(double theta, int b);
DensityOperator tilted_bell_state(double theta, int b);

/// GHZ outcome label r = 2 * branch + (sign < 0), branch 0 = none, 1..3 =
/// bit flip on party A, B, C.
struct GhzLabel {
  int branch = 0;
  bool plus = true;
  int index() const { return 2 * branch + (plus ? 0 : 1); }
  static GhzLabel from_index(int r);
  std::string name() const;
};

Vec ghz_vector(GhzLabel label);
DensityOperator ghz_state(GhzLabel label);

/// Settings per party: {A, C} for bsm/tilted, {A, B, C} for ghz.
std::vector<Settings> ideal_observables(const ScenarioKind& kind);

/// W_b with W_2 = -W_1 and W_3 = -W_0.
CMatrix chsh_operator(int b, const Settings& a, const Settings& c);

/// 2 / sqrt(1 + 2 tan^2(2 theta)); 0 at theta = pi/4.
double tilt_weight(double theta);
/// +/- tilt * A_0 (x) 1 + W_b, with + for b in {0, 2}.
CMatrix tilted_chsh_operator(int b, double tilt, const Settings& a, const Settings& c);
double tilted_chsh_max(double tilt);

CMatrix mermin_operator(GhzLabel label, const Settings& a, const Settings& b, const Settings& c);

Measurement measurement_basis(const ScenarioKind& kind);

/// v * phi+ + (1 - v) * I/4.
DensityOperator werner_source(double v);

/// (1 - p) E_j + p Tr(E_j) I/d for each element.
Measurement noisy_measurement(const Measurement& m, double p);

/// Descending Schmidt coefficients of a unit vector on C^d1 (x) C^d2.
std::vector<double> schmidt_coefficients(const Vec& psi, int d1, int d2);

}  // namespace swapcert
