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

#include "swapcert/qobjects.hpp"

#include <stdexcept>

namespace swapcert {

namespace {

Vec basis2(std::initializer_list<std::pair<int, Complex>> terms, int dim) {
  Vec v = Vec::Zero(dim);
  for (const auto& [i, c] : terms) v[i] += c;
  return v;
}

void check_index(int b, int n, const char* what) {
  if (b < 0 || b >= n) throw std::invalid_argument(std::string(what) + ": outcome index out of range");
}

CMatrix two_qubit(const Vec& v) { return projector(v, {2, 2}); }

}  // namespace

DensityOperator::DensityOperator(CMatrix m) : m_(std::move(m)) {
  if (!m_.is_square() || m_.hermiticity_error() > 1e-10) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - 1.0) > 1e-10) throw std::invalid_argument("DensityOperator: trace is not 1");
  if (min_eig(m_) < -1e-10) throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
}

DensityOperator DensityOperator::marginal(std::initializer_list<int> keep) const {
  return DensityOperator(partial_trace(m_, keep));
}

DensityOperator DensityOperator::permuted(std::initializer_list<int> perm) const {
  return DensityOperator(permute_factors(m_, perm));
}

Measurement::Measurement(std::vector<CMatrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw std::invalid_argument("Measurement: no elements");
  if (labels_.empty()) {
    for (std::size_t j = 0; j < elements_.size(); ++j) labels_.push_back(std::to_string(j));
  }
  if (labels_.size() != elements_.size()) throw std::invalid_argument("Measurement: label count mismatch");
  const int d = elements_.front().dim();
  for (const auto& e : elements_) {
    if (e.dim() != d || !e.is_square()) throw std::invalid_argument("Measurement: element dimension mismatch");
    if (e.hermiticity_error() > 1e-10 || min_eig(e) < -1e-10) {
      throw std::invalid_argument("Measurement: element is not positive semidefinite");
    }
  }
  if (completeness_residual() > 1e-9) throw std::invalid_argument("Measurement: elements do not sum to identity");
}

double Measurement::completeness_residual() const {
  Mat sum = Mat::Zero(dim(), dim());
  for (const auto& e : elements_) sum += e.mat();
  return (sum - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Measurement Measurement::relabeled(const std::vector<int>& perm) const {
  if (perm.size() != elements_.size()) throw std::invalid_argument("Measurement::relabeled: bad permutation");
  std::vector<CMatrix> out;
  std::vector<std::string> labels;
  for (int p : perm) {
    out.push_back(elements_.at(p));
    labels.push_back(labels_.at(p));
  }
  return {std::move(out), std::move(labels)};
}

CMatrix pauli_x() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return CMatrix(m);
}

CMatrix pauli_y() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = Complex(0, -1);
  m(1, 0) = Complex(0, 1);
  return CMatrix(m);
}

CMatrix pauli_z() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return CMatrix(m);
}

ScenarioKind ScenarioKind::tilted(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 4 + 1e-15)) throw std::invalid_argument("tilted: theta must lie in (0, pi/4]");
  return {Family::tilted, theta};
}

std::string ScenarioKind::name() const {
  switch (family) {
    case Family::bsm: return "bsm";
    case Family::tilted: return "tilted";
    case Family::ghz: return "ghz";
  }
  return "?";
}

Vec bell_vector(int b) { return tilted_bell_vector(kPi / 4, b); }

DensityOperator bell_state(int b) { return DensityOperator(two_qubit(bell_vector(b))); }

Vec tilted_bell_vector(double theta, int b) {
  check_index(b, 4, "tilted_bell_vector");
  if (!(theta > 0.0 && theta <= kPi / 4 + 1e-15)) throw std::invalid_argument("tilted_bell_vector: theta out of range");
  double c = std::cos(theta), s = std::sin(theta);
  if (std::abs(theta - kPi / 4) < 1e-15) c = s = 1.0 / kSqrt2;
  switch (b) {
    case 0: return basis2({{0, c}, {3, s}}, 4);
    case 1: return basis2({{0, s}, {3, -c}}, 4);
    case 2: return basis2({{1, c}, {2, s}}, 4);
    default: return basis2({{1, s}, {2, -c}}, 4);
  }
}

DensityOperator tilted_bell_state(double theta, int b) { return DensityOperator(two_qubit(tilted_bell_vector(theta, b))); }

GhzLabel GhzLabel::from_index(int r) {
  check_index(r, 8, "GhzLabel");
  return {r / 2, r % 2 == 0};
}

std::string GhzLabel::name() const {
  static const char* branches[] = {"0", "A", "B", "C"};
  return std::string(branches[branch]) + (plus ? "+" : "-");
}

Vec ghz_vector(GhzLabel label) {
  check_index(label.branch, 4, "ghz_vector");
  // Branch P flips party P's bit of |000>; the leading ket is the one with
  // that bit cleared, e.g. A: |011> +/- |100>.
  const int flip = label.branch == 0 ? 0 : 1 << (3 - label.branch);
  const int first = label.branch == 0 ? 0 : 7 ^ flip;
  const int second = 7 ^ first;
  Vec v = Vec::Zero(8);
  v[first] = 1.0 / kSqrt2;
  v[second] = (label.plus ? 1.0 : -1.0) / kSqrt2;
  return v;
}

DensityOperator ghz_state(GhzLabel label) { return DensityOperator(projector(ghz_vector(label), {2, 2, 2})); }

std::vector<Settings> ideal_observables(const ScenarioKind& kind) {
  const CMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  switch (kind.family) {
    case ScenarioKind::Family::bsm: {
      const Settings a{z, x};
      const Settings c{(1.0 / kSqrt2) * (z + x), (1.0 / kSqrt2) * (z - x)};
      return {a, c};
    }
    case ScenarioKind::Family::tilted: {
      const double mu = std::atan(std::sin(2 * kind.theta));
      const Settings a{z, x};
      const Settings c{std::cos(mu) * z + std::sin(mu) * x, std::cos(mu) * z - std::sin(mu) * x};
      return {a, c};
    }
    case ScenarioKind::Family::ghz:
      return {Settings{x, y}, Settings{x, y}, Settings{x, y}};
  }
  throw std::logic_error("ideal_observables: unknown scenario");
}

CMatrix chsh_operator(int b, const Settings& a, const Settings& c) {
  check_index(b, 4, "chsh_operator");
  const CMatrix w0 = kron(a.o0, c.o0) + kron(a.o0, c.o1) + kron(a.o1, c.o0) - kron(a.o1, c.o1);
  const CMatrix w1 = kron(a.o0, c.o0) + kron(a.o0, c.o1) - kron(a.o1, c.o0) + kron(a.o1, c.o1);
  switch (b) {
    case 0: return w0;
    case 1: return w1;
    case 2: return -w1;
    default: return -w0;
  }
}

double tilt_weight(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 4 + 1e-15)) throw std::invalid_argument("tilt_weight: theta out of range");
  if (std::abs(theta - kPi / 4) < 1e-12) return 0.0;
  const double t = std::tan(2 * theta);
  return 2.0 / std::sqrt(1.0 + 2.0 * t * t);
}

CMatrix tilted_chsh_operator(int b, double tilt, const Settings& a, const Settings& c) {
  const double sign = (b == 0 || b == 2) ? 1.0 : -1.0;
  return chsh_operator(b, a, c) + (sign * tilt) * kron(a.o0, identity(c.o0.dims()));
}

double tilted_chsh_max(double tilt) { return std::sqrt(8.0 + 2.0 * tilt * tilt); }

CMatrix mermin_operator(GhzLabel label, const Settings& a, const Settings& b, const Settings& c) {
  check_index(label.branch, 4, "mermin_operator");
  Settings s[3] = {a, b, c};
  if (label.branch > 0) s[label.branch - 1].o1 = -s[label.branch - 1].o1;
  const CMatrix m = kron({s[0].o0, s[1].o0, s[2].o0}) - kron({s[0].o0, s[1].o1, s[2].o1}) -
                    kron({s[0].o1, s[1].o0, s[2].o1}) - kron({s[0].o1, s[1].o1, s[2].o0});
  return label.plus ? m : -m;
}

Measurement measurement_basis(const ScenarioKind& kind) {
  std::vector<CMatrix> el;
  std::vector<std::string> labels;
  switch (kind.family) {
    case ScenarioKind::Family::bsm:
    case ScenarioKind::Family::tilted:
      for (int b = 0; b < 4; ++b) {
        el.push_back(two_qubit(tilted_bell_vector(kind.theta, b)));
        labels.push_back(std::to_string(b));
      }
      break;
    case ScenarioKind::Family::ghz:
      for (int r = 0; r < 8; ++r) {
        const GhzLabel l = GhzLabel::from_index(r);
        el.push_back(projector(ghz_vector(l), {2, 2, 2}));
        labels.push_back(l.name());
      }
      break;
  }
  return {std::move(el), std::move(labels)};
}

DensityOperator werner_source(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("werner_source: v must lie in [0, 1]");
  return DensityOperator(v * bell_state(0).mat() + ((1.0 - v) / 4.0) * identity(Dims{2, 2}));
}

Measurement noisy_measurement(const Measurement& m, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noisy_measurement: p must lie in [0, 1]");
  const int d = m.dim();
  const CMatrix id = identity(m.dims());
  std::vector<CMatrix> out;
  for (const auto& e : m.elements()) out.push_back((1.0 - p) * e + (p * e.trace().real() / d) * id);
  return {std::move(out), m.labels()};
}

std::vector<double> schmidt_coefficients(const Vec& psi, int d1, int d2) {
  if (psi.size() != d1 * d2) throw std::invalid_argument("schmidt_coefficients: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw std::invalid_argument("schmidt_coefficients: vector is not normalized");
  Mat m(d1, d2);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d2; ++j) m(i, j) = psi[i * d2 + j];
  }
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

}  // namespace swapcert
