// Copyright 2026 The cavity_grover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra shared by every module: type aliases, the
// Hermitian matrix exponential and the comparison norms used in audits.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cavity_grover {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using AtomicOperator = Eigen::Matrix4cd;
using Amplitudes = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Largest absolute entry of A - B.
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

/// ||U^dagger U - I||_max, the unitarity audit used throughout.
template <typename M>
double unitarity_defect(const Eigen::MatrixBase<M>& u) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("unitarity_defect: operator is not square");
  }
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  return (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// ||H - H^dagger||_max.
template <typename M>
double hermiticity_defect(const Eigen::MatrixBase<M>& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// min over phi of ||U - e^{i phi} V||_max.
///
/// The optimal phase for the Frobenius norm, arg tr(V^dagger U), is used as
/// the candidate; for matrices that agree up to a phase it is exact, and
/// otherwise it yields an upper bound, which is what the audits need.
template <typename A, typename B>
double phase_insensitive_diff(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("phase_insensitive_diff: shape mismatch");
  }
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (u - phase * v).cwiseAbs().maxCoeff();
}

/// exp(-i H t) for Hermitian H via its eigendecomposition; the result is
/// unitary to rounding regardless of ||H t||.
inline Operator expm_hermitian(const Operator& h, double t) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("expm_hermitian: operator is not square");
  }
  const Eigen::SelfAdjointEigenSolver<Operator> eig(h);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  const Eigen::VectorXcd phases =
      (eig.eigenvalues().cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Kronecker product with the left factor's index varying slowest.
inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace cavity_grover
