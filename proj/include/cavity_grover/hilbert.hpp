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

// Two qubits tensored with a truncated single-mode Fock space.
//
// Basis ordering is |a1 a2> (x) |n> with the atomic pair slowest and the
// photon number innermost. The atomic pairs are ordered |ee>, |eg>, |ge>,
// |gg>, so 4x4 gates are written in the same ordering as the gate algebra.

#include "cavity_grover/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavity_grover {

enum class Level { Excited = 0, Ground = 1 };

class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Number of basis states for a Fock cutoff n_cut.
constexpr std::size_t composite_dim(int n_cut) { return 4 * static_cast<std::size_t>(n_cut + 1); }

inline std::size_t basis_index(Level a1, Level a2, int n, int n_cut) {
  if (n_cut < 0) throw OutOfRangeError("basis_index: negative n_cut");
  if (n < 0 || n > n_cut) {
    throw OutOfRangeError("basis_index: photon number " + std::to_string(n) + " outside [0, " +
                          std::to_string(n_cut) + "]");
  }
  const auto pair = 2 * static_cast<std::size_t>(a1) + static_cast<std::size_t>(a2);
  return pair * static_cast<std::size_t>(n_cut + 1) + static_cast<std::size_t>(n);
}

/// Index of |a1 a2> in the 4-dim atomic space.
constexpr std::size_t atomic_index(Level a1, Level a2) {
  return 2 * static_cast<std::size_t>(a1) + static_cast<std::size_t>(a2);
}

inline Operator tensor(const Operator& a, const Operator& b) { return kron(a, b); }

/// op4 (x) I_{n_cut+1}.
inline Operator embed_atomic(const Operator& op4, int n_cut) {
  if (op4.rows() != 4 || op4.cols() != 4) {
    throw std::invalid_argument("embed_atomic: expected a 4x4 atomic operator");
  }
  if (n_cut < 0) throw OutOfRangeError("embed_atomic: negative n_cut");
  return kron(op4, Operator::Identity(n_cut + 1, n_cut + 1));
}

/// I_4 (x) field_op.
inline Operator embed_field(const Operator& field_op) {
  return kron(Operator::Identity(4, 4), field_op);
}

namespace ops {

/// Single-atom operators in the (e, g) ordering.
inline Operator sigma_plus() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 1.0;  // |e><g|
  return m;
}
inline Operator sigma_minus() { return sigma_plus().adjoint(); }
inline Operator sigma_x() { return sigma_plus() + sigma_minus(); }
inline Operator sigma_z() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
inline Operator identity2() { return Operator::Identity(2, 2); }

/// Single-atom operator acting on atom `which` (1 or 2) of the pair.
inline Operator on_atom(int which, const Operator& op2) {
  if (which == 1) return kron(op2, identity2());
  if (which == 2) return kron(identity2(), op2);
  throw std::invalid_argument("on_atom: atom index must be 1 or 2");
}

/// Truncated annihilation operator on the (n_cut+1)-dim Fock space.
inline Operator annihilation(int n_cut) {
  Operator a = Operator::Zero(n_cut + 1, n_cut + 1);
  for (int n = 1; n <= n_cut; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Operator number(int n_cut) {
  Operator m = Operator::Zero(n_cut + 1, n_cut + 1);
  for (int n = 0; n <= n_cut; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

/// Exchange of the two atoms, embedded on the full space.
inline Operator swap_atoms(int n_cut) {
  Operator s = Operator::Zero(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return embed_atomic(s, n_cut);
}

/// Total excitation number sum_j sigma_j^+ sigma_j^- + a^dagger a.
inline Operator excitation_number(int n_cut) {
  const Operator pe = sigma_plus() * sigma_minus();
  const Operator atoms = on_atom(1, pe) + on_atom(2, pe);
  return embed_atomic(atoms, n_cut) + embed_field(number(n_cut));
}

}  // namespace ops

/// Normalized amplitudes over the composite basis.
class StateVector {
 public:
  StateVector(Amplitudes amplitudes, int n_cut) : amplitudes_(std::move(amplitudes)), n_cut_(n_cut) {
    if (n_cut_ < 0) throw OutOfRangeError("StateVector: negative n_cut");
    if (static_cast<std::size_t>(amplitudes_.size()) != composite_dim(n_cut_)) {
      throw std::invalid_argument("StateVector: length must be 4*(n_cut+1)");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
  }

  const Amplitudes& amplitudes() const { return amplitudes_; }
  int n_cut() const { return n_cut_; }
  std::size_t dim() const { return composite_dim(n_cut_); }
  double norm() const { return amplitudes_.norm(); }

  /// Applies an operator without renormalizing; the result keeps whatever
  /// norm the operator produces, so callers see drift instead of hiding it.
  StateVector evolved_by(const Operator& u) const {
    StateVector out = *this;
    out.amplitudes_ = u * amplitudes_;
    return out;
  }

  /// Builds a state whose norm is only checked against `tol`; used by the
  /// propagator, which reports drift through its own error type.
  static StateVector unchecked(Amplitudes amplitudes, int n_cut) {
    StateVector out;
    out.amplitudes_ = std::move(amplitudes);
    out.n_cut_ = n_cut;
    return out;
  }

 private:
  StateVector() = default;
  Amplitudes amplitudes_;
  int n_cut_ = 0;
};

/// Reduced state of the two atoms.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const AtomicOperator& entries) : entries_(entries) {}

  const AtomicOperator& entries() const { return entries_; }
  double trace() const { return entries_.trace().real(); }

  /// Populations in the |ee>, |eg>, |ge>, |gg> ordering.
  Eigen::Vector4d populations() const { return entries_.diagonal().real(); }

  double population(Level a1, Level a2) const {
    const auto i = static_cast<Eigen::Index>(atomic_index(a1, a2));
    return entries_(i, i).real();
  }

  bool is_valid(double tol = 1e-9) const {
    if (std::abs(trace() - 1.0) > tol) return false;
    if (hermiticity_defect(entries_) > 1e-10) return false;
    const Eigen::SelfAdjointEigenSolver<AtomicOperator> eig(entries_);
    return eig.eigenvalues().minCoeff() >= -tol;
  }

 private:
  AtomicOperator entries_;
};

/// rho[i][j] = sum_n amp(i, n) conj(amp(j, n)).
inline DensityMatrix4 partial_trace_field(const Amplitudes& amplitudes, int n_cut) {
  const Eigen::Index fock = n_cut + 1;
  if (amplitudes.size() != 4 * fock) {
    throw std::invalid_argument("partial_trace_field: length must be 4*(n_cut+1)");
  }
  // Row i of `blocks` holds the field amplitudes attached to atomic state i.
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> blocks(4, fock);
  for (Eigen::Index i = 0; i < 4; ++i) blocks.row(i) = amplitudes.segment(i * fock, fock).transpose();
  return DensityMatrix4(blocks * blocks.adjoint());
}

inline DensityMatrix4 partial_trace_field(const StateVector& state) {
  return partial_trace_field(state.amplitudes(), state.n_cut());
}

inline StateVector fock_state(Level a1, Level a2, int n, int n_cut) {
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(composite_dim(n_cut)));
  amps(static_cast<Eigen::Index>(basis_index(a1, a2, n, n_cut))) = 1.0;
  return StateVector(std::move(amps), n_cut);
}

/// Atomic state (x) field state.
inline StateVector product_state(const Eigen::Vector4cd& atoms, const Amplitudes& field) {
  const int n_cut = static_cast<int>(field.size()) - 1;
  Amplitudes amps(4 * field.size());
  for (Eigen::Index i = 0; i < 4; ++i) amps.segment(i * field.size(), field.size()) = atoms(i) * field;
  return StateVector(std::move(amps), n_cut);
}

/// Bose-Einstein weights p_n = nbar^n / (1 + nbar)^(n+1) over 0..n_cut,
/// renormalized to sum to one.
inline std::vector<double> thermal_weights(double nbar, int n_cut) {
  if (nbar < 0.0) throw std::invalid_argument("thermal_weights: negative mean photon number");
  if (n_cut < 0) throw OutOfRangeError("thermal_weights: negative n_cut");
  std::vector<double> w(static_cast<std::size_t>(n_cut + 1), 0.0);
  if (nbar == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const double ratio = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  double total = 0.0;
  for (auto& x : w) {
    x = p;
    total += p;
    p *= ratio;
  }
  for (auto& x : w) x /= total;
  return w;
}

/// Probability mass of a thermal distribution above photon number n_max.
inline double thermal_tail_mass(double nbar, int n_max) {
  if (nbar == 0.0) return 0.0;
  return std::pow(nbar / (1.0 + nbar), n_max + 1);
}

/// Coherent-state Fock amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) for
/// n = 0..n_cut (not renormalized).
inline Amplitudes coherent_amplitudes(Complex alpha, int n_cut) {
  Amplitudes c(n_cut + 1);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n <= n_cut; ++n) {
    c(n) = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return c;
}

}  // namespace cavity_grover
