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

// Unitary propagation of the interaction-picture Schroedinger equation on the
// truncated two-atom + cavity space.
//
// Two schemes are provided:
//
//  * PiecewiseExponentialMidpoint: each step applies exp(-i H(t_mid) dt).
//    H(t) only depends on t through the cavity phase e^{-i delta t}, so
//    H(t) = R(t)^dag H(0) R(t) with R(t) = exp(i delta t a^dag a). One
//    exponential exp(-i H(0) dt) is therefore formed per call and each step
//    reduces to two diagonal phase multiplications and a matrix-vector
//    product. Every step is exactly unitary.
//
//  * RK4: classical fourth-order Runge-Kutta in the frame rotating with the
//    (time-independent, exactly solvable) drive 2 Omega J_x. Only the weak
//    cavity coupling is integrated, so the step is not limited by the fast
//    Rabi rotation itself but still has to resolve its beat with the coupling.
//
// The step size is tied to the fastest rate, max(Omega, delta), with
// steps_per_fast_period steps per 2 pi / rate. No renormalization is ever
// applied; norm drift beyond unitarity_tol raises IntegrationError.

#include "cavity_grover/hilbert.hpp"
#include "cavity_grover/linalg.hpp"
#include "cavity_grover/models.hpp"
#include "cavity_grover/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cavity_grover {

enum class IntegrationMethod { PiecewiseExponentialMidpoint, RK4 };

struct IntegratorConfig {
  int steps_per_fast_period = 128;
  IntegrationMethod method = IntegrationMethod::PiecewiseExponentialMidpoint;
  double unitarity_tol = 1e-8;
  /// Workers used by propagator_matrix when columns are evolved separately.
  unsigned threads = 1;

  void validate() const {
    if (steps_per_fast_period < 16) {
      throw std::invalid_argument("IntegratorConfig: steps_per_fast_period must be >= 16");
    }
    if (!(unitarity_tol > 0.0)) throw std::invalid_argument("IntegratorConfig: unitarity_tol must be positive");
  }
};

class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(double drift)
      : std::runtime_error(message(drift)), drift_(drift) {}
  double drift() const { return drift_; }

 private:
  static std::string message(double drift) {
    std::ostringstream os;
    os << "integration accuracy error: unitarity drift " << drift << " exceeds tolerance";
    return os.str();
  }
  double drift_;
};

/// Fastest rate resolved by the step size. Falls back to g for the
/// resonant, undriven corner where both Omega and delta vanish.
inline double fast_rate(const PhysicalParams& p) {
  const double rate = std::max({std::abs(p.omega_rabi), std::abs(p.delta), std::abs(p.g)});
  if (!(rate > 0.0)) throw std::invalid_argument("fast_rate: all rates vanish");
  return rate;
}

/// Number of uniform steps covering [t0, t1].
inline std::int64_t step_count(double t0, double t1, const PhysicalParams& p, const IntegratorConfig& cfg) {
  if (t1 == t0) return 0;
  const double period = 2.0 * kPi / fast_rate(p);
  const double steps = std::ceil((t1 - t0) / period * cfg.steps_per_fast_period);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(steps));
}

namespace detail {

/// exp(i delta t n) for n = 0..n_cut.
inline Eigen::VectorXcd cavity_phases(double delta, double t, int n_cut) {
  Eigen::VectorXcd ph(n_cut + 1);
  for (int n = 0; n <= n_cut; ++n) ph(n) = std::exp(Complex{0.0, delta * t * n});
  return ph;
}

/// Applies a diagonal field operator (given by its n-indexed entries) on the
/// full space.
inline void apply_field_diagonal(Amplitudes& v, const Eigen::VectorXcd& diag) {
  const Eigen::Index d = diag.size();
  for (Eigen::Index i = 0; i < 4; ++i) v.segment(i * d, d).array() *= diag.array();
}

inline Amplitudes evolve_midpoint(const Amplitudes& psi0, double t0, double t1, const PhysicalParams& p,
                                  int n_cut, const IntegratorConfig& cfg) {
  const std::int64_t steps = step_count(t0, t1, p, cfg);
  if (steps == 0) return psi0;
  const double dt = (t1 - t0) / static_cast<double>(steps);
  const Operator step = expm_hermitian(hamiltonian_interaction(0.0, p, n_cut), dt);
  Amplitudes psi = psi0;
  Amplitudes tmp(psi.size());
  for (std::int64_t k = 0; k < steps; ++k) {
    const double tm = t0 + (static_cast<double>(k) + 0.5) * dt;
    const Eigen::VectorXcd ph = cavity_phases(p.delta, tm, n_cut);
    apply_field_diagonal(psi, ph);
    tmp.noalias() = step * psi;
    apply_field_diagonal(tmp, ph.conjugate());
    psi.swap(tmp);
  }
  return psi;
}

/// Product of the midpoint steps, R_{K-1}^dag E (R(dt) E)^{K-1} R_0, which
/// follows from R_{k+1} R_k^dag = R(dt). Evaluated by repeated squaring.
inline Operator propagator_midpoint(double t0, double t1, const PhysicalParams& p, int n_cut,
                                    const IntegratorConfig& cfg) {
  const auto dim = static_cast<Eigen::Index>(composite_dim(n_cut));
  const std::int64_t steps = step_count(t0, t1, p, cfg);
  if (steps == 0) return Operator::Identity(dim, dim);
  const double dt = (t1 - t0) / static_cast<double>(steps);
  const Operator step = expm_hermitian(hamiltonian_interaction(0.0, p, n_cut), dt);

  Operator shifted = step;  // R(dt) E
  const Eigen::VectorXcd shift = cavity_phases(p.delta, dt, n_cut);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Amplitudes col = shifted.col(c);
    apply_field_diagonal(col, shift);
    shifted.col(c) = col;
  }
  Operator power = Operator::Identity(dim, dim);
  Operator base = shifted;
  for (std::int64_t e = steps - 1; e > 0; e >>= 1) {
    if (e & 1) power = base * power;
    if (e > 1) base = base * base;
  }
  Operator u = step * power;
  const Eigen::VectorXcd first = cavity_phases(p.delta, t0 + 0.5 * dt, n_cut);
  const Eigen::VectorXcd last =
      cavity_phases(p.delta, t0 + (static_cast<double>(steps) - 0.5) * dt, n_cut).conjugate();
  for (Eigen::Index c = 0; c < dim; ++c) u.col(c) *= first(c % (n_cut + 1));
  for (Eigen::Index r = 0; r < dim; ++r) u.row(r) *= last(r % (n_cut + 1));
  return u;
}

/// exp(-i 2 Omega J_x s) on the atoms, from a fixed eigendecomposition of J_x.
class DriveRotation {
 public:
  explicit DriveRotation(double omega) : omega_(omega) {
    const Eigen::SelfAdjointEigenSolver<AtomicOperator> eig(jx());
    vectors_ = eig.eigenvectors();
    values_ = eig.eigenvalues();
  }
  AtomicOperator at(double s) const {
    Eigen::Vector4cd ph;
    for (int i = 0; i < 4; ++i) ph(i) = std::exp(Complex{0.0, -2.0 * omega_ * values_(i) * s});
    return vectors_ * ph.asDiagonal() * vectors_.adjoint();
  }

 private:
  double omega_;
  AtomicOperator vectors_;
  Eigen::Vector4d values_;
};

/// Views amplitudes as a (n_cut+1) x 4 matrix M(n, pair); an atomic operator
/// A then acts as M A^T and a field operator B as B M.
using FieldByAtoms = Eigen::Matrix<Complex, Eigen::Dynamic, 4>;

inline FieldByAtoms as_field_by_atoms(const Amplitudes& v, int n_cut) {
  return Eigen::Map<const FieldByAtoms>(v.data(), n_cut + 1, 4);
}

inline Amplitudes flatten(const FieldByAtoms& m) {
  return Eigen::Map<const Amplitudes>(m.data(), m.size());
}

/// Right-hand side of the drive-frame equation, -i W(s)^dag V(t) W(s) y.
class DriveFrameRhs {
 public:
  DriveFrameRhs(const PhysicalParams& p, int n_cut, double t0)
      : p_(p), n_cut_(n_cut), t0_(t0), drive_(p.omega_rabi) {
    const Operator sm = ops::on_atom(1, ops::sigma_minus()) + ops::on_atom(2, ops::sigma_minus());
    lower_t_ = sm.transpose();
    raise_t_ = sm.adjoint().transpose();
  }

  FieldByAtoms operator()(double t, const FieldByAtoms& y) const {
    const AtomicOperator w = drive_.at(t - t0_);
    const FieldByAtoms x = y * w.transpose();
    // a^dag x and a x via row shifts.
    FieldByAtoms up = FieldByAtoms::Zero(n_cut_ + 1, 4);
    FieldByAtoms down = FieldByAtoms::Zero(n_cut_ + 1, 4);
    for (int n = 1; n <= n_cut_; ++n) {
      const double s = std::sqrt(static_cast<double>(n));
      up.row(n) = s * x.row(n - 1);
      down.row(n - 1) = s * x.row(n);
    }
    const Complex phase = std::exp(Complex{0.0, -p_.delta * t});
    const FieldByAtoms vx = p_.g * (phase * (up * lower_t_) + std::conj(phase) * (down * raise_t_));
    return Complex{0.0, -1.0} * (vx * w.adjoint().transpose());
  }

  AtomicOperator drive(double s) const { return drive_.at(s); }

 private:
  PhysicalParams p_;
  int n_cut_;
  double t0_;
  DriveRotation drive_;
  AtomicOperator lower_t_;
  AtomicOperator raise_t_;
};

inline Amplitudes evolve_rk4(const Amplitudes& psi0, double t0, double t1, const PhysicalParams& p, int n_cut,
                             const IntegratorConfig& cfg) {
  const std::int64_t steps = step_count(t0, t1, p, cfg);
  if (steps == 0) return psi0;
  const double dt = (t1 - t0) / static_cast<double>(steps);
  const DriveFrameRhs rhs(p, n_cut, t0);
  FieldByAtoms y = as_field_by_atoms(psi0, n_cut);
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const FieldByAtoms k1 = rhs(t, y);
    const FieldByAtoms k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const FieldByAtoms k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const FieldByAtoms k4 = rhs(t + dt, y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const FieldByAtoms out = y * rhs.drive(t1 - t0).transpose();
  return flatten(out);
}

inline Amplitudes evolve_amplitudes(const Amplitudes& psi0, double t0, double t1, const PhysicalParams& p,
                                    int n_cut, const IntegratorConfig& cfg) {
  switch (cfg.method) {
    case IntegrationMethod::PiecewiseExponentialMidpoint:
      return evolve_midpoint(psi0, t0, t1, p, n_cut, cfg);
    case IntegrationMethod::RK4:
      return evolve_rk4(psi0, t0, t1, p, n_cut, cfg);
  }
  throw std::logic_error("unknown integration method");
}

}  // namespace detail

/// State at t1 given `state` at t0. Throws IntegrationError when the norm
/// drifts by more than cfg.unitarity_tol.
inline StateVector evolve(const StateVector& state, double t0, double t1, const PhysicalParams& p,
                          const IntegratorConfig& cfg = {}) {
  cfg.validate();
  if (t1 < t0) throw std::invalid_argument("evolve: t1 < t0");
  Amplitudes out = detail::evolve_amplitudes(state.amplitudes(), t0, t1, p, state.n_cut(), cfg);
  const double drift = std::abs(out.norm() - state.norm());
  if (drift > cfg.unitarity_tol) throw IntegrationError(drift);
  return StateVector::unchecked(std::move(out), state.n_cut());
}

/// U(t1, t0) on the full truncated space. The midpoint scheme forms the step
/// product directly; RK4 evolves each basis column, concurrently when
/// cfg.threads > 1 (columns are independent, so the result does not depend
/// on the thread count).
inline Operator propagator_matrix(double t0, double t1, const PhysicalParams& p, int n_cut,
                                  const IntegratorConfig& cfg = {}) {
  cfg.validate();
  if (t1 < t0) throw std::invalid_argument("propagator_matrix: t1 < t0");
  const auto dim = static_cast<Eigen::Index>(composite_dim(n_cut));
  Operator u;
  if (cfg.method == IntegrationMethod::PiecewiseExponentialMidpoint) {
    u = detail::propagator_midpoint(t0, t1, p, n_cut, cfg);
  } else {
    u = Operator::Zero(dim, dim);
    cavity_grover::detail::parallel_for(static_cast<std::size_t>(dim), cfg.threads, [&](std::size_t c) {
      const Amplitudes e = Amplitudes::Unit(dim, static_cast<Eigen::Index>(c));
      u.col(static_cast<Eigen::Index>(c)) = detail::evolve_amplitudes(e, t0, t1, p, n_cut, cfg);
    });
  }
  const double defect = unitarity_defect(u);
  if (defect > cfg.unitarity_tol) throw IntegrationError(defect);
  return u;
}

/// Block of U mapping |a, n> to |a', n> for a fixed photon number n.
inline AtomicOperator atomic_block(const Operator& u, int n, int n_cut) {
  AtomicOperator out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = u(i * (n_cut + 1) + n, j * (n_cut + 1) + n);
  }
  return out;
}

}  // namespace cavity_grover
