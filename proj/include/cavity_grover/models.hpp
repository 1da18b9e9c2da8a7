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

// Hamiltonians of two driven atoms coupled to one detuned cavity mode, the
// closed-form effective two-atom evolution, and the bookkeeping that picks
// a drive strength compatible with the phase conditions of the gates.
//
// All rates are angular frequencies in rad/s. In the lab frame the model is
//   H = (w0/2) sum_j sz_j + wa a^dag a
//       + sum_j [ g (a^dag s_j^- + a s_j^+) + Omega (s_j^+ e^{-iwt} + h.c.) ];
// with w = w0 and delta = w0 - wa the interaction picture reads
//   H_I(t) = sum_j [ Omega (s_j^+ + s_j^-) + g (e^{-i delta t} a^dag s_j^- + h.c.) ],
// which is what the simulator propagates.

#include "cavity_grover/hilbert.hpp"
#include "cavity_grover/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavity_grover {

struct PhysicalParams {
  double g = 0.0;           ///< atom-cavity coupling
  double delta = 0.0;       ///< atom-cavity detuning w0 - wa
  double omega_rabi = 0.0;  ///< classical drive Rabi frequency

  /// Dispersive two-atom coupling g^2 / (2 delta).
  double lambda() const { return g * g / (2.0 * delta); }
  /// Drive strength in units of lambda.
  double h() const { return omega_rabi / lambda(); }

  /// Throws std::invalid_argument unless every rate is strictly positive.
  void validate() const {
    if (!(g > 0.0)) throw std::invalid_argument("PhysicalParams: g must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("PhysicalParams: delta must be positive");
    if (!(omega_rabi > 0.0)) throw std::invalid_argument("PhysicalParams: omega_rabi must be positive");
  }

  /// Human-readable warnings when the strong-drive dispersive regime
  /// (Omega >> delta >> g) is not met by at least a factor of ten.
  std::vector<std::string> regime_warnings() const {
    std::vector<std::string> out;
    if (delta / g < 10.0) {
      out.push_back("delta/g = " + std::to_string(delta / g) + " < 10: dispersive regime not reached");
    }
    if (omega_rabi / delta < 10.0) {
      out.push_back("omega/delta = " + std::to_string(omega_rabi / delta) +
                    " < 10: strong-drive regime not reached");
    }
    return out;
  }
};

/// Phase condition on h = Omega/lambda: Class1 means h = 4m+1 and produces
/// the diffusion and the |gg> oracle; Class3 means h = 4m+3 and produces the
/// |ee> oracle.
struct OmegaClass {
  enum class Kind { Class1, Class3 };
  Kind kind = Kind::Class1;
  long long m = 0;

  static constexpr int offset(Kind k) { return k == Kind::Class1 ? 1 : 3; }
  double ratio() const { return 4.0 * static_cast<double>(m) + offset(kind); }
};

struct OmegaSelection {
  PhysicalParams params;
  OmegaClass omega_class;
};

/// Smallest Omega = (4m+c) lambda with Omega/lambda >= target_ratio.
/// Rounds up so the drive never drops below the requested strength.
inline OmegaSelection select_omega(const PhysicalParams& p, OmegaClass::Kind kind, double target_ratio) {
  if (!(target_ratio > 0.0)) throw std::invalid_argument("select_omega: target ratio must be positive");
  const int c = OmegaClass::offset(kind);
  // Guard against ratios such as 16000.000000000002 produced by Omega/lambda.
  const double raw = (target_ratio - c) / 4.0;
  const long long m = raw <= 0.0 ? 0 : static_cast<long long>(std::ceil(raw - 1e-9));
  OmegaSelection out{p, OmegaClass{kind, m}};
  out.params.omega_rabi = out.omega_class.ratio() * p.lambda();
  return out;
}

/// Collective spin J_x = (1/2) sum_j (s_j^+ + s_j^-) on the atomic space.
inline AtomicOperator jx() {
  const Operator sx = ops::sigma_x();
  return 0.5 * (ops::on_atom(1, sx) + ops::on_atom(2, sx));
}

/// Drive-only part: 2 Omega J_x.
inline AtomicOperator hamiltonian_h0(const PhysicalParams& p) { return 2.0 * p.omega_rabi * jx(); }

/// Effective dispersive coupling lambda [ I + (s1+ s2+ + s1+ s2- + h.c.) ],
/// assembled from single-atom ladder operators; equals 2 lambda J_x^2.
inline AtomicOperator hamiltonian_he(const PhysicalParams& p) {
  const Operator sp1 = ops::on_atom(1, ops::sigma_plus());
  const Operator sp2 = ops::on_atom(2, ops::sigma_plus());
  const Operator sm2 = ops::on_atom(2, ops::sigma_minus());
  const Operator pairs = sp1 * sp2 + sp1 * sm2;
  const Operator id = Operator::Identity(4, 4);
  return p.lambda() * (id + pairs + pairs.adjoint());
}

/// Full-space coupling operator a^dag S^- (S^- = sum_j s_j^-).
inline Operator coupling_lowering(int n_cut) {
  const Operator sm = ops::on_atom(1, ops::sigma_minus()) + ops::on_atom(2, ops::sigma_minus());
  return kron(sm, ops::annihilation(n_cut).adjoint());
}

/// Full-space drive term Omega (S^+ + S^-) = 2 Omega J_x (x) I.
inline Operator drive_hamiltonian(const PhysicalParams& p, int n_cut) {
  return embed_atomic(Operator(hamiltonian_h0(p)), n_cut);
}

/// Interaction-picture Hamiltonian H_I(t) on the truncated space.
inline Operator hamiltonian_interaction(double t, const PhysicalParams& p, int n_cut) {
  const Operator lower = coupling_lowering(n_cut);
  const Complex phase = std::exp(Complex{0.0, -p.delta * t});
  return drive_hamiltonian(p, n_cut) + p.g * (phase * lower + std::conj(phase) * lower.adjoint());
}

/// Closed form of exp(-i b h J_x) exp(-i b J_x^2) with b = 2 lambda t and
/// h = Omega/lambda, in the |ee>, |eg>, |ge>, |gg> basis.
inline AtomicOperator effective_unitary(double b, double h) {
  // b*h reaches ~1e4 for realistic drives; the rounding error of the product
  // is carried into the trigonometric values so only the representation
  // error of b itself remains.
  const double bh = b * h;
  const double bh_err = std::fma(b, h, -bh);
  const double cos_bh = std::cos(bh) - std::sin(bh) * bh_err;
  const double sin_bh = std::sin(bh) + std::cos(bh) * bh_err;
  const Complex rot = std::exp(Complex{0.0, -b});
  const Complex c = 0.5 * cos_bh * rot;
  const Complex s = Complex{0.0, -0.5} * sin_bh * rot;
  const Complex diag = 0.5 + c;
  const Complex anti = -0.5 + c;
  AtomicOperator u;
  // clang-format off
  u << diag, s,    s,    anti,
       s,    diag, anti, s,
       s,    anti, diag, s,
       anti, s,    s,    diag;
  // clang-format on
  return u;
}

}  // namespace cavity_grover
