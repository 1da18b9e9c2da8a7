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

// Self-check suite behind the `validate` command: algebraic identities of
// the gate set, numerical hygiene of the propagator and the convergence
// audit. Each check reports a measured value against its threshold.

#include "cavity_grover/experiments.hpp"
#include "cavity_grover/gates.hpp"
#include "cavity_grover/grover.hpp"
#include "cavity_grover/models.hpp"
#include "cavity_grover/propagator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace cavity_grover {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

namespace validation_detail {

inline CheckResult at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value <= threshold};
}

inline double closed_form_vs_expm(int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> b_dist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> h_dist(0.0, 20.0);
  const Eigen::Matrix4cd j = jx();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double b = b_dist(rng);
    const double h = h_dist(rng);
    const Eigen::Matrix4cd a = (Complex{0.0, -b * h} * j).exp();
    const Eigen::Matrix4cd c = (Complex{0.0, -b} * (j * j)).exp();
    worst = std::max(worst, max_abs_diff(effective_unitary(b, h), a * c));
  }
  return worst;
}

inline double gate_identity_error() {
  double worst = max_abs_diff(effective_unitary(kPi / 2.0, 1.0), AtomicOperator(-diffusion()));
  for (long long m : {0LL, 1LL, 4000LL}) {
    for (Target t : kAllTargets) {
      AtomicOperator expect = AtomicOperator::Identity();
      expect(target_index(t), target_index(t)) = -1.0;
      worst = std::max(worst, max_abs_diff(oracle(t, m), expect));
    }
  }
  return worst;
}

}  // namespace validation_detail

inline std::vector<CheckResult> run_validation(const SweepSettings& s = {}) {
  using validation_detail::at_most;
  std::vector<CheckResult> out;

  out.push_back(at_most("closed-form effective unitary vs expm product",
                        validation_detail::closed_form_vs_expm(100, 20260101), 1e-10));
  out.push_back(at_most("diffusion and oracle identities", validation_detail::gate_identity_error(), 1e-12));

  double ideal = 0.0;
  for (Target t : kAllTargets) ideal = std::max(ideal, std::abs(1.0 - run_ideal(t).fidelity));
  out.push_back(at_most("ideal single-query search", ideal, 1e-12));

  const TimingReport timing = timing_report(s.params);
  out.push_back(at_most("total gate time / radiative time", timing.ratio_to_radiative, 0.015));

  // Propagator hygiene at the operating point on |.,5> with full headroom.
  const int n_cut = kPulseErrorFock + s.headroom;
  const double tw = window_time(s.params);
  IntegratorConfig cfg = s.integrator;
  double defect = 0.0;
  double swap_err = 0.0;
  const Operator swap = ops::swap_atoms(n_cut);
  for (auto kind : {OmegaClass::Kind::Class1, OmegaClass::Kind::Class3}) {
    const PhysicalParams pw = select_omega(s.params, kind, s.params.h()).params;
    cfg.unitarity_tol = 1.0;  // measured below instead of thrown
    const Operator u = propagator_matrix(0.0, tw, pw, n_cut, cfg);
    defect = std::max(defect, unitarity_defect(u));
    swap_err = std::max(swap_err, max_abs_diff(swap * u * swap, u));
  }
  out.push_back(at_most("window propagator unitarity defect", defect, s.integrator.unitarity_tol));
  out.push_back(at_most("atom-exchange symmetry of propagator", swap_err, 1e-6));

  {
    PhysicalParams undriven = s.params;
    undriven.omega_rabi = 0.0;
    const int nc = 6;
    const Operator number = ops::excitation_number(nc);
    Eigen::Vector4cd atoms;
    atoms << 0.5, 0.5, 0.5, 0.5;
    Amplitudes field = Amplitudes::Zero(nc + 1);
    field(2) = 1.0;
    const StateVector psi0 = product_state(atoms, field);
    const double n0 = (psi0.amplitudes().adjoint() * number * psi0.amplitudes())(0).real();
    double drift = 0.0;
    StateVector psi = psi0;
    const double dt = tw / 8.0;
    for (int k = 0; k < 8; ++k) {
      psi = evolve(psi, k * dt, (k + 1) * dt, undriven, s.integrator);
      const double nk = (psi.amplitudes().adjoint() * number * psi.amplitudes())(0).real();
      drift = std::max(drift, std::abs(nk - n0));
    }
    out.push_back(at_most("excitation number conservation without drive", drift, 1e-9));
  }

  {
    IntegratorConfig a = s.integrator;
    a.method = IntegrationMethod::PiecewiseExponentialMidpoint;
    IntegratorConfig b = s.integrator;
    b.method = IntegrationMethod::RK4;
    SearchOptions opt;
    opt.headroom = s.headroom;
    const SearchResult ra = run_search(s.target, FockInit{kPulseErrorFock}, s.params, 0.0, a, opt);
    const SearchResult rb = run_search(s.target, FockInit{kPulseErrorFock}, s.params, 0.0, b, opt);
    double diff = 0.0;
    for (std::size_t i = 0; i < 4; ++i) diff = std::max(diff, std::abs(ra.probabilities[i] - rb.probabilities[i]));
    out.push_back(at_most("midpoint vs RK4 outcome probabilities", diff, 1e-6));
  }

  {
    double worst = 0.0;
    SearchOptions opt;
    opt.ideal_windows = true;
    for (int n = 0; n <= 10; ++n) {
      for (Target t : kAllTargets) {
        worst = std::max(worst, std::abs(1.0 - run_search(t, FockInit{n}, s.params, 0.0, s.integrator, opt).fidelity));
      }
    }
    out.push_back(at_most("photon-number independence of effective gates", worst, 1e-12));
  }

  const ConvergenceReport conv = convergence_audit(s);
  out.push_back(at_most("convergence audit (doubled cutoff / steps)", conv.max_shift, kConvergenceTol));
  return out;
}

}  // namespace cavity_grover
