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

// End-to-end two-atom searches: the ideal 4x4 evaluation and the exact
// simulation that replays the pulse schedule on the atoms + cavity space,
// with an optional common pulse-area error and several initial cavity fields.

#include "cavity_grover/gates.hpp"
#include "cavity_grover/hilbert.hpp"
#include "cavity_grover/models.hpp"
#include "cavity_grover/parallel.hpp"
#include "cavity_grover/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cavity_grover {

/// Radiative lifetime of the circular Rydberg levels used in the timing
/// comparison (seconds).
inline constexpr double kRadiativeTime = 3e-2;

/// Default number of Fock levels kept above the highest populated one.
inline constexpr int kDefaultHeadroom = 12;

/// Largest probability mass an initial field may place beyond the levels
/// that receive full headroom.
inline constexpr double kMaxTailMass = 1e-10;

struct FockInit {
  int n = 0;
};
struct ThermalInit {
  double nbar = 0.0;
};
struct CoherentInit {
  Complex alpha{0.0, 0.0};
};
using CavityInit = std::variant<FockInit, ThermalInit, CoherentInit>;

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchResult {
  Target target = Target::GG;
  /// Outcome probabilities over |ee>, |eg>, |ge>, |gg>.
  std::array<double, 4> probabilities{};
  double fidelity = 0.0;
  double total_time = 0.0;
  double unitarity_defect = 0.0;

  double probability(Target t) const { return probabilities[static_cast<std::size_t>(target_index(t))]; }
};

struct SearchOptions {
  /// Fock cutoff; chosen from the initial field and `headroom` when unset.
  std::optional<int> n_cut;
  int headroom = kDefaultHeadroom;
  /// Whether the NOT pulses on atom 2 share the pulse-area error.
  bool not2_error = true;
  /// Replace each interaction window by the closed-form effective evolution.
  bool ideal_windows = false;
  /// Workers for thermal ensembles.
  unsigned threads = 1;
};

/// D I_t (H (x) H) |gg> evaluated with 4x4 algebra.
inline SearchResult run_ideal(Target t) {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(target_index(Target::GG)) = 1.0;
  psi = diffusion() * oracle(t) * hadamard2() * psi;
  SearchResult r;
  r.target = t;
  for (int i = 0; i < 4; ++i) r.probabilities[static_cast<std::size_t>(i)] = std::norm(psi(i));
  r.fidelity = r.probability(t);
  r.unitarity_defect = unitarity_defect(diffusion() * oracle(t) * hadamard2());
  return r;
}

/// Single-atom pulse with its rotation angle scaled by (1 + eps). The ideal
/// gate G is written as i exp(-i (pi/2) n.sigma); the erroneous pulse is
/// i exp(-i (pi/2)(1+eps) n.sigma).
inline Operator rotation_pulse(const Operator& axis_sigma, double eps) {
  const double half = 0.5 * kPi * (1.0 + eps);
  return kI * (std::cos(half) * Operator::Identity(2, 2) - kI * std::sin(half) * axis_sigma);
}

/// H (x) H or NOT2 executed with pulse-area error eps; eps = 0 returns the
/// ideal gate.
inline AtomicOperator pulse_gate(GateId id, double eps, bool afflicted = true) {
  if (eps == 0.0 || !afflicted) return gate_matrix(id);
  if (id == GateId::H2) {
    // hadamard1() is itself n.sigma with n = (x - z)/sqrt2.
    const Operator h = rotation_pulse(hadamard1(), eps);
    return kron(h, h);
  }
  return kron(Operator::Identity(2, 2), rotation_pulse(ops::sigma_x(), eps));
}

struct TimingReport {
  double t_window = 0.0;
  double total = 0.0;
  double ratio_to_radiative = 0.0;
};

inline TimingReport timing_report(const PhysicalParams& p) {
  TimingReport r;
  r.t_window = window_time(p);
  r.total = 2.0 * r.t_window;
  r.ratio_to_radiative = r.total / kRadiativeTime;
  return r;
}

namespace detail {

inline void apply_atomic(Amplitudes& v, const AtomicOperator& a, int n_cut) {
  FieldByAtoms m = as_field_by_atoms(v, n_cut);
  m = m * a.transpose();
  v = flatten(m);
}

/// Highest photon number that must carry full headroom.
inline int populated_max(const CavityInit& init) {
  if (const auto* f = std::get_if<FockInit>(&init)) {
    if (f->n < 0) throw std::invalid_argument("Fock init: negative photon number");
    return f->n;
  }
  if (const auto* th = std::get_if<ThermalInit>(&init)) {
    if (th->nbar < 0.0) throw std::invalid_argument("Thermal init: negative mean photon number");
    int n = 0;
    while (thermal_tail_mass(th->nbar, n) > kMaxTailMass) ++n;
    return n;
  }
  const auto& c = std::get<CoherentInit>(init);
  const double mean = std::norm(c.alpha);
  // Poisson tail: accumulate until the remaining mass is below threshold.
  double p = std::exp(-mean);
  double cum = p;
  int n = 0;
  while (1.0 - cum > kMaxTailMass && n < 10000) {
    ++n;
    p *= mean / n;
    cum += p;
  }
  return n;
}

/// Runs the schedule on one pure initial field and returns the populations
/// plus the worst norm drift.
inline SearchResult run_pure(Target t, const Amplitudes& field, int n_cut, const PhysicalParams& p, double eps,
                             const IntegratorConfig& cfg, const SearchOptions& opt) {
  const PulseSchedule schedule = grover_schedule(t, p);
  Eigen::Vector4cd atoms = Eigen::Vector4cd::Zero();
  atoms(target_index(Target::GG)) = 1.0;
  Amplitudes psi = product_state(atoms, field).amplitudes();

  double time = 0.0;
  double drift = 0.0;
  for (const auto& step : schedule.steps) {
    if (const auto* g = std::get_if<IdealGate>(&step)) {
      const bool afflicted = g->id == GateId::H2 || opt.not2_error;
      apply_atomic(psi, pulse_gate(g->id, eps, afflicted), n_cut);
      continue;
    }
    const auto& w = std::get<InteractionWindow>(step);
    const double duration = w.duration * (1.0 + eps);
    PhysicalParams pw = p;
    pw.omega_rabi = w.omega_class.ratio() * p.lambda();
    const double before = psi.norm();
    if (opt.ideal_windows) {
      apply_atomic(psi, effective_unitary(2.0 * pw.lambda() * duration, pw.h()), n_cut);
    } else {
      psi = evolve(StateVector::unchecked(psi, n_cut), time, time + duration, pw, cfg).amplitudes();
    }
    drift = std::max(drift, std::abs(psi.norm() - before));
    time += duration;
  }

  const Eigen::Vector4d pops = partial_trace_field(psi, n_cut).populations();
  SearchResult r;
  r.target = t;
  for (int i = 0; i < 4; ++i) r.probabilities[static_cast<std::size_t>(i)] = pops(i);
  r.fidelity = r.probability(t);
  r.total_time = time;
  r.unitarity_defect = drift;
  return r;
}

}  // namespace detail

/// Exact simulation of one search.
///
/// Ideal gates act on the atoms only; every pulse (H (x) H always, NOT2
/// when opt.not2_error) has its rotation angle scaled by (1 + eps), and each
/// interaction window is propagated for (1 + eps) times its nominal
/// duration with Omega re-selected for the window's class. Thermal fields
/// are treated as weighted ensembles of Fock runs. Fidelity is the target
/// population of the reduced atomic state.
inline SearchResult run_search(Target t, const CavityInit& init, const PhysicalParams& p, double eps = 0.0,
                               const IntegratorConfig& cfg = {}, const SearchOptions& opt = {}) {
  p.validate();
  cfg.validate();
  if (!(eps > -1.0)) throw std::invalid_argument("run_search: pulse error must exceed -1");
  if (opt.headroom < 0) throw std::invalid_argument("run_search: negative headroom");

  const int needed = detail::populated_max(init);
  const int n_cut = opt.n_cut.value_or(needed + opt.headroom);
  if (needed + opt.headroom > n_cut) {
    throw TruncationError("initial field populates n = " + std::to_string(needed) + " but n_cut = " +
                          std::to_string(n_cut) + " leaves less than " + std::to_string(opt.headroom) +
                          " levels of headroom");
  }

  if (const auto* f = std::get_if<FockInit>(&init)) {
    Amplitudes field = Amplitudes::Zero(n_cut + 1);
    field(f->n) = 1.0;
    return detail::run_pure(t, field, n_cut, p, eps, cfg, opt);
  }
  if (const auto* c = std::get_if<CoherentInit>(&init)) {
    Amplitudes field = Amplitudes::Zero(n_cut + 1);
    field.head(needed + 1) = coherent_amplitudes(c->alpha, needed);
    field /= field.norm();
    return detail::run_pure(t, field, n_cut, p, eps, cfg, opt);
  }

  const auto& th = std::get<ThermalInit>(init);
  const int n_max = n_cut - opt.headroom;
  const std::vector<double> weights = thermal_weights(th.nbar, n_max);
  std::vector<SearchResult> members(weights.size());
  detail::parallel_for(weights.size(), opt.threads, [&](std::size_t n) {
    if (weights[n] == 0.0) return;
    Amplitudes field = Amplitudes::Zero(n_cut + 1);
    field(static_cast<Eigen::Index>(n)) = 1.0;
    members[n] = detail::run_pure(t, field, n_cut, p, eps, cfg, opt);
  });
  SearchResult r;
  r.target = t;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    if (weights[n] == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i) r.probabilities[i] += weights[n] * members[n].probabilities[i];
    r.unitarity_defect = std::max(r.unitarity_defect, members[n].unitarity_defect);
    r.total_time = members[n].total_time;
  }
  r.fidelity = r.probability(t);
  return r;
}

}  // namespace cavity_grover
