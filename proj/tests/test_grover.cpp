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

#include "cavity_grover/grover.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace cavity_grover {
namespace {

double probability_sum(const SearchResult& r) {
  return std::accumulate(r.probabilities.begin(), r.probabilities.end(), 0.0);
}

TEST(RunIdeal, EveryTargetFoundWithCertainty) {
  for (Target t : kAllTargets) {
    const SearchResult r = run_ideal(t);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-12) << to_string(t);
    EXPECT_NEAR(probability_sum(r), 1.0, 1e-12);
    EXPECT_EQ(r.fidelity, r.probability(t));
  }
  const SearchResult ge = run_ideal(Target::GE);
  EXPECT_NEAR(ge.probabilities[0], 0.0, 1e-12);
  EXPECT_NEAR(ge.probabilities[1], 0.0, 1e-12);
  EXPECT_NEAR(ge.probabilities[2], 1.0, 1e-12);
  EXPECT_NEAR(ge.probabilities[3], 0.0, 1e-12);
}

TEST(Timing, OperatingPoint) {
  const TimingReport r = timing_report(testing::operating_point());
  EXPECT_NEAR(r.t_window, 2.0e-4, 1e-16);
  EXPECT_NEAR(r.total, 4.0e-4, 1e-16);
  EXPECT_NEAR(r.ratio_to_radiative, 4.0e-4 / 3e-2, 1e-15);
  EXPECT_LT(r.ratio_to_radiative, 0.015);
}

TEST(Timing, DoublingDetuningDoublesTotal) {
  PhysicalParams p = testing::operating_point();
  const double base = timing_report(p).total;
  p.delta *= 2.0;
  EXPECT_NEAR(timing_report(p).total, 2.0 * base, 1e-15);
}

TEST(PulseGate, ZeroErrorIsIdeal) {
  EXPECT_EQ(max_abs_diff(pulse_gate(GateId::H2, 0.0), hadamard2()), 0.0);
  EXPECT_EQ(max_abs_diff(pulse_gate(GateId::NOT2, 0.0), not2()), 0.0);
  EXPECT_LT(max_abs_diff(rotation_pulse(hadamard1(), 0.0), hadamard1()), 1e-15);
  EXPECT_LT(max_abs_diff(rotation_pulse(ops::sigma_x(), 0.0), ops::sigma_x()), 1e-15);
}

TEST(PulseGate, ErroneousPulseMatchesMatrixExponential) {
  const double eps = 0.05;
  const Operator axis = hadamard1();
  const Operator expect = kI * testing::pade_expm(axis, 0.5 * kPi * (1.0 + eps));
  EXPECT_LT(max_abs_diff(rotation_pulse(axis, eps), expect), 1e-14);
  EXPECT_LT(unitarity_defect(pulse_gate(GateId::H2, eps)), 1e-14);
  EXPECT_GT(max_abs_diff(pulse_gate(GateId::H2, eps), hadamard2()), 0.05);
  EXPECT_EQ(max_abs_diff(pulse_gate(GateId::NOT2, eps, false), not2()), 0.0);
}

TEST(RunSearch, IdealWindowsGiveCertaintyForAnyPhotonNumber) {
  const PhysicalParams p = testing::operating_point();
  SearchOptions opt;
  opt.ideal_windows = true;
  for (Target t : kAllTargets) {
    for (int n : {0, 3, 10}) {
      const SearchResult r = run_search(t, FockInit{n}, p, 0.0, {}, opt);
      EXPECT_NEAR(r.fidelity, 1.0, 1e-12) << to_string(t) << " n=" << n;
    }
  }
}

TEST(RunSearch, VacuumFidelityAtOperatingPoint) {
  const SearchResult r = run_search(Target::GG, FockInit{0}, testing::operating_point());
  EXPECT_GE(r.fidelity, 0.992);
  EXPECT_NEAR(probability_sum(r), 1.0, 1e-8);
  EXPECT_LE(r.unitarity_defect, IntegratorConfig{}.unitarity_tol);
  EXPECT_NEAR(r.total_time, 4.0e-4, 1e-15);
  for (double q : r.probabilities) {
    EXPECT_GE(q, 0.0);
    EXPECT_LE(q, 1.0);
  }
}

/// Independent route to the search populations: exact window propagators
/// from the rotating frame and ideal gates, all written in the basis obtained
/// by applying `frame` to the atoms. Returns the populations in that basis.
Eigen::Vector4d exact_search(Target t, int n, int n_cut, const PhysicalParams& p, const AtomicOperator& frame) {
  const Operator f = embed_atomic(frame, n_cut);
  const Operator fd = f.adjoint();
  Amplitudes psi = f * fock_state(Level::Ground, Level::Ground, n, n_cut).amplitudes();
  double time = 0.0;
  for (const auto& step : grover_schedule(t, p).steps) {
    if (const auto* g = std::get_if<IdealGate>(&step)) {
      psi = f * embed_atomic(gate_matrix(g->id), n_cut) * fd * psi;
    } else {
      const auto& w = std::get<InteractionWindow>(step);
      PhysicalParams pw = p;
      pw.omega_rabi = w.omega_class.ratio() * p.lambda();
      psi = f * testing::exact_propagator(time, time + w.duration, pw, n_cut) * fd * psi;
      time += w.duration;
    }
  }
  return partial_trace_field(psi, n_cut).populations();
}

TEST(RunSearch, StateEvolutionMatchesExactPropagation) {
  const PhysicalParams p = testing::operating_point();
  const int n = 2;
  const int n_cut = n + 8;
  SearchOptions opt;
  opt.n_cut = n_cut;
  opt.headroom = n_cut - n;
  const SearchResult r = run_search(Target::GG, FockInit{n}, p, 0.0, {}, opt);
  const Eigen::Vector4d pops = exact_search(Target::GG, n, n_cut, p, AtomicOperator::Identity());
  EXPECT_NEAR(r.fidelity, pops(target_index(Target::GG)), 1e-8);
}

TEST(RunSearch, TargetRelabelingSymmetry) {
  // Exchanging e and g on both atoms maps the EE search onto a GG search
  // whose Hamiltonian and pulses are conjugated by X (x) X. The coupling
  // a^dag sigma^- is not invariant under that map, so the unrelabeled GG
  // run is not expected to match.
  const PhysicalParams p = testing::operating_point();
  const int n = 1;
  const int n_cut = n + 8;
  SearchOptions opt;
  opt.n_cut = n_cut;
  opt.headroom = n_cut - n;
  const SearchResult ee = run_search(Target::EE, FockInit{n}, p, 0.0, {}, opt);
  const AtomicOperator flip = kron(ops::sigma_x(), ops::sigma_x());
  const Eigen::Vector4d relabeled = exact_search(Target::EE, n, n_cut, p, flip);
  EXPECT_NEAR(ee.fidelity, relabeled(target_index(Target::GG)), 1e-6);
  EXPECT_NEAR(ee.probability(Target::GG), relabeled(target_index(Target::EE)), 1e-6);
  EXPECT_NEAR(ee.probability(Target::EG), relabeled(target_index(Target::GE)), 1e-6);
}

TEST(RunSearch, ThermalVacuumEqualsFockVacuumBitwise) {
  const PhysicalParams p = testing::operating_point();
  const SearchResult a = run_search(Target::GG, FockInit{0}, p);
  const SearchResult b = run_search(Target::GG, ThermalInit{0.0}, p);
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.probabilities, b.probabilities);
}

TEST(RunSearch, ThermalIsWeightedMixtureOfFockRuns) {
  const PhysicalParams p = testing::operating_point();
  const double nbar = 0.05;
  SearchOptions opt;
  opt.threads = 2;
  const SearchResult mixed = run_search(Target::GG, ThermalInit{nbar}, p, 0.0, {}, opt);
  EXPECT_NEAR(probability_sum(mixed), 1.0, 1e-8);
  const SearchResult f0 = run_search(Target::GG, FockInit{0}, p);
  const SearchResult f1 = run_search(Target::GG, FockInit{1}, p);
  // Weight beyond n = 1 is below 3e-3, and per-n fidelities differ by less
  // than 1e-3, so the mixture sits between the first two Fock fidelities up
  // to a few 1e-6.
  const double w0 = 1.0 / (1.0 + nbar);
  const double lo = std::min(f0.fidelity, f1.fidelity) - 1e-5;
  const double hi = std::max(f0.fidelity, f1.fidelity) + 1e-5;
  EXPECT_GT(mixed.fidelity, lo);
  EXPECT_LT(mixed.fidelity, hi);
  EXPECT_NEAR(mixed.fidelity, w0 * f0.fidelity + (1.0 - w0) * f1.fidelity, 1e-5);
}

TEST(RunSearch, ThermalIsDeterministicAcrossThreadCounts) {
  const PhysicalParams p = testing::operating_point();
  SearchOptions one;
  one.threads = 1;
  one.headroom = 4;
  SearchOptions four = one;
  four.threads = 4;
  const SearchResult a = run_search(Target::GG, ThermalInit{0.02}, p, 0.0, {}, one);
  const SearchResult b = run_search(Target::GG, ThermalInit{0.02}, p, 0.0, {}, four);
  EXPECT_EQ(a.probabilities, b.probabilities);
}

TEST(RunSearch, CoherentFieldRuns) {
  const SearchResult r = run_search(Target::GG, CoherentInit{{0.5, 0.0}}, testing::operating_point());
  EXPECT_NEAR(probability_sum(r), 1.0, 1e-8);
  EXPECT_GT(r.fidelity, 0.99);
}

TEST(RunSearch, MixedTargetsFound) {
  const PhysicalParams p = testing::operating_point();
  for (Target t : {Target::GE, Target::EG}) {
    const SearchResult r = run_search(t, FockInit{0}, p);
    EXPECT_GT(r.fidelity, 0.99) << to_string(t);
  }
}

TEST(RunSearch, PulseErrorDegradesFidelity) {
  const PhysicalParams p = testing::operating_point();
  const double clean = run_search(Target::GG, FockInit{0}, p).fidelity;
  const double noisy = run_search(Target::GG, FockInit{0}, p, 0.03).fidelity;
  EXPECT_LT(noisy, clean);
}

TEST(RunSearch, Errors) {
  const PhysicalParams p = testing::operating_point();
  SearchOptions opt;
  opt.n_cut = 3;
  EXPECT_THROW(run_search(Target::GG, FockInit{5}, p, 0.0, {}, opt), TruncationError);
  EXPECT_THROW(run_search(Target::GG, FockInit{0}, p, -1.0), std::invalid_argument);
  EXPECT_THROW(run_search(Target::GG, FockInit{-1}, p), std::invalid_argument);
  EXPECT_THROW(run_search(Target::GG, ThermalInit{-0.5}, p), std::invalid_argument);
}

}  // namespace
}  // namespace cavity_grover
