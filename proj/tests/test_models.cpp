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

#include "cavity_grover/models.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace cavity_grover {
namespace {

constexpr Level kE = Level::Excited;
constexpr Level kG = Level::Ground;

Eigen::Vector4d sorted_eigenvalues(const AtomicOperator& m) {
  Eigen::Vector4d v = Eigen::SelfAdjointEigenSolver<AtomicOperator>(m).eigenvalues();
  std::sort(v.data(), v.data() + 4);
  return v;
}

TEST(CollectiveSpin, ActsOnGroundPair) {
  const Eigen::Vector4cd gg = Eigen::Vector4cd::Unit(3);
  const Eigen::Vector4cd expect(0.0, 0.5, 0.5, 0.0);
  EXPECT_LT(max_abs_diff(jx() * gg, expect), 1e-15);
}

TEST(CollectiveSpin, HermitianWithSpinOneAndSingletSpectrum) {
  EXPECT_EQ(hermiticity_defect(jx()), 0.0);
  const Eigen::Vector4d ev = sorted_eigenvalues(jx());
  EXPECT_LT((ev - Eigen::Vector4d(-1, 0, 0, 1)).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::Vector4d ev2 = sorted_eigenvalues(2.0 * jx() * jx());
  EXPECT_LT((ev2 - Eigen::Vector4d(0, 0, 2, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EffectiveHamiltonians, DispersiveTermOnGroundPair) {
  const PhysicalParams p = testing::operating_point();
  const Eigen::Vector4cd gg = Eigen::Vector4cd::Unit(3);
  const Eigen::Vector4cd expect = p.lambda() * Eigen::Vector4cd(1, 0, 0, 1);
  EXPECT_LT(max_abs_diff(hamiltonian_he(p) * gg, expect), 1e-12 * p.lambda());
}

TEST(EffectiveHamiltonians, DispersiveTermIsTwiceLambdaJxSquared) {
  const PhysicalParams p = testing::operating_point();
  EXPECT_LT(max_abs_diff(hamiltonian_he(p), AtomicOperator(2.0 * p.lambda() * jx() * jx())), 1e-12 * p.lambda());
}

TEST(EffectiveHamiltonians, DriveSpectrum) {
  const PhysicalParams p = testing::operating_point();
  const Eigen::Vector4d ev = sorted_eigenvalues(hamiltonian_h0(p)) / p.omega_rabi;
  EXPECT_LT((ev - Eigen::Vector4d(-2, 0, 0, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(InteractionHamiltonian, UndrivenCouplingBlockMatchesHandExpansion) {
  PhysicalParams p;
  p.g = 1.3;
  p.delta = 0.7;
  p.omega_rabi = 0.0;
  const int n_cut = 1;
  const Operator h = hamiltonian_interaction(0.0, p, n_cut);
  // a^dag S^- |ee,0> = |ge,1> + |eg,1>;  a^dag S^- |eg,0> = a^dag S^- |ge,0> = |gg,1>.
  Operator expect = Operator::Zero(8, 8);
  const auto at = [&](Level a1, Level a2, int n) { return static_cast<Eigen::Index>(basis_index(a1, a2, n, n_cut)); };
  const std::pair<Eigen::Index, Eigen::Index> links[] = {
      {at(kE, kG, 1), at(kE, kE, 0)},
      {at(kG, kE, 1), at(kE, kE, 0)},
      {at(kG, kG, 1), at(kE, kG, 0)},
      {at(kG, kG, 1), at(kG, kE, 0)},
  };
  for (auto [r, c] : links) {
    expect(r, c) = p.g;
    expect(c, r) = p.g;
  }
  EXPECT_LT(max_abs_diff(h, expect), 1e-15);
}

TEST(InteractionHamiltonian, HermitianAtAnyTime) {
  const PhysicalParams p = testing::operating_point();
  for (double t : {0.0, 1.3e-7, 2.0e-4, 3.7e-3}) {
    const Operator h = hamiltonian_interaction(t, p, 6);
    EXPECT_LT(hermiticity_defect(h), 1e-12 * p.omega_rabi);
  }
}

TEST(InteractionHamiltonian, DriveOnlyLimitIsStatic) {
  PhysicalParams p = testing::operating_point();
  p.g = 0.0;
  const int n_cut = 4;
  const Operator expect = embed_atomic(Operator(2.0 * p.omega_rabi * jx()), n_cut);
  for (double t : {0.0, 1e-6, 5e-4}) {
    EXPECT_LT(max_abs_diff(hamiltonian_interaction(t, p, n_cut), expect), 1e-15 * p.omega_rabi);
  }
}

TEST(InteractionHamiltonian, UndrivenDynamicsConservesExcitations) {
  PhysicalParams p = testing::operating_point();
  p.omega_rabi = 0.0;
  const int n_cut = 5;
  const Operator n = ops::excitation_number(n_cut);
  for (double t : {0.0, 3e-7, 1e-4}) {
    const Operator h = hamiltonian_interaction(t, p, n_cut);
    EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff(), 1e-12 * p.g);
  }
}

TEST(InteractionHamiltonian, SymmetricUnderAtomExchange) {
  const PhysicalParams p = testing::operating_point();
  const int n_cut = 4;
  const Operator swap = ops::swap_atoms(n_cut);
  for (double t : {0.0, 2.2e-7, 1.1e-4}) {
    const Operator h = hamiltonian_interaction(t, p, n_cut);
    EXPECT_LT(max_abs_diff(swap * h * swap, h), 1e-15 * p.omega_rabi);
  }
}

TEST(EffectiveUnitary, DiffusionPoint) {
  AtomicOperator expect = AtomicOperator::Constant(-0.5);
  expect.diagonal().setConstant(0.5);
  EXPECT_LT(max_abs_diff(effective_unitary(kPi / 2.0, 1.0), expect), 1e-15);
}

TEST(EffectiveUnitary, ZeroTimeIsIdentity) {
  for (double h : {0.0, 1.0, 7.5}) EXPECT_LT(max_abs_diff(effective_unitary(0.0, h), AtomicOperator::Identity()), 1e-16);
}

TEST(EffectiveUnitary, UnitaryOverSampledGrid) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double b = 2.0 * kPi * i / 20.0;
      const double h = 20.0 * j / 20.0;
      EXPECT_LE(unitarity_defect(effective_unitary(b, h)), 1e-10) << "b=" << b << " h=" << h;
    }
  }
}

TEST(EffectiveUnitary, MatchesFactoredExponentials) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> bd(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> hd(0.0, 20.0);
  const Operator j = jx();
  for (int trial = 0; trial < 100; ++trial) {
    const double b = bd(rng);
    const double h = hd(rng);
    const Operator oracle = testing::pade_expm(j, b * h) * testing::pade_expm(j * j, b);
    EXPECT_LT(max_abs_diff(effective_unitary(b, h), oracle), 1e-10) << "b=" << b << " h=" << h;
  }
}

TEST(SelectOmega, RoundsUpToClassOne) {
  const PhysicalParams p = testing::operating_point();
  const auto s = select_omega(p, OmegaClass::Kind::Class1, 16000.0);
  EXPECT_EQ(s.omega_class.m, 4000);
  EXPECT_DOUBLE_EQ(s.params.omega_rabi / p.lambda(), 16001.0);
}

TEST(SelectOmega, RoundsUpToClassThree) {
  const PhysicalParams p = testing::operating_point();
  const auto s = select_omega(p, OmegaClass::Kind::Class3, 16000.0);
  EXPECT_EQ(s.omega_class.m, 4000);
  EXPECT_DOUBLE_EQ(s.params.omega_rabi / p.lambda(), 16003.0);
}

TEST(SelectOmega, SmallTarget) {
  const PhysicalParams p = testing::operating_point();
  const auto s = select_omega(p, OmegaClass::Kind::Class1, 1.0);
  EXPECT_EQ(s.omega_class.m, 0);
  EXPECT_DOUBLE_EQ(s.params.omega_rabi, p.lambda());
}

TEST(SelectOmega, StableOnAlreadyQuantizedRatio) {
  // h() of an already quantized drive carries rounding noise.
  const PhysicalParams p = testing::operating_point();
  EXPECT_EQ(select_omega(p, OmegaClass::Kind::Class1, p.h()).omega_class.m, 4000);
  EXPECT_EQ(select_omega(p, OmegaClass::Kind::Class3, p.h()).omega_class.m, 4000);
}

TEST(PhysicalParamsTest, DerivedQuantities) {
  const PhysicalParams p = testing::operating_point();
  EXPECT_NEAR(p.lambda(), p.g / 40.0, 1e-12 * p.g);
  EXPECT_NEAR(p.h(), 16001.0, 1e-9);
  EXPECT_TRUE(p.regime_warnings().empty());
  p.validate();
}

TEST(PhysicalParamsTest, RegimeWarningsAndValidation) {
  PhysicalParams p{1.0, 5.0, 20.0};
  EXPECT_EQ(p.regime_warnings().size(), 2u);
  PhysicalParams bad{1.0, -1.0, 1.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace cavity_grover
