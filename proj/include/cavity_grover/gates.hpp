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

// Ideal 4x4 gate algebra for the two-atom search and the pulse sequence that
// realizes it: Ramsey-type single-atom pulses (zero duration) interleaved
// with two timed atom-cavity interaction windows.

#include "cavity_grover/linalg.hpp"
#include "cavity_grover/models.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cavity_grover {

/// Marked item. EG means |e1 g2>, GE means |g1 e2>.
enum class Target { GG, GE, EG, EE };

inline constexpr std::array<Target, 4> kAllTargets{Target::GG, Target::GE, Target::EG, Target::EE};

/// Position of the target in the |ee>, |eg>, |ge>, |gg> ordering.
constexpr int target_index(Target t) {
  switch (t) {
    case Target::EE: return 0;
    case Target::EG: return 1;
    case Target::GE: return 2;
    case Target::GG: return 3;
  }
  return -1;
}

constexpr std::string_view to_string(Target t) {
  switch (t) {
    case Target::GG: return "gg";
    case Target::GE: return "ge";
    case Target::EG: return "eg";
    case Target::EE: return "ee";
  }
  return "?";
}

inline Target parse_target(std::string_view s) {
  std::string lower(s);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Target t : kAllTargets) {
    if (lower == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown target '" + std::string(s) + "' (expected gg, ge, eg or ee)");
}

/// Mixed targets need the NOT on atom 2 around the oracle.
constexpr bool is_mixed(Target t) { return t == Target::GE || t == Target::EG; }

/// Single-atom Hadamard, |g> -> (|g>+|e>)/sqrt2, |e> -> (|g>-|e>)/sqrt2,
/// in the (e, g) ordering.
inline Operator hadamard1() {
  Operator h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << -r, r, r, r;
  return h;
}

inline AtomicOperator hadamard2() { return kron(hadamard1(), hadamard1()); }

/// sigma_x on atom 2.
inline AtomicOperator not2() {
  Operator x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  return kron(Operator::Identity(2, 2), x);
}

/// Inversion about the average, D_ij = 2/N - delta_ij with N = 4, realized
/// as minus the effective evolution at b = pi/2, h = 1.
inline AtomicOperator diffusion() { return -effective_unitary(kPi / 2.0, 1.0); }

/// Conditional phase flip I - 2|t><t|, built as H (x) H U(pi/2, h) H (x) H
/// with h = 1 for |gg> and h = 3 for |ee>; the mixed targets conjugate
/// those with NOT on atom 2.
inline AtomicOperator oracle(Target t, long long m = 0) {
  const AtomicOperator h2 = hadamard2();
  const double h_class1 = 4.0 * static_cast<double>(m) + 1.0;
  const double h_class3 = 4.0 * static_cast<double>(m) + 3.0;
  switch (t) {
    case Target::GG: return h2 * effective_unitary(kPi / 2.0, h_class1) * h2;
    case Target::EE: return h2 * effective_unitary(kPi / 2.0, h_class3) * h2;
    case Target::GE: return not2() * oracle(Target::GG, m) * not2();
    case Target::EG: return not2() * oracle(Target::EE, m) * not2();
  }
  throw std::logic_error("unknown target");
}

/// Omega class of the first (oracle) window for a target.
constexpr OmegaClass::Kind oracle_class(Target t) {
  return (t == Target::GG || t == Target::GE) ? OmegaClass::Kind::Class1 : OmegaClass::Kind::Class3;
}

enum class GateId { H2, NOT2 };

struct IdealGate {
  GateId id;
};

struct InteractionWindow {
  double duration;  ///< seconds
  OmegaClass omega_class;
};

using PulseStep = std::variant<IdealGate, InteractionWindow>;

struct PulseSchedule {
  std::vector<PulseStep> steps;

  double total_interaction_time() const {
    double total = 0.0;
    for (const auto& s : steps) {
      if (const auto* w = std::get_if<InteractionWindow>(&s)) total += w->duration;
    }
    return total;
  }
  int count(GateId id) const {
    int n = 0;
    for (const auto& s : steps) {
      if (const auto* g = std::get_if<IdealGate>(&s); g && g->id == id) ++n;
    }
    return n;
  }
  int window_count() const {
    int n = 0;
    for (const auto& s : steps) n += std::holds_alternative<InteractionWindow>(s) ? 1 : 0;
    return n;
  }
};

/// Duration pi/(4 lambda) of each interaction window.
inline double window_time(const PhysicalParams& p) { return kPi / (4.0 * p.lambda()); }

/// Preparation H, [NOT2], H, oracle window, H, [NOT2], diffusion window.
inline PulseSchedule grover_schedule(Target t, const PhysicalParams& p) {
  p.validate();
  const double tw = window_time(p);
  const OmegaClass oracle_omega = select_omega(p, oracle_class(t), p.h()).omega_class;
  const OmegaClass diffusion_omega = select_omega(p, OmegaClass::Kind::Class1, p.h()).omega_class;
  PulseSchedule s;
  s.steps.emplace_back(IdealGate{GateId::H2});
  if (is_mixed(t)) s.steps.emplace_back(IdealGate{GateId::NOT2});
  s.steps.emplace_back(IdealGate{GateId::H2});
  s.steps.emplace_back(InteractionWindow{tw, oracle_omega});
  s.steps.emplace_back(IdealGate{GateId::H2});
  if (is_mixed(t)) s.steps.emplace_back(IdealGate{GateId::NOT2});
  s.steps.emplace_back(InteractionWindow{tw, diffusion_omega});
  return s;
}

/// Drops adjacent pairs of identical involutive gates. Not applied by
/// grover_schedule; the physical sequence keeps every pulse.
inline PulseSchedule cancel_adjacent_involutions(const PulseSchedule& in) {
  PulseSchedule out;
  for (const auto& step : in.steps) {
    const auto* g = std::get_if<IdealGate>(&step);
    if (g && !out.steps.empty()) {
      if (const auto* prev = std::get_if<IdealGate>(&out.steps.back()); prev && prev->id == g->id) {
        out.steps.pop_back();
        continue;
      }
    }
    out.steps.push_back(step);
  }
  return out;
}

inline AtomicOperator gate_matrix(GateId id) { return id == GateId::H2 ? hadamard2() : not2(); }

/// Product of the schedule with every window replaced by the effective
/// evolution at b = 2 lambda duration and h of the window's class.
inline AtomicOperator replay_ideal(const PulseSchedule& s, const PhysicalParams& p) {
  AtomicOperator u = AtomicOperator::Identity();
  for (const auto& step : s.steps) {
    if (const auto* g = std::get_if<IdealGate>(&step)) {
      u = gate_matrix(g->id) * u;
    } else {
      const auto& w = std::get<InteractionWindow>(step);
      u = effective_unitary(2.0 * p.lambda() * w.duration, w.omega_class.ratio()) * u;
    }
  }
  return u;
}

}  // namespace cavity_grover
