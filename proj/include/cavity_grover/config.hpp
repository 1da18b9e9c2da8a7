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

// Run configuration for the command-line front end: a line-oriented
// `key = value` document with `#` comments. Unset keys keep the defaults of
// the experimental operating point; command-line flags are applied on top by
// the caller.

#include "cavity_grover/experiments.hpp"
#include "cavity_grover/gates.hpp"
#include "cavity_grover/grover.hpp"
#include "cavity_grover/propagator.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cavity_grover {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  /// 1-based line of the offending entry, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

struct RunConfig {
  std::string experiment;
  double g_khz = 25.0;  ///< g / (2 pi) in kHz
  double delta_ratio = PaperParams::delta_ratio;
  double omega_ratio = PaperParams::omega_ratio;
  Target target = Target::GG;
  CavityInit cavity = FockInit{0};
  std::vector<int> n_values = default_fock_grid();
  std::optional<std::vector<double>> eps;
  int steps_per_period = IntegratorConfig{}.steps_per_fast_period;
  IntegrationMethod method = IntegrationMethod::PiecewiseExponentialMidpoint;
  double unitarity_tol = IntegratorConfig{}.unitarity_tol;
  std::optional<int> n_cut;
  int headroom = kDefaultHeadroom;
  unsigned threads = 1;
  std::string output;

  PhysicalParams physical() const {
    return PaperParams::make(2.0 * kPi * (g_khz * 1e3), delta_ratio, omega_ratio);
  }

  IntegratorConfig integrator() const {
    IntegratorConfig c;
    c.steps_per_fast_period = steps_per_period;
    c.method = method;
    c.unitarity_tol = unitarity_tol;
    c.threads = threads;
    return c;
  }

  SweepSettings sweep_settings() const {
    SweepSettings s;
    s.params = physical();
    s.target = target;
    s.integrator = integrator();
    s.threads = threads;
    s.headroom = headroom;
    return s;
  }
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace config_detail

inline double parse_real(std::string_view text) {
  const std::string s(config_detail::trim(text));
  if (s.empty()) throw std::invalid_argument("expected a number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

inline int parse_int(std::string_view text) {
  const auto s = config_detail::trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  }
  return v;
}

/// "N", "A..B" (inclusive) or a comma-separated list.
inline std::vector<int> parse_int_range(std::string_view text) {
  const auto s = config_detail::trim(text);
  if (const auto dots = s.find(".."); dots != std::string_view::npos) {
    const int a = parse_int(s.substr(0, dots));
    const int b = parse_int(s.substr(dots + 2));
    if (b < a) throw std::invalid_argument("empty range '" + std::string(s) + "'");
    std::vector<int> out;
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::vector<int> out;
  std::string_view rest = s;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

inline std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::string_view rest = config_detail::trim(text);
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_real(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

/// "fock:N", "thermal:NBAR" or "coherent:RE[,IM]".
inline CavityInit parse_cavity(std::string_view text) {
  const auto s = config_detail::trim(text);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("cavity must look like kind:value");
  const auto kind = s.substr(0, colon);
  const auto value = s.substr(colon + 1);
  if (kind == "fock") {
    const int n = parse_int(value);
    if (n < 0) throw std::invalid_argument("Fock photon number must be non-negative");
    return FockInit{n};
  }
  if (kind == "thermal") {
    const double nbar = parse_real(value);
    if (nbar < 0.0) throw std::invalid_argument("thermal mean photon number must be non-negative");
    return ThermalInit{nbar};
  }
  if (kind == "coherent") {
    const auto parts = parse_real_list(value);
    if (parts.size() > 2) throw std::invalid_argument("coherent amplitude takes RE or RE,IM");
    return CoherentInit{Complex{parts[0], parts.size() == 2 ? parts[1] : 0.0}};
  }
  throw std::invalid_argument("unknown cavity kind '" + std::string(kind) + "'");
}

inline IntegrationMethod parse_method(std::string_view s) {
  if (s == "midpoint") return IntegrationMethod::PiecewiseExponentialMidpoint;
  if (s == "rk4") return IntegrationMethod::RK4;
  throw std::invalid_argument("unknown method '" + std::string(s) + "' (expected midpoint or rk4)");
}

/// Applies one key to `cfg`; throws std::invalid_argument on a bad value
/// and ConfigError(0, ...) on an unknown key.
inline void apply_config_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto positive = [&](double v) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(key) + " must be positive");
    return v;
  };
  if (key == "experiment") {
    cfg.experiment = std::string(value);
  } else if (key == "g_khz") {
    cfg.g_khz = positive(parse_real(value));
  } else if (key == "delta_ratio") {
    cfg.delta_ratio = positive(parse_real(value));
  } else if (key == "omega_ratio") {
    cfg.omega_ratio = positive(parse_real(value));
  } else if (key == "target") {
    cfg.target = parse_target(value);
  } else if (key == "cavity") {
    cfg.cavity = parse_cavity(value);
  } else if (key == "n") {
    cfg.n_values = parse_int_range(value);
    for (int n : cfg.n_values) {
      if (n < 0) throw std::invalid_argument("photon numbers must be non-negative");
    }
  } else if (key == "eps") {
    auto eps = parse_real_list(value);
    for (double e : eps) {
      if (!(e > -1.0)) throw std::invalid_argument("pulse error must exceed -1");
    }
    cfg.eps = std::move(eps);
  } else if (key == "steps_per_period") {
    const int k = parse_int(value);
    if (k < 16) throw std::invalid_argument("steps_per_period must be >= 16");
    cfg.steps_per_period = k;
  } else if (key == "method") {
    cfg.method = parse_method(value);
  } else if (key == "unitarity_tol") {
    cfg.unitarity_tol = positive(parse_real(value));
  } else if (key == "n_cut") {
    const int n = parse_int(value);
    if (n < 0) throw std::invalid_argument("n_cut must be non-negative");
    cfg.n_cut = n;
  } else if (key == "headroom") {
    const int n = parse_int(value);
    if (n < 0) throw std::invalid_argument("headroom must be non-negative");
    cfg.headroom = n;
  } else if (key == "threads") {
    const int n = parse_int(value);
    if (n < 1) throw std::invalid_argument("threads must be >= 1");
    cfg.threads = static_cast<unsigned>(n);
  } else if (key == "output") {
    cfg.output = std::string(value);
  } else {
    throw ConfigError(0, "unknown key '" + std::string(key) + "'");
  }
}

/// Parses a whole document on top of `base`.
inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = config_detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const auto key = config_detail::trim(line.substr(0, eq));
    const auto value = config_detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    try {
      apply_config_key(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(line_no, e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_no, std::string(key) + ": " + e.what());
    }
  }
  return base;
}

}  // namespace cavity_grover
