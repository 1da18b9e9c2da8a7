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

// Command-line front end: ideal and exact searches, the photon-number and
// pulse-error sweeps (CSV), the timing budget and the self-check suite.

#include "cavity_grover/config.hpp"
#include "cavity_grover/experiments.hpp"
#include "cavity_grover/grover.hpp"
#include "cavity_grover/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace cg = cavity_grover;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

unsigned env_threads() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CAVITY_GROVER_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  try {
    const int n = cg::parse_int(env);
    if (n >= 1) return std::min(hw, static_cast<unsigned>(n));
  } catch (const std::exception&) {
  }
  std::cerr << "warning: ignoring invalid CAVITY_GROVER_THREADS='" << env << "'\n";
  return hw;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cg::ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through -o when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void print_result_table(std::ostream& os, const cg::SearchResult& r) {
  os << "target  p_ee            p_eg            p_ge            p_gg            fidelity\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-6s  %-14.12g  %-14.12g  %-14.12g  %-14.12g  %.12g\n",
                std::string(cg::to_string(r.target)).c_str(), r.probabilities[0], r.probabilities[1],
                r.probabilities[2], r.probabilities[3], r.fidelity);
  os << line;
}

void print_warnings(const cg::PhysicalParams& p) {
  for (const auto& w : p.regime_warnings()) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom Grover search in a driven, detuned cavity"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> target_flag, n_flag, eps_flag, cavity_flag, method_flag, output_flag;
  std::optional<int> steps_flag;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--target", target_flag, "marked item: gg, ge, eg or ee");
  app.add_option("--n", n_flag, "photon numbers: N, A..B or a comma list");
  app.add_option("--eps", eps_flag, "pulse errors: comma list");
  app.add_option("--cavity", cavity_flag, "initial field: fock:N, thermal:NBAR, coherent:RE[,IM]");
  app.add_option("--method", method_flag, "integrator: midpoint or rk4");
  app.add_option("--steps-per-period", steps_flag, "integration steps per fast period (>= 16)");
  app.add_option("-o,--output", output_flag, "output path (default stdout)");

  auto* ideal = app.add_subcommand("ideal", "ideal 4x4 search for a target");
  std::optional<std::string> ideal_target;
  ideal->add_option("target", ideal_target, "gg, ge, eg or ee");
  auto* simulate = app.add_subcommand("simulate", "one exact search");
  auto* sweep_fock = app.add_subcommand("sweep-fock", "fidelity versus initial Fock number (CSV)");
  auto* sweep_error = app.add_subcommand("sweep-error", "fidelity versus pulse-area error (CSV)");
  auto* timing = app.add_subcommand("timing", "gate-time budget");
  auto* validate = app.add_subcommand("validate", "run the self-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cg::RunConfig cfg;
  cfg.threads = env_threads();
  try {
    if (!config_path.empty()) cfg = cg::parse_config(read_file(config_path), cfg);
    // Flags override the file.
    const auto flag = [&](const char* key, const std::optional<std::string>& v) {
      if (!v) return;
      try {
        cg::apply_config_key(cfg, key, *v);
      } catch (const std::exception& e) {
        throw cg::ConfigError(0, std::string("--") + key + ": " + e.what());
      }
    };
    flag("target", target_flag);
    flag("target", ideal_target);
    flag("n", n_flag);
    flag("eps", eps_flag);
    flag("cavity", cavity_flag);
    flag("method", method_flag);
    flag("output", output_flag);
    if (steps_flag) flag("steps_per_period", std::to_string(*steps_flag));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const cg::PhysicalParams params = cfg.physical();
    if (*ideal) {
      Output out(cfg.output);
      print_result_table(out.stream(), cg::run_ideal(cfg.target));
      return kExitOk;
    }
    if (*timing) {
      const auto r = cg::timing_report(params);
      Output out(cfg.output);
      char buf[512];
      std::snprintf(buf, sizeof buf,
                    "lambda = %.12g rad/s\nt_window = %.1e s\ntotal = %.1e s\n"
                    "ratio_to_radiative = %.4g\nexact: t_window = %.12g s, total = %.12g s\n",
                    params.lambda(), r.t_window, r.total, r.ratio_to_radiative, r.t_window, r.total);
      out.stream() << buf;
      return kExitOk;
    }
    if (*simulate) {
      print_warnings(params);
      if (cfg.eps && cfg.eps->size() != 1) {
        std::cerr << "error: simulate takes a single --eps value\n";
        return kExitUsage;
      }
      const double eps = cfg.eps ? cfg.eps->front() : 0.0;
      cg::SearchOptions opt;
      opt.n_cut = cfg.n_cut;
      opt.headroom = cfg.headroom;
      opt.threads = cfg.threads;
      const auto r = cg::run_search(cfg.target, cfg.cavity, params, eps, cfg.integrator(), opt);
      cg::SweepRow row;
      row.var = eps;
      row.fidelity = r.fidelity;
      row.probabilities = r.probabilities;
      row.unitarity_defect = r.unitarity_defect;
      Output out(cfg.output);
      cg::write_csv(out.stream(), {row});
      return kExitOk;
    }
    if (*sweep_fock) {
      print_warnings(params);
      const auto rows = cg::sweep_fock(cfg.n_values, cfg.sweep_settings());
      Output out(cfg.output);
      cg::write_csv(out.stream(), rows);
      return kExitOk;
    }
    if (*sweep_error) {
      print_warnings(params);
      const auto rows = cg::sweep_pulse_error(cfg.eps.value_or(cg::default_eps_grid()), cfg.sweep_settings());
      {
        Output out(cfg.output);
        cg::write_csv(out.stream(), rows);
      }
      const auto check = cg::check_pulse_error_threshold(rows);
      std::cerr << check.report << '\n';
      return check.applicable && !check.pass ? kExitFailed : kExitOk;
    }
    if (*validate) {
      bool ok = true;
      Output out(cfg.output);
      for (const auto& c : cg::run_validation(cfg.sweep_settings())) {
        char line[256];
        std::snprintf(line, sizeof line, "[%s] %s: %.3e (threshold %.1e)\n", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.threshold);
        out.stream() << line;
        ok = ok && c.pass;
      }
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
