// Copyright 2026 The ctcdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment configuration (YAML), problem construction from it, and the
// per-mode CSV writers behind the `ctcdisc run` command.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctcdisc/problem.hpp"
#include "ctcdisc/simulate.hpp"

namespace ctcdisc {

enum class Mode { Exact, MonteCarlo, Exponent, FixedPoint };

struct OmegaSpec {
  enum class Kind { Basis, Diagonal, MaximallyMixed, Best };
  Kind kind = Kind::Basis;
  std::size_t index = 0;
  RVector diagonal;
};

struct ExperimentConfig {
  std::string problem_kind;  // bb84 | two_state | qubit_set | explicit
  std::vector<CVector> states;
  std::vector<CMatrix> unitaries;  // explicit only
  std::optional<std::vector<double>> priors;
  OmegaSpec omega;

  Mode mode = Mode::Exact;
  unsigned n = 20;
  std::vector<unsigned> n_grid;  // empty: mode default
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  bool montecarlo_columns = false;  // exact mode: add p_e_mc, mc_stderr
  bool brute_force = false;         // exact mode: add p_e_brute
  ExponentSource exponent_source = ExponentSource::Exact;
  std::size_t target = 0;  // fixedpoint: true state index a
  std::size_t max_iters = 10'000;
  double tol = 1e-10;
  std::string output;  // file name; default "<mode>.csv"
};

/// Parses YAML text. Each override is "dotted.key=value", where value is
/// itself parsed as YAML (so "n_grid=[1,2,3]" works). Throws ConfigError.
ExperimentConfig parse_config(const std::string& yaml_text,
                              const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides = {});

/// "re+imi" style complex literal: "1", "-0.5i", "0.6-0.8i", "1e-3+2e-1i".
cplx parse_complex(const std::string& text);

/// Throws ValidationError (degenerate or invalid unitaries) or ConfigError.
DiscriminationProblem build_problem(const ExperimentConfig& cfg);

/// Fixed 17-significant-digit, locale-independent rendering.
std::string format_double(double x);

struct DecayRow {
  unsigned n;
  double p_e;
  double p_s;
  double neg_log_pe_over_n;
  std::optional<double> p_e_mc;
  std::optional<double> mc_stderr;
  std::optional<double> p_e_brute;
};

/// Rows of the exact decay table; Monte Carlo columns when mc is given,
/// brute-force column when brute_force is set.
std::vector<DecayRow> decay_table(const DiscriminationProblem& problem,
                                  const std::vector<unsigned>& n_grid,
                                  const std::optional<SimConfig>& mc = std::nullopt,
                                  bool brute_force = false);
std::string decay_table_csv(const std::vector<DecayRow>& rows);

/// n_min = max(50, first n with p_e^(n) < 1e-3), n_max = n_min + 150.
std::vector<unsigned> default_exponent_grid(const DiscriminationProblem& problem);

struct RunOutcome {
  std::string summary;
  std::vector<std::filesystem::path> files;
};

RunOutcome run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Process exit status for an exception escaping run_experiment:
/// 2 config, 3 validation, 4 resource guard, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace ctcdisc
