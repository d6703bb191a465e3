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

// Monte Carlo simulation of the local adaptive protocol: measure copy t,
// and use outcome i to choose U_i for copy t+1. The guess is the final
// outcome.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ctcdisc/problem.hpp"

namespace ctcdisc {

/// SplitMix64. Small state, so a fresh generator per trial is cheap; trial
/// streams are derived from (seed, trial index) and are therefore
/// independent of how trials are scheduled across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) noexcept;

/// Inverse-CDF draw over cumulative sums in index order. Requires the
/// probabilities to sum to 1 within 1e-9; entries below -1e-12 throw
/// std::invalid_argument.
std::size_t sample_outcome(std::span<const double> probs, SplitMix64& rng);

struct FixedIndex {
  std::size_t index = 0;
};
struct SampleFromOmega {};
using InitialOutcomePolicy = std::variant<FixedIndex, SampleFromOmega>;

struct SimConfig {
  std::size_t n_copies = 1;
  std::uint64_t n_trials = 1;
  std::uint64_t seed = 0;
  InitialOutcomePolicy initial = FixedIndex{0};
  std::size_t keep_trajectories = 0;  // first trials to record in full
};

struct Trajectory {
  std::size_t true_state;
  std::vector<std::size_t> outcomes;  // one per copy
  std::size_t final_guess;
  bool correct;
};

struct SimResult {
  double empirical_p_e;
  double std_error;  // sqrt(p(1-p)/n_trials)
  std::uint64_t n_trials;
  std::uint64_t errors;
  std::vector<std::vector<std::uint64_t>> confusion;  // [true][guess]
  std::vector<Trajectory> trajectories;
};

/// OpenMP-parallel over trials; counts are bit-identical to
/// run_adaptive_serial for the same config.
SimResult run_adaptive(const DiscriminationProblem& problem, const SimConfig& cfg);
SimResult run_adaptive_serial(const DiscriminationProblem& problem, const SimConfig& cfg);

struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;  // NaN with fewer than 3 points
  std::size_t dof;
};

/// Weighted least squares y ~ a + b x.
LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w);

enum class ExponentSource { Exact, MonteCarlo };

struct ExponentEstimate {
  double xi_hat;
  double ci_lo;  // 95% interval (Student t on the residual scale); NaN if dof = 0
  double ci_hi;
  std::vector<unsigned> used_n;
  std::vector<unsigned> dropped_n;  // Monte Carlo points with zero observed errors
};

/// Slope of -ln p_e^(n) against n over n_grid (strictly increasing, >= 2
/// points). Exact: ordinary least squares on the log-domain exact curve.
/// Monte Carlo: one run_adaptive per grid point (n_copies = n, other fields
/// from cfg), weights = inverse delta-method variance of -ln p_hat.
ExponentEstimate estimate_exponent(const DiscriminationProblem& problem,
                                   std::span<const unsigned> n_grid, const SimConfig& cfg,
                                   ExponentSource source = ExponentSource::Exact);

}  // namespace ctcdisc
