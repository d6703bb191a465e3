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

#include "ctcdisc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "ctcdisc/markov.hpp"

namespace ctcdisc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Cdf {
  std::vector<double> cum;
  std::size_t last_positive = 0;
};

Cdf make_cdf(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("sample_outcome: empty distribution");
  Cdf c;
  c.cum.resize(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < -1e-12) throw std::invalid_argument("sample_outcome: negative probability");
    const double p = std::max(probs[i], 0.0);
    acc += p;
    c.cum[i] = acc;
    if (p > 0.0) c.last_positive = i;
  }
  if (std::abs(acc - 1.0) > 1e-9) throw std::invalid_argument("sample_outcome: probabilities do not sum to 1");
  return c;
}

std::size_t draw(const Cdf& c, double u) noexcept {
  for (std::size_t i = 0; i < c.last_positive; ++i)
    if (u < c.cum[i]) return i;
  return c.last_positive;
}

// Everything a trial needs, precomputed once per run.
struct ChainTables {
  Cdf prior;
  Cdf omega;
  std::vector<std::vector<Cdf>> step;  // step[k][prev] = column prev of P_k
};

ChainTables make_tables(const DiscriminationProblem& problem) {
  ChainTables t;
  t.prior = make_cdf(problem.priors());
  t.omega = make_cdf(problem.initial_distribution());
  const std::size_t n = problem.size();
  t.step.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const TransitionMatrix p = transition_matrix(problem, k);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) col[i] = p.p(i, j);
      t.step[k].push_back(make_cdf(col));
    }
  }
  return t;
}

void check_config(const DiscriminationProblem& problem, const SimConfig& cfg) {
  if (cfg.n_trials < 1) throw std::invalid_argument("SimConfig: n_trials must be >= 1");
  if (cfg.n_copies < 1) throw std::invalid_argument("SimConfig: n_copies must be >= 1");
  if (const auto* f = std::get_if<FixedIndex>(&cfg.initial); f && f->index >= problem.size())
    throw std::invalid_argument("SimConfig: initial outcome index out of range");
}

// Returns the true state and the final outcome; fills `record` if non-null.
std::pair<std::size_t, std::size_t> simulate_trial(const ChainTables& t, const SimConfig& cfg,
                                                   std::uint64_t trial, Trajectory* record) {
  SplitMix64 rng = trial_stream(cfg.seed, trial);
  const std::size_t k = draw(t.prior, rng.uniform());
  std::size_t prev = std::holds_alternative<FixedIndex>(cfg.initial)
                         ? std::get<FixedIndex>(cfg.initial).index
                         : draw(t.omega, rng.uniform());
  if (record) {
    record->true_state = k;
    record->outcomes.clear();
    record->outcomes.reserve(cfg.n_copies);
  }
  const auto& steps = t.step[k];
  for (std::size_t c = 0; c < cfg.n_copies; ++c) {
    prev = draw(steps[prev], rng.uniform());
    if (record) record->outcomes.push_back(prev);
  }
  if (record) {
    record->final_guess = prev;
    record->correct = prev == k;
  }
  return {k, prev};
}

SimResult finish(std::vector<std::vector<std::uint64_t>> confusion, std::vector<Trajectory> kept,
                 std::uint64_t n_trials) {
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < confusion.size(); ++i)
    for (std::size_t j = 0; j < confusion.size(); ++j)
      if (i != j) errors += confusion[i][j];
  const double p = static_cast<double>(errors) / static_cast<double>(n_trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_trials)), n_trials, errors,
          std::move(confusion), std::move(kept)};
}

}  // namespace

SplitMix64::result_type SplitMix64::operator()() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) noexcept {
  return SplitMix64(mix64(seed ^ mix64(trial * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL)));
}

std::size_t sample_outcome(std::span<const double> probs, SplitMix64& rng) {
  return draw(make_cdf(probs), rng.uniform());
}

SimResult run_adaptive_serial(const DiscriminationProblem& problem, const SimConfig& cfg) {
  check_config(problem, cfg);
  const ChainTables tables = make_tables(problem);
  const std::size_t n = problem.size();
  std::vector<std::vector<std::uint64_t>> confusion(n, std::vector<std::uint64_t>(n, 0));
  std::vector<Trajectory> kept(std::min<std::uint64_t>(cfg.keep_trajectories, cfg.n_trials));
  for (std::uint64_t t = 0; t < cfg.n_trials; ++t) {
    Trajectory* rec = t < kept.size() ? &kept[t] : nullptr;
    const auto [k, guess] = simulate_trial(tables, cfg, t, rec);
    ++confusion[k][guess];
  }
  return finish(std::move(confusion), std::move(kept), cfg.n_trials);
}

SimResult run_adaptive(const DiscriminationProblem& problem, const SimConfig& cfg) {
  check_config(problem, cfg);
  const ChainTables tables = make_tables(problem);
  const std::size_t n = problem.size();
  std::vector<std::uint64_t> counts(n * n, 0);
  std::vector<Trajectory> kept(std::min<std::uint64_t>(cfg.keep_trajectories, cfg.n_trials));
  const auto trials = static_cast<std::int64_t>(cfg.n_trials);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(n * n, 0);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < trials; ++t) {
      const auto ut = static_cast<std::uint64_t>(t);
      Trajectory* rec = ut < kept.size() ? &kept[ut] : nullptr;
      const auto [k, guess] = simulate_trial(tables, cfg, ut, rec);
      ++local[k * n + guess];
    }
#pragma omp critical
    for (std::size_t i = 0; i < local.size(); ++i) counts[i] += local[i];
  }

  std::vector<std::vector<std::uint64_t>> confusion(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) confusion[i][j] = counts[i * n + j];
  return finish(std::move(confusion), std::move(kept), cfg.n_trials);
}

LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m || w.size() != m)
    throw std::invalid_argument("weighted_line_fit: need >= 2 points of matching length");
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double xbar = sx / sw;
  const double ybar = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("weighted_line_fit: x values are all equal");
  LineFit fit{sxy / sxx, 0.0, kNaN, m - 2};
  fit.intercept = ybar - fit.slope * xbar;
  if (fit.dof > 0) {
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += w[i] * r * r;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(fit.dof) / sxx);
  }
  return fit;
}

ExponentEstimate estimate_exponent(const DiscriminationProblem& problem,
                                   std::span<const unsigned> n_grid, const SimConfig& cfg,
                                   ExponentSource source) {
  if (n_grid.size() < 2) throw std::invalid_argument("estimate_exponent: insufficient points in n_grid");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("estimate_exponent: n_grid must be strictly increasing");

  ExponentEstimate est{kNaN, kNaN, kNaN, {}, {}};
  std::vector<double> xs, ys, ws;
  if (source == ExponentSource::Exact) {
    const std::vector<double> curve = log_error_curve(problem, n_grid.back());
    for (unsigned n : n_grid) {
      if (!std::isfinite(curve[n])) {
        est.dropped_n.push_back(n);
        continue;
      }
      xs.push_back(n);
      ys.push_back(-curve[n]);
      ws.push_back(1.0);
      est.used_n.push_back(n);
    }
  } else {
    for (unsigned n : n_grid) {
      if (n == 0) {
        est.dropped_n.push_back(n);
        continue;
      }
      SimConfig c = cfg;
      c.n_copies = n;
      c.keep_trajectories = 0;
      const SimResult r = run_adaptive(problem, c);
      if (r.errors == 0) {
        est.dropped_n.push_back(n);
        continue;
      }
      const double p = r.empirical_p_e;
      const double trials = static_cast<double>(r.n_trials);
      const double q = std::max(1.0 - p, 1.0 / trials);
      xs.push_back(n);
      ys.push_back(-std::log(p));
      ws.push_back(trials * p / q);
      est.used_n.push_back(n);
    }
  }
  if (xs.size() < 2)
    throw std::invalid_argument("estimate_exponent: fewer than 2 usable points after dropping zero-error n");

  const LineFit fit = weighted_line_fit(xs, ys, ws);
  est.xi_hat = fit.slope;
  if (fit.dof > 0 && std::isfinite(fit.slope_stderr)) {
    const boost::math::students_t dist(static_cast<double>(fit.dof));
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    est.ci_lo = fit.slope - t * fit.slope_stderr;
    est.ci_hi = fit.slope + t * fit.slope_stderr;
  }
  return est;
}

}  // namespace ctcdisc
