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

#include "ctcdisc/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctcdisc/linalg.hpp"

namespace ctcdisc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

RVector drop_index(const RVector& v, std::size_t k) {
  RVector out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != k) out.push_back(v[i]);
  return out;
}

double sum(const RVector& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double log_sum_exp(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double success_from_distribution(const std::vector<TransitionMatrix>& ps,
                                 const std::vector<double>& priors, const RVector& u0,
                                 unsigned n) {
  double s = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const RVector u = mat_power(ps[k].p, n) * u0;
    s += priors[k] * u[k];
  }
  return s;
}

// Probability mass of length-`remaining` continuations from `current` that
// end anywhere except `k`, scaled by `weight`.
double enumerate_paths(const RMatrix& p, std::size_t k, std::size_t current, unsigned remaining,
                       double weight) {
  if (remaining == 0) return current == k ? 0.0 : weight;
  double acc = 0.0;
  for (std::size_t next = 0; next < p.rows(); ++next) {
    const double t = p(next, current);
    if (t == 0.0) continue;
    acc += enumerate_paths(p, k, next, remaining - 1, weight * t);
  }
  return acc;
}

void guard_enumeration(std::size_t n_outcomes, unsigned n) {
  const double paths = std::pow(static_cast<double>(n_outcomes), static_cast<double>(n));
  if (paths > kMaxEnumeratedPaths)
    throw ResourceGuardError("brute_force_error: N^n = " + std::to_string(paths) +
                             " exceeds the enumeration guard");
}

}  // namespace

TransitionMatrix transition_matrix(const DiscriminationProblem& problem, std::size_t k) {
  const std::size_t n = problem.size();
  if (k >= n) throw DimensionError("transition_matrix: k out of range");
  const auto& psi = problem.states()[k].amplitudes();
  RMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const CVector out = problem.unitaries()[j] * psi;
    for (std::size_t i = 0; i < n; ++i) p(i, j) = std::norm(out[i]);
  }
  TransitionMatrix t{std::move(p), k};
  check_transition_matrix(t);
  return t;
}

std::vector<TransitionMatrix> transition_matrices(const DiscriminationProblem& problem) {
  std::vector<TransitionMatrix> ps;
  ps.reserve(problem.size());
  for (std::size_t k = 0; k < problem.size(); ++k) ps.push_back(transition_matrix(problem, k));
  return ps;
}

void check_transition_matrix(const TransitionMatrix& t, double tol) {
  const RMatrix& p = t.p;
  if (!p.square() || t.k >= p.rows()) throw DimensionError("TransitionMatrix: bad shape or k");
  for (std::size_t j = 0; j < p.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
      if (p(i, j) < -tol || p(i, j) > 1.0 + tol)
        throw ValidationError("TransitionMatrix: entry outside [0, 1]");
      s += p(i, j);
    }
    if (std::abs(s - 1.0) > tol) throw ValidationError("TransitionMatrix: column does not sum to 1");
  }
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (std::abs(p(i, t.k) - (i == t.k ? 1.0 : 0.0)) > tol)
      throw ValidationError("TransitionMatrix: column k is not absorbing");
}

ReducedMatrix reduced_matrix(const TransitionMatrix& t) {
  const std::size_t n = t.p.rows();
  RMatrix q(n - 1, n - 1);
  for (std::size_t i = 0, qi = 0; i < n; ++i) {
    if (i == t.k) continue;
    for (std::size_t j = 0, qj = 0; j < n; ++j) {
      if (j == t.k) continue;
      q(qi, qj++) = t.p(i, j);
    }
    ++qi;
  }
  return {std::move(q), t.k};
}

ExactProbabilities exact_probabilities(const DiscriminationProblem& problem, unsigned n) {
  const std::size_t size = problem.size();
  const RVector u0 = problem.initial_distribution();
  ExactProbabilities out{0.0, 0.0, {}};
  out.per_state.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    const TransitionMatrix t = transition_matrix(problem, k);
    RVector u = mat_power(t.p, n) * u0;
    const double pk = problem.priors()[k];
    for (std::size_t j = 0; j < size; ++j) (j == k ? out.p_success : out.p_error) += pk * u[j];
    out.per_state.push_back(std::move(u));
  }
  return out;
}

double exact_error_reduced(const DiscriminationProblem& problem, unsigned n) {
  const RVector u0 = problem.initial_distribution();
  double pe = 0.0;
  for (std::size_t k = 0; k < problem.size(); ++k) {
    const ReducedMatrix q = reduced_matrix(transition_matrix(problem, k));
    pe += problem.priors()[k] * sum(mat_power(q.q, n) * drop_index(u0, k));
  }
  return pe;
}

std::vector<double> log_error_curve(const DiscriminationProblem& problem, unsigned n_max) {
  const std::size_t size = problem.size();
  const RVector u0 = problem.initial_distribution();
  // per_k[k][n] = ln(p_k * 1^T Q_k^n v0)
  std::vector<std::vector<double>> per_k(size, std::vector<double>(n_max + 1, kNegInf));
  for (std::size_t k = 0; k < size; ++k) {
    const double pk = problem.priors()[k];
    if (pk <= 0.0) continue;
    const ReducedMatrix q = reduced_matrix(transition_matrix(problem, k));
    RVector v = drop_index(u0, k);
    double log_scale = std::log(pk);
    for (unsigned t = 0; t <= n_max; ++t) {
      const double s = sum(v);
      if (!(s > 0.0)) break;
      per_k[k][t] = log_scale + std::log(s);
      // Renormalise every step; the log of the mass is carried separately.
      for (auto& x : v) x /= s;
      log_scale += std::log(s);
      v = q.q * v;
    }
  }
  std::vector<double> curve(n_max + 1);
  std::vector<double> terms(size);
  for (unsigned t = 0; t <= n_max; ++t) {
    for (std::size_t k = 0; k < size; ++k) terms[k] = per_k[k][t];
    curve[t] = log_sum_exp(terms);
  }
  return curve;
}

double basis_success_probability(const DiscriminationProblem& problem, unsigned n, std::size_t j) {
  const std::size_t size = problem.size();
  if (j >= size) throw DimensionError("basis_success_probability: index out of range");
  RVector e(size, 0.0);
  e[j] = 1.0;
  return success_from_distribution(transition_matrices(problem), problem.priors(), e, n);
}

LinearityCheck success_linearity_check(const DiscriminationProblem& problem, unsigned n,
                                       const DensityMatrix& omega) {
  if (omega.dim() != problem.size()) throw DimensionError("success_linearity_check: omega dim");
  const auto ps = transition_matrices(problem);
  const RVector diag = omega.diagonal();
  LinearityCheck c{success_from_distribution(ps, problem.priors(), diag, n), 0.0};
  for (std::size_t i = 0; i < problem.size(); ++i) {
    RVector e(problem.size(), 0.0);
    e[i] = 1.0;
    c.rhs += diag[i] * success_from_distribution(ps, problem.priors(), e, n);
  }
  return c;
}

BestInitialState best_initial_state(const DiscriminationProblem& problem, unsigned n) {
  const auto ps = transition_matrices(problem);
  BestInitialState best{0, -1.0};
  for (std::size_t j = 0; j < problem.size(); ++j) {
    RVector e(problem.size(), 0.0);
    e[j] = 1.0;
    const double s = success_from_distribution(ps, problem.priors(), e, n);
    if (s > best.p_success) best = {j, s};
  }
  return best;
}

double chernoff_exponent(const StateSet& states) {
  return -std::log(max_pairwise_overlap(states));
}

ExponentReport exponent_report(const DiscriminationProblem& problem) {
  const std::size_t size = problem.size();
  ExponentReport r{};
  double min_return = std::numeric_limits<double>::infinity();
  double max_row = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    const TransitionMatrix t = transition_matrix(problem, k);
    const ReducedMatrix q = reduced_matrix(t);
    r.tau = std::max(r.tau, spectral_radius(q.q));
    for (std::size_t j = 0; j < size; ++j) {
      if (j == k) continue;
      min_return = std::min(min_return, t.p(k, j));
      double row = 0.0;
      for (std::size_t i = 0; i < size; ++i)
        if (i != k) row += t.p(j, i);
      max_row = std::max(max_row, row);
    }
  }
  r.col_bound = size > 1 ? 1.0 - min_return : 0.0;
  r.row_bound = max_row;
  r.degenerate = is_degenerate(problem.states());
  if (r.degenerate) return r;
  r.xi_lower = -std::log(r.tau);
  r.gersh_col = -std::log(r.col_bound);
  r.gersh_row = -std::log(r.row_bound);
  r.chernoff = chernoff_exponent(problem.states());
  return r;
}

double brute_force_error_serial(const DiscriminationProblem& problem, unsigned n) {
  guard_enumeration(problem.size(), n);
  const auto ps = transition_matrices(problem);
  const RVector u0 = problem.initial_distribution();
  double pe = 0.0;
  for (std::size_t k = 0; k < problem.size(); ++k) {
    const double pk = problem.priors()[k];
    if (pk == 0.0) continue;
    for (std::size_t i0 = 0; i0 < problem.size(); ++i0) {
      if (u0[i0] == 0.0) continue;
      pe += enumerate_paths(ps[k].p, k, i0, n, pk * u0[i0]);
    }
  }
  return pe;
}

double brute_force_error(const DiscriminationProblem& problem, unsigned n) {
  guard_enumeration(problem.size(), n);
  if (n == 0) return brute_force_error_serial(problem, 0);
  const auto ps = transition_matrices(problem);
  const RVector u0 = problem.initial_distribution();
  const std::size_t size = problem.size();

  // Block (k, i0, i1): true state, initial outcome, outcome after one copy.
  const std::size_t blocks = size * size * size;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    const std::size_t k = ub / (size * size);
    const std::size_t i0 = (ub / size) % size;
    const std::size_t i1 = ub % size;
    const double w = problem.priors()[k] * u0[i0] * ps[k].p(i1, i0);
    if (w == 0.0) continue;
    partial[ub] = enumerate_paths(ps[k].p, k, i1, n - 1, w);
  }
  double pe = 0.0;
  for (double x : partial) pe += x;
  return pe;
}

}  // namespace ctcdisc
