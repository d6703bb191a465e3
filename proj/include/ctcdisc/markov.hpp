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

// Exact analysis of the adaptive protocol as a family of Markov chains, one
// per true state k, over measurement outcomes.

#pragma once

#include <cstddef>
#include <vector>

#include "ctcdisc/problem.hpp"

namespace ctcdisc {

/// Column-stochastic P_k with P_k(i, j) = |<i|U_j|psi_k>|^2; column k is e_k.
struct TransitionMatrix {
  RMatrix p;
  std::size_t k;
};

/// P_k with row and column k deleted.
struct ReducedMatrix {
  RMatrix q;
  std::size_t k;
};

TransitionMatrix transition_matrix(const DiscriminationProblem& problem, std::size_t k);
std::vector<TransitionMatrix> transition_matrices(const DiscriminationProblem& problem);
ReducedMatrix reduced_matrix(const TransitionMatrix& p);

/// Throws ValidationError if p violates the TransitionMatrix invariants.
void check_transition_matrix(const TransitionMatrix& p, double tol = 1e-10);

struct ExactProbabilities {
  double p_error;
  double p_success;
  std::vector<RVector> per_state;  // per_state[k] = P_k^n u^(0)
};

ExactProbabilities exact_probabilities(const DiscriminationProblem& problem, unsigned n);

/// p_e^(n) through the reduced matrices: sum_k p_k 1^T Q_k^n v^(0).
double exact_error_reduced(const DiscriminationProblem& problem, unsigned n);

/// ln p_e^(n) for n = 0..n_max, propagating v <- Q_k v with renormalisation,
/// so values far below the double range stay finite. -inf where p_e is 0.
std::vector<double> log_error_curve(const DiscriminationProblem& problem, unsigned n_max);

struct LinearityCheck {
  double lhs;  // p_s^(n) with the given omega
  double rhs;  // sum_i <i|omega|i> p_{s,i}^(n)
};

LinearityCheck success_linearity_check(const DiscriminationProblem& problem, unsigned n,
                                       const DensityMatrix& omega);

/// p_{s,j}^(n): success probability when omega = |j><j|.
double basis_success_probability(const DiscriminationProblem& problem, unsigned n, std::size_t j);

struct BestInitialState {
  std::size_t index;
  double p_success;
};

/// argmax_j p_{s,j}^(n), ties to the smallest index.
BestInitialState best_initial_state(const DiscriminationProblem& problem, unsigned n);

struct ExponentReport {
  double tau;        // max_k spectral_radius(Q_k)
  double xi_lower;   // -ln tau
  double gersh_col;  // -ln(1 - min_{j != k} |<k|U_j|psi_k>|^2)
  double gersh_row;  // -ln(max_{j != k} sum_{i != k} |<j|U_i|psi_k>|^2)
  double chernoff;   // -ln max_{i != j} |<psi_i|psi_j>|^2
  // Raw Gerschgorin quantities that tau is bounded by.
  double col_bound;
  double row_bound;
  bool degenerate;
};

/// For a degenerate state set every exponent field is 0 and degenerate is set.
ExponentReport exponent_report(const DiscriminationProblem& problem);

/// Pure-state multiple Chernoff exponent.
double chernoff_exponent(const StateSet& states);

inline constexpr double kMaxEnumeratedPaths = 1e7;

/// Independent oracle for p_e^(n): sums the probability of every outcome path
/// of length n whose final outcome differs from the true state. Throws
/// ResourceGuardError when N^n exceeds kMaxEnumeratedPaths. Parallel over
/// (true state, initial outcome, first-step) blocks; block sums are reduced
/// in a fixed order so the result does not depend on the thread count.
double brute_force_error(const DiscriminationProblem& problem, unsigned n);

/// Serial reference for brute_force_error.
double brute_force_error_serial(const DiscriminationProblem& problem, unsigned n);

}  // namespace ctcdisc
