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

// Random instance generators and small independent oracles shared by the
// unit and acceptance tests. Oracles here deliberately avoid the library's
// own kernels: they work from the definitions with plain loops.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ctcdisc/markov.hpp"
#include "ctcdisc/problem.hpp"
#include "ctcdisc/synthesis.hpp"

namespace ctcdisc::testing {

using Rng = std::mt19937_64;

inline CVector gaussian_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g;
  CVector v(dim);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

inline PureState haar_state(std::size_t dim, Rng& rng) {
  return PureState::normalized(gaussian_vector(dim, rng));
}

// Gram-Schmidt on the columns [first, gaussian...]; first column is `first`.
inline CMatrix random_unitary_with_first_column(const CVector& first, Rng& rng) {
  const std::size_t d = first.size();
  std::vector<CVector> cols{first};
  while (cols.size() < d) {
    CVector v = gaussian_vector(d, rng);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) {
        cplx ip{};
        for (std::size_t i = 0; i < d; ++i) ip += std::conj(c[i]) * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= ip * c[i];
      }
    double nv = 0;
    for (const auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;
    cols.push_back(v);
  }
  CMatrix w(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) w(i, j) = cols[j][i];
  return w;
}

inline CMatrix haar_unitary(std::size_t d, Rng& rng) {
  return random_unitary_with_first_column(haar_state(d, rng).amplitudes(), rng);
}

// Random density matrix G G^† / Tr.
inline DensityMatrix random_density(std::size_t d, Rng& rng) {
  CMatrix g(d, d);
  std::normal_distribution<double> n;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = {n(rng), n(rng)};
  CMatrix m = g * adjoint(g);
  const cplx t = trace(m);
  m *= 1.0 / t.real();
  for (std::size_t i = 0; i < d; ++i) m(i, i) = m(i, i).real();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) m(j, i) = std::conj(m(i, j));
  return DensityMatrix(m);
}

inline std::vector<double> random_probability(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e;
  std::vector<double> p(n);
  double s = 0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  // Fix rounding so the sum is 1 to well within 1e-12.
  double t = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) t += p[i];
  p.back() = 1.0 - t;
  return p;
}

inline RMatrix random_column_stochastic(std::size_t n, Rng& rng) {
  RMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto c = random_probability(n, rng);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
  }
  return m;
}

// Generic problem in C^N: U_i = Pi_i W_i^†, W_i unitary with first column
// psi_i and Pi_i a permutation sending e_0 to e_i. The phases and the
// complement are random, so P_k has no special structure.
inline DiscriminationProblem random_generic_problem(std::size_t n, Rng& rng, bool random_priors = true) {
  std::vector<PureState> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back(haar_state(n, rng));
  std::vector<CMatrix> us;
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix w = random_unitary_with_first_column(states[i].amplitudes(), rng);
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;
    std::swap(perm[0], perm[i]);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    CMatrix pi(n, n);
    for (std::size_t j = 0; j < n; ++j) pi(perm[j], j) = 1.0;
    us.push_back(pi * adjoint(w));
  }
  std::vector<double> priors =
      random_priors ? random_probability(n, rng) : std::vector<double>(n, 1.0 / static_cast<double>(n));
  return DiscriminationProblem(StateSet(std::move(states), std::move(priors)), UnitarySet(std::move(us)));
}

// N qubit states, redrawn until max overlap <= max_overlap.
inline StateSet random_qubit_set(std::size_t n, Rng& rng, double max_overlap = 0.98) {
  for (;;) {
    std::vector<PureState> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(haar_state(2, rng));
    StateSet set(std::move(s));
    if (max_pairwise_overlap(set) <= max_overlap) return set;
  }
}

// The largest pairwise overlap is separated from the runner-up and is not
// too close to 1, so the slope over [50, 200] is already asymptotic.
inline bool has_clear_gap(const StateSet& s) {
  std::vector<double> ov;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) ov.push_back(overlap(s[i], s[j]));
  std::sort(ov.begin(), ov.end(), std::greater<>());
  const double top = ov.front();
  double second = 0.0;
  for (double x : ov)
    if (x < top - 1e-12) {
      second = x;
      break;
    }
  return top <= 0.95 && second <= 0.9 * top;
}

inline StateSet random_gapped_qubit_set(std::size_t n, Rng& rng) {
  for (;;) {
    StateSet s = random_qubit_set(n, rng, 0.95);
    if (has_clear_gap(s)) return s;
  }
}

// P_k(i, j) = |<i|U_j|psi_k>|^2 straight from the definition.
inline RMatrix oracle_transition(const DiscriminationProblem& p, std::size_t k) {
  const std::size_t n = p.size();
  RMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      cplx a{};
      for (std::size_t l = 0; l < n; ++l) a += p.unitaries()[j](i, l) * p.states()[k][l];
      m(i, j) = std::norm(a);
    }
  return m;
}

// p_e^(n) by repeated matrix-vector products.
inline double oracle_error(const DiscriminationProblem& p, unsigned steps) {
  double pe = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const RMatrix m = oracle_transition(p, k);
    RVector u = p.initial_distribution();
    for (unsigned s = 0; s < steps; ++s) {
      RVector next(u.size(), 0.0);
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) next[i] += m(i, j) * u[j];
      u = next;
    }
    pe += p.priors()[k] * (1.0 - u[k]);
  }
  return pe;
}

// Channel sum form: sum_l <l|sigma|l> U_l rho U_l^†.
inline CMatrix oracle_channel(const UnitarySet& us, const CMatrix& rho, const CMatrix& sigma) {
  const std::size_t n = us.size();
  CMatrix out(n, n);
  for (std::size_t l = 0; l < n; ++l) out += sigma(l, l) * (us[l] * rho * adjoint(us[l]));
  return out;
}

}  // namespace ctcdisc::testing
