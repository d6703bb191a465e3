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

// The interaction unitary V = (sum_i |i><i| ⊗ U_i) · SWAP, the channel it
// induces on the iterated register, and fixed-point iteration of that
// channel.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ctcdisc/states.hpp"

namespace ctcdisc {

struct InteractionUnitary {
  CMatrix matrix;          // N^2 x N^2, ordering (S, C)
  std::size_t n_outcomes;  // N
};

/// (sum_i |i><i|_S ⊗ (U_i)_C) · SWAP_{SC}. Requires each U_i to be N x N with
/// N = us.size().
InteractionUnitary build_interaction_unitary(const UnitarySet& us);

/// sigma -> Tr_S[V (rho ⊗ sigma) V^†].
DensityMatrix ctc_channel(const InteractionUnitary& v, const DensityMatrix& rho,
                          const DensityMatrix& sigma);

/// (1/2) ||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct FixedPointResult {
  DensityMatrix state;
  std::size_t iterations;  // channel applications performed before `state`
  double residual;         // ||N(state) - state||_1
  bool converged;          // residual <= tol
};

inline constexpr std::size_t kDefaultMaxIters = 10'000;
inline constexpr double kDefaultFixedPointTol = 1e-10;

/// Called once per visited iterate with (iteration, sigma_iteration, residual).
using FixedPointObserver =
    std::function<void(std::size_t, const DensityMatrix&, double)>;

/// Iterates sigma_{t+1} = N(sigma_t) from sigma_0 = omega until the
/// self-consistency residual drops to tol or max_iters applications have
/// been made. Non-convergence is reported through `converged`, not thrown.
FixedPointResult iterate_to_fixed_point(const InteractionUnitary& v, const DensityMatrix& rho,
                                        const DensityMatrix& omega,
                                        std::size_t max_iters = kDefaultMaxIters,
                                        double tol = kDefaultFixedPointTol,
                                        const FixedPointObserver& observer = {});

/// sigma_0 = omega, ..., sigma_n.
std::vector<DensityMatrix> channel_orbit(const InteractionUnitary& v, const DensityMatrix& rho,
                                         const DensityMatrix& omega, std::size_t n);

}  // namespace ctcdisc
