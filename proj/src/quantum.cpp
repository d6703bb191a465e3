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

#include "ctcdisc/quantum.hpp"

#include <stdexcept>
#include <string>

#include "ctcdisc/linalg.hpp"

namespace ctcdisc {

InteractionUnitary build_interaction_unitary(const UnitarySet& us) {
  const std::size_t n = us.size();
  if (us.dim() != n)
    throw DimensionError("build_interaction_unitary: each U_i must be N x N with N = number of unitaries");
  for (std::size_t i = 0; i < n; ++i)
    if (unitarity_defect(us[i]) > kStateTol)
      throw ValidationError("build_interaction_unitary: U_" + std::to_string(i) + " is not unitary");
  CMatrix controlled(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    {
    const CVector e = basis_vector(n, i);
    controlled += kron(outer(e, e), us[i]);
  }
  return {controlled * swap_matrix(n), n};
}

DensityMatrix ctc_channel(const InteractionUnitary& v, const DensityMatrix& rho,
                          const DensityMatrix& sigma) {
  const std::size_t n = v.n_outcomes;
  if (rho.dim() != n || sigma.dim() != n)
    throw DimensionError("ctc_channel: rho and sigma must both be N-dimensional");
  const CMatrix joint = v.matrix * kron(rho.matrix(), sigma.matrix()) * adjoint(v.matrix);
  return DensityMatrix::unchecked(partial_trace(joint, n, n, Keep::Second));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_distance: dimensions differ");
  return 0.5 * trace_norm_hermitian(a.matrix() - b.matrix());
}

FixedPointResult iterate_to_fixed_point(const InteractionUnitary& v, const DensityMatrix& rho,
                                        const DensityMatrix& omega, std::size_t max_iters,
                                        double tol, const FixedPointObserver& observer) {
  if (!(tol > 0.0)) throw std::invalid_argument("iterate_to_fixed_point: tol must be positive");
  DensityMatrix sigma = omega;
  for (std::size_t it = 0;; ++it) {
    DensityMatrix next = ctc_channel(v, rho, sigma);
    const double residual = trace_norm_hermitian(next.matrix() - sigma.matrix());
    if (observer) observer(it, sigma, residual);
    if (residual <= tol || it == max_iters)
      return {std::move(sigma), it, residual, residual <= tol};
    sigma = std::move(next);
  }
}

std::vector<DensityMatrix> channel_orbit(const InteractionUnitary& v, const DensityMatrix& rho,
                                         const DensityMatrix& omega, std::size_t n) {
  std::vector<DensityMatrix> orbit;
  orbit.reserve(n + 1);
  orbit.push_back(omega);
  for (std::size_t t = 0; t < n; ++t) orbit.push_back(ctc_channel(v, rho, orbit.back()));
  return orbit;
}

}  // namespace ctcdisc
