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

// Construction and validation of discrimination unitaries {U_i} with
// U_i|psi_i> = |i>.

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "ctcdisc/states.hpp"

namespace ctcdisc {

/// A qubit state orthogonal to psi: (a, b) -> (-conj(b), conj(a)).
PureState orthogonal_complement(const PureState& psi);

/// U_0 = e^{i p0}|0><psi0| + e^{i p1}|1><psi0^⊥|,
/// U_1 = e^{i p2}|1><psi1| + e^{i p3}|0><psi1^⊥|.
/// Throws ValidationError("degenerate state set") if psi0 ~ psi1.
UnitarySet two_state_unitaries(const PureState& psi0, const PureState& psi1,
                               const std::array<double, 4>& phases = {0.0, 0.0, 0.0, 0.0});

/// Extends orthonormal columns to a dim x dim unitary: the given columns come
/// first, the rest are Gram-Schmidt residuals of e_0, e_1, ... in index order
/// (a candidate is skipped when its residual norm is below 1e-8).
CMatrix complete_isometry(const std::vector<CVector>& columns, std::size_t dim);

/// Unitaries for N >= 3 qubit states: U_i extends the isometry
/// V_i = |i><psi_i| + |i+1 mod N><psi_i^⊥| from C^2 (embedded as the first
/// two basis vectors of C^N) to all of C^N.
UnitarySet qubit_set_unitaries(const StateSet& qubits);

/// The four BB84 states |00>, |10>, |+0>, |-0> with uniform priors, and
/// U_0 = SWAP, U_1 = X⊗X, U_2 = (X⊗I)(H⊗I), U_3 = (X⊗H)·SWAP.
std::pair<StateSet, UnitarySet> bb84_unitaries();

struct ValidationReport {
  double tol = 1e-10;
  double zero_threshold = 1e-8;
  // min over global phase of || U_i|psi_i> - e^{i theta}|i> ||
  std::vector<double> mapping_defect;
  // ||U_i^† U_i - I||_max
  std::vector<double> unitarity_defect;
  // (i, j), i != j, with |<j|U_i|psi_j>| < zero_threshold. Informational.
  std::vector<std::pair<std::size_t, std::size_t>> zero_cross_pairs;

  bool mapping_ok() const;
  bool unitarity_ok() const;
  bool ok() const { return mapping_ok() && unitarity_ok(); }
};

/// Diagnostic only; throws DimensionError if the states are not
/// N-dimensional with N = us.size() = us.dim().
ValidationReport validate_unitary_set(const StateSet& states, const UnitarySet& us);

}  // namespace ctcdisc
