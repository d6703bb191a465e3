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

#include "ctcdisc/problem.hpp"

#include <string>

namespace ctcdisc {

DiscriminationProblem::DiscriminationProblem(StateSet states, UnitarySet unitaries)
    : DiscriminationProblem(states, unitaries, DensityMatrix::basis_projector(states.size(), 0)) {}

DiscriminationProblem::DiscriminationProblem(StateSet states, UnitarySet unitaries,
                                             DensityMatrix omega)
    : states_(std::move(states)), unitaries_(std::move(unitaries)), omega_(std::move(omega)) {
  const std::size_t n = states_.size();
  if (omega_.dim() != n) throw DimensionError("DiscriminationProblem: omega must be N-dimensional");
  const ValidationReport rep = validate_unitary_set(states_, unitaries_);
  if (!rep.unitarity_ok()) throw ValidationError("DiscriminationProblem: a U_i is not unitary");
  if (!rep.mapping_ok()) throw ValidationError("DiscriminationProblem: U_i|psi_i> != |i>");
}

DiscriminationProblem DiscriminationProblem::with_omega(DensityMatrix omega) const {
  return DiscriminationProblem(states_, unitaries_, std::move(omega));
}

DiscriminationProblem make_bb84_problem() {
  auto [states, us] = bb84_unitaries();
  return DiscriminationProblem(std::move(states), std::move(us));
}

DiscriminationProblem make_two_state_problem(const PureState& psi0, const PureState& psi1,
                                             std::vector<double> priors) {
  UnitarySet us = two_state_unitaries(psi0, psi1);
  return DiscriminationProblem(StateSet({psi0, psi1}, std::move(priors)), std::move(us));
}

DiscriminationProblem make_qubit_set_problem(const StateSet& qubits) {
  UnitarySet us = qubit_set_unitaries(qubits);
  return DiscriminationProblem(qubits.embedded(qubits.size()), std::move(us));
}

}  // namespace ctcdisc
