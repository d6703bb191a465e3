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

#pragma once

#include <string>

#include "ctcdisc/states.hpp"
#include "ctcdisc/synthesis.hpp"

namespace ctcdisc {

/// One experiment: N states in C^N with priors, their unitaries, and the
/// initial state omega of the iterated register.
class DiscriminationProblem {
 public:
  /// omega defaults to |0><0|. Throws DimensionError on shape mismatch and
  /// ValidationError if validate_unitary_set reports a mapping or unitarity
  /// defect.
  DiscriminationProblem(StateSet states, UnitarySet unitaries);
  DiscriminationProblem(StateSet states, UnitarySet unitaries, DensityMatrix omega);

  std::size_t size() const noexcept { return states_.size(); }
  const StateSet& states() const noexcept { return states_; }
  const UnitarySet& unitaries() const noexcept { return unitaries_; }
  const DensityMatrix& omega() const noexcept { return omega_; }
  const std::vector<double>& priors() const noexcept { return states_.priors(); }

  /// u^(0): diagonal of omega in the measurement basis.
  RVector initial_distribution() const { return omega_.diagonal(); }

  /// Same states and unitaries with a different initial register state.
  DiscriminationProblem with_omega(DensityMatrix omega) const;

 private:
  StateSet states_;
  UnitarySet unitaries_;
  DensityMatrix omega_;
};

DiscriminationProblem make_bb84_problem();
/// Two qubit states, unitaries from two_state_unitaries with zero phases.
DiscriminationProblem make_two_state_problem(const PureState& psi0, const PureState& psi1,
                                             std::vector<double> priors = {0.5, 0.5});
/// N >= 3 qubit states, embedded into C^N by zero padding.
DiscriminationProblem make_qubit_set_problem(const StateSet& qubits);

}  // namespace ctcdisc
