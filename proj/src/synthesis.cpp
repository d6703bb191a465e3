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

#include "ctcdisc/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ctcdisc {
namespace {

void require_qubit(const PureState& psi, const char* what) {
  if (psi.dim() != 2) throw DimensionError(std::string(what) + ": expected a qubit state");
}

}  // namespace

PureState orthogonal_complement(const PureState& psi) {
  require_qubit(psi, "orthogonal_complement");
  return PureState({-std::conj(psi[1]), std::conj(psi[0])});
}

UnitarySet two_state_unitaries(const PureState& psi0, const PureState& psi1,
                               const std::array<double, 4>& phases) {
  require_qubit(psi0, "two_state_unitaries");
  require_qubit(psi1, "two_state_unitaries");
  if (overlap(psi0, psi1) >= 1.0 - 1e-12) throw ValidationError("degenerate state set");

  const auto e = [](double phi) { return std::polar(1.0, phi); };
  const CVector k0 = basis_vector(2, 0);
  const CVector k1 = basis_vector(2, 1);
  const PureState perp0 = orthogonal_complement(psi0);
  const PureState perp1 = orthogonal_complement(psi1);

  CMatrix u0 = e(phases[0]) * outer(k0, psi0.amplitudes()) + e(phases[1]) * outer(k1, perp0.amplitudes());
  CMatrix u1 = e(phases[2]) * outer(k1, psi1.amplitudes()) + e(phases[3]) * outer(k0, perp1.amplitudes());
  return UnitarySet({std::move(u0), std::move(u1)});
}

CMatrix complete_isometry(const std::vector<CVector>& columns, std::size_t dim) {
  if (columns.size() > dim) throw DimensionError("complete_isometry: more columns than dimension");
  for (const auto& c : columns)
    if (c.size() != dim) throw DimensionError("complete_isometry: column has wrong length");
  for (std::size_t a = 0; a < columns.size(); ++a)
    for (std::size_t b = a; b < columns.size(); ++b) {
      const cplx g = inner(columns[a], columns[b]);
      const cplx want = a == b ? cplx{1.0} : cplx{0.0};
      if (std::abs(g - want) > 1e-10)
        throw ValidationError("complete_isometry: columns are not orthonormal");
    }

  std::vector<CVector> basis = columns;
  for (std::size_t idx = 0; idx < dim && basis.size() < dim; ++idx) {
    CVector v = basis_vector(dim, idx);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const cplx c = inner(q, v);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= c * q[i];
      }
    const double r = norm(v);
    if (r < 1e-8) continue;
    for (auto& x : v) x /= r;
    basis.push_back(std::move(v));
  }

  CMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = basis[j][i];
  return u;
}

UnitarySet qubit_set_unitaries(const StateSet& qubits) {
  const std::size_t n = qubits.size();
  if (n < 3) throw DimensionError("qubit_set_unitaries: need N >= 3 (use two_state_unitaries)");
  for (const auto& s : qubits.states()) require_qubit(s, "qubit_set_unitaries");
  if (is_degenerate(qubits)) throw ValidationError("degenerate state set");

  std::vector<CMatrix> us;
  us.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PureState& psi = qubits[i];
    const PureState perp = orthogonal_complement(psi);
    // Column b of V_i is V_i|b> = conj(psi[b])|i> + conj(perp[b])|i+1>.
    std::vector<CVector> cols(2, CVector(n));
    for (std::size_t b = 0; b < 2; ++b) {
      cols[b][i] += std::conj(psi[b]);
      cols[b][(i + 1) % n] += std::conj(perp[b]);
    }
    us.push_back(complete_isometry(cols, n));
  }
  return UnitarySet(std::move(us));
}

std::pair<StateSet, UnitarySet> bb84_unitaries() {
  const double r = std::numbers::sqrt2 / 2.0;
  const CMatrix i2 = CMatrix::identity(2);
  const CMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const CMatrix h{{r, r}, {r, -r}};
  const CMatrix swap = swap_matrix(2);

  // Qubit ⊗ ancilla |0>; basis index = 2 * first + second.
  const auto with_ancilla = [](cplx a, cplx b) { return PureState(CVector{a, 0.0, b, 0.0}); };
  StateSet states({with_ancilla(1.0, 0.0), with_ancilla(0.0, 1.0), with_ancilla(r, r),
                   with_ancilla(r, -r)});

  UnitarySet us({swap, kron(x, x), kron(x, i2) * kron(h, i2), kron(x, h) * swap});
  return {std::move(states), std::move(us)};
}

bool ValidationReport::mapping_ok() const {
  return std::all_of(mapping_defect.begin(), mapping_defect.end(),
                     [this](double d) { return d <= tol; });
}

bool ValidationReport::unitarity_ok() const {
  return std::all_of(unitarity_defect.begin(), unitarity_defect.end(),
                     [this](double d) { return d <= tol; });
}

ValidationReport validate_unitary_set(const StateSet& states, const UnitarySet& us) {
  const std::size_t n = us.size();
  if (states.size() != n || states.dim() != n || us.dim() != n)
    throw DimensionError("validate_unitary_set: states and unitaries must be N-dimensional with N entries");

  ValidationReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    const CVector out = us[i] * states[i].amplitudes();
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += std::norm(out[j]);
    const double on = std::abs(out[i]) - 1.0;
    rep.mapping_defect.push_back(std::sqrt(off + on * on));
    rep.unitarity_defect.push_back(unitarity_defect(us[i]));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const CVector out = us[i] * states[j].amplitudes();
      if (std::abs(out[j]) < rep.zero_threshold) rep.zero_cross_pairs.emplace_back(i, j);
    }
  return rep;
}

}  // namespace ctcdisc
