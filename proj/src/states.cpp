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

#include "ctcdisc/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ctcdisc/linalg.hpp"

namespace ctcdisc {

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DimensionError("PureState: empty amplitude vector");
  const double n = norm(amps_);
  if (!(std::abs(n - 1.0) <= kStateTol))
    throw ValidationError("PureState: amplitudes are not unit norm (norm = " +
                          std::to_string(n) + ")");
}

PureState PureState::normalized(CVector amplitudes) {
  const double n = norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("PureState: zero or non-finite vector");
  for (auto& a : amplitudes) a /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  return PureState(basis_vector(dim, index));
}

PureState PureState::embedded(std::size_t dim) const {
  if (dim < amps_.size()) throw DimensionError("PureState::embedded: target dim too small");
  CVector v(dim);
  std::copy(amps_.begin(), amps_.end(), v.begin());
  return PureState(std::move(v));
}

double overlap(const PureState& a, const PureState& b) {
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (!m_.square() || m_.rows() == 0) throw DimensionError("DensityMatrix: not square");
  if (max_abs_diff(m_, adjoint(m_)) > kStateTol)
    throw ValidationError("DensityMatrix: not Hermitian");
  if (std::abs(trace(m_) - cplx{1.0}) > kStateTol)
    throw ValidationError("DensityMatrix: trace is not 1");
  if (hermitian_eigenvalues(m_).front() < -kStateTol)
    throw ValidationError("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), Unchecked{});
}

DensityMatrix DensityMatrix::basis_projector(std::size_t dim, std::size_t index) {
  return from_pure(PureState::basis(dim, index));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(CMatrix::identity(dim) * cplx{1.0 / static_cast<double>(dim)}, Unchecked{});
}

DensityMatrix DensityMatrix::from_diagonal(std::span<const double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return DensityMatrix(std::move(m));
}

RVector DensityMatrix::diagonal() const {
  RVector d(dim());
  for (std::size_t i = 0; i < dim(); ++i) d[i] = m_(i, i).real();
  return d;
}

StateSet::StateSet(std::vector<PureState> states)
    : StateSet(states, std::vector<double>(states.size(), states.empty() ? 0.0 : 1.0 / static_cast<double>(states.size()))) {}

StateSet::StateSet(std::vector<PureState> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw DimensionError("StateSet: no states");
  if (priors_.size() != states_.size()) throw DimensionError("StateSet: priors/states size mismatch");
  const std::size_t d = states_.front().dim();
  for (const auto& s : states_)
    if (s.dim() != d) throw DimensionError("StateSet: states have different dimensions");
  double sum = 0.0;
  for (double p : priors_) {
    if (!(p >= 0.0)) throw ValidationError("StateSet: negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("StateSet: priors do not sum to 1");
}

StateSet StateSet::embedded(std::size_t dim) const {
  std::vector<PureState> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(s.embedded(dim));
  return StateSet(std::move(out), priors_);
}

double max_pairwise_overlap(const StateSet& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) m = std::max(m, overlap(s[i], s[j]));
  return m;
}

bool is_degenerate(const StateSet& s) { return max_pairwise_overlap(s) >= 1.0 - 1e-12; }

UnitarySet::UnitarySet(std::vector<CMatrix> unitaries) : us_(std::move(unitaries)) {
  if (us_.empty()) throw DimensionError("UnitarySet: empty");
  const std::size_t d = us_.front().rows();
  for (std::size_t i = 0; i < us_.size(); ++i) {
    if (!us_[i].square() || us_[i].rows() != d)
      throw DimensionError("UnitarySet: unitaries must be square with a common dimension");
  }
}

}  // namespace ctcdisc
