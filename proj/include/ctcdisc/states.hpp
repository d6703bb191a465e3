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

// Value types shared by the quantum, synthesis and markov layers.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctcdisc/matrix.hpp"

namespace ctcdisc {

inline constexpr double kStateTol = 1e-10;

/// Unit-norm ket in C^d.
class PureState {
 public:
  /// Throws ValidationError unless | ||amplitudes|| - 1 | <= 1e-10.
  explicit PureState(CVector amplitudes);

  /// Rescales to unit norm; throws ValidationError for the zero vector.
  static PureState normalized(CVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  const CVector& amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const noexcept { return amps_[i]; }

  CMatrix projector() const { return outer(amps_, amps_); }

  /// Zero-padded copy in C^dim (dim >= this->dim()).
  PureState embedded(std::size_t dim) const;

 private:
  CVector amps_;
};

/// |<a|b>|^2.
double overlap(const PureState& a, const PureState& b);

/// Hermitian, unit-trace, positive semidefinite operator (all to 1e-10).
class DensityMatrix {
 public:
  /// Validates the three invariants; throws ValidationError on failure.
  explicit DensityMatrix(CMatrix m);

  /// Skips validation. For internal use on outputs of trace-preserving maps.
  static DensityMatrix unchecked(CMatrix m);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix basis_projector(std::size_t dim, std::size_t index);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// diag(d); entries must be a probability vector.
  static DensityMatrix from_diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  /// Real parts of the diagonal: the outcome distribution of a basis measurement.
  RVector diagonal() const;

 private:
  struct Unchecked {};
  DensityMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

/// States to discriminate together with their prior probabilities.
class StateSet {
 public:
  /// Uniform priors.
  explicit StateSet(std::vector<PureState> states);
  /// Priors must be non-negative and sum to 1 within 1e-12.
  StateSet(std::vector<PureState> states, std::vector<double> priors);

  std::size_t size() const noexcept { return states_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const PureState& operator[](std::size_t i) const noexcept { return states_[i]; }
  const std::vector<PureState>& states() const noexcept { return states_; }
  const std::vector<double>& priors() const noexcept { return priors_; }

  StateSet embedded(std::size_t dim) const;

 private:
  std::vector<PureState> states_;
  std::vector<double> priors_;
};

/// max_{i != j} |<psi_i|psi_j>|^2.
double max_pairwise_overlap(const StateSet& s);

/// True if two states coincide up to a global phase (overlap >= 1 - 1e-12).
bool is_degenerate(const StateSet& s);

/// N square matrices sharing one dimension, intended to be unitary.
/// Construction checks shapes only; unitarity and U_i|psi_i> = |i> are
/// checked by validate_unitary_set and by the consumers that need them.
class UnitarySet {
 public:
  explicit UnitarySet(std::vector<CMatrix> unitaries);

  std::size_t size() const noexcept { return us_.size(); }
  std::size_t dim() const noexcept { return us_.front().rows(); }
  const CMatrix& operator[](std::size_t i) const noexcept { return us_[i]; }
  const std::vector<CMatrix>& unitaries() const noexcept { return us_; }

 private:
  std::vector<CMatrix> us_;
};

}  // namespace ctcdisc
