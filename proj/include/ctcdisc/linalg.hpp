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

// Eigenvalue routines for the small dense matrices that appear in the
// transition-matrix analysis (non-symmetric, real, dim <= 64) and for
// Hermitian operators (trace norms, positivity checks).

#pragma once

#include <vector>

#include "ctcdisc/matrix.hpp"

namespace ctcdisc {

// All eigenvalues of a general complex square matrix, with multiplicity.
//
// The matrix is first permuted into block upper-triangular form using the
// strongly connected components of its sparsity graph; 1x1 blocks yield
// their diagonal entry exactly, and each larger irreducible block goes
// through Householder reduction to Hessenberg form followed by
// Wilkinson-shifted complex QR iteration. Throws ConvergenceError if a block
// does not deflate within 60 iterations per eigenvalue.
std::vector<cplx> eigenvalues(const CMatrix& m);

// Eigenvalues of a real square matrix (as complex numbers).
std::vector<cplx> spectrum(const RMatrix& m);

// max |lambda| over spectrum(m); 0 for an empty matrix.
double spectral_radius(const RMatrix& m);

// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi).
// Only the lower triangle's Hermitian part is trusted; the input is
// symmetrized as (m + m^†)/2 first.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

// ||m||_1 for Hermitian m: sum of absolute eigenvalues.
double trace_norm_hermitian(const CMatrix& m);

}  // namespace ctcdisc
