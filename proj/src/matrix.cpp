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

#include <algorithm>
#include <cmath>

#include "ctcdisc/matrix.hpp"

namespace ctcdisc {

CMatrix adjoint(const CMatrix& m) {
  CMatrix a(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(j, i) = std::conj(m(i, j));
  return a;
}

CMatrix to_complex(const RMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
  return c;
}

namespace {
template <typename T>
double max_abs_diff_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shapes differ");
  double d = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}
}  // namespace

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs_diff_impl(a, b); }
double max_abs_diff(const RMatrix& a, const RMatrix& b) { return max_abs_diff_impl(a, b); }

CMatrix partial_trace(const CMatrix& m, std::size_t dim_a, std::size_t dim_b, Keep keep) {
  const std::size_t d = dim_a * dim_b;
  if (dim_a == 0 || dim_b == 0 || m.rows() != d || m.cols() != d)
    throw DimensionError("partial_trace: matrix is not (dA*dB) x (dA*dB)");
  if (keep == Keep::Second) {
    CMatrix out(dim_b, dim_b);
    for (std::size_t k = 0; k < dim_b; ++k)
      for (std::size_t l = 0; l < dim_b; ++l) {
        cplx acc{};
        for (std::size_t i = 0; i < dim_a; ++i) acc += m(i * dim_b + k, i * dim_b + l);
        out(k, l) = acc;
      }
    return out;
  }
  CMatrix out(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < dim_b; ++k) acc += m(i * dim_b + k, j * dim_b + k);
      out(i, j) = acc;
    }
  return out;
}

CMatrix swap_matrix(std::size_t d) {
  CMatrix s(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionError("inner: size mismatch");
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

CMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  CMatrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

CVector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_vector: index out of range");
  CVector v(dim);
  v[index] = 1.0;
  return v;
}

double unitarity_defect(const CMatrix& u) {
  if (!u.square()) return INFINITY;
  return max_abs_diff(adjoint(u) * u, CMatrix::identity(u.rows()));
}

}  // namespace ctcdisc
