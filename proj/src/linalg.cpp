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

#include "ctcdisc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace ctcdisc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Tarjan's algorithm on the graph with an edge j -> i whenever m(i, j) != 0.
std::vector<std::vector<std::size_t>> strongly_connected_components(const CMatrix& m) {
  const std::size_t n = m.rows();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v || m(w, v) == cplx{}) continue;
      if (index[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == kUnvisited) visit(v);
  return components;
}

void reduce_to_hessenberg(CMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;

    const std::size_t len = n - k - 1;
    std::vector<cplx> v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
    const double xnorm = std::sqrt(std::norm(v[0]) + tail);
    const cplx phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx{1.0};
    v[0] += phase * xnorm;
    double vnorm2 = 0.0;
    for (const auto& x : v) vnorm2 += std::norm(x);
    const double beta = 2.0 / vnorm2;

    // H <- (I - beta v v^†) H
    for (std::size_t j = 0; j < n; ++j) {
      cplx dot{};
      for (std::size_t i = 0; i < len; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
      dot *= beta;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * dot;
    }
    // H <- H (I - beta v v^†)
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot{};
      for (std::size_t j = 0; j < len; ++j) dot += h(i, k + 1 + j) * v[j];
      dot *= beta;
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of the trailing 2x2 block [[a, b], [c, d]] closest to d.
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx half = 0.5 * (a - d);
  const cplx disc = std::sqrt(half * half + b * c);
  const cplx mean = 0.5 * (a + d);
  const cplx mu1 = mean + disc;
  const cplx mu2 = mean - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

void hessenberg_qr_eigenvalues(CMatrix h, std::vector<cplx>& out) {
  const std::size_t n = h.rows();
  if (n == 0) return;
  reduce_to_hessenberg(h);

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  const int budget = 60;
  std::vector<cplx> cs(n), ss(n);

  while (hi >= 0) {
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      const double sub = std::abs(h(lo, lo - 1));
      if (sub <= kEps * (scale == 0.0 ? 1.0 : scale)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > budget)
      throw ConvergenceError("eigenvalues: QR iteration did not converge");

    cplx mu;
    if (iter % 10 == 0) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    // QR: rotate rows i, i+1 to annihilate h(i+1, i).
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const cplx x = h(i, i);
      const cplx y = h(i + 1, i);
      const double r = std::hypot(std::abs(x), std::abs(y));
      cplx c = 1.0, s = 0.0;
      if (r > 0.0) {
        c = x / r;
        s = y / r;
      }
      cs[i] = c;
      ss[i] = s;
      for (std::ptrdiff_t j = i; j <= hi; ++j) {
        const cplx a = h(i, j);
        const cplx b = h(i + 1, j);
        h(i, j) = std::conj(c) * a + std::conj(s) * b;
        h(i + 1, j) = -s * a + c * b;
      }
    }
    // RQ: apply the adjoint rotations from the right.
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const cplx c = cs[i];
      const cplx s = ss[i];
      const std::ptrdiff_t row_end = std::min(i + 1, hi);
      for (std::ptrdiff_t r = lo; r <= row_end; ++r) {
        const cplx a = h(r, i);
        const cplx b = h(r, i + 1);
        h(r, i) = a * c + b * s;
        h(r, i + 1) = -a * std::conj(s) + b * std::conj(c);
      }
    }
    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }
}

void jacobi_symmetric(RMatrix& a, std::vector<double>& eig) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a(p, p) * a(p, p);
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-32 * std::max(diag, 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  eig.resize(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
}

}  // namespace

std::vector<cplx> eigenvalues(const CMatrix& m) {
  if (!m.square()) throw DimensionError("eigenvalues: matrix must be square");
  std::vector<cplx> out;
  out.reserve(m.rows());
  for (const auto& comp : strongly_connected_components(m)) {
    if (comp.size() == 1) {
      out.push_back(m(comp[0], comp[0]));
      continue;
    }
    CMatrix block(comp.size(), comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = 0; j < comp.size(); ++j) block(i, j) = m(comp[i], comp[j]);
    hessenberg_qr_eigenvalues(std::move(block), out);
  }
  return out;
}

std::vector<cplx> spectrum(const RMatrix& m) { return eigenvalues(to_complex(m)); }

double spectral_radius(const RMatrix& m) {
  double r = 0.0;
  for (const auto& l : spectrum(m)) r = std::max(r, std::abs(l));
  return r;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (!m.square()) throw DimensionError("hermitian_eigenvalues: matrix must be square");
  const std::size_t n = m.rows();
  // Real embedding [[B, -C], [C, B]] of B + iC; every eigenvalue appears twice.
  RMatrix big(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      big(i, j) = h.real();
      big(i + n, j + n) = h.real();
      big(i, j + n) = -h.imag();
      big(i + n, j) = h.imag();
    }
  std::vector<double> doubled;
  jacobi_symmetric(big, doubled);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return eig;
}

double trace_norm_hermitian(const CMatrix& m) {
  double s = 0.0;
  for (double l : hermitian_eigenvalues(m)) s += std::abs(l);
  return s;
}

}  // namespace ctcdisc
