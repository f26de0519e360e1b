// Copyright 2026 The sgad-memory Authors
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

// Shared test helpers: seeded random states and independent brute-force
// oracles that avoid the library's own code paths.

#ifndef SGAD_TESTS_SUPPORT_HPP
#define SGAD_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sgad/matcore.hpp"
#include "sgad/states.hpp"

namespace testing {

using sgad::Complex;
using sgad::ComplexMatrix;

using Rng = std::mt19937_64;

inline ComplexMatrix random_gaussian(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> nd;
  ComplexMatrix g(dim);
  for (auto& z : g.data()) z = {nd(rng), nd(rng)};
  return g;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  const auto g = random_gaussian(rng, dim);
  return (g + g.adjoint()) * 0.5;
}

/// G G^dagger / tr, optionally of reduced rank.
inline sgad::DensityMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank = 0) {
  if (rank == 0) rank = dim;
  std::normal_distribution<double> nd;
  ComplexMatrix g(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < rank; ++c) g(r, c) = {nd(rng), nd(rng)};
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return sgad::validate(rho.hermitian_part());
}

/// Unitary from the eigenvectors of a random Hermitian matrix.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  return sgad::hermitian_eigensystem(random_hermitian(rng, dim)).vectors;
}

inline ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

/// Kronecker product by enumerating every (row, col) pair of the result.
inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out(r, c) = a(r / b.dim(), c / b.dim()) * b(r % b.dim(), c % b.dim());
  return out;
}

/// Partial transpose of three-qubit matrix on qubit q (0 = A) by explicit
/// bit bookkeeping over (a, b, c) and (a', b', c').
inline ComplexMatrix partial_transpose_oracle(const ComplexMatrix& rho, int q) {
  ComplexMatrix out(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      int bi[3] = {(i >> 2) & 1, (i >> 1) & 1, i & 1};
      int bj[3] = {(j >> 2) & 1, (j >> 1) & 1, j & 1};
      std::swap(bi[q], bj[q]);
      out(4 * bi[0] + 2 * bi[1] + bi[2], 4 * bj[0] + 2 * bj[1] + bj[2]) = rho(i, j);
    }
  return out;
}

/// Power sums tr(H^k), k = 1..dim. They fix the eigenvalue multiset.
inline std::vector<double> power_sums(const ComplexMatrix& h) {
  std::vector<double> out;
  ComplexMatrix p = h;
  for (std::size_t k = 1; k <= h.dim(); ++k) {
    out.push_back(p.trace().real());
    p = naive_mul(p, h);
  }
  return out;
}

inline std::vector<double> power_sums(const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= values.size(); ++k) {
    double s = 0.0;
    for (double v : values) s += std::pow(v, static_cast<double>(k));
    out.push_back(s);
  }
  return out;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline Complex determinant(ComplexMatrix a) {
  const std::size_t n = a.dim();
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

/// min c.x s.t. A x = b, x >= 0 by enumerating basic solutions.
/// Returns +inf when infeasible. A is m x n (row-major), m <= n <= 12.
inline double lp_vertex_min(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    // Solve the m x m system by Gauss-Jordan.
    std::vector<std::vector<double>> t(m, std::vector<double>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) t[i][k] = a[i][cols[k]];
      t[i][m] = b[i];
    }
    bool singular = false;
    for (std::size_t k = 0; k < m && !singular; ++k) {
      std::size_t piv = k;
      for (std::size_t r = k + 1; r < m; ++r)
        if (std::abs(t[r][k]) > std::abs(t[piv][k])) piv = r;
      if (std::abs(t[piv][k]) < 1e-12) {
        singular = true;
        break;
      }
      std::swap(t[piv], t[k]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == k) continue;
        const double f = t[r][k] / t[k][k];
        for (std::size_t q = k; q <= m; ++q) t[r][q] -= f * t[k][q];
      }
    }
    if (singular) continue;
    double obj = 0.0;
    bool feasible = true;
    for (std::size_t k = 0; k < m; ++k) {
      const double x = t[k][m] / t[k][k];
      if (x < -1e-12) feasible = false;
      obj += c[cols[k]] * x;
    }
    if (feasible) best = std::min(best, obj);
  }
  return best;
}

/// Matrix that reorders three qubits: qubit k of the output is qubit perm[k]
/// of the input.
inline ComplexMatrix qubit_permutation(const int perm[3]) {
  ComplexMatrix p(8);
  for (int i = 0; i < 8; ++i) {
    const int bits[3] = {(i >> 2) & 1, (i >> 1) & 1, i & 1};
    const int j = 4 * bits[perm[0]] + 2 * bits[perm[1]] + bits[perm[2]];
    p(j, i) = 1.0;
  }
  return p;
}

}  // namespace testing

#endif  // SGAD_TESTS_SUPPORT_HPP
