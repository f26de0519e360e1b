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

#ifndef SGAD_MATCORE_HPP
#define SGAD_MATCORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace sgad {

using Complex = std::complex<double>;

/// Tolerance on max |h - h^dagger| accepted by the Hermitian routines.
inline constexpr double kHermitianTol = 1e-10;

/// Dense square complex matrix stored row-major.
///
/// Basis convention for three qubits: index = 4*q_A + 2*q_B + q_C, so
/// index 0 is |000> and index 7 is |111>. Qubit A is the most significant.
class ComplexMatrix {
 public:
  /// 1x1 zero matrix.
  ComplexMatrix();
  /// dim x dim zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of `entries`, which must hold exactly dim*dim values.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row-wise literal, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix diagonal(std::initializer_list<Complex> values);
  /// |v><v| for a (not necessarily normalized) vector.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max_{r,c} |a(r,c) - conj(a(c,r))|.
  double hermiticity_defect() const;
  /// (a + a^dagger) / 2.
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re tr(a^dagger b), the real Hilbert-Schmidt inner product.
double inner_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// One of the three qubit bipartitions A|BC, B|AC, C|AB.
class Bipartition {
 public:
  static Bipartition a_bc() { return Bipartition(0); }
  static Bipartition b_ac() { return Bipartition(1); }
  static Bipartition c_ab() { return Bipartition(2); }
  static std::array<Bipartition, 3> all() { return {a_bc(), b_ac(), c_ab()}; }

  /// 0 for A, 1 for B, 2 for C.
  int single_qubit() const noexcept { return qubit_; }
  /// Bit mask of the first party inside a basis index (A = 4, B = 2, C = 1).
  unsigned mask() const noexcept { return 1u << (2 - qubit_); }
  std::string_view label() const noexcept;

  friend bool operator==(Bipartition, Bipartition) = default;

 private:
  explicit Bipartition(int q) : qubit_(q) {}
  int qubit_;
};

/// Transposes the indices of the qubits selected by `mask` (same bit layout
/// as basis indices) on a 2^n x 2^n matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, unsigned mask);

/// Partial transpose on the first party of `cut`. Requires dim 8.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Bipartition cut);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Cyclic complex Jacobi. Throws InvalidInput if `h` is not Hermitian
/// within kHermitianTol; the input is symmetrized before iterating.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& h);

}  // namespace sgad

#endif  // SGAD_MATCORE_HPP
