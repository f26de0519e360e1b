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

// Dense primal-dual interior-point solver for small block-diagonal SDPs.
//
//   primal:  minimize   sum_b tr(C_b X_b)
//            subject to sum_b tr(A_ib X_b) = b_i,   X_b >= 0 (Hermitian)
//   dual:    maximize   b^T y
//            subject to S_b = C_b - sum_i y_i A_ib >= 0
//
// Complex Hermitian blocks are solved through the real symmetric embedding
// H = A + iB  ->  [[A, -B], [B, A]] / 2 (the 1/2 keeps tr(H X) unchanged).
// Problems whose data are all real are solved directly on real blocks.

#ifndef SGAD_SDP_HPP
#define SGAD_SDP_HPP

#include <iosfwd>
#include <string_view>
#include <vector>

#include "sgad/matcore.hpp"

namespace sgad::sdp {

/// One entry of a Hermitian coefficient matrix. Only one triangle is stored:
/// an off-diagonal entry (r, c, v) also puts conj(v) at (c, r). Diagonal
/// values must be real.
struct Entry {
  int block;
  int row;
  int col;
  Complex value;
};

struct Constraint {
  std::vector<Entry> entries;  // A_i, split across blocks
  double rhs = 0.0;            // b_i
};

struct Problem {
  std::vector<int> block_dims;
  std::vector<Entry> objective;  // C
  std::vector<Constraint> constraints;

  /// Throws InvalidInput if an entry is out of range or a diagonal entry is
  /// not real within 1e-10.
  void check() const;
  bool is_real() const;
};

struct Options {
  double tol = 1e-8;
  int max_iter = 100;
  /// Fraction of the step to the boundary of the PSD cone.
  double step_fraction = 0.98;
  /// Solve real data through the complex embedding anyway (for cross-checks).
  bool force_complex = false;
};

enum class Status { optimal, max_iterations, numerical_failure };
std::string_view status_name(Status s);

struct IterationRecord {
  double primal_objective;
  double dual_objective;
  double primal_infeasibility;  // ||b - A(X)|| / (1 + ||b||)
  double dual_infeasibility;    // ||C - S - A^T y||_F / (1 + ||C||_F)
  double mu;                    // <X, S> / sum of block dims
};

struct Solution {
  Status status = Status::numerical_failure;
  std::vector<ComplexMatrix> primal;  // X_b
  std::vector<ComplexMatrix> slack;   // S_b
  std::vector<double> dual;           // y, one per input constraint (0 for dropped rows)
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;                   // primal_objective - dual_objective
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  int dropped_constraints = 0;        // linearly dependent rows removed up front
  std::vector<IterationRecord> history;
};

Solution solve(const Problem& problem, const Options& opts = {});

/// Plain-text listing: block sizes, right-hand sides, then one line per
/// stored nonzero "constraint block row col re im" (constraint 0 is the
/// objective, rows/cols 1-based).
void write_sdpa(std::ostream& os, const Problem& problem);

}  // namespace sgad::sdp

#endif  // SGAD_SDP_HPP
