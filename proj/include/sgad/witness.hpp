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

// Entanglement measures for three qubits: bipartite negativities, the
// genuine negativity from PPT mixtures, and antidiagonal (X-state) criteria.

#ifndef SGAD_WITNESS_HPP
#define SGAD_WITNESS_HPP

#include <array>
#include <functional>
#include <optional>

#include "sgad/channel.hpp"
#include "sgad/matcore.hpp"
#include "sgad/sdp.hpp"
#include "sgad/states.hpp"

namespace sgad {

/// trace_norm(rho^{T_M}) - 1, clamped at 0. Pure GHZ gives 1.
double negativity(const DensityMatrix& rho, Bipartition cut);

/// True iff the smallest eigenvalue of rho^{T_M} is >= -1e-9.
bool is_ppt(const DensityMatrix& rho, Bipartition cut);

struct GmnOptions {
  double tol = 1e-8;
  int max_iter = 100;
  bool force_complex = false;
};

/// Genuine negativity of a three-qubit state.
///
/// The witness program is
///   minimize tr(W rho)  over  W = P_M + Q_M^{T_M}  for all three cuts M,
///   0 <= P_M <= I,  0 <= Q_M <= I,
/// and value = 2 max(0, -optimum), so pure GHZ states give 1 and the pure
/// W state gives about 0.886.
struct GmnReport {
  double value = 0.0;
  ComplexMatrix witness{8};           // optimal W; tr(W rho) = -value / 2
  std::array<double, 3> negativities{};  // A|BC, B|AC, C|AB
  sdp::Status status = sdp::Status::numerical_failure;
  bool trusted = false;               // status == optimal
  int iterations = 0;
  double gap = 0.0;
};

/// Builds the witness SDP for `rho` (exposed for dumps and cross-checks).
sdp::Problem gmn_problem(const DensityMatrix& rho);

GmnReport gmn(const DensityMatrix& rho, const GmnOptions& opts = {});

/// Antidiagonal criterion for the coherence (row, 7 - row), row in 0..3:
///   |rho_{row, 7-row}| <= sum over the other three pairs (k, 7-k) of
///   sqrt(rho_kk rho_{7-k,7-k}).
/// A violation certifies genuine multipartite entanglement.
struct CriterionReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool violated = false;  // margin > 1e-12
};

CriterionReport xstate_criterion(const DensityMatrix& rho, int row);

/// Closed-form criterion for the t -> infinity image of the GHZ1 white-noise
/// family (uncorrelated coherences of the sqrt_radicand limit):
///   3 sqrt((n^2(1+n)(1-mu)/(1+2n)^3 + mu(1-alpha)/8)
///          (n(1+n)^2(1-mu)/(1+2n)^3 + mu(1-alpha)/8))
///     >= (n(1+n))^{3/2} alpha (1-mu) / (1+2n)^3.
struct AsymptoticCriterion {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;  // lhs >= rhs - 1e-12
};

AsymptoticCriterion asymptotic_ghz1_criterion(double alpha, double n, double mu);

/// Cutoff separating a numerically zero genuine negativity from a signal.
inline constexpr double kGmnEpsilon = 1e-6;

struct ThresholdResult {
  bool found = false;
  double boundary = 0.0;  // midpoint of the final bracket
  double lo = 0.0;        // final bracket
  double hi = 0.0;
  double gmn_lo = 0.0;    // genuine negativity at the bracket ends
  double gmn_hi = 0.0;
  int evaluations = 0;
  bool trusted = true;    // every solve reported optimal
};

/// Bisection on x in [lo, hi] for the boundary of {gmn(state(x)) > 1e-6},
/// stopping when the bracket is narrower than `resolution`. If both ends
/// lie on the same side the result has found = false.
ThresholdResult threshold_scan(const std::function<DensityMatrix(double)>& state, double lo,
                               double hi, double resolution = 1e-3,
                               const GmnOptions& opts = {});

/// Which quantity threshold_scan varies.
enum class ScanVariable { weight, mu };

/// Named-family scans. `n` unset means the initial states themselves
/// (no channel); otherwise the asymptotic states at that n are used.
struct FamilyScan {
  Family family = Family::ghz1;
  ScanVariable variable = ScanVariable::weight;
  double weight = 1.0;  // alpha or beta when scanning mu
  double mu = 1.0;      // memory when scanning the weight
  std::optional<double> n;
  KrausForm form = KrausForm::exact;
  double lo = 0.0;
  double hi = 1.0;
};

ThresholdResult threshold_scan(const FamilyScan& scan, double resolution = 1e-3,
                               const GmnOptions& opts = {});

}  // namespace sgad

#endif  // SGAD_WITNESS_HPP
