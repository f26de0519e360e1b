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

// Squeezed generalized amplitude damping (SGAD) dynamics for one and three
// qubits. Basis |0> is the excited level: sigma_- = |1><0|.
//
// Three-qubit maps:
//   uncorrelated   each qubit sees its own SGAD channel (64 product Kraus ops)
//   correlated     collective sigma_+-^{(x)3} dissipator, closed form
//   memory         mu * correlated + (1 - mu) * uncorrelated

#ifndef SGAD_CHANNEL_HPP
#define SGAD_CHANNEL_HPP

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sgad/matcore.hpp"
#include "sgad/states.hpp"

namespace sgad {

/// Rate Omega, thermal photon number n, squeezing m with m^2 <= n(n+1).
class SgadParams {
 public:
  /// Throws InvalidInput on omega <= 0, n < 0, m < 0 or m^2 > n(n+1).
  SgadParams(double omega, double n, double m);
  /// Omega = 1, so times are measured in units of 1/Omega.
  SgadParams(double n, double m) : SgadParams(1.0, n, m) {}

  double omega() const noexcept { return omega_; }
  double n() const noexcept { return n_; }
  double m() const noexcept { return m_; }

 private:
  double omega_;
  double n_;
  double m_;
};

/// Elapsed time, or the t -> infinity marker.
class ChannelTime {
 public:
  static ChannelTime at(double t);
  static ChannelTime infinite() { return ChannelTime(std::numeric_limits<double>::infinity()); }
  /// Time such that Omega * t equals `omega_t` for the given parameters.
  static ChannelTime scaled(double omega_t, const SgadParams& p) { return at(omega_t / p.omega()); }

  bool is_infinite() const noexcept { return t_ == std::numeric_limits<double>::infinity(); }
  double t() const noexcept { return t_; }
  double omega_t(const SgadParams& p) const noexcept { return p.omega() * t_; }

 private:
  explicit ChannelTime(double t) : t_(t) {}
  double t_;
};

class MemoryParam {
 public:
  explicit MemoryParam(double mu);
  double mu() const noexcept { return mu_; }

 private:
  double mu_;
};

/// Which single-qubit Kraus set drives the uncorrelated map.
///
/// exact          Kraus operators of the exact solution of the single-qubit
///                master equation (eigendecomposition of its X-shaped Choi
///                matrix). K1, K3 diagonal; K2, K4 antidiagonal.
/// sqrt_radicand  K1 = diag(k1, k2), K2 = antidiag(k3, k4),
///                K3 = sqrt(e^{-g} cosh(Omega t m)) I,
///                K4 = sqrt(e^{-g} sinh(Omega t m)) sigma_x, g = Omega t (n + 1/2),
///                with k1..k4 given by square roots of closed-form radicands.
///                It is trace preserving but its coherences do not follow the
///                master equation (rho_01 -> (k1 k2 + e^{-g}c) rho_01 +
///                (k3 k4 + e^{-g}s) rho_10), and k1^2 < 0 at small Omega t.
enum class KrausForm { exact, sqrt_radicand };

std::string_view kraus_form_name(KrausForm f);
KrausForm parse_kraus_form(std::string_view name);

/// Radicands below this are an error; radicands in [-tol, 0] snap to 0.
inline constexpr double kRadicandTol = 1e-12;

/// k1^2..k4^2 of the sqrt_radicand set (index 0..3), unclamped.
std::array<double, 4> kraus_radicands(const SgadParams& p, ChannelTime t);

/// Single-qubit Kraus set K1..K4. Throws CpViolation (sqrt_radicand form)
/// naming each negative radicand and the (n, m, Omega t) triple.
std::array<ComplexMatrix, 4> kraus_single(const SgadParams& p, ChannelTime t,
                                          KrausForm form = KrausForm::exact);

/// All 64 three-qubit products K_a (x) K_b (x) K_c, a major.
std::vector<ComplexMatrix> kraus_three_qubit(const SgadParams& p, ChannelTime t,
                                             KrausForm form = KrausForm::exact);

// Linear maps on arbitrary 8x8 (or 2x2 for the single-qubit map) matrices.
// These accept non-Hermitian input so they can build Choi matrices.
ComplexMatrix uncorrelated_map(const ComplexMatrix& rho, const SgadParams& p, ChannelTime t,
                               KrausForm form = KrausForm::exact);
ComplexMatrix correlated_map(const ComplexMatrix& rho, const SgadParams& p, ChannelTime t);
ComplexMatrix single_qubit_map(const ComplexMatrix& rho, const SgadParams& p, ChannelTime t,
                               KrausForm form = KrausForm::exact);

/// sum_j M_j rho M_j^dagger over the 64 product Kraus operators, evaluated
/// qubit by qubit. Throws InternalConsistency if the trace drifts by > 1e-8.
DensityMatrix apply_uncorrelated(const DensityMatrix& rho, const SgadParams& p, ChannelTime t,
                                 KrausForm form = KrausForm::exact);

/// Closed-form solution of the collective master equation. Rows/columns 0 and
/// 7 evolve; the inner 6x6 block (indices 1..6) is invariant.
DensityMatrix apply_correlated(const DensityMatrix& rho, const SgadParams& p, ChannelTime t);

DensityMatrix apply_memory(const DensityMatrix& rho, const SgadParams& p, ChannelTime t,
                           MemoryParam mem, KrausForm form = KrausForm::exact);

/// t -> infinity limit of apply_memory in closed form; independent of m.
DensityMatrix asymptotic_state(const DensityMatrix& rho, const SgadParams& p, MemoryParam mem,
                               KrausForm form = KrausForm::exact);

// --- master-equation integrator ----------------------------------------------

enum class NoiseMode { uncorrelated, correlated };

/// Generator of the SGAD master equation on `qubits` qubits.
///   uncorrelated: sum over qubits of the single-qubit generator.
///   correlated:   one generator built from sigma_+-^{(x) qubits}.
struct LindbladSpec {
  NoiseMode mode = NoiseMode::uncorrelated;
  SgadParams params{1.0, 0.0, 0.0};
  int qubits = 3;
};

/// d rho / dt for the given generator.
ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const ComplexMatrix& rho);

/// Largest step accepted by integrate_master: 0.01 / (Omega (2n + 1)).
double max_rk4_step(const SgadParams& p);

/// Fixed-step classical RK4 from 0 to t_final with step <= dt.
/// Throws InvalidInput if dt exceeds max_rk4_step or t_final is infinite,
/// IntegrationFailure if the trace drifts by more than 1e-6.
DensityMatrix integrate_master(const DensityMatrix& rho, const LindbladSpec& spec,
                               ChannelTime t_final, double dt);

// --- Choi matrices -------------------------------------------------------------

enum class ChoiMode { uncorrelated_single, correlated_3q, memory_3q };

struct ChoiReport {
  ComplexMatrix choi;                      // (I (x) Phi)(|Phi+><Phi+|), unit trace
  double min_eigenvalue = 0.0;
  bool completely_positive = false;        // min_eigenvalue >= -1e-8
  std::optional<std::string> kraus_issue;  // set when kraus_single refused the point
};

/// Choi matrix of the requested map. Never throws on CP failure: when the
/// sqrt_radicand form has negative radicands the report carries the reason
/// and `choi` is left empty (1x1 zero).
ChoiReport choi_matrix(const SgadParams& p, ChannelTime t, ChoiMode mode, double mu = 0.0,
                       KrausForm form = KrausForm::exact);

}  // namespace sgad

#endif  // SGAD_CHANNEL_HPP
