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

#include "sgad/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgad/error.hpp"

namespace sgad {

SgadParams::SgadParams(double omega, double n, double m) : omega_(omega), n_(n), m_(m) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidInput("SgadParams: omega must be positive, got " + std::to_string(omega));
  }
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw InvalidInput("SgadParams: n must be >= 0, got " + std::to_string(n));
  }
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw InvalidInput("SgadParams: m must be >= 0, got " + std::to_string(m));
  }
  // A few ulps of slack so m = sqrt(n(n+1)) computed in floating point passes.
  if (m * m > n * (n + 1.0) * (1.0 + 1e-14)) {
    std::ostringstream os;
    os << "SgadParams: complete positivity requires m^2 <= n(n+1), got n=" << n << ", m=" << m;
    throw InvalidInput(os.str());
  }
}

ChannelTime ChannelTime::at(double t) {
  if (!(t >= 0.0)) throw InvalidInput("ChannelTime: t must be >= 0, got " + std::to_string(t));
  return ChannelTime(t);
}

MemoryParam::MemoryParam(double mu) : mu_(mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw InvalidInput("MemoryParam: mu must lie in [0, 1], got " + std::to_string(mu));
  }
}

std::string_view kraus_form_name(KrausForm f) {
  return f == KrausForm::exact ? "exact" : "sqrt-radicand";
}

KrausForm parse_kraus_form(std::string_view name) {
  if (name == "exact") return KrausForm::exact;
  if (name == "sqrt-radicand" || name == "sqrt_radicand") return KrausForm::sqrt_radicand;
  throw InvalidInput("unknown Kraus form '" + std::string(name) +
                     "' (expected exact or sqrt-radicand)");
}

namespace {

// exp(-rate * t) with the t = infinity limit taken exactly.
double decay(double rate, ChannelTime t) {
  if (t.is_infinite()) return rate > 0.0 ? 0.0 : 1.0;
  return std::exp(-rate * t.t());
}

// Time-dependent scalars shared by both Kraus forms.
struct Amplitudes {
  double p;        // n / (2n+1), excited-state weight of the fixed point
  double q;        // (n+1) / (2n+1)
  double e2;       // e^{-(2n+1) Omega t}
  double one_m_e2; // 1 - e2, computed without cancellation
  double ec;       // e^{-Omega t (n+1/2)} cosh(Omega t m)
  double es;       // e^{-Omega t (n+1/2)} sinh(Omega t m)
};

Amplitudes amplitudes(const SgadParams& p, ChannelTime t) {
  const double n = p.n();
  const double m = p.m();
  const double w = p.omega();
  Amplitudes a{};
  a.p = n / (2.0 * n + 1.0);
  a.q = (n + 1.0) / (2.0 * n + 1.0);
  a.e2 = decay(w * (2.0 * n + 1.0), t);
  a.one_m_e2 = t.is_infinite() ? 1.0 : -std::expm1(-w * (2.0 * n + 1.0) * t.t());
  // e^{-g} cosh(x) split into two decaying exponentials; m < n + 1/2 always.
  const double slow = decay(w * (n + 0.5 - m), t);
  const double fast = decay(w * (n + 0.5 + m), t);
  a.ec = 0.5 * (slow + fast);
  a.es = 0.5 * (slow - fast);
  return a;
}

double clamp_radicand(double r) { return (r < 0.0 && r >= -kRadicandTol) ? 0.0 : r; }

struct Sym2Eigen {
  double small_value, large_value;
  double small_vec[2], large_vec[2];
};

// Eigenpairs of [[a, e], [e, d]].
Sym2Eigen sym2_eigen(double a, double e, double d) {
  const double theta = 0.5 * std::atan2(2.0 * e, a - d);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double large = 0.5 * (a + d) + 0.5 * std::hypot(a - d, 2.0 * e);
  const double det = a * d - e * e;
  const double small = large > 0.0 ? det / large : 0.5 * (a + d) - 0.5 * std::hypot(a - d, 2.0 * e);
  return {small, large, {-s, c}, {c, s}};
}

double checked_sqrt(double lambda, const char* what, const SgadParams& p, ChannelTime t) {
  if (lambda >= 0.0) return std::sqrt(lambda);
  if (lambda >= -kRadicandTol) return 0.0;
  std::ostringstream os;
  os << "cp-violation: negative Choi eigenvalue " << lambda << " in " << what
     << " at (n=" << p.n() << ", m=" << p.m() << ", Omega t=" << t.omega_t(p) << ")";
  throw CpViolation(os.str());
}

std::array<ComplexMatrix, 4> exact_kraus(const SgadParams& p, ChannelTime t) {
  const Amplitudes a = amplitudes(p, t);
  // Choi blocks in the bases {|00>, |11>} and {|01>, |10>} (input, output).
  const double stay0 = a.p + a.q * a.e2;
  const double stay1 = a.q + a.p * a.e2;
  const double decay01 = a.q * a.one_m_e2;  // |0> -> |1>
  const double excite10 = a.p * a.one_m_e2; // |1> -> |0>
  const auto diag = sym2_eigen(stay0, a.ec, stay1);
  const auto flip = sym2_eigen(decay01, -a.es, excite10);

  const double d_small = checked_sqrt(diag.small_value, "diagonal block", p, t);
  const double d_large = checked_sqrt(diag.large_value, "diagonal block", p, t);
  const double f_small = checked_sqrt(flip.small_value, "flip block", p, t);
  const double f_large = checked_sqrt(flip.large_value, "flip block", p, t);

  // Diagonal Kraus from (x, y): diag(x, y). Flip Kraus from (y, x): [[0, x], [y, 0]].
  ComplexMatrix k1{{d_small * diag.small_vec[0], 0.0}, {0.0, d_small * diag.small_vec[1]}};
  ComplexMatrix k3{{d_large * diag.large_vec[0], 0.0}, {0.0, d_large * diag.large_vec[1]}};
  ComplexMatrix k2{{0.0, f_small * flip.small_vec[1]}, {f_small * flip.small_vec[0], 0.0}};
  ComplexMatrix k4{{0.0, f_large * flip.large_vec[1]}, {f_large * flip.large_vec[0], 0.0}};
  return {k1, k2, k3, k4};
}

std::array<ComplexMatrix, 4> sqrt_radicand_kraus(const SgadParams& p, ChannelTime t) {
  const auto raw = kraus_radicands(p, t);
  std::array<double, 4> r{};
  std::string bad;
  for (int i = 0; i < 4; ++i) {
    r[i] = clamp_radicand(raw[i]);
    if (r[i] < 0.0) {
      std::ostringstream os;
      os << (bad.empty() ? "" : ", ") << "k" << (i + 1) << "^2 = " << raw[i];
      bad += os.str();
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "cp-violation: negative Kraus radicand (" << bad << ") at (n=" << p.n()
       << ", m=" << p.m() << ", Omega t=" << t.omega_t(p) << ")";
    throw CpViolation(os.str());
  }
  const Amplitudes a = amplitudes(p, t);
  const double k1 = std::sqrt(r[0]);
  const double k2 = std::sqrt(r[1]);
  const double k3 = std::sqrt(r[2]);
  const double k4 = std::sqrt(r[3]);
  const double c = std::sqrt(std::max(0.0, a.ec));
  const double s = std::sqrt(std::max(0.0, a.es));
  return {ComplexMatrix{{k1, 0.0}, {0.0, k2}}, ComplexMatrix{{0.0, k3}, {k4, 0.0}},
          ComplexMatrix{{c, 0.0}, {0.0, c}}, ComplexMatrix{{0.0, s}, {s, 0.0}}};
}

void require_dim(const ComplexMatrix& m, std::size_t dim, const char* who) {
  if (m.dim() != dim) {
    throw InvalidInput(std::string(who) + ": expected dim " + std::to_string(dim) + ", got " +
                       std::to_string(m.dim()));
  }
}

// Applies a single-qubit Kraus set to the qubit selected by `mask`.
ComplexMatrix apply_on_qubit(const ComplexMatrix& rho, const std::array<ComplexMatrix, 4>& kraus,
                             std::size_t mask) {
  const std::size_t n = rho.dim();
  ComplexMatrix out(n);
  for (const auto& k : kraus) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bi = (i & mask) ? 1 : 0;
      const std::size_t i0 = i & ~mask;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t bj = (j & mask) ? 1 : 0;
        const std::size_t j0 = j & ~mask;
        Complex acc = 0.0;
        for (std::size_t x = 0; x < 2; ++x) {
          const Complex kx = k(bi, x);
          if (kx == Complex(0.0)) continue;
          for (std::size_t y = 0; y < 2; ++y) {
            const Complex ky = k(bj, y);
            if (ky == Complex(0.0)) continue;
            acc += kx * rho(i0 | (x ? mask : 0), j0 | (y ? mask : 0)) * std::conj(ky);
          }
        }
        out(i, j) += acc;
      }
    }
  }
  return out;
}

// Validates a map output; failures here are bugs or out-of-domain inputs.
DensityMatrix finish(const ComplexMatrix& out, const char* who) {
  const auto report = inspect(out);
  if (!report.ok()) {
    throw InternalConsistency(std::string(who) + ": output is not a density matrix (" +
                              report.describe() + ")");
  }
  return validate(out);
}

}  // namespace

std::array<double, 4> kraus_radicands(const SgadParams& p, ChannelTime t) {
  const Amplitudes a = amplitudes(p, t);
  return {a.p + a.q * a.e2 - a.ec, a.p * a.e2 + a.q - a.ec, a.p * a.one_m_e2 - a.es,
          a.q * a.one_m_e2 - a.es};
}

std::array<ComplexMatrix, 4> kraus_single(const SgadParams& p, ChannelTime t, KrausForm form) {
  return form == KrausForm::exact ? exact_kraus(p, t) : sqrt_radicand_kraus(p, t);
}

std::vector<ComplexMatrix> kraus_three_qubit(const SgadParams& p, ChannelTime t, KrausForm form) {
  const auto k = kraus_single(p, t, form);
  std::vector<ComplexMatrix> out;
  out.reserve(64);
  for (const auto& ka : k)
    for (const auto& kb : k)
      for (const auto& kc : k) out.push_back(tensor(tensor(ka, kb), kc));
  return out;
}

ComplexMatrix single_qubit_map(const ComplexMatrix& rho, const SgadParams& p, ChannelTime t,
                               KrausForm form) {
  require_dim(rho, 2, "single_qubit_map");
  return apply_on_qubit(rho, kraus_single(p, t, form), 1);
}

ComplexMatrix uncorrelated_map(const ComplexMatrix& rho, const SgadParams& p, ChannelTime t,
                               KrausForm form) {
  require_dim(rho, 8, "uncorrelated_map");
  const auto k = kraus_single(p, t, form);
  ComplexMatrix out = apply_on_qubit(rho, k, 4);
  out = apply_on_qubit(out, k, 2);
  return apply_on_qubit(out, k, 1);
}

ComplexMatrix correlated_map(const ComplexMatrix& rho, const SgadParams& p, ChannelTime t) {
  require_dim(rho, 8, "correlated_map");
  const double n = p.n();
  const double m = p.m();
  const double w = p.omega();
  const double top = decay(w * (n + 1.0) / 2.0, t);  // row/column 0 against the inner block
  const double bottom = decay(w * n / 2.0, t);       // row/column 7 against the inner block
  const double g = decay(w * (2.0 * n + 1.0), t);
  const double sym = decay(w * (n + m + 0.5), t);
  const double anti = decay(w * (n - m + 0.5), t);

  ComplexMatrix out = rho;
  for (std::size_t s = 1; s <= 6; ++s) {
    out(0, s) = rho(0, s) * top;
    out(s, 0) = rho(s, 0) * top;
    out(s, 7) = rho(s, 7) * bottom;
    out(7, s) = rho(7, s) * bottom;
  }
  const Complex r00 = rho(0, 0);
  const Complex r77 = rho(7, 7);
  const Complex r07 = rho(0, 7);
  const Complex r70 = rho(7, 0);
  const double den = 2.0 * n + 1.0;
  out(0, 0) = n * (r00 + r77) / den + (r00 + n * (r00 - r77)) / den * g;
  out(7, 7) = ((1.0 - g) * (1.0 + n) * r00 + (1.0 + n * (1.0 + g)) * r77) / den;
  out(0, 7) = 0.5 * (r07 + r70) * sym + 0.5 * (r07 - r70) * anti;
  out(7, 0) = 0.5 * (r70 + r07) * sym + 0.5 * (r70 - r07) * anti;
  return out;
}

DensityMatrix apply_uncorrelated(const DensityMatrix& rho, const SgadParams& p, ChannelTime t,
                                 KrausForm form) {
  require_dim(rho.matrix(), 8, "apply_uncorrelated");
  const ComplexMatrix out = uncorrelated_map(rho.matrix(), p, t, form);
  const double drift = std::abs(out.trace() - rho.matrix().trace());
  if (drift > 1e-8) {
    throw InternalConsistency("apply_uncorrelated: trace drifted by " + std::to_string(drift));
  }
  return finish(out, "apply_uncorrelated");
}

DensityMatrix apply_correlated(const DensityMatrix& rho, const SgadParams& p, ChannelTime t) {
  require_dim(rho.matrix(), 8, "apply_correlated");
  ComplexMatrix out = correlated_map(rho.matrix(), p, t);
  out(7, 0) = std::conj(out(0, 7));
  for (std::size_t s = 1; s <= 6; ++s) {
    out(s, 0) = std::conj(out(0, s));
    out(7, s) = std::conj(out(s, 7));
  }
  return finish(out, "apply_correlated");
}

DensityMatrix apply_memory(const DensityMatrix& rho, const SgadParams& p, ChannelTime t,
                           MemoryParam mem, KrausForm form) {
  if (t.is_infinite()) return asymptotic_state(rho, p, mem, form);
  require_dim(rho.matrix(), 8, "apply_memory");
  const double mu = mem.mu();
  ComplexMatrix out(8);
  if (mu > 0.0) out += correlated_map(rho.matrix(), p, t) * mu;
  if (mu < 1.0) out += uncorrelated_map(rho.matrix(), p, t, form) * (1.0 - mu);
  return finish(out, "apply_memory");
}

DensityMatrix asymptotic_state(const DensityMatrix& rho, const SgadParams& p, MemoryParam mem,
                               KrausForm form) {
  require_dim(rho.matrix(), 8, "asymptotic_state");
  const ChannelTime inf = ChannelTime::infinite();
  const double mu = mem.mu();
  ComplexMatrix out(8);
  if (mu > 0.0) out += correlated_map(rho.matrix(), p, inf) * mu;
  if (mu < 1.0) out += uncorrelated_map(rho.matrix(), p, inf, form) * (1.0 - mu);
  return finish(out, "asymptotic_state");
}

// --- integrator ------------------------------------------------------------------

namespace {

struct SparseOp {
  struct Entry {
    std::size_t r, c;
    double v;
  };
  std::vector<Entry> entries;

  SparseOp adjoint() const {
    SparseOp out;
    for (const auto& e : entries) out.entries.push_back({e.c, e.r, e.v});
    return out;
  }
};

SparseOp from_dense(const ComplexMatrix& m) {
  SparseOp out;
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      if (m(r, c) != Complex(0.0)) out.entries.push_back({r, c, m(r, c).real()});
  return out;
}

// out += s * A X
void add_left(ComplexMatrix& out, double s, const SparseOp& a, const ComplexMatrix& x) {
  const std::size_t n = x.dim();
  for (const auto& e : a.entries)
    for (std::size_t j = 0; j < n; ++j) out(e.r, j) += s * e.v * x(e.c, j);
}

// out += s * X A
void add_right(ComplexMatrix& out, double s, const ComplexMatrix& x, const SparseOp& a) {
  const std::size_t n = x.dim();
  for (const auto& e : a.entries)
    for (std::size_t i = 0; i < n; ++i) out(i, e.c) += s * x(i, e.r) * e.v;
}

// out += s * A X B
void add_sandwich(ComplexMatrix& out, double s, const SparseOp& a, const ComplexMatrix& x,
                  const SparseOp& b) {
  for (const auto& ea : a.entries)
    for (const auto& eb : b.entries) out(ea.r, eb.c) += s * ea.v * x(ea.c, eb.r) * eb.v;
}

struct JumpPair {
  SparseOp lower;       // S_-
  SparseOp raise;       // S_+ = S_-^dagger
  SparseOp raise_lower; // S_+ S_-
  SparseOp lower_raise; // S_- S_+
};

ComplexMatrix sigma_minus() { return ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}; }

std::vector<JumpPair> jump_pairs(const LindbladSpec& spec) {
  if (spec.qubits < 1 || spec.qubits > 3) throw InvalidInput("LindbladSpec: qubits must be 1..3");
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> lowers;
  if (spec.mode == NoiseMode::correlated) {
    ComplexMatrix s = sigma_minus();
    for (int q = 1; q < spec.qubits; ++q) s = tensor(s, sigma_minus());
    lowers.push_back(s);
  } else {
    for (int target = 0; target < spec.qubits; ++target) {
      ComplexMatrix s = target == 0 ? sigma_minus() : id2;
      for (int q = 1; q < spec.qubits; ++q) s = tensor(s, q == target ? sigma_minus() : id2);
      lowers.push_back(s);
    }
  }
  std::vector<JumpPair> out;
  for (const auto& l : lowers) {
    const ComplexMatrix r = l.adjoint();
    out.push_back({from_dense(l), from_dense(r), from_dense(r * l), from_dense(l * r)});
  }
  return out;
}

ComplexMatrix rhs_with(const std::vector<JumpPair>& jumps, const SgadParams& p,
                       const ComplexMatrix& rho) {
  const double w = p.omega();
  const double down = w * (p.n() + 1.0) / 2.0;
  const double up = w * p.n() / 2.0;
  const double squeeze = w * p.m();
  ComplexMatrix d(rho.dim());
  for (const auto& j : jumps) {
    // -Omega(n+1)/2 [S+S- rho + rho S+S- - 2 S- rho S+]
    add_left(d, -down, j.raise_lower, rho);
    add_right(d, -down, rho, j.raise_lower);
    add_sandwich(d, 2.0 * down, j.lower, rho, j.raise);
    // -Omega n/2 [S-S+ rho + rho S-S+ - 2 S+ rho S-]
    add_left(d, -up, j.lower_raise, rho);
    add_right(d, -up, rho, j.lower_raise);
    add_sandwich(d, 2.0 * up, j.raise, rho, j.lower);
    // -Omega m [S+ rho S+ + S- rho S-]
    add_sandwich(d, -squeeze, j.raise, rho, j.raise);
    add_sandwich(d, -squeeze, j.lower, rho, j.lower);
  }
  return d;
}

}  // namespace

ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const ComplexMatrix& rho) {
  const std::size_t dim = std::size_t{1} << spec.qubits;
  require_dim(rho, dim, "lindblad_rhs");
  return rhs_with(jump_pairs(spec), spec.params, rho);
}

double max_rk4_step(const SgadParams& p) { return 0.01 / (p.omega() * (2.0 * p.n() + 1.0)); }

DensityMatrix integrate_master(const DensityMatrix& rho, const LindbladSpec& spec,
                               ChannelTime t_final, double dt) {
  const std::size_t dim = std::size_t{1} << spec.qubits;
  require_dim(rho.matrix(), dim, "integrate_master");
  if (t_final.is_infinite()) throw InvalidInput("integrate_master: t_final must be finite");
  const double limit = max_rk4_step(spec.params);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw InvalidInput("integrate_master: step " + std::to_string(dt) +
                       " exceeds the bound 0.01/(Omega(2n+1)) = " + std::to_string(limit));
  }
  const double t = t_final.t();
  if (t == 0.0) return rho;
  const auto steps = static_cast<long>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(steps);
  const auto jumps = jump_pairs(spec);
  const SgadParams& p = spec.params;

  ComplexMatrix x = rho.matrix();
  for (long s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = rhs_with(jumps, p, x);
    const ComplexMatrix k2 = rhs_with(jumps, p, x + k1 * (0.5 * h));
    const ComplexMatrix k3 = rhs_with(jumps, p, x + k2 * (0.5 * h));
    const ComplexMatrix k4 = rhs_with(jumps, p, x + k3 * h);
    x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  }
  const double drift = std::abs(x.trace() - rho.matrix().trace());
  if (drift > 1e-6) {
    throw IntegrationFailure("integrate_master: trace drifted by " + std::to_string(drift));
  }
  const double herm = x.hermiticity_defect();
  if (herm > 1e-8) {
    throw IntegrationFailure("integrate_master: Hermiticity drifted by " + std::to_string(herm));
  }
  const auto report = inspect(x);
  if (!report.ok()) {
    throw IntegrationFailure("integrate_master: result is not a density matrix (" +
                             report.describe() + ")");
  }
  return validate(x);
}

// --- Choi ------------------------------------------------------------------------

ChoiReport choi_matrix(const SgadParams& p, ChannelTime t, ChoiMode mode, double mu,
                       KrausForm form) {
  const MemoryParam mem(mu);
  const std::size_t d = mode == ChoiMode::uncorrelated_single ? 2 : 8;
  ChoiReport report;
  try {
    ComplexMatrix choi(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix unit(d);
        unit(i, j) = 1.0;
        ComplexMatrix image(d);
        switch (mode) {
          case ChoiMode::uncorrelated_single:
            image = single_qubit_map(unit, p, t, form);
            break;
          case ChoiMode::correlated_3q:
            image = correlated_map(unit, p, t);
            break;
          case ChoiMode::memory_3q:
            image = correlated_map(unit, p, t) * mem.mu() +
                    uncorrelated_map(unit, p, t, form) * (1.0 - mem.mu());
            break;
        }
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) choi(i * d + a, j * d + b) = image(a, b) / double(d);
      }
    }
    report.choi = std::move(choi);
  } catch (const CpViolation& e) {
    report.kraus_issue = e.what();
    report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.min_eigenvalue = hermitian_eigenvalues(report.choi).front();
  report.completely_positive = report.min_eigenvalue >= -1e-8;
  return report;
}

}  // namespace sgad
