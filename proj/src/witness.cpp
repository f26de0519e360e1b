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

#include "sgad/witness.hpp"

#include <algorithm>
#include <cmath>

#include "sgad/error.hpp"

namespace sgad {

double negativity(const DensityMatrix& rho, Bipartition cut) {
  return std::max(0.0, trace_norm(partial_transpose(rho.matrix(), cut)) - 1.0);
}

bool is_ppt(const DensityMatrix& rho, Bipartition cut) {
  return hermitian_eigenvalues(partial_transpose(rho.matrix(), cut)).front() >= -kPsdTol;
}

namespace {

constexpr int kDim = 8;

// Block layout per cut M: P_M, I - P_M, Q_M, I - Q_M.
int block_p(int cut) { return 4 * cut; }
int block_pc(int cut) { return 4 * cut + 1; }
int block_q(int cut) { return 4 * cut + 2; }
int block_qc(int cut) { return 4 * cut + 3; }

// Coordinate functional on Hermitian 8x8 matrices: tr(E Y) picks Re Y_kl
// (imag = false) or Im Y_kl (imag = true) for k < l, and Y_kk for k = l.
struct Coord {
  int k, l;
  bool imag;
  Complex value() const {
    if (k == l) return 1.0;
    return imag ? Complex(0.0, 0.5) : Complex(0.5, 0.0);
  }
};

std::vector<Coord> coordinates(bool real_only) {
  std::vector<Coord> out;
  for (int k = 0; k < kDim; ++k)
    for (int l = k; l < kDim; ++l) {
      out.push_back({k, l, false});
      if (k != l && !real_only) out.push_back({k, l, true});
    }
  return out;
}

// Entry of tr(E Y^{T_M}) = tr(E^{T_M} Y).
sdp::Entry transposed(int block, const Coord& c, unsigned mask, Complex scale) {
  const int k = (c.k & ~mask) | (c.l & mask);
  const int l = (c.l & ~mask) | (c.k & mask);
  return {block, k, l, scale * c.value()};
}

sdp::Entry plain(int block, const Coord& c, Complex scale) {
  return {block, c.k, c.l, scale * c.value()};
}

bool is_real(const ComplexMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(),
                     [](const Complex& z) { return z.imag() == 0.0; });
}

}  // namespace

sdp::Problem gmn_problem(const DensityMatrix& rho) {
  if (rho.dim() != kDim) throw InvalidInput("gmn: expected a three-qubit (8x8) state");
  const auto cuts = Bipartition::all();
  sdp::Problem prob;
  prob.block_dims.assign(12, kDim);

  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix rt = partial_transpose(r, cuts[0]);
  for (int k = 0; k < kDim; ++k)
    for (int l = k; l < kDim; ++l) {
      if (r(k, l) != Complex(0.0)) prob.objective.push_back({block_p(0), k, l, r(k, l)});
      if (rt(k, l) != Complex(0.0)) prob.objective.push_back({block_q(0), k, l, rt(k, l)});
    }

  const auto coords = coordinates(is_real(r));
  for (int m = 0; m < 3; ++m) {
    for (const auto& c : coords) {
      const double rhs = c.k == c.l ? 1.0 : 0.0;
      prob.constraints.push_back({{plain(block_p(m), c, 1.0), plain(block_pc(m), c, 1.0)}, rhs});
      prob.constraints.push_back({{plain(block_q(m), c, 1.0), plain(block_qc(m), c, 1.0)}, rhs});
    }
  }
  for (int m = 1; m < 3; ++m) {
    for (const auto& c : coords) {
      prob.constraints.push_back({{plain(block_p(0), c, 1.0),
                                   transposed(block_q(0), c, cuts[0].mask(), 1.0),
                                   plain(block_p(m), c, -1.0),
                                   transposed(block_q(m), c, cuts[m].mask(), -1.0)},
                                  0.0});
    }
  }
  return prob;
}

GmnReport gmn(const DensityMatrix& rho, const GmnOptions& opts) {
  GmnReport rep;
  const auto cuts = Bipartition::all();
  for (int m = 0; m < 3; ++m) rep.negativities[m] = negativity(rho, cuts[m]);

  const auto prob = gmn_problem(rho);
  sdp::Options so;
  so.tol = opts.tol;
  so.max_iter = opts.max_iter;
  so.force_complex = opts.force_complex;
  const auto sol = sdp::solve(prob, so);

  rep.status = sol.status;
  rep.trusted = sol.status == sdp::Status::optimal;
  rep.iterations = sol.iterations;
  rep.gap = sol.gap;
  rep.value = 2.0 * std::max(0.0, -sol.primal_objective);
  rep.witness = sol.primal[block_p(0)] + partial_transpose(sol.primal[block_q(0)], cuts[0]);
  rep.witness = rep.witness.hermitian_part();
  return rep;
}

CriterionReport xstate_criterion(const DensityMatrix& rho, int row) {
  if (rho.dim() != kDim) throw InvalidInput("xstate_criterion: expected an 8x8 state");
  if (row < 0 || row > 3) throw InvalidInput("xstate_criterion: row must be in 0..3");
  CriterionReport rep;
  rep.lhs = std::abs(rho(row, 7 - row));
  for (int k = 0; k < 4; ++k) {
    if (k == row) continue;
    rep.rhs += std::sqrt(std::max(0.0, rho(k, k).real() * rho(7 - k, 7 - k).real()));
  }
  rep.margin = rep.lhs - rep.rhs;
  rep.violated = rep.margin > 1e-12;
  return rep;
}

AsymptoticCriterion asymptotic_ghz1_criterion(double alpha, double n, double mu) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  if (!(n >= 0.0)) throw InvalidInput("n must be non-negative");
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidInput("mu must lie in [0, 1]");
  const double d3 = std::pow(1.0 + 2.0 * n, 3);
  const double noise = mu * (1.0 - alpha) / 8.0;
  const double a = n * n * (1.0 + n) * (1.0 - mu) / d3 + noise;
  const double b = n * (1.0 + n) * (1.0 + n) * (1.0 - mu) / d3 + noise;
  AsymptoticCriterion out;
  out.lhs = 3.0 * std::sqrt(a * b);
  out.rhs = std::pow(n * (1.0 + n), 1.5) * alpha * (1.0 - mu) / d3;
  out.satisfied = out.lhs >= out.rhs - 1e-12;
  return out;
}

ThresholdResult threshold_scan(const std::function<DensityMatrix(double)>& state, double lo,
                               double hi, double resolution, const GmnOptions& opts) {
  if (!(lo < hi)) throw InvalidInput("threshold_scan: need lo < hi");
  if (!(resolution > 0.0)) throw InvalidInput("threshold_scan: resolution must be positive");
  ThresholdResult res;
  auto eval = [&](double x) {
    const auto rep = gmn(state(x), opts);
    ++res.evaluations;
    res.trusted = res.trusted && rep.trusted;
    return rep.value;
  };
  res.lo = lo;
  res.hi = hi;
  res.gmn_lo = eval(lo);
  res.gmn_hi = eval(hi);
  const bool pos_lo = res.gmn_lo > kGmnEpsilon;
  const bool pos_hi = res.gmn_hi > kGmnEpsilon;
  if (pos_lo == pos_hi) return res;
  res.found = true;
  while (res.hi - res.lo > resolution) {
    const double mid = 0.5 * (res.lo + res.hi);
    const double g = eval(mid);
    if ((g > kGmnEpsilon) == pos_lo) {
      res.lo = mid;
      res.gmn_lo = g;
    } else {
      res.hi = mid;
      res.gmn_hi = g;
    }
  }
  res.boundary = 0.5 * (res.lo + res.hi);
  return res;
}

ThresholdResult threshold_scan(const FamilyScan& scan, double resolution, const GmnOptions& opts) {
  auto state = [&](double x) {
    const double weight = scan.variable == ScanVariable::weight ? x : scan.weight;
    const double mu = scan.variable == ScanVariable::mu ? x : scan.mu;
    const auto rho = make_noisy({scan.family, weight});
    if (!scan.n) return rho;
    return asymptotic_state(rho, SgadParams(*scan.n, 0.0), MemoryParam(mu), scan.form);
  };
  return threshold_scan(state, scan.lo, scan.hi, resolution, opts);
}

}  // namespace sgad
