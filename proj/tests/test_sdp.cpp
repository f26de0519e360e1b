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

#include <doctest.h>

#include <sstream>

#include "sgad/error.hpp"
#include "sgad/sdp.hpp"
#include "support.hpp"

using namespace sgad;
using namespace testing;
using sdp::Constraint;
using sdp::Entry;
using sdp::Problem;

namespace {

/// Upper-triangle entries of a Hermitian matrix for block b.
std::vector<Entry> entries_of(const ComplexMatrix& h, int block) {
  std::vector<Entry> out;
  for (std::size_t r = 0; r < h.dim(); ++r)
    for (std::size_t c = r; c < h.dim(); ++c)
      if (h(r, c) != Complex(0.0)) out.push_back({block, int(r), int(c), h(r, c)});
  return out;
}

ComplexMatrix real_part(const ComplexMatrix& h) {
  ComplexMatrix out(h.dim());
  for (std::size_t r = 0; r < h.dim(); ++r)
    for (std::size_t c = 0; c < h.dim(); ++c) out(r, c) = h(r, c).real();
  return out;
}

/// Dense description of a block-diagonal SDP used to generate Problems.
struct DenseSdp {
  std::vector<int> dims;
  std::vector<ComplexMatrix> c;
  std::vector<std::vector<ComplexMatrix>> a;  // a[i][block]
  std::vector<double> b;

  Problem problem() const {
    Problem p;
    p.block_dims = dims;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      auto e = entries_of(c[k], int(k));
      p.objective.insert(p.objective.end(), e.begin(), e.end());
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      Constraint con;
      con.rhs = b[i];
      for (std::size_t k = 0; k < dims.size(); ++k) {
        auto e = entries_of(a[i][k], int(k));
        con.entries.insert(con.entries.end(), e.begin(), e.end());
      }
      p.constraints.push_back(std::move(con));
    }
    return p;
  }
};

/// Feasible and bounded by construction: b = A(X0) with X0 > 0 and
/// C = S0 + A^T(y0) with S0 > 0.
DenseSdp random_sdp(Rng& rng, std::vector<int> dims, int m, bool real) {
  std::normal_distribution<double> nd;
  auto herm = [&](int d) {
    auto h = random_hermitian(rng, d);
    return real ? real_part(h) : h;
  };
  auto pd = [&](int d) {
    const auto g = random_gaussian(rng, d);
    auto h = g * g.adjoint() + ComplexMatrix::identity(d) * 0.5;
    return real ? real_part(h) : h;
  };
  DenseSdp s;
  s.dims = dims;
  std::vector<ComplexMatrix> x0, s0;
  for (int d : dims) {
    x0.push_back(pd(d));
    s0.push_back(pd(d));
    s.c.push_back(ComplexMatrix(d));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<ComplexMatrix> ai;
    double bi = 0.0;
    const double yi = nd(rng);
    for (std::size_t k = 0; k < dims.size(); ++k) {
      ai.push_back(herm(dims[k]));
      bi += inner_product(ai[k], x0[k]);
      s.c[k] += ai[k] * yi;
    }
    s.a.push_back(std::move(ai));
    s.b.push_back(bi);
  }
  for (std::size_t k = 0; k < dims.size(); ++k) s.c[k] += s0[k];
  return s;
}

/// min <C, X> s.t. tr X = 1, X >= 0: the optimum is lambda_min(C).
Problem min_eigen_problem(const ComplexMatrix& c) {
  Problem p;
  p.block_dims = {int(c.dim())};
  p.objective = entries_of(c, 0);
  Constraint tr;
  tr.rhs = 1.0;
  for (int k = 0; k < int(c.dim()); ++k) tr.entries.push_back({0, k, k, 1.0});
  p.constraints.push_back(tr);
  return p;
}

double min_eig(const ComplexMatrix& h) { return hermitian_eigenvalues(h.hermitian_part()).front(); }

void check_certificate(const Problem& p, const sdp::Solution& s, double tol) {
  REQUIRE(s.status == sdp::Status::optimal);
  CHECK(std::abs(s.gap) <= 10 * tol * (1.0 + std::abs(s.primal_objective)));
  CHECK(s.primal_infeasibility <= tol);
  CHECK(s.dual_infeasibility <= tol);
  double compl_sum = 0.0;
  for (std::size_t k = 0; k < p.block_dims.size(); ++k) {
    CHECK(min_eig(s.primal[k]) >= -1e-9);
    CHECK(min_eig(s.slack[k]) >= -1e-9);
    compl_sum += inner_product(s.primal[k], s.slack[k]);
  }
  CHECK(std::abs(compl_sum) <= 1e-6);
  // Primal feasibility recomputed from the returned matrices.
  for (const auto& con : p.constraints) {
    double lhs = 0.0;
    for (const auto& e : con.entries) {
      const auto& x = s.primal[e.block];
      const double mult = e.row == e.col ? 1.0 : 2.0;
      lhs += mult * (std::conj(e.value) * x(e.row, e.col)).real();
    }
    CHECK(std::abs(lhs - con.rhs) <= 1e-6 * (1.0 + std::abs(con.rhs)));
  }
}

}  // namespace

TEST_SUITE("sdp") {
  TEST_CASE("minimal example: C = diag(1, 2), tr X = 1") {
    const auto p = min_eigen_problem(ComplexMatrix::diagonal({1.0, 2.0}));
    const auto s = sdp::solve(p);
    REQUIRE(s.status == sdp::Status::optimal);
    CHECK(s.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(s.dual_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(max_abs_diff(s.primal[0], ComplexMatrix::diagonal({1.0, 0.0})) < 1e-6);
    CHECK(s.dual[0] == doctest::Approx(1.0).epsilon(1e-7));
    check_certificate(p, s, 1e-8);
  }

  TEST_CASE("random Hermitian cost: optimum is the smallest eigenvalue") {
    Rng rng(51);
    for (int k = 0; k < 20; ++k) {
      const int d = 2 + k % 7;
      const auto c = random_hermitian(rng, d);
      const auto p = min_eigen_problem(c);
      const auto s = sdp::solve(p);
      REQUIRE(s.status == sdp::Status::optimal);
      CHECK(std::abs(s.primal_objective - hermitian_eigenvalues(c).front()) <= 1e-7);
      check_certificate(p, s, 1e-8);
    }
  }

  TEST_CASE("diagonal blocks reduce to a linear program") {
    Rng rng(52);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 7, m = 3;
      std::vector<double> c(n), b(m, 0.0), x0(n);
      std::vector<std::vector<double>> a(m, std::vector<double>(n));
      for (int j = 0; j < n; ++j) {
        c[j] = u(rng);
        x0[j] = u(rng);
      }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          a[i][j] = nd(rng);
          b[i] += a[i][j] * x0[j];
        }
      Problem p;
      p.block_dims.assign(n, 1);
      for (int j = 0; j < n; ++j) p.objective.push_back({j, 0, 0, c[j]});
      for (int i = 0; i < m; ++i) {
        Constraint con;
        con.rhs = b[i];
        for (int j = 0; j < n; ++j) con.entries.push_back({j, 0, 0, a[i][j]});
        p.constraints.push_back(con);
      }
      const auto s = sdp::solve(p);
      REQUIRE(s.status == sdp::Status::optimal);
      const double ref = lp_vertex_min(c, a, b);
      CHECK(std::abs(s.primal_objective - ref) <= 1e-6 * (1.0 + std::abs(ref)));
    }
  }

  TEST_CASE("random block SDPs: certificates and weak duality per iteration") {
    Rng rng(53);
    for (int k = 0; k < 12; ++k) {
      const bool real = k % 2 == 0;
      const auto dense = random_sdp(rng, {3 + k % 3, 2}, 2 + k % 5, real);
      const auto p = dense.problem();
      const auto s = sdp::solve(p);
      check_certificate(p, s, 1e-8);
      CHECK(s.history.size() == std::size_t(s.iterations) + 1);
      // Weak duality binds once both residuals are small.
      for (const auto& h : s.history) {
        if (h.primal_infeasibility > 1e-6 || h.dual_infeasibility > 1e-6) continue;
        CHECK(h.dual_objective <= h.primal_objective + 1e-7 * (1.0 + std::abs(h.primal_objective)));
      }
    }
  }

  TEST_CASE("optimum is invariant under orthogonal remixing of constraints") {
    Rng rng(54);
    for (int k = 0; k < 5; ++k) {
      const auto dense = random_sdp(rng, {4, 3}, 5, k % 2 == 0);
      const auto q = real_part(random_unitary(rng, 5));
      // Orthogonalize the real part by Gram-Schmidt.
      std::vector<std::vector<double>> o(5, std::vector<double>(5));
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) o[i][j] = q(i, j).real() + (i == j ? 1.0 : 0.0);
        for (int p = 0; p < i; ++p) {
          double d = 0.0;
          for (int j = 0; j < 5; ++j) d += o[i][j] * o[p][j];
          for (int j = 0; j < 5; ++j) o[i][j] -= d * o[p][j];
        }
        double nrm = 0.0;
        for (double v : o[i]) nrm += v * v;
        for (double& v : o[i]) v /= std::sqrt(nrm);
      }
      DenseSdp mixed = dense;
      for (int i = 0; i < 5; ++i) {
        mixed.b[i] = 0.0;
        for (std::size_t blk = 0; blk < dense.dims.size(); ++blk) mixed.a[i][blk] = ComplexMatrix(dense.dims[blk]);
        for (int j = 0; j < 5; ++j) {
          mixed.b[i] += o[i][j] * dense.b[j];
          for (std::size_t blk = 0; blk < dense.dims.size(); ++blk) mixed.a[i][blk] += dense.a[j][blk] * o[i][j];
        }
      }
      const double tol = 1e-8;
      const auto s1 = sdp::solve(dense.problem(), {.tol = tol});
      const auto s2 = sdp::solve(mixed.problem(), {.tol = tol});
      REQUIRE(s1.status == sdp::Status::optimal);
      REQUIRE(s2.status == sdp::Status::optimal);
      CHECK(std::abs(s1.primal_objective - s2.primal_objective) <= 2 * tol * (1.0 + std::abs(s1.primal_objective)));
    }
  }

  TEST_CASE("scaling the cost scales the optimum") {
    Rng rng(55);
    const auto dense = random_sdp(rng, {4}, 3, false);
    const auto base = sdp::solve(dense.problem());
    REQUIRE(base.status == sdp::Status::optimal);
    for (double k : {0.5, 3.0, 10.0}) {
      DenseSdp scaled = dense;
      for (auto& c : scaled.c) c *= k;
      const auto s = sdp::solve(scaled.problem());
      REQUIRE(s.status == sdp::Status::optimal);
      CHECK(s.primal_objective == doctest::Approx(k * base.primal_objective).epsilon(1e-6));
    }
  }

  TEST_CASE("real problems solved through the complex embedding agree") {
    Rng rng(56);
    for (int k = 0; k < 5; ++k) {
      const auto p = random_sdp(rng, {3, 3}, 4, true).problem();
      REQUIRE(p.is_real());
      const auto a = sdp::solve(p);
      const auto b = sdp::solve(p, {.force_complex = true});
      REQUIRE(a.status == sdp::Status::optimal);
      REQUIRE(b.status == sdp::Status::optimal);
      CHECK(std::abs(a.primal_objective - b.primal_objective) <= 1e-7 * (1.0 + std::abs(a.primal_objective)));
      CHECK(max_abs_diff(a.primal[0], b.primal[0]) < 1e-3);
    }
  }

  TEST_CASE("linearly dependent constraints are dropped") {
    Rng rng(57);
    const auto dense = random_sdp(rng, {3}, 3, false);
    auto p = dense.problem();
    const auto base = sdp::solve(p);
    auto dup = p.constraints[1];
    for (auto& e : dup.entries) e.value *= 2.0;
    dup.rhs *= 2.0;
    p.constraints.push_back(dup);
    const auto s = sdp::solve(p);
    CHECK(s.dropped_constraints == 1);
    REQUIRE(s.status == sdp::Status::optimal);
    CHECK(s.dual.size() == 4);
    CHECK(s.primal_objective == doctest::Approx(base.primal_objective).epsilon(1e-7));
  }

  TEST_CASE("malformed problems are rejected") {
    auto p = min_eigen_problem(ComplexMatrix::diagonal({1.0, 2.0}));
    auto bad_block = p;
    bad_block.objective.push_back({1, 0, 0, 1.0});
    CHECK_THROWS_AS(sdp::solve(bad_block), InvalidInput);
    auto bad_index = p;
    bad_index.constraints[0].entries.push_back({0, 2, 0, 1.0});
    CHECK_THROWS_AS(sdp::solve(bad_index), InvalidInput);
    auto bad_diag = p;
    bad_diag.objective.push_back({0, 1, 1, Complex(0.0, 1.0)});
    CHECK_THROWS_WITH_AS(sdp::solve(bad_diag), doctest::Contains("not real"), InvalidInput);
    Problem empty;
    CHECK_THROWS_AS(sdp::solve(empty), InvalidInput);
  }

  TEST_CASE("iteration limit is reported") {
    Rng rng(58);
    const auto s = sdp::solve(random_sdp(rng, {4}, 3, false).problem(), {.max_iter = 1});
    CHECK(s.status == sdp::Status::max_iterations);
    CHECK(s.iterations == 1);
    CHECK(sdp::status_name(s.status) == "max-iterations");
    CHECK(sdp::status_name(sdp::Status::optimal) == "optimal");
  }

  TEST_CASE("SDPA export") {
    const auto p = min_eigen_problem(ComplexMatrix::diagonal({1.0, 2.0}));
    std::ostringstream os;
    sdp::write_sdpa(os, p);
    CHECK(os.str() ==
          "1 = number of constraints\n"
          "1 = number of blocks\n"
          "2\n"
          "1\n"
          "0 1 1 1 1 0\n"
          "0 1 2 2 2 0\n"
          "1 1 1 1 1 0\n"
          "1 1 2 2 1 0\n");
    Problem lower;
    lower.block_dims = {2};
    lower.objective.push_back({0, 1, 0, Complex(0.5, 0.25)});
    std::ostringstream os2;
    sdp::write_sdpa(os2, lower);
    CHECK(os2.str().find("0 1 1 2 0.5 -0.25\n") != std::string::npos);
  }
}
