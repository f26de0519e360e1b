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

#include <string>

#include "sgad/channel.hpp"
#include "sgad/error.hpp"
#include "sgad/states.hpp"
#include "support.hpp"

using namespace sgad;
using namespace testing;

namespace {

const Family kAll[] = {Family::ghz1, Family::ghz2, Family::ghz3, Family::ghz4, Family::w, Family::w_tilde};

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("GHZ1 projector entries") {
    const auto g = make_pure(Family::ghz1);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) {
        const bool corner = (r == 0 || r == 7) && (c == 0 || c == 7);
        CHECK(std::abs(g(r, c) - Complex(corner ? 0.5 : 0.0)) < 1e-15);
      }
  }

  TEST_CASE("W projector entries") {
    const auto w = make_pure(Family::w);
    const std::size_t support[] = {1, 2, 4};
    double total = 0.0;
    for (auto r : support)
      for (auto c : support) CHECK(std::abs(w(r, c) - 1.0 / 3.0) < 1e-15);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) total += std::abs(w(r, c));
    CHECK(total == doctest::Approx(3.0).epsilon(1e-14));
  }

  TEST_CASE("pure states have unit trace and purity") {
    for (auto f : kAll) {
      const ComplexMatrix m = make_pure(f).matrix();
      CHECK(std::abs(m.trace() - 1.0) < 1e-12);
      CHECK(std::abs((m * m).trace() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("GHZ projectors are mutually orthogonal; W and W-tilde too") {
    const Family ghz[] = {Family::ghz1, Family::ghz2, Family::ghz3, Family::ghz4};
    for (auto a : ghz)
      for (auto b : ghz)
        if (a != b) CHECK(std::abs(inner_product(make_pure(a).matrix(), make_pure(b).matrix())) < 1e-15);
    CHECK(std::abs(inner_product(make_pure(Family::w).matrix(), make_pure(Family::w_tilde).matrix())) < 1e-15);
  }

  TEST_CASE("noisy family endpoints") {
    CHECK(max_abs_diff(make_noisy({Family::ghz1, 1.0}).matrix(), make_pure(Family::ghz1).matrix()) < 1e-15);
    CHECK(max_abs_diff(make_noisy({Family::ghz1, 0.0}).matrix(), ComplexMatrix::identity(8) * 0.125) < 1e-15);
    CHECK(max_abs_diff(make_noisy({Family::w, 0.0}).matrix(), make_pure(Family::w).matrix()) < 1e-15);
    CHECK(max_abs_diff(make_noisy({Family::w, 1.0}).matrix(), ComplexMatrix::identity(8) * 0.125) < 1e-15);
  }

  TEST_CASE("GHZ1 at alpha = 0.5") {
    const auto r = make_noisy({Family::ghz1, 0.5});
    CHECK(r(0, 7).real() == doctest::Approx(0.25));
    CHECK(r(1, 1).real() == doctest::Approx(0.0625));
    const double alpha = 0.5;
    CHECK(r(0, 0).real() == doctest::Approx(alpha / 2 + (1 - alpha) / 8));
    CHECK(r(7, 7).real() == doctest::Approx(alpha / 2 + (1 - alpha) / 8));
    for (int k = 1; k < 7; ++k) CHECK(r(k, k).real() == doctest::Approx((1 - alpha) / 8));
  }

  TEST_CASE("noisy families stay PSD over the whole parameter range") {
    for (auto f : kAll)
      for (int k = 0; k <= 20; ++k) {
        const auto rho = make_noisy({f, k / 20.0});
        CHECK(inspect(rho.matrix()).ok());
      }
  }

  TEST_CASE("noisy family rejects out-of-range weights") {
    CHECK_THROWS_AS(make_noisy({Family::ghz1, 1.1}), InvalidInput);
    CHECK_THROWS_AS(make_noisy({Family::w, -0.1}), InvalidInput);
  }

  TEST_CASE("validate accepts the maximally mixed state") {
    CHECK_NOTHROW(validate(ComplexMatrix::identity(8) * 0.125));
  }

  TEST_CASE("validate reports each violated invariant with its size") {
    std::vector<Complex> d(8, 0.0);
    d[0] = 2.0;
    d[1] = -1.0;
    const auto rep = inspect(ComplexMatrix::diagonal(d));
    // trace is exactly 1 here, so only positivity fails
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].invariant == "psd");
    CHECK(rep.violations[0].magnitude == doctest::Approx(1.0));

    d[1] = -2.0;
    const auto both = inspect(ComplexMatrix::diagonal(d));
    REQUIRE(both.violations.size() == 2);
    CHECK(both.violations[0].invariant == "trace");
    CHECK(both.violations[0].magnitude == doctest::Approx(1.0));
    CHECK(both.violations[1].invariant == "psd");

    ComplexMatrix nh = ComplexMatrix::identity(8) * 0.125;
    nh(0, 1) = 0.01;
    const auto h = inspect(nh);
    CHECK(h.violations.at(0).invariant == "hermitian");
    CHECK(h.violations.at(0).magnitude == doctest::Approx(0.01));
    CHECK_THROWS_WITH_AS(validate(nh), doctest::Contains("hermitian violated by"), InvalidInput);
  }

  TEST_CASE("channel outputs for random inputs are valid states") {
    Rng rng(21);
    for (int k = 0; k < 100; ++k) {
      const auto rho = random_density(rng, 8);
      const double n = 0.1 + 0.05 * (k % 10);
      const SgadParams p(n, 0.5 * std::sqrt(n * (n + 1)));
      const auto out = apply_memory(rho, p, ChannelTime::scaled(0.2 + 0.1 * (k % 7), p), MemoryParam(k / 99.0));
      CHECK(inspect(out.matrix()).ok());
    }
  }

  TEST_CASE("family names round-trip") {
    for (auto f : kAll) CHECK(parse_family(family_name(f)) == f);
    CHECK(parse_family("GHZ2") == Family::ghz2);
    CHECK(parse_family("w_tilde") == Family::w_tilde);
    CHECK_THROWS_AS(parse_family("ghz5"), InvalidInput);
  }

  TEST_CASE("JSON matrix round-trip") {
    Rng rng(22);
    const auto rho = random_density(rng, 8);
    const auto back = state_from_json(matrix_to_json(rho.matrix()));
    CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-15);
  }

  TEST_CASE("JSON family form") {
    const auto j = nlohmann::json::parse(R"({"family": "ghz1", "alpha": 0.95})");
    CHECK(max_abs_diff(state_from_json(j).matrix(), make_noisy({Family::ghz1, 0.95}).matrix()) < 1e-15);
    const auto w = nlohmann::json::parse(R"({"family": "w", "beta": 0.2})");
    CHECK(max_abs_diff(state_from_json(w).matrix(), make_noisy({Family::w, 0.2}).matrix()) < 1e-15);
    const auto bad = nlohmann::json::parse(R"({"family": "w", "beta": "x"})");
    CHECK_THROWS_WITH_AS(state_from_json(bad), doctest::Contains("'beta'"), InvalidInput);
  }

  TEST_CASE("JSON errors carry field context") {
    auto j = matrix_to_json(ComplexMatrix::identity(8) * 0.125);
    j["re"][2][3] = "x";
    CHECK_THROWS_WITH_AS(state_from_json(j), doctest::Contains("re[2][3]"), InvalidInput);
    auto short_row = matrix_to_json(ComplexMatrix::identity(8) * 0.125);
    short_row["im"][5] = nlohmann::json::array({0.0});
    CHECK_THROWS_WITH_AS(state_from_json(short_row), doctest::Contains("im[5]"), InvalidInput);
    CHECK_THROWS_WITH_AS(state_from_json(nlohmann::json::parse(R"({"re": []})")),
                         doctest::Contains("'dim'"), InvalidInput);
    CHECK_THROWS_AS(load_state_file("/nonexistent/state.json"), InvalidInput);
  }
}
