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

// Command implementations behind the sgad_cli tool: channel validation,
// time evolution, asymptotic sweeps, single-state GMN and threshold scans.
// Results are returned as tables so they can be written as CSV or JSON.

#ifndef SGAD_SWEEP_HPP
#define SGAD_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sgad/channel.hpp"
#include "sgad/states.hpp"
#include "sgad/witness.hpp"

namespace sgad {

/// Runs f(0..count-1) on up to `workers` threads and returns the results in
/// index order. The first exception thrown by any task is rethrown.
template <class F>
auto parallel_map(std::size_t count, int workers, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

/// start, start + step, ... up to stop (inclusive within step / 1e6).
std::vector<double> make_grid(double start, double stop, double step);

/// Parses "start:stop:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

/// Shortest round-trip-stable decimal used in every table.
std::string format_number(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const;
  /// Array of objects; numeric-looking cells become JSON numbers.
  nlohmann::json to_json() const;
};

// --- validate --------------------------------------------------------------------

struct ValidateConfig {
  double n = 1.0;
  double m = 0.0;
  std::vector<double> omega_t{0.1, 1.0, 10.0};
  KrausForm form = KrausForm::exact;
};

struct ValidateReport {
  bool passed = true;
  double max_completeness_residual = 0.0;  // max |sum K^dagger K - I|
  double min_choi_eigenvalue = 0.0;        // over single-qubit and 3-qubit maps
  double max_correlated_vs_rk4 = 0.0;
  double max_uncorrelated_vs_rk4 = 0.0;
  std::vector<std::string> failures;
  Table table;  // one row per Omega t
};

ValidateReport cmd_validate(const ValidateConfig& cfg);

// --- evolve ----------------------------------------------------------------------

struct Measures {
  bool gmn = true;
  bool negativities = true;
  bool xstate = true;
};

struct EvolveConfig {
  ComplexMatrix initial{8};
  double n = 1.0;
  double m = 0.0;
  double mu = 0.0;
  std::vector<double> omega_t{60.0};
  Measures measures;
  KrausForm form = KrausForm::exact;
  GmnOptions gmn;
  int workers = 1;
  /// Antidiagonal row used for the xstate column (0..3).
  int xstate_row = 0;
};

/// Columns: omega_t[,gmn,gmn_status][,neg_A_BC,neg_B_AC,neg_C_AB][,xstate_margin],
/// trace,min_eigenvalue,error. A row whose evaluation failed keeps its
/// place with the error message and empty measure cells.
Table cmd_evolve(const EvolveConfig& cfg);

// --- asymptotic ------------------------------------------------------------------

struct SweepConfig {
  Family family = Family::ghz1;
  std::vector<double> weights{1.0};  // alpha (GHZ) or beta (W)
  std::vector<double> n_values{1.0};
  std::vector<double> mu_values = make_grid(0.0, 1.0, 0.01);
  Measures measures;
  KrausForm form = KrausForm::exact;
  GmnOptions gmn;
  int workers = 1;
};

/// Schema: family,param,n,mu,gmn,neg_A_BC,neg_B_AC,neg_C_AB,xstate_margin,status.
/// Rows sorted by mu, then by weight and n in configuration order.
Table cmd_asymptotic(const SweepConfig& cfg);

/// Antidiagonal row of a family's coherence: ghz1..ghz4 -> 0..3. W families
/// have no single coherence; -1 means "largest margin over all four".
int family_xstate_row(Family f);

/// Largest criterion margin for `row`, or over every row when row < 0.
double xstate_margin(const DensityMatrix& rho, int row);

// --- gmn ----------------------------------------------------------------------------

struct GmnCommandResult {
  GmnReport report;
  CriterionReport criterion;  // best antidiagonal margin
  nlohmann::json to_json() const;
};

GmnCommandResult cmd_gmn(const DensityMatrix& rho, const GmnOptions& opts = {});

// --- scan ---------------------------------------------------------------------------

Table scan_table(const FamilyScan& scan, const ThresholdResult& res);

}  // namespace sgad

#endif  // SGAD_SWEEP_HPP
