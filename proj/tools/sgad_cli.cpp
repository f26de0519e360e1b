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

// sgad_cli: channel validation, evolution and genuine-negativity sweeps.
//
// Exit codes: 0 success, 1 validation failure, 2 input error, 3 solver failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sgad/error.hpp"
#include "sgad/sweep.hpp"

namespace {

using namespace sgad;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct Common {
  std::string format = "csv";
  std::string out;
  int workers = 1;
  double tol = 1e-8;
  std::string kraus = "exact";
};

struct StateArgs {
  std::string family;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string state_file;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", c.out, "Output file (default stdout)");
  app->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "SDP tolerance")->check(CLI::PositiveNumber);
  app->add_option("--kraus", c.kraus, "Single-qubit Kraus set: exact | sqrt-radicand");
}

void add_state(CLI::App* app, StateArgs& s) {
  app->add_option("--family", s.family, "ghz1..ghz4, w, wtilde");
  app->add_option("--alpha", s.alpha, "GHZ visibility");
  app->add_option("--beta", s.beta, "W noise weight");
  app->add_option("--state", s.state_file, "JSON state file");
}

DensityMatrix load_state(const StateArgs& s) {
  if (!s.state_file.empty()) {
    if (!s.family.empty()) throw InvalidInput("give either --state or --family, not both");
    return load_state_file(s.state_file);
  }
  if (s.family.empty()) throw InvalidInput("one of --state or --family is required");
  const Family f = parse_family(s.family);
  if (is_ghz(f) && s.beta) throw InvalidInput("--beta applies to W families; use --alpha");
  if (!is_ghz(f) && s.alpha) throw InvalidInput("--alpha applies to GHZ families; use --beta");
  const double w = is_ghz(f) ? s.alpha.value_or(1.0) : s.beta.value_or(0.0);
  return make_noisy({f, w});
}

void emit(const Table& t, const Common& c) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw InvalidInput("cannot write '" + c.out + "'");
    os = &file;
  }
  if (c.format == "json") {
    *os << t.to_json().dump(2) << '\n';
  } else {
    t.write_csv(*os);
  }
}

bool column_untrusted(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] != name) continue;
    for (const auto& r : t.rows)
      if (i < r.size() && r[i] != "optimal" && r[i] != "ok" && !r[i].empty()) return true;
  }
  return false;
}

GmnOptions gmn_options(const Common& c) {
  GmnOptions o;
  o.tol = c.tol;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-qubit SGAD channels with memory and genuine negativity"};
  app.require_subcommand(1);

  Common common;

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Kraus completeness, CP and RK4 checks");
  ValidateConfig vcfg;
  std::string v_grid = "0.1,1,10";
  validate_cmd->add_option("--n", vcfg.n, "Thermal photon number");
  validate_cmd->add_option("--m", vcfg.m, "Squeezing parameter");
  validate_cmd->add_option("--omega-t,--grid", v_grid, "Omega t values: list or start:stop:step");
  add_common(validate_cmd, common);

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a state and tabulate measures");
  StateArgs e_state;
  EvolveConfig ecfg;
  std::string e_grid = "60";
  std::string e_measures = "gmn,neg,xstate";
  add_state(evolve_cmd, e_state);
  evolve_cmd->add_option("--n", ecfg.n, "Thermal photon number");
  evolve_cmd->add_option("--m", ecfg.m, "Squeezing parameter");
  evolve_cmd->add_option("--mu", ecfg.mu, "Memory parameter");
  evolve_cmd->add_option("--omega-t,--grid", e_grid, "Omega t values: list or start:stop:step");
  evolve_cmd->add_option("--measures", e_measures, "Subset of gmn,neg,xstate");
  add_common(evolve_cmd, common);

  // asymptotic
  auto* asym_cmd = app.add_subcommand("asymptotic", "Genuine negativity of t -> infinity states");
  std::string a_family = "ghz1";
  std::string a_alpha, a_beta, a_n = "1", a_mu = "0:1:0.01";
  asym_cmd->add_option("--family", a_family, "ghz1..ghz4, w, wtilde");
  asym_cmd->add_option("--alpha", a_alpha, "GHZ visibilities (list, default 1,0.95,0.9)");
  asym_cmd->add_option("--beta", a_beta, "W noise weights (list, default 0)");
  asym_cmd->add_option("--n", a_n, "Thermal photon numbers (list)");
  asym_cmd->add_option("--mu,--grid", a_mu, "Memory grid: list or start:stop:step");
  add_common(asym_cmd, common);

  // gmn
  auto* gmn_cmd = app.add_subcommand("gmn", "Genuine negativity of one state");
  StateArgs g_state;
  std::string witness_out;
  add_state(gmn_cmd, g_state);
  gmn_cmd->add_option("--witness-out", witness_out, "Write the optimal witness as a matrix file");
  add_common(gmn_cmd, common);

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Bisection for the genuine-negativity boundary");
  std::string s_family = "ghz1", s_variable = "weight";
  std::optional<double> s_alpha, s_beta, s_n;
  FamilyScan scan;
  double resolution = 1e-3;
  scan_cmd->add_option("--family", s_family, "ghz1..ghz4, w, wtilde");
  scan_cmd->add_option("--variable", s_variable, "weight (alpha/beta) or mu")
      ->check(CLI::IsMember({"weight", "alpha", "beta", "mu"}));
  scan_cmd->add_option("--alpha", s_alpha, "Fixed visibility when scanning mu");
  scan_cmd->add_option("--beta", s_beta, "Fixed noise weight when scanning mu");
  scan_cmd->add_option("--n", s_n, "Thermal photon number (omit for initial states)");
  scan_cmd->add_option("--mu", scan.mu, "Fixed memory when scanning the weight");
  scan_cmd->add_option("--lo", scan.lo, "Bracket start");
  scan_cmd->add_option("--hi", scan.hi, "Bracket end");
  scan_cmd->add_option("--resolution", resolution, "Bracket width to stop at");
  add_common(scan_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    const KrausForm form = parse_kraus_form(common.kraus);

    if (*validate_cmd) {
      vcfg.omega_t = parse_grid(v_grid);
      vcfg.form = form;
      const auto rep = cmd_validate(vcfg);
      emit(rep.table, common);
      std::cerr << "max completeness residual " << format_number(rep.max_completeness_residual)
                << ", min Choi eigenvalue " << format_number(rep.min_choi_eigenvalue)
                << ", correlated vs RK4 " << format_number(rep.max_correlated_vs_rk4)
                << ", uncorrelated vs RK4 " << format_number(rep.max_uncorrelated_vs_rk4) << '\n';
      for (const auto& f : rep.failures) std::cerr << "FAIL " << f << '\n';
      return rep.passed ? kExitOk : kExitValidation;
    }

    if (*evolve_cmd) {
      const auto rho = load_state(e_state);
      ecfg.initial = rho.matrix();
      ecfg.omega_t = parse_grid(e_grid);
      ecfg.measures = {e_measures.find("gmn") != std::string::npos,
                       e_measures.find("neg") != std::string::npos,
                       e_measures.find("xstate") != std::string::npos};
      ecfg.form = form;
      ecfg.gmn = gmn_options(common);
      ecfg.workers = common.workers;
      if (!e_state.family.empty()) {
        ecfg.xstate_row = std::max(0, family_xstate_row(parse_family(e_state.family)));
      }
      const auto table = cmd_evolve(ecfg);
      emit(table, common);
      for (const auto& r : table.rows)
        if (!r.back().empty()) return kExitInput;
      return column_untrusted(table, "gmn_status") ? kExitSolver : kExitOk;
    }

    if (*asym_cmd) {
      SweepConfig cfg;
      cfg.family = parse_family(a_family);
      const bool ghz = is_ghz(cfg.family);
      if (ghz && !a_beta.empty()) throw InvalidInput("--beta applies to W families; use --alpha");
      if (!ghz && !a_alpha.empty()) throw InvalidInput("--alpha applies to GHZ families; use --beta");
      const std::string& weights = ghz ? a_alpha : a_beta;
      cfg.weights = !weights.empty() ? parse_grid(weights)
                                    : ghz ? std::vector<double>{1.0, 0.95, 0.9} : std::vector<double>{0.0};
      cfg.n_values = parse_grid(a_n);
      cfg.mu_values = parse_grid(a_mu);
      cfg.form = form;
      cfg.gmn = gmn_options(common);
      cfg.workers = common.workers;
      const auto table = cmd_asymptotic(cfg);
      emit(table, common);
      for (const auto& r : table.rows)
        if (r.back().rfind("error", 0) == 0) return kExitInput;
      return column_untrusted(table, "status") ? kExitSolver : kExitOk;
    }

    if (*gmn_cmd) {
      const auto rho = load_state(g_state);
      const auto res = cmd_gmn(rho, gmn_options(common));
      if (common.format == "json") {
        std::cout << res.to_json().dump(2) << '\n';
      } else {
        std::cout << "gmn " << format_number(res.report.value) << '\n'
                  << "status " << sdp::status_name(res.report.status) << '\n'
                  << "neg_A_BC " << format_number(res.report.negativities[0]) << '\n'
                  << "neg_B_AC " << format_number(res.report.negativities[1]) << '\n'
                  << "neg_C_AB " << format_number(res.report.negativities[2]) << '\n'
                  << "xstate_margin " << format_number(res.criterion.margin) << '\n';
      }
      if (!witness_out.empty()) write_matrix_file(witness_out, res.report.witness);
      return res.report.trusted ? kExitOk : kExitSolver;
    }

    if (*scan_cmd) {
      scan.family = parse_family(s_family);
      const bool ghz = is_ghz(scan.family);
      scan.variable = s_variable == "mu" ? ScanVariable::mu : ScanVariable::weight;
      if ((s_variable == "alpha" && !ghz) || (s_variable == "beta" && ghz)) {
        throw InvalidInput("--variable " + s_variable + " does not match family " + s_family);
      }
      if (ghz && s_beta) throw InvalidInput("--beta applies to W families; use --alpha");
      if (!ghz && s_alpha) throw InvalidInput("--alpha applies to GHZ families; use --beta");
      scan.weight = ghz ? s_alpha.value_or(1.0) : s_beta.value_or(0.0);
      scan.n = s_n;
      if (scan.variable == ScanVariable::mu && !scan.n) {
        throw InvalidInput("scanning mu needs --n (asymptotic states)");
      }
      scan.form = form;
      const auto res = threshold_scan(scan, resolution, gmn_options(common));
      emit(scan_table(scan, res), common);
      return res.trusted ? kExitOk : kExitSolver;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CpViolation& e) {
    std::cerr << "cp-violation: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}
