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

#include "sgad/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

#include "sgad/error.hpp"

namespace sgad {

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw InvalidInput("grid step must be positive");
  if (!(stop >= start)) throw InvalidInput("grid stop must not be below start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-6)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(std::min(stop, start + static_cast<double>(k) * step));
  return out;
}

namespace {

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw InvalidInput("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidInput("grid '" + text + "' must be start:stop:step");
    return make_grid(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_double(p));
  if (out.empty()) throw InvalidInput("empty grid");
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void Table::write_csv(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const auto& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << c;
      }
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

nlohmann::json Table::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
      const auto& c = r[i];
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (!c.empty() && end == c.c_str() + c.size()) {
        obj[header[i]] = v;
      } else {
        obj[header[i]] = c;
      }
    }
    out.push_back(std::move(obj));
  }
  return out;
}

// --- validate --------------------------------------------------------------------

namespace {

// Fixed mixed state with complex coherences everywhere.
DensityMatrix probe_state() {
  std::vector<Complex> psi(8);
  for (int k = 0; k < 8; ++k) psi[k] = std::polar(1.0 + 0.25 * k, 0.7 * k);
  double norm = 0.0;
  for (const auto& z : psi) norm += std::norm(z);
  ComplexMatrix m = ComplexMatrix::outer(psi) * (0.8 / norm);
  m += ComplexMatrix::identity(8) * (0.2 / 8.0);
  return validate(m);
}

}  // namespace

ValidateReport cmd_validate(const ValidateConfig& cfg) {
  ValidateReport rep;
  rep.table.header = {"omega_t",        "completeness_residual", "choi_min_single",
                      "choi_min_memory", "correlated_vs_rk4",     "uncorrelated_vs_rk4",
                      "status"};
  const SgadParams p(cfg.n, cfg.m);
  const DensityMatrix probe = probe_state();
  const double dt = max_rk4_step(p);
  rep.min_choi_eigenvalue = std::numeric_limits<double>::infinity();

  for (double wt : cfg.omega_t) {
    if (!(wt >= 0.0)) throw InvalidInput("omega_t values must be non-negative");
    const auto t = ChannelTime::scaled(wt, p);
    std::vector<std::string> row{format_number(wt)};
    std::vector<std::string> issues;
    try {
      const auto ks = kraus_single(p, t, cfg.form);
      ComplexMatrix sum(2);
      for (const auto& k : ks) sum += k.adjoint() * k;
      const double res = max_abs_diff(sum, ComplexMatrix::identity(2));
      rep.max_completeness_residual = std::max(rep.max_completeness_residual, res);
      row.push_back(format_number(res));
      if (res > 1e-10) issues.push_back("completeness residual " + format_number(res));
    } catch (const CpViolation& e) {
      row.push_back("");
      issues.push_back(e.what());
    }

    const auto single = choi_matrix(p, t, ChoiMode::uncorrelated_single, 0.0, cfg.form);
    const auto memory = choi_matrix(p, t, ChoiMode::memory_3q, 0.5, cfg.form);
    for (const auto* c : {&single, &memory}) {
      if (c->kraus_issue) {
        row.push_back("");
        continue;
      }
      rep.min_choi_eigenvalue = std::min(rep.min_choi_eigenvalue, c->min_eigenvalue);
      row.push_back(format_number(c->min_eigenvalue));
      if (!c->completely_positive) issues.push_back("Choi eigenvalue " + format_number(c->min_eigenvalue));
    }

    const double corr = max_abs_diff(apply_correlated(probe, p, t).matrix(),
                                     integrate_master(probe, {NoiseMode::correlated, p}, t, dt).matrix());
    rep.max_correlated_vs_rk4 = std::max(rep.max_correlated_vs_rk4, corr);
    row.push_back(format_number(corr));
    if (corr > 1e-6) issues.push_back("correlated map differs from RK4 by " + format_number(corr));

    try {
      const double unc =
          max_abs_diff(apply_uncorrelated(probe, p, t, cfg.form).matrix(),
                       integrate_master(probe, {NoiseMode::uncorrelated, p}, t, dt).matrix());
      rep.max_uncorrelated_vs_rk4 = std::max(rep.max_uncorrelated_vs_rk4, unc);
      row.push_back(format_number(unc));
      if (unc > 1e-6) issues.push_back("uncorrelated map differs from RK4 by " + format_number(unc));
    } catch (const CpViolation&) {
      row.push_back("");
    }

    std::string status = "ok";
    if (!issues.empty()) {
      rep.passed = false;
      status.clear();
      for (std::size_t i = 0; i < issues.size(); ++i) {
        status += (i ? "; " : "") + issues[i];
        rep.failures.push_back("omega_t=" + format_number(wt) + ": " + issues[i]);
      }
    }
    row.push_back(status);
    rep.table.rows.push_back(std::move(row));
  }
  if (rep.min_choi_eigenvalue == std::numeric_limits<double>::infinity()) rep.min_choi_eigenvalue = 0.0;
  return rep;
}

// --- shared measure helpers ----------------------------------------------------------

int family_xstate_row(Family f) {
  switch (f) {
    case Family::ghz1:
      return 0;
    case Family::ghz2:
      return 1;
    case Family::ghz3:
      return 2;
    case Family::ghz4:
      return 3;
    default:
      return -1;
  }
}

double xstate_margin(const DensityMatrix& rho, int row) {
  if (row >= 0) return xstate_criterion(rho, row).margin;
  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < 4; ++r) best = std::max(best, xstate_criterion(rho, r).margin);
  return best;
}

// --- evolve ----------------------------------------------------------------------

Table cmd_evolve(const EvolveConfig& cfg) {
  const auto rho0 = validate(cfg.initial);
  if (rho0.dim() != 8) throw InvalidInput("evolve: initial state must be 8x8");
  const SgadParams p(cfg.n, cfg.m);
  const MemoryParam mem(cfg.mu);
  for (double wt : cfg.omega_t)
    if (!(wt >= 0.0)) throw InvalidInput("omega_t values must be non-negative");

  Table table;
  table.header = {"omega_t"};
  if (cfg.measures.gmn) table.header.insert(table.header.end(), {"gmn", "gmn_status"});
  if (cfg.measures.negativities)
    table.header.insert(table.header.end(), {"neg_A_BC", "neg_B_AC", "neg_C_AB"});
  if (cfg.measures.xstate) table.header.push_back("xstate_margin");
  table.header.insert(table.header.end(), {"trace", "min_eigenvalue", "error"});
  const std::size_t measure_cols = table.header.size() - 4;

  table.rows = parallel_map(cfg.omega_t.size(), cfg.workers, [&](std::size_t i) {
    const double wt = cfg.omega_t[i];
    std::vector<std::string> row{format_number(wt)};
    try {
      const auto rho = apply_memory(rho0, p, ChannelTime::scaled(wt, p), mem, cfg.form);
      if (cfg.measures.gmn) {
        const auto g = gmn(rho, cfg.gmn);
        row.push_back(format_number(g.value));
        row.emplace_back(sdp::status_name(g.status));
      }
      if (cfg.measures.negativities)
        for (auto cut : Bipartition::all()) row.push_back(format_number(negativity(rho, cut)));
      if (cfg.measures.xstate) row.push_back(format_number(xstate_margin(rho, cfg.xstate_row)));
      const auto check = inspect(rho.matrix());
      row.push_back(format_number(rho.matrix().trace().real()));
      row.push_back(format_number(check.min_eigenvalue));
      row.emplace_back("");
    } catch (const std::exception& e) {
      row.resize(1 + measure_cols);
      row.insert(row.end(), {"", "", e.what()});
    }
    return row;
  });
  return table;
}

// --- asymptotic ------------------------------------------------------------------

Table cmd_asymptotic(const SweepConfig& cfg) {
  if (cfg.weights.empty() || cfg.n_values.empty() || cfg.mu_values.empty()) {
    throw InvalidInput("asymptotic sweep: every grid must be nonempty");
  }
  std::vector<double> mus = cfg.mu_values;
  std::stable_sort(mus.begin(), mus.end());
  for (double mu : mus) (void)MemoryParam(mu);
  for (double n : cfg.n_values) (void)SgadParams(n, 0.0);
  std::vector<DensityMatrix> initial;
  for (double w : cfg.weights) initial.push_back(make_noisy({cfg.family, w}));

  struct Point {
    std::size_t w, n, mu;
  };
  std::vector<Point> points;
  for (std::size_t k = 0; k < mus.size(); ++k)
    for (std::size_t i = 0; i < cfg.weights.size(); ++i)
      for (std::size_t j = 0; j < cfg.n_values.size(); ++j) points.push_back({i, j, k});

  Table table;
  table.header = {"family", "param", "n", "mu", "gmn", "neg_A_BC", "neg_B_AC", "neg_C_AB",
                  "xstate_margin", "status"};
  const int xrow = family_xstate_row(cfg.family);
  table.rows = parallel_map(points.size(), cfg.workers, [&](std::size_t idx) {
    const auto& pt = points[idx];
    std::vector<std::string> row{std::string(family_name(cfg.family)),
                                 format_number(cfg.weights[pt.w]), format_number(cfg.n_values[pt.n]),
                                 format_number(mus[pt.mu])};
    try {
      const auto rho = asymptotic_state(initial[pt.w], SgadParams(cfg.n_values[pt.n], 0.0),
                                        MemoryParam(mus[pt.mu]), cfg.form);
      std::string status = "ok";
      if (cfg.measures.gmn) {
        const auto g = gmn(rho, cfg.gmn);
        row.push_back(format_number(g.value));
        status = sdp::status_name(g.status);
      } else {
        row.emplace_back("");
      }
      for (auto cut : Bipartition::all())
        row.push_back(cfg.measures.negativities ? format_number(negativity(rho, cut)) : "");
      row.push_back(cfg.measures.xstate ? format_number(xstate_margin(rho, xrow)) : "");
      row.push_back(status);
    } catch (const std::exception& e) {
      row.resize(9);
      row.push_back(std::string("error: ") + e.what());
    }
    return row;
  });
  return table;
}

// --- gmn ----------------------------------------------------------------------------

nlohmann::json GmnCommandResult::to_json() const {
  return {{"gmn", report.value},
          {"status", std::string(sdp::status_name(report.status))},
          {"trusted", report.trusted},
          {"iterations", report.iterations},
          {"gap", report.gap},
          {"neg_A_BC", report.negativities[0]},
          {"neg_B_AC", report.negativities[1]},
          {"neg_C_AB", report.negativities[2]},
          {"xstate_margin", criterion.margin}};
}

GmnCommandResult cmd_gmn(const DensityMatrix& rho, const GmnOptions& opts) {
  GmnCommandResult out;
  out.report = gmn(rho, opts);
  out.criterion = xstate_criterion(rho, 0);
  for (int r = 1; r < 4; ++r) {
    const auto c = xstate_criterion(rho, r);
    if (c.margin > out.criterion.margin) out.criterion = c;
  }
  return out;
}

// --- scan ---------------------------------------------------------------------------

Table scan_table(const FamilyScan& scan, const ThresholdResult& res) {
  Table t;
  t.header = {"family", "variable", "fixed_weight", "fixed_mu", "n",       "lo",
              "hi",     "found",    "boundary",     "gmn_lo",   "gmn_hi", "evaluations",
              "status"};
  const bool ghz = is_ghz(scan.family);
  const std::string var =
      scan.variable == ScanVariable::mu ? "mu" : (ghz ? "alpha" : "beta");
  t.rows.push_back({std::string(family_name(scan.family)), var,
                    scan.variable == ScanVariable::mu ? format_number(scan.weight) : "",
                    scan.variable == ScanVariable::weight && scan.n ? format_number(scan.mu) : "",
                    scan.n ? format_number(*scan.n) : "initial", format_number(res.lo),
                    format_number(res.hi), res.found ? "true" : "false",
                    res.found ? format_number(res.boundary) : "", format_number(res.gmn_lo),
                    format_number(res.gmn_hi), std::to_string(res.evaluations),
                    res.trusted ? "optimal" : "untrusted"});
  return t;
}

}  // namespace sgad
