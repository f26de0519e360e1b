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

#include "sgad/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>

#include "sgad/error.hpp"

namespace sgad::sdp {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::optimal:
      return "optimal";
    case Status::max_iterations:
      return "max-iterations";
    case Status::numerical_failure:
      return "numerical-failure";
  }
  return "?";
}

void Problem::check() const {
  if (block_dims.empty()) throw InvalidInput("sdp: problem has no blocks");
  for (int d : block_dims)
    if (d <= 0) throw InvalidInput("sdp: block dimensions must be positive");
  auto check_entry = [&](const Entry& e, const char* where) {
    if (e.block < 0 || e.block >= static_cast<int>(block_dims.size())) {
      throw InvalidInput(std::string("sdp: ") + where + " entry references a missing block");
    }
    const int n = block_dims[e.block];
    if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n) {
      throw InvalidInput(std::string("sdp: ") + where + " entry index outside its block");
    }
    if (e.row == e.col && std::abs(e.value.imag()) > kHermitianTol) {
      throw InvalidInput(std::string("sdp: ") + where + " diagonal entry is not real");
    }
  };
  for (const auto& e : objective) check_entry(e, "objective");
  for (const auto& c : constraints)
    for (const auto& e : c.entries) check_entry(e, "constraint");
}

bool Problem::is_real() const {
  auto real = [](const Entry& e) { return e.value.imag() == 0.0; };
  if (!std::all_of(objective.begin(), objective.end(), real)) return false;
  for (const auto& c : constraints)
    if (!std::all_of(c.entries.begin(), c.entries.end(), real)) return false;
  return true;
}

void write_sdpa(std::ostream& os, const Problem& problem) {
  os << problem.constraints.size() << " = number of constraints\n";
  os << problem.block_dims.size() << " = number of blocks\n";
  for (std::size_t b = 0; b < problem.block_dims.size(); ++b)
    os << (b ? " " : "") << problem.block_dims[b];
  os << '\n';
  for (std::size_t i = 0; i < problem.constraints.size(); ++i)
    os << (i ? " " : "") << problem.constraints[i].rhs;
  os << '\n';
  auto line = [&](std::size_t idx, const Entry& e) {
    int r = e.row, c = e.col;
    Complex v = e.value;
    if (r > c) {
      std::swap(r, c);
      v = std::conj(v);
    }
    os << idx << ' ' << e.block + 1 << ' ' << r + 1 << ' ' << c + 1 << ' ' << v.real() << ' '
       << v.imag() << '\n';
  };
  for (const auto& e : problem.objective) line(0, e);
  for (std::size_t i = 0; i < problem.constraints.size(); ++i)
    for (const auto& e : problem.constraints[i].entries) line(i + 1, e);
}

namespace {

// ---- small dense real matrices ----------------------------------------------------

struct Mat {
  int n = 0;
  std::vector<double> a;
  Mat() = default;
  explicit Mat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}
  double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
};

Mat mul(const Mat& x, const Mat& y) {
  const int n = x.n;
  Mat out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      const double* yr = &y.a[static_cast<std::size_t>(k) * n];
      double* orow = &out.a[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < n; ++j) orow[j] += xik * yr[j];
    }
  return out;
}

void axpy(Mat& y, double s, const Mat& x) {
  for (std::size_t i = 0; i < y.a.size(); ++i) y.a[i] += s * x.a[i];
}

void symmetrize(Mat& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
}

double dot(const Mat& x, const Mat& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
  return s;
}

// Lower Cholesky factor; nullopt if not positive definite.
std::optional<Mat> cholesky(const Mat& m) {
  const int n = m.n;
  Mat l(n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

// L^{-1} as a dense lower-triangular matrix.
Mat lower_inverse(const Mat& l) {
  const int n = l.n;
  Mat inv(n);
  for (int j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

// (L L^T)^{-1} = L^{-T} L^{-1}.
Mat inverse_from_cholesky(const Mat& l) {
  const Mat li = lower_inverse(l);
  const int n = l.n;
  Mat out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = std::max(i, j); k < n; ++k) s += li(k, i) * li(k, j);
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi.
double min_eigenvalue(Mat a) {
  const int n = a.n;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) lo = std::min(lo, a(i, i));
  return lo;
}

// Largest alpha with X + alpha dX >= 0 (infinity if unbounded).
double max_step(const Mat& chol_x, const Mat& dx) {
  const Mat li = lower_inverse(chol_x);
  Mat lit(li.n);
  for (int i = 0; i < li.n; ++i)
    for (int j = 0; j < li.n; ++j) lit(i, j) = li(j, i);
  Mat w = mul(mul(li, dx), lit);
  symmetrize(w);
  const double lo = min_eigenvalue(w);
  return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

// ---- real-form problem --------------------------------------------------------------

struct Triplet {
  int r, c;
  double v;
};

struct RealProblem {
  std::vector<int> dims;
  std::vector<std::vector<Triplet>> cost;  // per block, both triangles
  // constraints[i][b] = entries of A_i in block b (both triangles)
  std::vector<std::vector<std::pair<int, std::vector<Triplet>>>> rows;
  std::vector<double> rhs;
  bool embedded = false;
};

// Appends the full (both-triangle) real form of one Hermitian entry.
void expand(const Entry& e, int dim, bool embedded, std::vector<Triplet>& out) {
  int r = e.row, c = e.col;
  Complex v = e.value;
  if (r > c) {
    std::swap(r, c);
    v = std::conj(v);
  }
  const double a = v.real();
  const double b = v.imag();
  if (!embedded) {
    if (a == 0.0) return;
    out.push_back({r, c, a});
    if (r != c) out.push_back({c, r, a});
    return;
  }
  const int n = dim;
  if (r == c) {
    if (a == 0.0) return;
    out.push_back({r, r, 0.5 * a});
    out.push_back({n + r, n + r, 0.5 * a});
    return;
  }
  if (a != 0.0) {
    out.push_back({r, c, 0.5 * a});
    out.push_back({c, r, 0.5 * a});
    out.push_back({n + r, n + c, 0.5 * a});
    out.push_back({n + c, n + r, 0.5 * a});
  }
  if (b != 0.0) {
    out.push_back({r, n + c, -0.5 * b});
    out.push_back({n + c, r, -0.5 * b});
    out.push_back({c, n + r, 0.5 * b});
    out.push_back({n + r, c, 0.5 * b});
  }
}

// Sums duplicate positions so each (r, c) appears once.
std::vector<Triplet> merge(std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& x, const Triplet& y) {
    return x.r != y.r ? x.r < y.r : x.c < y.c;
  });
  std::vector<Triplet> out;
  for (const auto& e : t) {
    if (!out.empty() && out.back().r == e.r && out.back().c == e.c) {
      out.back().v += e.v;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const Triplet& e) { return e.v == 0.0; });
  return out;
}

RealProblem to_real(const Problem& p, bool embedded) {
  RealProblem rp;
  rp.embedded = embedded;
  for (int d : p.block_dims) rp.dims.push_back(embedded ? 2 * d : d);
  const std::size_t nb = p.block_dims.size();
  std::vector<std::vector<Triplet>> cost(nb);
  for (const auto& e : p.objective) expand(e, p.block_dims[e.block], embedded, cost[e.block]);
  for (auto& c : cost) c = merge(std::move(c));
  rp.cost = std::move(cost);
  for (const auto& con : p.constraints) {
    std::vector<std::vector<Triplet>> per(nb);
    for (const auto& e : con.entries) expand(e, p.block_dims[e.block], embedded, per[e.block]);
    std::vector<std::pair<int, std::vector<Triplet>>> row;
    for (std::size_t b = 0; b < nb; ++b) {
      auto merged = merge(std::move(per[b]));
      if (!merged.empty()) row.emplace_back(static_cast<int>(b), std::move(merged));
    }
    rp.rows.push_back(std::move(row));
    rp.rhs.push_back(con.rhs);
  }
  return rp;
}

double sparse_dot(const std::vector<std::pair<int, std::vector<Triplet>>>& x,
                  const std::vector<std::pair<int, std::vector<Triplet>>>& y) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      ++i;
    } else if (x[i].first > y[j].first) {
      ++j;
    } else {
      const auto& a = x[i].second;
      const auto& b = y[j].second;
      std::size_t u = 0, v = 0;
      while (u < a.size() && v < b.size()) {
        if (a[u].r != b[v].r ? a[u].r < b[v].r : a[u].c < b[v].c) {
          ++u;
        } else if (a[u].r == b[v].r && a[u].c == b[v].c) {
          s += a[u].v * b[v].v;
          ++u;
          ++v;
        } else {
          ++v;
        }
      }
      ++i;
      ++j;
    }
  }
  return s;
}

// Indices of a maximal linearly independent subset of the rows, in order
// (Gram-Schmidt carried out on the Gram matrix).
std::vector<int> independent_rows(const RealProblem& rp, double tol) {
  const int m = static_cast<int>(rp.rows.size());
  std::vector<std::vector<double>> gram(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) gram[i][j] = gram[j][i] = sparse_dot(rp.rows[i], rp.rows[j]);
  std::vector<int> kept;
  std::vector<std::vector<double>> l;  // l[k][i]: factor column of kept row k
  for (int i = 0; i < m; ++i) {
    std::vector<double> coef(kept.size());
    double d = gram[i][i];
    for (std::size_t k = 0; k < kept.size(); ++k) {
      double s = gram[i][kept[k]];
      for (std::size_t t = 0; t < k; ++t) s -= coef[t] * l[t][kept[k]];
      coef[k] = s / l[k][kept[k]];
      d -= coef[k] * coef[k];
    }
    if (gram[i][i] == 0.0 || d <= tol * gram[i][i]) continue;
    // Column for row i: entries for every later row j via the same recurrence.
    std::vector<double> col(m, 0.0);
    const double lii = std::sqrt(d);
    col[i] = lii;
    for (int j = i + 1; j < m; ++j) {
      double s = gram[j][i];
      for (std::size_t k = 0; k < kept.size(); ++k) s -= l[k][j] * coef[k];
      col[j] = s / lii;
    }
    kept.push_back(i);
    l.push_back(std::move(col));
  }
  return kept;
}

// ---- interior-point iteration ---------------------------------------------------------

using Blocks = std::vector<Mat>;

struct Workspace {
  const RealProblem* p;
  std::vector<int> active;  // independent constraint indices
  // by_block[b] = (local constraint index, entries in block b)
  std::vector<std::vector<std::pair<int, const std::vector<Triplet>*>>> by_block;
  double total_dim = 0.0;
};

Blocks zeros(const RealProblem& p) {
  Blocks out;
  for (int d : p.dims) out.emplace_back(d);
  return out;
}

Blocks cost_blocks(const RealProblem& p) {
  Blocks out = zeros(p);
  for (std::size_t b = 0; b < p.dims.size(); ++b)
    for (const auto& t : p.cost[b]) out[b](t.r, t.c) += t.v;
  return out;
}

// tr(A_i M) for every active constraint (M need not be symmetric).
std::vector<double> apply_a(const Workspace& w, const Blocks& m) {
  std::vector<double> out(w.active.size(), 0.0);
  for (std::size_t b = 0; b < w.by_block.size(); ++b)
    for (const auto& [i, entries] : w.by_block[b])
      for (const auto& t : *entries) out[i] += t.v * m[b](t.c, t.r);
  return out;
}

Blocks apply_at(const Workspace& w, const std::vector<double>& y) {
  Blocks out = zeros(*w.p);
  for (std::size_t b = 0; b < w.by_block.size(); ++b)
    for (const auto& [i, entries] : w.by_block[b])
      for (const auto& t : *entries) out[b](t.r, t.c) += y[i] * t.v;
  return out;
}

double blocks_dot(const Blocks& x, const Blocks& y) {
  double s = 0.0;
  for (std::size_t b = 0; b < x.size(); ++b) s += dot(x[b], y[b]);
  return s;
}

double blocks_norm(const Blocks& x) { return std::sqrt(blocks_dot(x, x)); }

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Schur complement M_ij = sum_b tr(A_i X A_j Z) (HKM direction).
std::vector<double> schur(const Workspace& w, const Blocks& x, const Blocks& z) {
  const std::size_t m = w.active.size();
  std::vector<double> out(m * m, 0.0);
  for (std::size_t b = 0; b < w.by_block.size(); ++b) {
    const auto& list = w.by_block[b];
    const Mat& xb = x[b];
    const Mat& zb = z[b];
    for (std::size_t u = 0; u < list.size(); ++u) {
      const auto& ai = *list[u].second;
      const int i = list[u].first;
      for (std::size_t v = u; v < list.size(); ++v) {
        const auto& aj = *list[v].second;
        const int j = list[v].first;
        double s = 0.0;
        for (const auto& p : ai)
          for (const auto& q : aj) s += p.v * q.v * xb(p.c, q.r) * zb(q.c, p.r);
        out[i * m + j] += s;
        if (i != j) out[j * m + i] += s;
      }
    }
  }
  return out;
}

// In-place dense Cholesky of an m x m row-major matrix (lower part used).
bool dense_cholesky(std::vector<double>& a, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j];
    const double* rj = &a[j * m];
    for (std::size_t k = 0; k < j; ++k) d -= rj[k] * rj[k];
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a[j * m + j] = ljj;
    for (std::size_t i = j + 1; i < m; ++i) {
      double* ri = &a[i * m];
      double s = ri[j];
      for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
      ri[j] = s / ljj;
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t m, std::vector<double> r) {
  for (std::size_t i = 0; i < m; ++i) {
    double s = r[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * m + k] * r[k];
    r[i] = s / l[i * m + i];
  }
  for (std::size_t ii = m; ii-- > 0;) {
    double s = r[ii];
    for (std::size_t k = ii + 1; k < m; ++k) s -= l[k * m + ii] * r[k];
    r[ii] = s / l[ii * m + ii];
  }
  return r;
}

struct Direction {
  Blocks dx, ds;
  std::vector<double> dy;
};

// Solves for the HKM direction with complementarity target
// X S + dX S + X dS = sigma_mu I - corr (corr optional).
Direction direction(const Workspace& w, const Blocks& x, const Blocks& z, const Blocks& rd,
                    const std::vector<double>& rp, const std::vector<double>& chol_m,
                    double sigma_mu, const Blocks* corr) {
  const std::size_t nb = x.size();
  // T = (sigma_mu I - X S - corr - X Rd) Z = sigma_mu Z - X - (corr + X Rd) Z
  Blocks t(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    Mat inner = mul(x[b], rd[b]);
    if (corr) axpy(inner, 1.0, (*corr)[b]);
    Mat tb = mul(inner, z[b]);
    for (std::size_t k = 0; k < tb.a.size(); ++k)
      tb.a[k] = sigma_mu * z[b].a[k] - x[b].a[k] - tb.a[k];
    t[b] = std::move(tb);
  }
  const auto at = apply_a(w, t);
  std::vector<double> r(rp.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rp[i] - at[i];
  const std::size_t m = r.size();
  Direction d;
  d.dy = cholesky_solve(chol_m, m, std::move(r));
  const Blocks aty = apply_at(w, d.dy);
  d.ds.resize(nb);
  d.dx.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    Mat ds = rd[b];
    axpy(ds, -1.0, aty[b]);
    Mat dx = t[b];
    axpy(dx, 1.0, mul(mul(x[b], aty[b]), z[b]));
    symmetrize(dx);
    d.ds[b] = std::move(ds);
    d.dx[b] = std::move(dx);
  }
  return d;
}

double step_to_boundary(const std::vector<Mat>& chol, const Blocks& d) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < d.size(); ++b) a = std::min(a, max_step(chol[b], d[b]));
  return a;
}

ComplexMatrix to_complex(const Mat& m, bool embedded, double scale) {
  if (!embedded) {
    ComplexMatrix out(m.n);
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) out(i, j) = scale * m(i, j);
    return out;
  }
  const int n = m.n / 2;
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = 0.5 * (m(i, j) + m(n + i, n + j));
      const double im = 0.5 * (m(n + i, j) - m(i, n + j));
      out(i, j) = scale * Complex(re, im);
    }
  return out;
}

}  // namespace

Solution solve(const Problem& problem, const Options& opts) {
  problem.check();
  const bool embedded = opts.force_complex || !problem.is_real();
  const RealProblem rp = to_real(problem, embedded);

  Workspace w;
  w.p = &rp;
  w.active = independent_rows(rp, 1e-9);
  w.by_block.resize(rp.dims.size());
  for (std::size_t k = 0; k < w.active.size(); ++k)
    for (const auto& [b, entries] : rp.rows[w.active[k]])
      w.by_block[b].emplace_back(static_cast<int>(k), &entries);
  for (int d : rp.dims) w.total_dim += d;

  Solution sol;
  sol.dropped_constraints = static_cast<int>(rp.rows.size() - w.active.size());
  const std::size_t m = w.active.size();
  std::vector<double> b(m);
  for (std::size_t k = 0; k < m; ++k) b[k] = rp.rhs[w.active[k]];
  const Blocks c = cost_blocks(rp);
  const double b_norm = vec_norm(b);
  const double c_norm = blocks_norm(c);

  Blocks x, s;
  for (int d : rp.dims) {
    x.push_back(Mat::identity(d));
    s.push_back(Mat::identity(d));
  }
  std::vector<double> y(m, 0.0);

  auto objectives = [&](double& pobj, double& dobj) {
    pobj = blocks_dot(c, x);
    dobj = 0.0;
    for (std::size_t k = 0; k < m; ++k) dobj += b[k] * y[k];
  };

  Status status = Status::max_iterations;
  int iter = 0;
  std::vector<double> rp_vec(m);
  Blocks rd;
  for (;; ++iter) {
    const auto ax = apply_a(w, x);
    for (std::size_t k = 0; k < m; ++k) rp_vec[k] = b[k] - ax[k];
    rd = c;
    const Blocks aty = apply_at(w, y);
    for (std::size_t bl = 0; bl < rd.size(); ++bl) {
      axpy(rd[bl], -1.0, s[bl]);
      axpy(rd[bl], -1.0, aty[bl]);
    }
    double pobj = 0.0, dobj = 0.0;
    objectives(pobj, dobj);
    const double pinf = vec_norm(rp_vec) / (1.0 + b_norm);
    const double dinf = blocks_norm(rd) / (1.0 + c_norm);
    const double mu = blocks_dot(x, s) / w.total_dim;
    sol.history.push_back({pobj, dobj, pinf, dinf, mu});
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;

    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    if (pinf <= opts.tol && dinf <= opts.tol && rel_gap <= opts.tol) {
      status = Status::optimal;
      break;
    }
    if (iter >= opts.max_iter) {
      status = Status::max_iterations;
      break;
    }

    std::vector<Mat> chol_x, chol_s;
    Blocks z;
    bool ok = true;
    for (std::size_t bl = 0; bl < x.size() && ok; ++bl) {
      auto lx = cholesky(x[bl]);
      auto ls = cholesky(s[bl]);
      if (!lx || !ls) {
        ok = false;
        break;
      }
      z.push_back(inverse_from_cholesky(*ls));
      chol_x.push_back(std::move(*lx));
      chol_s.push_back(std::move(*ls));
    }
    if (!ok) {
      status = Status::numerical_failure;
      break;
    }

    auto mmat = schur(w, x, z);
    if (!dense_cholesky(mmat, m)) {
      // One retry with a tiny diagonal shift before giving up.
      mmat = schur(w, x, z);
      double dmax = 0.0;
      for (std::size_t k = 0; k < m; ++k) dmax = std::max(dmax, mmat[k * m + k]);
      for (std::size_t k = 0; k < m; ++k) mmat[k * m + k] += 1e-13 * dmax;
      if (!dense_cholesky(mmat, m)) {
        status = Status::numerical_failure;
        break;
      }
    }

    // Predictor.
    const Direction aff = direction(w, x, z, rd, rp_vec, mmat, 0.0, nullptr);
    const double ap = std::min(1.0, opts.step_fraction * step_to_boundary(chol_x, aff.dx));
    const double ad = std::min(1.0, opts.step_fraction * step_to_boundary(chol_s, aff.ds));
    double mu_aff = 0.0;
    for (std::size_t bl = 0; bl < x.size(); ++bl) {
      Mat xa = x[bl];
      axpy(xa, ap, aff.dx[bl]);
      Mat sa = s[bl];
      axpy(sa, ad, aff.ds[bl]);
      mu_aff += dot(xa, sa);
    }
    mu_aff /= w.total_dim;
    const double ratio = mu > 0.0 ? std::clamp(mu_aff / mu, 0.0, 1.0) : 0.0;
    const double sigma = ratio * ratio * ratio;

    // Corrector.
    Blocks corr(x.size());
    for (std::size_t bl = 0; bl < x.size(); ++bl) corr[bl] = mul(aff.dx[bl], aff.ds[bl]);
    const Direction dir = direction(w, x, z, rd, rp_vec, mmat, sigma * mu, &corr);
    const double sp = std::min(1.0, opts.step_fraction * step_to_boundary(chol_x, dir.dx));
    const double sd = std::min(1.0, opts.step_fraction * step_to_boundary(chol_s, dir.ds));
    if (sp < 1e-12 && sd < 1e-12) {
      status = Status::numerical_failure;
      break;
    }
    for (std::size_t bl = 0; bl < x.size(); ++bl) {
      axpy(x[bl], sp, dir.dx[bl]);
      axpy(s[bl], sd, dir.ds[bl]);
      symmetrize(x[bl]);
      symmetrize(s[bl]);
    }
    for (std::size_t k = 0; k < m; ++k) y[k] += sd * dir.dy[k];
  }

  sol.status = status;
  sol.iterations = iter;
  sol.gap = sol.primal_objective - sol.dual_objective;
  for (std::size_t bl = 0; bl < x.size(); ++bl) {
    sol.primal.push_back(to_complex(x[bl], embedded, 1.0));
    sol.slack.push_back(to_complex(s[bl], embedded, embedded ? 2.0 : 1.0));
  }
  sol.dual.assign(rp.rows.size(), 0.0);
  for (std::size_t k = 0; k < m; ++k) sol.dual[w.active[k]] = y[k];
  return sol;
}

}  // namespace sgad::sdp
