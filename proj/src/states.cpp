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

#include "sgad/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sgad/error.hpp"

namespace sgad {

std::string ValidationReport::describe() const {
  if (violations.empty()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].invariant << " violated by " << violations[i].magnitude;
  }
  return os.str();
}

ValidationReport inspect(const ComplexMatrix& rho) {
  ValidationReport report;
  const double defect = rho.hermiticity_defect();
  if (!(defect <= kHermitianTol)) {
    report.violations.push_back({"hermitian", defect});
  }
  const double trace_err = std::abs(rho.trace() - Complex(1.0));
  if (!(trace_err <= kTraceTol)) report.violations.push_back({"trace", trace_err});
  // Eigenvalues of the Hermitian part still say something when the input is
  // only approximately Hermitian.
  const auto evs = hermitian_eigenvalues(rho.hermitian_part());
  report.min_eigenvalue = evs.front();
  if (!(evs.front() >= -kPsdTol)) report.violations.push_back({"psd", -evs.front()});
  return report;
}

DensityMatrix validate(const ComplexMatrix& rho) {
  const auto report = inspect(rho);
  if (!report.ok()) throw InvalidInput("invalid density matrix: " + report.describe());
  return DensityMatrix(rho.hermitian_part());
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::ghz1:
      return "ghz1";
    case Family::ghz2:
      return "ghz2";
    case Family::ghz3:
      return "ghz3";
    case Family::ghz4:
      return "ghz4";
    case Family::w:
      return "w";
    case Family::w_tilde:
      return "wtilde";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Family f : {Family::ghz1, Family::ghz2, Family::ghz3, Family::ghz4, Family::w,
                   Family::w_tilde}) {
    if (lower == family_name(f)) return f;
  }
  if (lower == "w_tilde") return Family::w_tilde;
  throw InvalidInput("unknown state family '" + std::string(name) +
                     "' (expected ghz1..ghz4, w, wtilde)");
}

bool is_ghz(Family f) { return f != Family::w && f != Family::w_tilde; }

namespace {

std::vector<std::size_t> support(Family f) {
  switch (f) {
    case Family::ghz1:
      return {0b000, 0b111};
    case Family::ghz2:
      return {0b001, 0b110};
    case Family::ghz3:
      return {0b010, 0b101};
    case Family::ghz4:
      return {0b011, 0b100};
    case Family::w:
      return {0b001, 0b010, 0b100};
    case Family::w_tilde:
      return {0b011, 0b101, 0b110};
  }
  return {};
}

}  // namespace

DensityMatrix make_pure(Family f) {
  const auto idx = support(f);
  std::vector<Complex> psi(8, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(idx.size()));
  for (auto i : idx) psi[i] = amp;
  return validate(ComplexMatrix::outer(psi));
}

DensityMatrix make_noisy(const NoisyFamilySpec& spec) {
  const double w = spec.weight;
  const char* name = is_ghz(spec.family) ? "alpha" : "beta";
  if (!(w >= 0.0 && w <= 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in [0, 1], got " + std::to_string(w));
  }
  const double pure_weight = is_ghz(spec.family) ? w : 1.0 - w;
  ComplexMatrix m = make_pure(spec.family).matrix() * pure_weight;
  m += ComplexMatrix::identity(8) * ((1.0 - pure_weight) / 8.0);
  return validate(m);
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidInput("mix: weight outside [0, 1]");
  return validate(a.matrix() * lambda + b.matrix() * (1.0 - lambda));
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

std::vector<double> read_part(const nlohmann::json& j, const char* field, std::size_t dim) {
  std::vector<double> out(dim * dim, 0.0);
  if (!j.contains(field)) return out;
  const auto& rows = j.at(field);
  if (!rows.is_array() || rows.size() != dim) {
    throw InvalidInput(std::string("state file: field '") + field + "' must be an array of " +
                       std::to_string(dim) + " rows");
  }
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != dim) {
      throw InvalidInput(std::string("state file: ") + field + "[" + std::to_string(r) +
                         "] must have " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!row[c].is_number()) {
        throw InvalidInput(std::string("state file: ") + field + "[" + std::to_string(r) + "][" +
                           std::to_string(c) + "] is not a number");
      }
      out[r * dim + c] = row[c].get<double>();
    }
  }
  return out;
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("state file: top level must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_unsigned() || j.at("dim").get<std::size_t>() == 0) {
    throw InvalidInput("state file: field 'dim' must be a positive integer");
  }
  if (!j.contains("re")) throw InvalidInput("state file: field 're' is required");
  const auto dim = j.at("dim").get<std::size_t>();
  const auto re = read_part(j, "re", dim);
  const auto im = read_part(j, "im", dim);
  std::vector<Complex> data(dim * dim);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re[i], im[i]};
  return ComplexMatrix(dim, std::move(data));
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("family")) {
    if (!j.at("family").is_string()) throw InvalidInput("state file: field 'family' must be a string");
    const Family f = parse_family(j.at("family").get<std::string>());
    const char* key = is_ghz(f) ? "alpha" : "beta";
    double weight = is_ghz(f) ? 1.0 : 0.0;
    if (j.contains(key)) {
      if (!j.at(key).is_number()) {
        throw InvalidInput(std::string("state file: field '") + key + "' must be a number");
      }
      weight = j.at(key).get<double>();
    }
    return make_noisy({f, weight});
  }
  return validate(matrix_from_json(j));
}

DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open state file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("state file '" + path + "': " + e.what());
  }
  return state_from_json(j);
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << matrix_to_json(m).dump(2) << '\n';
}

}  // namespace sgad
