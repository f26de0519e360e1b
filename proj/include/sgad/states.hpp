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

#ifndef SGAD_STATES_HPP
#define SGAD_STATES_HPP

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "sgad/matcore.hpp"

namespace sgad {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

/// Hermitian, unit-trace, positive semidefinite matrix (within the tolerances
/// above). Only produced by validate() and the constructors in this header.
class DensityMatrix {
 public:
  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  friend DensityMatrix validate(const ComplexMatrix&);
  ComplexMatrix m_;
};

struct Violation {
  std::string invariant;  // "hermitian", "trace", "psd"
  double magnitude;       // size of the violation
};

struct ValidationReport {
  std::vector<Violation> violations;
  double min_eigenvalue = 0.0;
  bool ok() const noexcept { return violations.empty(); }
  std::string describe() const;
};

/// Checks every density-matrix invariant without throwing.
ValidationReport inspect(const ComplexMatrix& rho);

/// Returns a DensityMatrix or throws InvalidInput listing each violated
/// invariant with its magnitude. The stored matrix is symmetrized.
DensityMatrix validate(const ComplexMatrix& rho);

enum class Family { ghz1, ghz2, ghz3, ghz4, w, w_tilde };

std::string_view family_name(Family f);
/// Accepts "ghz1".."ghz4", "w", "wtilde" (case-insensitive).
Family parse_family(std::string_view name);
bool is_ghz(Family f);

/// Projector onto the named pure state.
DensityMatrix make_pure(Family f);

/// GHZ families: rho = alpha |GHZ><GHZ| + (1 - alpha) I/8.
/// W families:   rho = (1 - beta) |W><W| + beta I/8.
/// `weight` is alpha for GHZ families and beta for W families.
struct NoisyFamilySpec {
  Family family = Family::ghz1;
  double weight = 1.0;
};

DensityMatrix make_noisy(const NoisyFamilySpec& spec);

/// Convex combination lambda * a + (1 - lambda) * b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double lambda);

// --- state file format --------------------------------------------------------
//   {"dim": 8, "re": [[...]], "im": [[...]]}      explicit matrix ("im" optional)
//   {"family": "ghz1", "alpha": 0.95}             GHZ families
//   {"family": "w", "beta": 0.2}                  W families

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
DensityMatrix state_from_json(const nlohmann::json& j);
DensityMatrix load_state_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

}  // namespace sgad

#endif  // SGAD_STATES_HPP
