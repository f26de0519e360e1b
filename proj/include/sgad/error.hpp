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

#ifndef SGAD_ERROR_HPP
#define SGAD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sgad {

/// Bad arguments: wrong dimensions, out-of-range parameters, malformed files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Kraus amplitude radicand went negative beyond the clamping tolerance.
class CpViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map produced output that breaks an invariant it is supposed to keep.
class InternalConsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The master-equation integrator drifted out of tolerance.
class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgad

#endif  // SGAD_ERROR_HPP
