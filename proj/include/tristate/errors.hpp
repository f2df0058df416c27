// Copyright 2026 The tristate-qkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tristate {

/// Argument outside the mathematical domain of an operation (e.g. h(x) with x > 1).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A matrix that should be a density operator is not (negative eigenvalue, bad trace).
struct NonPhysicalState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The eigensolver did not converge.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Attack vectors violate the isometry constraints or the symmetric-noise assumption.
struct InvalidAttack : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Observed statistics fail a Cauchy-Schwarz screen: no state could have produced them.
struct UnphysicalStatistics : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Each screen passes individually but no collective attack reproduces all observations
/// jointly (the feasible re<e1|e2> set is empty).
struct InconsistentStatistics : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A named scenario produced a probability outside [0, 1] for the requested (Q, alpha).
struct ScenarioInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A JSON document does not match the expected schema; the message names the field.
struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace tristate
