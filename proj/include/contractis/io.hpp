// Copyright 2026 The Contractis Authors
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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "contractis/channels.hpp"
#include "contractis/dynamics.hpp"
#include "contractis/states.hpp"

namespace contractis::io {

using Json = nlohmann::ordered_json;

// Parses `source` as JSON when it starts with '{' or '[', otherwise reads it
// as a file path. `what` names the argument in error messages.
Json load_json(const std::string& source, const std::string& what);

// Matrices are row-major arrays of rows; an entry is a number or [re, im].
// On output entries are [re, im] at 12 significant digits, with parts below
// 1e-14 in magnitude written as 0.
ComplexMatrix matrix_from_json(const Json& j, const std::string& field);
Json matrix_to_json(const ComplexMatrix& m);
ComplexVector vector_from_json(const Json& j, const std::string& field);

// {"dim": d, "matrix": ...}, {"type": "pure", "vector": [...]} or
// {"type": "maximally_mixed", "dim": d}.
DensityOperator state_from_json(const Json& j, const std::string& field);
Json state_to_json(const DensityOperator& rho);

// {"dim": d, "kraus": [...], "kraus_right"?: [...]} or a typed spec:
// depolarizing, qubit_canonical, constant, unitary, identity, compose, mix, tensor.
// Validation flags are computed but a non-CP map is still returned.
QuantumChannel channel_from_json(const Json& j, const std::string& field);
Json channel_to_json(const QuantumChannel& channel);

// A matrix, {"u": matrix} or {"gate": name, "qubits": [...]}.
ComplexMatrix gate_from_json(const Json& j, std::size_t dim, const std::string& field);

struct ExperimentConfig {
    QuantumChannel channel;
    std::vector<ComplexMatrix> gates;
    std::vector<DensityOperator> initial;
    std::size_t steps;
};

// {"channel": spec, "gates"?: [gate...], "initial": state | [state, state], "steps"?: n}
ExperimentConfig experiment_from_json(const Json& j);

// Orthonormal code vectors as columns: [[c...], ...] or {"vectors": [[c...], ...]}.
ComplexMatrix code_basis_from_json(const Json& j, const std::string& field);

// Value rounded to 12 significant digits.
double round12(double x);
// %.12g in the C locale.
std::string format12(double x);

}  // namespace contractis::io
