// Copyright 2026 The cartan-cost Authors
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
#include <string_view>

#include <json.hpp>

#include "cartan/cost.hpp"
#include "cartan/geodesic.hpp"
#include "cartan/metric.hpp"

namespace cartan {

using Json = nlohmann::ordered_json;

/// Two-space indented JSON with every float printed as %.17g (NaN and
/// infinities become null), newline terminated. Byte-deterministic.
std::string dump_json(const Json& j);

/// Parses text; malformed JSON raises ParseError.
Json parse_json(std::string_view text);

/// {"dim": N, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json real_matrix_to_json(const RealMatrix& m);

/// {"letters": coefficient} over the nonzero coefficients.
Json hamiltonian_to_json(const HamiltonianVector& h);
HamiltonianVector hamiltonian_from_json(const Json& j, int qubits);

/// {"name", "l": [...], "p": [...], "z": [...], "Q": matrix}. Q is
/// optional on input (identity when absent). Validated by make_split.
CartanSplit split_from_json(const Json& j);
Json split_to_json(const CartanSplit& split);

Json factors_to_json(const KakFactors& f);

Json cost_report_to_json(const CostReport& r);

Json gram_to_json(const CoordinateGram& g, const GramStructureReport& report);

Json sweep_to_json(const SweepResult& s);
std::string sweep_to_csv(const SweepResult& s);

}  // namespace cartan
