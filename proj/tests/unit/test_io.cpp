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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cartan/errors.hpp"
#include "cartan/io.hpp"

using namespace cartan;

TEST(DumpJson, SeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["v"] = {1.0, 2.5};
  EXPECT_EQ(dump_json(j), "{\n  \"x\": 0.10000000000000001,\n  \"n\": 3,\n  \"v\": [1, 2.5]\n}\n");
}

TEST(DumpJson, NonFiniteBecomesNull) {
  Json j = Json::array({std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()});
  EXPECT_EQ(dump_json(j), "[null, null]\n");
}

TEST(DumpJson, NestedAndEmpty) {
  Json j;
  j["a"] = Json::object();
  j["b"] = Json::array();
  j["c"] = Json::array({Json::array({1, 2}), Json::array({3, 4})});
  EXPECT_EQ(dump_json(j), "{\n  \"a\": {},\n  \"b\": [],\n  \"c\": [\n    [1, 2],\n    [3, 4]\n  ]\n}\n");
}

TEST(DumpJson, RoundTripsExactly) {
  const Matrix u = haar_random_special_unitary(4, 3);
  const Matrix back = matrix_from_json(parse_json(dump_json(matrix_to_json(u))));
  EXPECT_EQ((u - back).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MatrixJson, ImaginaryPartOptional) {
  const Matrix m = matrix_from_json(parse_json(R"({"dim": 2, "re": [[0, 1], [1, 0]]})"));
  EXPECT_EQ(m(0, 1), cplx(1, 0));
}

TEST(MatrixJson, Errors) {
  EXPECT_THROW(parse_json("{"), ParseError);
  EXPECT_THROW(matrix_from_json(parse_json(R"({"re": [[1]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(parse_json(R"({"dim": 2, "re": [[1, 0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(parse_json(R"({"dim": 1, "re": [["a"]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(parse_json(R"({"dim": -1, "re": []})")), ParseError);
}

TEST(SplitJson, RoundTrip) {
  const CartanSplit s = builtin_split(2, SplitKind::two_local);
  const CartanSplit back = split_from_json(parse_json(dump_json(split_to_json(s))));
  EXPECT_EQ(back.l, s.l);
  EXPECT_EQ(back.p, s.p);
  EXPECT_EQ(back.z, s.z);
  EXPECT_EQ((back.adapted_basis - s.adapted_basis).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SplitJson, DefaultsAndErrors) {
  const CartanSplit s = split_from_json(parse_json(R"({"l": ["X"], "p": ["Y", "Z"], "z": ["Z"]})"));
  EXPECT_EQ(s.qubits, 1);
  EXPECT_EQ(s.name, "custom");
  EXPECT_THROW(split_from_json(parse_json(R"({"l": ["X"], "p": ["Y"]})")), ParseError);
  EXPECT_THROW(split_from_json(parse_json(R"({"l": [1], "p": [], "z": []})")), ParseError);
  EXPECT_THROW(split_from_json(parse_json(R"({"l": ["Q"], "p": [], "z": []})")), ParseError);
}

TEST(HamiltonianJson, RoundTrip) {
  HamiltonianVector h(2);
  h[PauliString::parse("XY")] = 0.25;
  h[PauliString::parse("ZI")] = -1.5;
  const Json j = hamiltonian_to_json(h);
  EXPECT_EQ(j.size(), 2u);
  EXPECT_EQ(hamiltonian_from_json(j, 2).coefficients(), h.coefficients());
  EXPECT_THROW(hamiltonian_from_json(parse_json(R"({"X": 1})"), 2), ParseError);
}

TEST(FactorsJson, Keys) {
  const CartanSplit s = builtin_split(2, SplitKind::two_local);
  const Json j = factors_to_json(kak_decompose(haar_random_special_unitary(4, 1), s));
  for (const char* k : {"split", "L", "Z", "M", "A", "D", "B", "phases"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["split"], "two_local");
}

TEST(CostJson, Convention) {
  const Json j = cost_report_to_json(optimal_cost(Matrix::Identity(2, 2), builtin_split(1, SplitKind::single_x)));
  EXPECT_EQ(j["convention"], "trace-norm-pauli");
  EXPECT_EQ(j["cost"], 0.0);
  EXPECT_TRUE(j["lattice_point"].is_array());
}

TEST(SweepCsv, Format) {
  SweepResult s;
  s.epsilon_values = {0.5};
  s.numeric_costs = {1.25};
  s.analytic_cost = 1.0;
  s.endpoint_residuals = {0.0};
  s.upper_bounds = {2.0};
  s.converged = {true};
  s.sandwich_ok = {true};
  EXPECT_EQ(sweep_to_csv(s),
            "epsilon,numeric_cost,endpoint_residual,upper_bound,relative_error,analytic_cost\n0.5,1.25,0,2,0.25,1\n");
  const Json j = sweep_to_json(s);
  EXPECT_EQ(j["rows"][0]["relative_error"], 0.25);
}
