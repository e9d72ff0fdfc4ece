// Copyright 2026 The pulsekit Authors.
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

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "pulsekit/diagnostics.hpp"
#include "pulsekit/operators.hpp"

namespace pulsekit {

/// Config-file error; the message names the offending key.
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A model read from a config file, either a named family ("two_qubit_zz",
/// "spin_irrep", "ring") with a size, or an explicit operator list.
struct ResolvedModel {
    ModelSpec spec;
    std::optional<ModelFamily> family;
    std::string description;
};

ResolvedModel resolve_model(const nlohmann::json& model_json);

/// Parse an operator expression: a sum of real-scaled products of Pauli
/// factors "X(site)", "Y", "Z", "I" on 1-based sites (site 1 is the leftmost
/// tensor factor), or angular-momentum factors "Jx(d)", "Jy(d)", "Jz(d)".
/// Examples: "Z(1)*Z(2)", "X(1) + 0.5*Y(2)", "Jz(5)".
Matrix parse_operator_expr(const std::string& text, int n_qubits);

/// Parse an initial state: a ket string over {0,1,+,-} such as "|0+>",
/// the keyword "highest_weight" (spin models), or an explicit [re, im]
/// amplitude array.
StateVector parse_state(const nlohmann::json& state_json, Eigen::Index dim);

} // namespace pulsekit
