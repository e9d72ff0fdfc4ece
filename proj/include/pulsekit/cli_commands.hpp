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

#include <cstdint>
#include <optional>
#include <string>

namespace pulsekit {

// Stable exit-code contract for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitBudget = 5;

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed; // overrides the config seed
    int threads = 1;
    bool svg = false;
    bool json = false;
};

int run_check_lie(const CliOptions& options);
int run_check_expressivity(const CliOptions& options);
int run_fit(const CliOptions& options);
int run_fliess(const CliOptions& options);
int run_variance(const CliOptions& options);

} // namespace pulsekit
