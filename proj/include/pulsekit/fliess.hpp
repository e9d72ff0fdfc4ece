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
#include <vector>

#include "pulsekit/dynamics.hpp"
#include "pulsekit/operators.hpp"

namespace pulsekit {

inline constexpr int kDefaultSubsteps = 16;
inline constexpr int kDefaultMaxLen = 6;
inline constexpr std::uint64_t kDefaultTupleBudget = 2'000'000;

/// Channel-index tuple (j_1, ..., j_n); index 0 is the drift channel whose
/// control is identically 1, indices 1..p name the control channels.
struct IndexTuple {
    std::vector<int> indices;

    std::size_t length() const { return indices.size(); }
    int zero_count() const;
};

struct CoefficientRow {
    int k = 0;
    double value = 0.0;
    /// Magnitude of the longest-length contribution; a heuristic for the
    /// truncation tail.
    double tail_estimate = 0.0;
};

/// Truncated power series of the model output in the encoded datum.
struct SeriesTruncation {
    int max_len = 0;
    std::vector<CoefficientRow> coefficients; // k = 0 .. max_len
};

/// Nested integral of the tuple's channel controls over [0, T], with the
/// drift channel identically 1 and the control channels piecewise constant.
/// Evaluated by classical fixed-step 4th-order integration of the chained
/// system y_0 = 1, y_l' = theta_{j_{n-l+1}}(t) y_{l-1}, with `substeps` steps
/// per sub-pulse. The empty tuple integrates to 1.
double iterated_integral(const PulseSchedule& schedule, const IndexTuple& tuple,
                         int substeps = kDefaultSubsteps);

/// Coefficient of x^k in the output series of a univariate model: the sum
/// over channel tuples with exactly k drift indices of the tuple's iterated
/// integral times the nested-commutator expectation of the observable in the
/// initial state. Tuples up to length max_len contribute.
double taylor_coefficient(const ModelSpec& model, const PulseSchedule& schedule,
                          int k, int max_len, int substeps = kDefaultSubsteps,
                          std::uint64_t budget = kDefaultTupleBudget);

/// All coefficients k = 0..max_len in one tuple sweep.
SeriesTruncation taylor_series(const ModelSpec& model,
                               const PulseSchedule& schedule, int max_len,
                               int substeps = kDefaultSubsteps,
                               std::uint64_t budget = kDefaultTupleBudget);

/// sum_k C_k x^k over the computed coefficients.
double series_eval(const SeriesTruncation& truncation, double x);

/// Number of contributing tuples for a full series sweep / a single k.
std::uint64_t tuple_count(int p, int max_len);
std::uint64_t tuple_count_for_k(int p, int k, int max_len);

/// k-th Taylor coefficient of predict at x = 0 by central finite differences
/// (5-point stencil), divided by k!. Supported for k <= 3; this is the
/// independent cross-check route for the series coefficients.
double fd_taylor_coefficient(const ModelSpec& model,
                             const PulseSchedule& schedule, int k,
                             double step = 1e-2);

} // namespace pulsekit
