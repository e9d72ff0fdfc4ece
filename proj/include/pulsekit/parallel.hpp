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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pulsekit {

/// Run body(i) for i in [0, count). Each item must be independent and write
/// only to its own output slot; the scheduler gives no ordering guarantee.
/// threads <= 1 runs serially. Exceptions thrown by the body are rethrown on
/// the calling thread (first one wins).
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

/// Pairwise (tree) summation. The reduction order depends only on the number
/// of addends, which keeps results bit-identical across runs and thread
/// counts.
double tree_sum(std::span<const double> values);

/// Pairwise summation of equally sized matrices; empty input is invalid.
Eigen::MatrixXd tree_sum_matrices(const std::vector<Eigen::MatrixXd>& values);

} // namespace pulsekit
