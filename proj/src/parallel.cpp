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

#include "pulsekit/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pulsekit {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0) {
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(count, threads < 1 ? 1 : static_cast<std::size_t>(threads));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count); // drain remaining work
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

namespace {

double tree_sum_range(std::span<const double> values, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 0) {
        return 0.0;
    }
    if (n == 1) {
        return values[lo];
    }
    if (n == 2) {
        return values[lo] + values[lo + 1];
    }
    const std::size_t mid = lo + n / 2;
    return tree_sum_range(values, lo, mid) + tree_sum_range(values, mid, hi);
}

Eigen::MatrixXd tree_sum_matrix_range(const std::vector<Eigen::MatrixXd>& values,
                                      std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 1) {
        return values[lo];
    }
    if (n == 2) {
        return values[lo] + values[lo + 1];
    }
    const std::size_t mid = lo + n / 2;
    return tree_sum_matrix_range(values, lo, mid) + tree_sum_matrix_range(values, mid, hi);
}

} // namespace

double tree_sum(std::span<const double> values) {
    return tree_sum_range(values, 0, values.size());
}

Eigen::MatrixXd tree_sum_matrices(const std::vector<Eigen::MatrixXd>& values) {
    if (values.empty()) {
        throw std::invalid_argument("tree_sum_matrices: empty input");
    }
    return tree_sum_matrix_range(values, 0, values.size());
}

} // namespace pulsekit
