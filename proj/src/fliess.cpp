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

#include "pulsekit/fliess.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulsekit/errors.hpp"
#include "pulsekit/lie_engine.hpp"

namespace pulsekit {

namespace {

// Channel value theta_j on sub-pulse `row`; channel 0 is the drift with
// control identically 1.
double channel_value(const PulseSchedule& schedule, int index, int row) {
    if (index == 0) {
        return 1.0;
    }
    return schedule.amplitudes()(row, index - 1);
}

void validate_indices(const IndexTuple& tuple, int channels) {
    for (int idx : tuple.indices) {
        if (idx < 0 || idx > channels) {
            throw std::invalid_argument("iterated_integral: channel index " +
                                        std::to_string(idx) + " outside 0.." +
                                        std::to_string(channels));
        }
    }
}

// One classical Runge-Kutta step of the chained system on a sub-pulse where
// all channel values are constant. y[0] is pinned to 1; y[l] integrates
// a[l-1] * y[l-1].
void rk4_step(std::vector<double>& y, const std::vector<double>& a, double h) {
    const std::size_t n = a.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n + 1);

    auto derivative = [&](const std::vector<double>& state, std::vector<double>& out) {
        for (std::size_t l = 0; l < n; ++l) {
            out[l] = a[l] * state[l];
        }
    };

    // k1
    derivative(y, k1);
    // k2
    tmp[0] = 1.0;
    for (std::size_t l = 1; l <= n; ++l) {
        tmp[l] = y[l] + 0.5 * h * k1[l - 1];
    }
    derivative(tmp, k2);
    // k3
    for (std::size_t l = 1; l <= n; ++l) {
        tmp[l] = y[l] + 0.5 * h * k2[l - 1];
    }
    derivative(tmp, k3);
    // k4
    for (std::size_t l = 1; l <= n; ++l) {
        tmp[l] = y[l] + h * k3[l - 1];
    }
    derivative(tmp, k4);

    for (std::size_t l = 1; l <= n; ++l) {
        y[l] += h / 6.0 * (k1[l - 1] + 2.0 * k2[l - 1] + 2.0 * k3[l - 1] + k4[l - 1]);
    }
}

struct SeriesAccumulator {
    std::vector<double> coefficients;  // indexed by zero count
    std::vector<double> tail;          // summed longest-length contributions
};

// Depth-first tuple sweep. `op` carries the nested commutators of the prefix
// applied to the observable (the leftmost tuple index acts first, matching
// the outer integral); the expectation pairs with the prefix's iterated
// integral and a sign of (-1)^length. See the series tests for the
// finite-difference cross-check pinning this convention.
void enumerate_tuples(const ModelSpec& model, const PulseSchedule& schedule,
                      int substeps, int max_len, int only_k,
                      std::vector<int>& prefix, const Matrix& op,
                      SeriesAccumulator& acc) {
    const Vector& psi = model.initial_state().amplitudes();
    const int n = static_cast<int>(prefix.size());
    int zeros = 0;
    for (int idx : prefix) {
        if (idx == 0) {
            ++zeros;
        }
    }

    if (only_k < 0 || zeros == only_k) {
        const Complex expectation = psi.dot(op * psi);
        if (std::abs(expectation.imag()) > 1e-9 * std::max(1.0, std::abs(expectation))) {
            throw NumericalError("taylor_coefficient: complex coefficient residue " +
                                 std::to_string(expectation.imag()));
        }
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double integral =
            iterated_integral(schedule, IndexTuple{prefix}, substeps);
        const double term = sign * integral * expectation.real();
        acc.coefficients[static_cast<std::size_t>(zeros)] += term;
        if (n == max_len) {
            acc.tail[static_cast<std::size_t>(zeros)] += term;
        }
    }

    if (n == max_len) {
        return;
    }
    for (int next = 0; next <= model.control_count(); ++next) {
        const int next_zeros = zeros + (next == 0 ? 1 : 0);
        if (only_k >= 0) {
            // Prune branches that can no longer reach exactly only_k zeros.
            if (next_zeros > only_k) {
                continue;
            }
            const int slack = max_len - n - 1;
            if (next_zeros + slack < only_k) {
                continue;
            }
        }
        const Matrix next_op =
            next == 0 ? liouvillian(model.encoders().front().matrix(), op)
                      : liouvillian(model.controls()[static_cast<std::size_t>(next - 1)].matrix(), op);
        prefix.push_back(next);
        enumerate_tuples(model, schedule, substeps, max_len, only_k, prefix, next_op, acc);
        prefix.pop_back();
    }
}

void check_univariate(const ModelSpec& model, const char* where) {
    if (!model.univariate()) {
        throw UnsupportedModelError(std::string(where) +
                                    ": univariate models only (m = 1), got m = " +
                                    std::to_string(model.input_dim()));
    }
}

} // namespace

int IndexTuple::zero_count() const {
    int zeros = 0;
    for (int idx : indices) {
        if (idx == 0) {
            ++zeros;
        }
    }
    return zeros;
}

double iterated_integral(const PulseSchedule& schedule, const IndexTuple& tuple,
                         int substeps) {
    validate_indices(tuple, schedule.channels());
    if (substeps < 4) {
        throw std::invalid_argument("iterated_integral: substeps must be >= 4");
    }
    const std::size_t n = tuple.length();
    if (n == 0) {
        return 1.0; // length-0 term of the series
    }
    // y[l] integrates channel j_{n-l+1}; a[l-1] holds its constant value on
    // the current sub-pulse.
    std::vector<double> y(n + 1, 0.0);
    y[0] = 1.0;
    std::vector<double> a(n);
    const double h = schedule.dt() / substeps;
    for (int row = 0; row < schedule.steps(); ++row) {
        for (std::size_t l = 1; l <= n; ++l) {
            a[l - 1] = channel_value(schedule, tuple.indices[n - l], row);
        }
        for (int s = 0; s < substeps; ++s) {
            rk4_step(y, a, h);
        }
    }
    return y[n];
}

std::uint64_t tuple_count(int p, int max_len) {
    std::uint64_t total = 0;
    std::uint64_t level = 1;
    for (int n = 0; n <= max_len; ++n) {
        total += level;
        if (level > (std::uint64_t(1) << 62) / static_cast<std::uint64_t>(p + 1)) {
            return ~std::uint64_t(0);
        }
        level *= static_cast<std::uint64_t>(p + 1);
    }
    return total;
}

std::uint64_t tuple_count_for_k(int p, int k, int max_len) {
    // sum over n in [k, max_len] of C(n, k) * p^(n-k)
    long double total = 0.0L;
    for (int n = k; n <= max_len; ++n) {
        long double binom = 1.0L;
        for (int i = 0; i < k; ++i) {
            binom = binom * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
        }
        total += binom * std::pow(static_cast<long double>(p),
                                  static_cast<long double>(n - k));
    }
    if (total > 9e18L) {
        return ~std::uint64_t(0);
    }
    return static_cast<std::uint64_t>(total);
}

SeriesTruncation taylor_series(const ModelSpec& model, const PulseSchedule& schedule,
                               int max_len, int substeps, std::uint64_t budget) {
    check_univariate(model, "taylor_series");
    if (max_len < 0) {
        throw std::invalid_argument("taylor_series: max_len must be >= 0");
    }
    const std::uint64_t required = tuple_count(model.control_count(), max_len);
    if (required > budget) {
        throw BudgetExceededError("taylor_series: " + std::to_string(required) +
                                      " tuple evaluations exceed the budget of " +
                                      std::to_string(budget),
                                  required);
    }
    SeriesAccumulator acc;
    acc.coefficients.assign(static_cast<std::size_t>(max_len) + 1, 0.0);
    acc.tail.assign(static_cast<std::size_t>(max_len) + 1, 0.0);
    std::vector<int> prefix;
    enumerate_tuples(model, schedule, substeps, max_len, /*only_k=*/-1, prefix,
                     model.observable().matrix(), acc);

    SeriesTruncation out;
    out.max_len = max_len;
    for (int k = 0; k <= max_len; ++k) {
        out.coefficients.push_back(CoefficientRow{
            k, acc.coefficients[static_cast<std::size_t>(k)],
            std::abs(acc.tail[static_cast<std::size_t>(k)])});
    }
    return out;
}

double taylor_coefficient(const ModelSpec& model, const PulseSchedule& schedule,
                          int k, int max_len, int substeps, std::uint64_t budget) {
    check_univariate(model, "taylor_coefficient");
    if (k < 0 || k > max_len) {
        throw std::invalid_argument("taylor_coefficient: k must be in 0..max_len");
    }
    const std::uint64_t required = tuple_count_for_k(model.control_count(), k, max_len);
    if (required > budget) {
        throw BudgetExceededError("taylor_coefficient: " + std::to_string(required) +
                                      " tuple evaluations exceed the budget of " +
                                      std::to_string(budget),
                                  required);
    }
    SeriesAccumulator acc;
    acc.coefficients.assign(static_cast<std::size_t>(max_len) + 1, 0.0);
    acc.tail.assign(static_cast<std::size_t>(max_len) + 1, 0.0);
    std::vector<int> prefix;
    enumerate_tuples(model, schedule, substeps, max_len, k, prefix,
                     model.observable().matrix(), acc);
    return acc.coefficients[static_cast<std::size_t>(k)];
}

double series_eval(const SeriesTruncation& truncation, double x) {
    double sum = 0.0;
    for (const CoefficientRow& row : truncation.coefficients) {
        sum += row.value * std::pow(x, row.k);
    }
    return sum;
}

double fd_taylor_coefficient(const ModelSpec& model, const PulseSchedule& schedule,
                             int k, double step) {
    check_univariate(model, "fd_taylor_coefficient");
    if (k < 0 || k > 3) {
        throw std::invalid_argument("fd_taylor_coefficient: k must be in 0..3");
    }
    auto f = [&](double x) { return predict(model, x, schedule); };
    const double h = step;
    switch (k) {
    case 0:
        return f(0.0);
    case 1:
        return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
    case 2:
        return (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h) - f(-2 * h)) /
               (12 * h * h) / 2.0;
    default:
        return (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h) / 6.0;
    }
}

} // namespace pulsekit
