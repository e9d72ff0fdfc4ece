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

// Brute-force commutator closure used as an independent oracle for the Lie
// engine: matrices are flattened into real vectors and rank decisions are
// made by Gaussian elimination with partial pivoting, a different path from
// the Gram-Schmidt machinery under test.

#include <deque>
#include <utility>
#include <vector>

#include "pulsekit/operators.hpp"

namespace pulsekit::testing {

class RowEchelonBasis {
  public:
    bool insert(Eigen::VectorXd v, double tol = 1e-9) {
        const double scale = v.cwiseAbs().maxCoeff();
        if (scale < 1e-13) {
            return false;
        }
        v /= scale;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            v -= v[pivots_[r]] * rows_[r];
        }
        Eigen::Index pivot = 0;
        const double remainder = v.cwiseAbs().maxCoeff(&pivot);
        if (remainder < tol) {
            return false;
        }
        rows_.push_back(v / v[pivot]);
        pivots_.push_back(pivot);
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    std::vector<Eigen::VectorXd> rows_;
    std::vector<Eigen::Index> pivots_;
};

inline Eigen::VectorXd realify(const Matrix& m) {
    const Eigen::Index d2 = m.size();
    Eigen::VectorXd v(2 * d2);
    const Matrix flat = m.reshaped(d2, 1);
    for (Eigen::Index i = 0; i < d2; ++i) {
        v[2 * i] = flat(i, 0).real();
        v[2 * i + 1] = flat(i, 0).imag();
    }
    return v;
}

/// Dimension of the real Lie algebra generated by the given matrices.
inline int oracle_closure_dimension(const std::vector<Matrix>& generators,
                                    int cap = 1 << 14) {
    RowEchelonBasis basis;
    std::vector<Matrix> elements;
    std::deque<std::pair<std::size_t, std::size_t>> pending;

    auto offer = [&](const Matrix& candidate) {
        if (basis.insert(realify(candidate))) {
            for (std::size_t i = 0; i < elements.size(); ++i) {
                pending.emplace_back(i, elements.size());
            }
            elements.push_back(candidate);
        }
    };

    for (const Matrix& g : generators) {
        offer(g);
    }
    while (!pending.empty() && basis.rank() < cap) {
        const auto [i, j] = pending.front();
        pending.pop_front();
        offer(elements[i] * elements[j] - elements[j] * elements[i]);
    }
    return basis.rank();
}

} // namespace pulsekit::testing
