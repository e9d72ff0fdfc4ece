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

#include <cmath>
#include <vector>

#include "pulsekit/dynamics.hpp"
#include "pulsekit/operators.hpp"
#include "pulsekit/rng.hpp"
#include "pulsekit/training.hpp"

namespace pulsekit::testing {

inline Matrix random_complex(Eigen::Index d, SplitMix64& rng) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    return m;
}

inline HermitianOperator random_hermitian(Eigen::Index d, SplitMix64& rng) {
    const Matrix m = random_complex(d, rng);
    return HermitianOperator(0.5 * (m + m.adjoint().eval()));
}

inline StateVector random_state(Eigen::Index d, SplitMix64& rng) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    return StateVector(v / v.norm());
}

/// Random univariate model with a spectrum-normalized observable.
inline ModelSpec random_model(Eigen::Index d, int controls, SplitMix64& rng) {
    std::vector<HermitianOperator> encoders{random_hermitian(d, rng)};
    std::vector<HermitianOperator> ctr;
    for (int j = 0; j < controls; ++j) {
        ctr.push_back(random_hermitian(d, rng));
    }
    HermitianOperator observable = rescale_observable(random_hermitian(d, rng));
    return ModelSpec(std::move(encoders), std::move(ctr), std::move(observable),
                     random_state(d, rng));
}

inline Dataset random_dataset(int samples, int input_dim, SplitMix64& rng) {
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> ys;
    for (int i = 0; i < samples; ++i) {
        Eigen::VectorXd x(input_dim);
        for (int k = 0; k < input_dim; ++k) {
            x[k] = rng.uniform(-1.0, 1.0);
        }
        xs.push_back(x);
        ys.push_back(rng.uniform(-1.0, 1.0));
    }
    return Dataset(std::move(xs), std::move(ys));
}

/// Central finite differences of the MSE with respect to every schedule entry.
inline Eigen::MatrixXd fd_loss_gradient(const ModelSpec& model,
                                        const PulseSchedule& schedule,
                                        const Dataset& data, double step = 1e-5) {
    Eigen::MatrixXd grad(schedule.steps(), schedule.channels());
    for (int k = 0; k < schedule.steps(); ++k) {
        for (int j = 0; j < schedule.channels(); ++j) {
            PulseSchedule plus = schedule;
            PulseSchedule minus = schedule;
            plus.amplitudes()(k, j) += step;
            minus.amplitudes()(k, j) -= step;
            grad(k, j) =
                (loss(model, plus, data) - loss(model, minus, data)) / (2.0 * step);
        }
    }
    return grad;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace pulsekit::testing
