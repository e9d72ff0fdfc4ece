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

#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "pulsekit/diagnostics.hpp"
#include "pulsekit/dynamics.hpp"

using namespace pulsekit;
using pulsekit::testing::max_abs;

TEST_CASE("expm_step elementary values") {
    SplitMix64 rng(3);
    const HermitianOperator h = pulsekit::testing::random_hermitian(4, rng);
    CHECK(max_abs(expm_step(h, 0.0) - Matrix::Identity(4, 4)) < 1e-12);

    const Matrix uz = expm_step(HermitianOperator(pauli_matrix(PauliAxis::Z)),
                                M_PI / 2.0);
    Matrix expected(2, 2);
    expected << Complex(0, -1), 0, 0, Complex(0, 1);
    CHECK(max_abs(uz - expected) < 1e-12);

    const Matrix ux = expm_step(HermitianOperator(pauli_matrix(PauliAxis::X)), M_PI);
    CHECK(max_abs(ux + Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("expm_step is unitary for random Hamiltonians") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = trial % 2 == 0 ? 4 : 8;
        const Matrix u =
            expm_step(pulsekit::testing::random_hermitian(d, rng), rng.uniform(0.0, 3.0));
        CHECK(max_abs(u.adjoint() * u - Matrix::Identity(d, d)) < 1e-10);
    }
}

TEST_CASE("propagate identities on the two-qubit benchmark") {
    const ModelSpec model = build_family({FamilyKind::TwoQubitZZ, 2});
    Eigen::VectorXd x(1);
    x << 0.0;

    const PulseSchedule idle(Eigen::MatrixXd::Zero(1, 2), 0.1);
    const StateVector unchanged = propagate(model, x, idle);
    CHECK(max_abs(unchanged.amplitudes() - model.initial_state().amplitudes()) < 1e-12);

    // A full pi rotation around x on qubit 1 in a single sub-pulse:
    // exp(-i (pi/2) sigma_x) = -i sigma_x, so |00> goes to -i|10>.
    const double dt = 0.1;
    Eigen::MatrixXd amplitudes(1, 2);
    amplitudes << M_PI / (2.0 * dt), 0.0;
    const StateVector flipped = propagate(model, x, PulseSchedule(amplitudes, dt));
    Vector expected = Vector::Zero(4);
    expected[2] = Complex(0, -1);
    CHECK(max_abs(flipped.amplitudes() - expected) < 1e-12);
}

TEST_CASE("propagation preserves the norm over long schedules") {
    SplitMix64 rng(23);
    const ModelSpec model = pulsekit::testing::random_model(4, 2, rng);
    const PulseSchedule schedule = init_schedule(2000, 2, 0.05, 1.0, 7);
    Eigen::VectorXd x(1);
    x << 0.4;
    const StateVector out = propagate(model, x, schedule);
    CHECK(std::abs(out.amplitudes().norm() - 1.0) < 1e-9);

    for (int trial = 0; trial < 20; ++trial) {
        const PulseSchedule s = init_schedule(50, 2, 0.1, 1.0, 100 + trial);
        Eigen::VectorXd xt(1);
        xt << rng.uniform(-1.0, 1.0);
        CHECK(std::abs(propagate(model, xt, s).amplitudes().norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("propagation composes across schedule splits") {
    SplitMix64 rng(31);
    const ModelSpec model = pulsekit::testing::random_model(4, 2, rng);
    const PulseSchedule full = init_schedule(8, 2, 0.2, 1.0, 55);
    Eigen::VectorXd x(1);
    x << -0.3;

    const PulseSchedule head(full.amplitudes().topRows(3), full.dt());
    const PulseSchedule tail(full.amplitudes().bottomRows(5), full.dt());
    const Vector direct =
        propagate_vector(model, x, full, model.initial_state().amplitudes());
    const Vector split = propagate_vector(
        model, x, tail,
        propagate_vector(model, x, head, model.initial_state().amplitudes()));
    CHECK(max_abs(direct - split) < 1e-10);
}

TEST_CASE("predict basics and spectral bound") {
    const ModelSpec model = build_family({FamilyKind::TwoQubitZZ, 2});
    const PulseSchedule idle(Eigen::MatrixXd::Zero(5, 2), 0.1);
    // The drift commutes with the observable, so the expectation stays 1.
    for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        CHECK(predict(model, x, idle) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SplitMix64 rng(77);
    const ModelSpec random_model = pulsekit::testing::random_model(4, 2, rng);
    for (int trial = 0; trial < 1000; ++trial) {
        const PulseSchedule s = init_schedule(5, 2, 0.2, 1.5, 1000 + trial);
        const double value = predict(random_model, rng.uniform(-1.0, 1.0), s);
        CHECK(value >= -1.0 - 1e-9);
        CHECK(value <= 1.0 + 1e-9);
    }
}

TEST_CASE("predict oddness for the zero-plus initial state") {
    const ModelSpec model =
        build_family({FamilyKind::TwoQubitZZ, 2, InitialStateChoice::ZeroPlus});
    for (int trial = 0; trial < 5; ++trial) {
        const PulseSchedule s = init_schedule(10, 2, 0.1, 1.0, 42 + trial);
        for (double x : {0.2, 0.9}) {
            CHECK(std::abs(predict(model, x, s) + predict(model, -x, s)) < 1e-9);
        }
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const ModelSpec model = build_family({FamilyKind::TwoQubitZZ, 2});
    const PulseSchedule wrong_channels(Eigen::MatrixXd::Zero(2, 3), 0.1);
    Eigen::VectorXd x(1);
    x << 0.0;
    CHECK_THROWS_AS(propagate(model, x, wrong_channels), std::invalid_argument);

    CHECK_THROWS_AS(PulseSchedule(Eigen::MatrixXd::Zero(1, 1), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(PulseSchedule(Eigen::MatrixXd::Zero(0, 1), 0.1),
                    std::invalid_argument);
}
