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
#include "pulsekit/errors.hpp"
#include "pulsekit/lie_engine.hpp"

using namespace pulsekit;
using pulsekit::testing::max_abs;

TEST_CASE("build_family shapes") {
    const ModelSpec ring = build_family({FamilyKind::RingCoupled, 2});
    CHECK(ring.dim() == 4);
    CHECK(ring.control_count() == 6); // x/y per qubit plus ring couplings
    Matrix drift_expected =
        pauli_string({{1, PauliAxis::Z}}, 2).matrix() +
        pauli_string({{2, PauliAxis::Z}}, 2).matrix();
    CHECK(max_abs(ring.encoders().front().matrix() - drift_expected) < 1e-14);
    CHECK(max_abs(ring.observable().matrix() -
                  pauli_string({{1, PauliAxis::Z}}, 2).matrix()) < 1e-14);

    const ModelSpec ring3 = build_family({FamilyKind::RingCoupled, 3});
    CHECK(ring3.dim() == 8);
    CHECK(ring3.control_count() == 9);

    const ModelSpec spin2 = build_family({FamilyKind::SpinIrrep, 2});
    CHECK(max_abs(spin2.controls()[0].matrix() - 0.5 * pauli_matrix(PauliAxis::X)) <
          1e-14);
    CHECK(max_abs(spin2.controls()[1].matrix() - 0.5 * pauli_matrix(PauliAxis::Y)) <
          1e-14);
    // d = 2: the observable Jz/j is the full Pauli Z, the state |0>.
    CHECK(max_abs(spin2.observable().matrix() - pauli_matrix(PauliAxis::Z)) < 1e-12);

    const ModelSpec spin5 = build_family({FamilyKind::SpinIrrep, 5});
    CHECK(spin5.dim() == 5);
    const Complex top = spin5.initial_state().amplitudes()[0];
    CHECK(std::abs(top - Complex(1, 0)) < 1e-14);

    CHECK(family_dim(FamilyKind::RingCoupled, 5) == 32);
    CHECK(family_dim(FamilyKind::SpinIrrep, 9) == 9);
}

TEST_CASE("build_family validation") {
    CHECK_THROWS_AS(build_family({FamilyKind::TwoQubitZZ, 3}), std::invalid_argument);
    CHECK_THROWS_AS(build_family({FamilyKind::RingCoupled, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_family({FamilyKind::SpinIrrep, 1}), std::invalid_argument);
    CHECK_THROWS_AS(
        build_family({FamilyKind::RingCoupled, 2, InitialStateChoice::HighestWeight}),
        std::invalid_argument);
}

TEST_CASE("spin-irrep controllability contrast") {
    const Complex i(0, 1);
    const ModelSpec spin2 = build_family({FamilyKind::SpinIrrep, 2});
    std::vector<Matrix> gen2;
    for (const auto& h : spin2.controls()) {
        gen2.push_back(i * h.matrix());
    }
    const OperatorSubspace closure2 = lie_closure(gen2, 4);
    CHECK(closure2.dimension() == 3);
    CHECK(is_fully_controllable(closure2));

    const ModelSpec spin5 = build_family({FamilyKind::SpinIrrep, 5});
    std::vector<Matrix> gen5;
    for (const auto& h : spin5.controls()) {
        gen5.push_back(i * h.matrix());
    }
    const OperatorSubspace closure5 = lie_closure(gen5, 25);
    CHECK(closure5.dimension() == 3);
    CHECK_FALSE(is_fully_controllable(closure5));
}

TEST_CASE("zero-plus two-qubit model predicts an odd function") {
    const ModelSpec model =
        build_family({FamilyKind::TwoQubitZZ, 2, InitialStateChoice::ZeroPlus});
    for (int seed = 0; seed < 3; ++seed) {
        const PulseSchedule s = init_schedule(8, 2, 0.1, 1.0, 300 + seed);
        for (double x : {0.25, 0.6, 1.0}) {
            CHECK(std::abs(predict(model, x, s) + predict(model, -x, s)) < 1e-9);
        }
    }
}

TEST_CASE("sample_variance estimator") {
    CHECK(sample_variance({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(5.0 / 3.0));
    CHECK_THROWS_AS(sample_variance({1.0}), std::invalid_argument);

    SplitMix64 rng(8);
    std::vector<double> values;
    for (int i = 0; i < 33; ++i) {
        values.push_back(rng.uniform(-2.0, 2.0));
    }
    std::vector<double> reversed(values.rbegin(), values.rend());
    CHECK(sample_variance(values) ==
          doctest::Approx(sample_variance(reversed)).epsilon(1e-12));

    const double c = -3.7;
    std::vector<double> scaled = values;
    for (double& v : scaled) {
        v *= c;
    }
    CHECK(sample_variance(scaled) ==
          doctest::Approx(c * c * sample_variance(values)).epsilon(1e-12));
}

TEST_CASE("default probe dataset is the 16-point sigmoid grid") {
    const Dataset& probe = default_probe_dataset();
    CHECK(probe.size() == 16);
    CHECK(probe.xs().front()[0] == doctest::Approx(-1.0));
    CHECK(probe.xs().back()[0] == doctest::Approx(1.0));
    CHECK(probe.ys().front() ==
          doctest::Approx(target_value(TargetKind::Sigmoid10, -1.0)));
}

TEST_CASE("gradient_variance reproducibility and probes") {
    const ModelFamily family{FamilyKind::TwoQubitZZ, 2};
    const VarianceRecord a = gradient_variance(family, 5, 0.1, 8, 2024);
    const VarianceRecord b = gradient_variance(family, 5, 0.1, 8, 2024);
    CHECK(a.variance == b.variance); // bitwise
    CHECK(a.param_index == "1:1");
    CHECK(a.variance > 0.0);

    const VarianceRecord c = gradient_variance(family, 5, 0.1, 8, 2025);
    CHECK(c.variance != a.variance);

    ProbeIndex all;
    all.all = true;
    const VarianceRecord full = gradient_variance(family, 5, 0.1, 8, 2024, all);
    REQUIRE(full.per_parameter_variances.has_value());
    CHECK(full.per_parameter_variances->rows() == 5);
    CHECK(full.per_parameter_variances->cols() == 2);
    CHECK((*full.per_parameter_variances)(0, 0) == doctest::Approx(a.variance));

    ProbeIndex bad;
    bad.step = 6;
    CHECK_THROWS_AS(gradient_variance(family, 5, 0.1, 8, 2024, bad),
                    std::invalid_argument);
    CHECK_THROWS_AS(gradient_variance(family, 5, 0.1, 1, 2024),
                    std::invalid_argument);
}

TEST_CASE("identical model specs give identical variance records") {
    const ModelFamily family{FamilyKind::SpinIrrep, 2};
    const ModelSpec first = build_family(family);
    const ModelSpec second = build_family(family);
    const VarianceRecord a =
        gradient_variance_for_model(first, family, 6, 0.1, 8, 99);
    const VarianceRecord b =
        gradient_variance_for_model(second, family, 6, 0.1, 8, 99);
    CHECK(a.variance == b.variance);
}

TEST_CASE("sweeps reduce to single variance computations") {
    const ModelFamily family{FamilyKind::TwoQubitZZ, 2};
    const VarianceRecord single = gradient_variance(family, 6, 0.1, 8, 11);

    const auto layer_records = sweep_layers(family, {6}, 0.1, 8, 11);
    REQUIRE(layer_records.size() == 1);
    CHECK(layer_records.front().variance == single.variance);

    const auto size_records = sweep_size(family, {2}, 6, 0.1, 8, 11);
    REQUIRE(size_records.size() == 1);
    CHECK(size_records.front().variance == single.variance);

    CHECK_THROWS_AS(sweep_layers(family, {10, 5}, 0.1, 8, 11), std::invalid_argument);
}

TEST_CASE("sweep_size enforces the dimension budget") {
    const ModelFamily spin{FamilyKind::SpinIrrep, 2};
    try {
        sweep_size(spin, {2, 70}, 4, 0.1, 4, 1);
        FAIL("expected BudgetExceededError");
    } catch (const BudgetExceededError& err) {
        CHECK(err.required() == 70);
    }
    const ModelFamily ring{FamilyKind::RingCoupled, 2};
    CHECK_THROWS_AS(sweep_size(ring, {2, 7}, 4, 0.1, 4, 1), BudgetExceededError);
}

TEST_CASE("variance records carry the CSV fields") {
    const ModelFamily family{FamilyKind::SpinIrrep, 3};
    const VarianceRecord r = gradient_variance(family, 4, 0.25, 8, 7);
    CHECK(family_name(r.kind) == "spin_irrep");
    CHECK(r.size == 3);
    CHECK(r.steps == 4);
    CHECK(r.dt == doctest::Approx(0.25));
    CHECK(r.num_samples == 8);
    CHECK(r.seed == 7);
}
