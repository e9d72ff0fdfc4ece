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

#include "pulsekit/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pulsekit/errors.hpp"
#include "pulsekit/parallel.hpp"
#include "pulsekit/rng.hpp"

namespace pulsekit {

namespace {

StateVector two_qubit_state(InitialStateChoice choice) {
    Vector psi = Vector::Zero(4);
    switch (choice) {
    case InitialStateChoice::ZeroPlus: {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        psi[0] = inv_sqrt2;
        psi[1] = inv_sqrt2;
        break;
    }
    default:
        psi[0] = 1.0;
        break;
    }
    return StateVector(std::move(psi));
}

ModelSpec build_two_qubit(InitialStateChoice choice) {
    if (choice != InitialStateChoice::FamilyDefault &&
        choice != InitialStateChoice::ZeroZero &&
        choice != InitialStateChoice::ZeroPlus) {
        throw std::invalid_argument("build_family: unsupported initial state for the "
                                    "two-qubit family");
    }
    std::vector<HermitianOperator> encoders{
        pauli_string({{1, PauliAxis::Z}, {2, PauliAxis::Z}}, 2)};
    std::vector<HermitianOperator> controls{pauli_string({{1, PauliAxis::X}}, 2),
                                            pauli_string({{1, PauliAxis::Y}}, 2)};
    HermitianOperator observable =
        pauli_string({{1, PauliAxis::Z}, {2, PauliAxis::Z}}, 2);
    return ModelSpec(std::move(encoders), std::move(controls), std::move(observable),
                     two_qubit_state(choice));
}

ModelSpec build_spin_irrep(int d, InitialStateChoice choice) {
    if (choice != InitialStateChoice::FamilyDefault &&
        choice != InitialStateChoice::HighestWeight) {
        throw std::invalid_argument("build_family: unsupported initial state for the "
                                    "spin-irrep family");
    }
    SpinOperators spin = spin_irrep(d);
    Vector psi = Vector::Zero(d);
    psi[0] = 1.0; // highest-weight state m = +j
    std::vector<HermitianOperator> encoders{spin.jz};
    std::vector<HermitianOperator> controls{spin.jx, spin.jy};
    HermitianOperator observable = rescale_observable(spin.jz);
    return ModelSpec(std::move(encoders), std::move(controls), std::move(observable),
                     StateVector(std::move(psi)));
}

ModelSpec build_ring(int n, InitialStateChoice choice) {
    if (choice != InitialStateChoice::FamilyDefault &&
        choice != InitialStateChoice::AllZeros) {
        throw std::invalid_argument("build_family: unsupported initial state for the "
                                    "ring family");
    }
    const Eigen::Index d = Eigen::Index(1) << n;
    Matrix drift = Matrix::Zero(d, d);
    for (int k = 1; k <= n; ++k) {
        drift += pauli_string({{k, PauliAxis::Z}}, n).matrix();
    }
    std::vector<HermitianOperator> controls;
    controls.reserve(static_cast<std::size_t>(3 * n));
    for (int k = 1; k <= n; ++k) {
        controls.push_back(pauli_string({{k, PauliAxis::X}}, n));
        controls.push_back(pauli_string({{k, PauliAxis::Y}}, n));
    }
    for (int k = 1; k <= n; ++k) {
        const int partner = k % n + 1;
        controls.push_back(
            pauli_string({{k, PauliAxis::Z}, {partner, PauliAxis::Z}}, n));
    }
    Vector psi = Vector::Zero(d);
    psi[0] = 1.0;
    std::vector<HermitianOperator> encoders{HermitianOperator(std::move(drift))};
    return ModelSpec(std::move(encoders), std::move(controls),
                     pauli_string({{1, PauliAxis::Z}}, n),
                     StateVector(std::move(psi)));
}

std::string probe_label(const ProbeIndex& probe) {
    if (probe.all) {
        return "all";
    }
    return std::to_string(probe.step) + ":" + std::to_string(probe.channel);
}

} // namespace

std::string family_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::TwoQubitZZ:
        return "two_qubit_zz";
    case FamilyKind::SpinIrrep:
        return "spin_irrep";
    case FamilyKind::RingCoupled:
        return "ring";
    }
    return "unknown";
}

Eigen::Index family_dim(FamilyKind kind, int size) {
    switch (kind) {
    case FamilyKind::TwoQubitZZ:
        return 4;
    case FamilyKind::SpinIrrep:
        return size;
    case FamilyKind::RingCoupled:
        return Eigen::Index(1) << size;
    }
    return 0;
}

ModelSpec build_family(const ModelFamily& family) {
    switch (family.kind) {
    case FamilyKind::TwoQubitZZ:
        if (family.size != 2) {
            throw std::invalid_argument("build_family: the two-qubit family requires size 2");
        }
        return build_two_qubit(family.initial_state);
    case FamilyKind::SpinIrrep:
        if (family.size < 2) {
            throw std::invalid_argument("build_family: spin-irrep dimension must be >= 2");
        }
        return build_spin_irrep(family.size, family.initial_state);
    case FamilyKind::RingCoupled:
        if (family.size < 2) {
            throw std::invalid_argument("build_family: ring size must be >= 2");
        }
        return build_ring(family.size, family.initial_state);
    }
    throw std::invalid_argument("build_family: unknown family");
}

double sample_variance(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw std::invalid_argument("sample_variance: need at least 2 samples");
    }
    const double n = static_cast<double>(values.size());
    const double mean = tree_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dev = values[i] - mean;
        sq[i] = dev * dev;
    }
    return tree_sum(sq) / (n - 1.0);
}

const Dataset& default_probe_dataset() {
    static const Dataset probe = sample_target(TargetKind::Sigmoid10, 16);
    return probe;
}

VarianceRecord gradient_variance_for_model(const ModelSpec& model,
                                           const ModelFamily& family, int steps,
                                           double dt, int num_samples,
                                           std::uint64_t seed, const ProbeIndex& probe,
                                           const Dataset* probe_data, int threads) {
    if (num_samples < 2) {
        throw std::invalid_argument("gradient_variance: need at least 2 samples");
    }
    const Dataset& data = probe_data != nullptr ? *probe_data : default_probe_dataset();
    const int channels = model.control_count();
    if (!probe.all &&
        (probe.step < 1 || probe.step > steps || probe.channel < 1 ||
         probe.channel > channels)) {
        throw std::invalid_argument("gradient_variance: probe index out of range");
    }

    VarianceRecord record;
    record.kind = family.kind;
    record.size = family.size;
    record.steps = steps;
    record.dt = dt;
    record.num_samples = num_samples;
    record.seed = seed;
    record.param_index = probe_label(probe);

    if (probe.all) {
        std::vector<Eigen::MatrixXd> grads(static_cast<std::size_t>(num_samples));
        parallel_for(static_cast<std::size_t>(num_samples), threads, [&](std::size_t i) {
            const PulseSchedule schedule = init_schedule(
                steps, channels, dt, 1.0, SplitMix64::stream(seed, i));
            grads[i] = gradient(model, schedule, data, 1);
        });
        Eigen::MatrixXd table(steps, channels);
        std::vector<double> entries(static_cast<std::size_t>(num_samples));
        for (int k = 0; k < steps; ++k) {
            for (int j = 0; j < channels; ++j) {
                for (int i = 0; i < num_samples; ++i) {
                    entries[static_cast<std::size_t>(i)] =
                        grads[static_cast<std::size_t>(i)](k, j);
                }
                table(k, j) = sample_variance(entries);
            }
        }
        record.variance = table(0, 0);
        record.per_parameter_variances = std::move(table);
        return record;
    }

    std::vector<double> entries(static_cast<std::size_t>(num_samples));
    parallel_for(static_cast<std::size_t>(num_samples), threads, [&](std::size_t i) {
        const PulseSchedule schedule =
            init_schedule(steps, channels, dt, 1.0, SplitMix64::stream(seed, i));
        entries[i] = gradient_entry(model, schedule, data, probe.step - 1,
                                    probe.channel - 1, 1);
    });
    record.variance = sample_variance(entries);
    return record;
}

VarianceRecord gradient_variance(const ModelFamily& family, int steps, double dt,
                                 int num_samples, std::uint64_t seed,
                                 const ProbeIndex& probe, const Dataset* probe_data,
                                 int threads) {
    const ModelSpec model = build_family(family);
    return gradient_variance_for_model(model, family, steps, dt, num_samples, seed,
                                       probe, probe_data, threads);
}

std::vector<VarianceRecord> sweep_layers(const ModelFamily& family,
                                         const std::vector<int>& step_counts,
                                         double dt, int num_samples,
                                         std::uint64_t seed, const ProbeIndex& probe,
                                         int threads) {
    if (!std::is_sorted(step_counts.begin(), step_counts.end())) {
        throw std::invalid_argument("sweep_layers: step counts must be ascending");
    }
    const ModelSpec model = build_family(family);
    std::vector<VarianceRecord> records;
    records.reserve(step_counts.size());
    for (int steps : step_counts) {
        records.push_back(gradient_variance_for_model(model, family, steps, dt,
                                                      num_samples, seed, probe,
                                                      nullptr, threads));
    }
    return records;
}

std::vector<VarianceRecord> sweep_size(const ModelFamily& family,
                                       const std::vector<int>& sizes, int steps,
                                       double dt, int num_samples, std::uint64_t seed,
                                       const ProbeIndex& probe, int threads,
                                       int dim_budget) {
    if (!std::is_sorted(sizes.begin(), sizes.end())) {
        throw std::invalid_argument("sweep_size: sizes must be ascending");
    }
    for (int size : sizes) {
        const Eigen::Index dim = family_dim(family.kind, size);
        if (dim > dim_budget) {
            throw BudgetExceededError(
                "sweep_size: size " + std::to_string(size) + " needs dimension " +
                    std::to_string(dim) + " > budget " + std::to_string(dim_budget),
                static_cast<std::uint64_t>(dim));
        }
    }
    std::vector<VarianceRecord> records;
    records.reserve(sizes.size());
    for (int size : sizes) {
        ModelFamily sized = family;
        sized.size = size;
        records.push_back(gradient_variance(sized, steps, dt, num_samples, seed,
                                            probe, nullptr, threads));
    }
    return records;
}

} // namespace pulsekit
