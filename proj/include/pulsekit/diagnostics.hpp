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
#include <vector>

#include "pulsekit/operators.hpp"
#include "pulsekit/training.hpp"

namespace pulsekit {

inline constexpr int kDefaultDimBudget = 64;

/// The three benchmark families:
///  - TwoQubitZZ: ZZ drift with x/y controls on the first qubit only.
///  - SpinIrrep: Jz encoder with Jx/Jy controls in the d-dimensional su(2)
///    irrep; expressive yet uncontrollable beyond the 3-dimensional algebra.
///  - RingCoupled: circularly coupled n-qubit system with per-qubit x/y
///    controls and ring ZZ couplings; fully controllable.
enum class FamilyKind { TwoQubitZZ, SpinIrrep, RingCoupled };

enum class InitialStateChoice {
    FamilyDefault,
    ZeroZero,      // |00>        (TwoQubitZZ)
    ZeroPlus,      // |0>|+>      (TwoQubitZZ)
    HighestWeight, // m = +j      (SpinIrrep)
    AllZeros,      // |0...0>     (RingCoupled)
};

struct ModelFamily {
    FamilyKind kind = FamilyKind::TwoQubitZZ;
    /// Qubit count for TwoQubitZZ/RingCoupled, irrep dimension d for SpinIrrep.
    int size = 2;
    InitialStateChoice initial_state = InitialStateChoice::FamilyDefault;
};

std::string family_name(FamilyKind kind);
Eigen::Index family_dim(FamilyKind kind, int size);

ModelSpec build_family(const ModelFamily& family);

/// Which gradient entry a variance run probes; 1-based like the schedule
/// table. Default is the first parameter (first sub-pulse, first control).
struct ProbeIndex {
    int step = 1;
    int channel = 1;
    bool all = false;
};

struct VarianceRecord {
    FamilyKind kind = FamilyKind::TwoQubitZZ;
    int size = 0;
    int steps = 0;
    double dt = 0.0;
    int num_samples = 0;
    std::uint64_t seed = 0;
    std::string param_index;
    /// Unbiased sample variance of dL/dtheta at the probed parameter.
    double variance = 0.0;
    std::optional<Eigen::MatrixXd> per_parameter_variances;
};

/// Unbiased (n-1) sample variance with pairwise summation.
double sample_variance(const std::vector<double>& values);

/// 16 evenly spaced points of the steep sigmoid target; the fixed cost
/// function every variance sweep shares.
const Dataset& default_probe_dataset();

/// Draws num_samples schedules (uniform [-1,1] amplitudes, per-sample child
/// seeds) and returns the sample variance of the probed gradient entry of the
/// MSE on the probe dataset.
VarianceRecord gradient_variance(const ModelFamily& family, int steps, double dt,
                                 int num_samples, std::uint64_t seed,
                                 const ProbeIndex& probe = {},
                                 const Dataset* probe_data = nullptr,
                                 int threads = 1);

/// Same computation for an explicit model (family fields taken from `family`).
VarianceRecord gradient_variance_for_model(const ModelSpec& model,
                                           const ModelFamily& family, int steps,
                                           double dt, int num_samples,
                                           std::uint64_t seed,
                                           const ProbeIndex& probe = {},
                                           const Dataset* probe_data = nullptr,
                                           int threads = 1);

/// One record per sub-pulse count, ascending.
std::vector<VarianceRecord> sweep_layers(const ModelFamily& family,
                                         const std::vector<int>& step_counts,
                                         double dt, int num_samples,
                                         std::uint64_t seed,
                                         const ProbeIndex& probe = {},
                                         int threads = 1);

/// One record per family size, ascending; sizes whose Hilbert dimension
/// exceeds dim_budget raise BudgetExceededError.
std::vector<VarianceRecord> sweep_size(const ModelFamily& family,
                                       const std::vector<int>& sizes, int steps,
                                       double dt, int num_samples,
                                       std::uint64_t seed,
                                       const ProbeIndex& probe = {},
                                       int threads = 1,
                                       int dim_budget = kDefaultDimBudget);

} // namespace pulsekit
