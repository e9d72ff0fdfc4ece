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

#include <vector>

#include "pulsekit/operators.hpp"

namespace pulsekit {

/// Piecewise-constant control schedule: row k holds the p control amplitudes
/// of sub-pulse k, each active for a sampling period dt. Total duration is
/// steps() * dt.
class PulseSchedule {
  public:
    PulseSchedule(Eigen::MatrixXd amplitudes, double dt);

    int steps() const { return static_cast<int>(amplitudes_.rows()); }
    int channels() const { return static_cast<int>(amplitudes_.cols()); }
    double dt() const { return dt_; }
    double duration() const { return steps() * dt_; }
    const Eigen::MatrixXd& amplitudes() const { return amplitudes_; }
    Eigen::MatrixXd& amplitudes() { return amplitudes_; }

  private:
    Eigen::MatrixXd amplitudes_;
    double dt_;
};

/// exp(-i h t) through the eigendecomposition of h; exactly unitary up to
/// the eigensolver's accuracy.
Matrix expm_step(const HermitianOperator& h, double t);

/// Eigendecomposition of one step Hamiltonian, kept for gradient replay.
struct StepEigen {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

struct PropagationTrace {
    std::vector<Vector> states;   // psi_0 .. psi_K
    std::vector<StepEigen> steps; // one per sub-pulse
    double dt = 0.0;
};

/// |psi(T)> = U_K ... U_1 |psi_0> with U_k = exp(-i H(x, theta_k) dt).
StateVector propagate(const ModelSpec& model, const Eigen::VectorXd& x,
                      const PulseSchedule& schedule);

/// Same propagation from an arbitrary start vector.
Vector propagate_vector(const ModelSpec& model, const Eigen::VectorXd& x,
                        const PulseSchedule& schedule, Vector psi);

/// Propagation that records per-step states and eigendecompositions.
PropagationTrace propagate_traced(const ModelSpec& model,
                                  const Eigen::VectorXd& x,
                                  const PulseSchedule& schedule);

/// Model output <psi(T)| M |psi(T)>. The imaginary residue is checked
/// against 1e-8 and discarded.
double predict(const ModelSpec& model, const Eigen::VectorXd& x,
               const PulseSchedule& schedule);

/// Univariate convenience overload.
double predict(const ModelSpec& model, double x, const PulseSchedule& schedule);

} // namespace pulsekit
