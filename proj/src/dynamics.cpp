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

#include "pulsekit/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pulsekit/errors.hpp"

namespace pulsekit {

namespace {

const Complex kI(0.0, 1.0);

Vector phase_factors(const Eigen::VectorXd& eigenvalues, double t) {
    Vector phases(eigenvalues.size());
    for (Eigen::Index a = 0; a < eigenvalues.size(); ++a) {
        phases[a] = std::exp(-kI * eigenvalues[a] * t);
    }
    return phases;
}

StepEigen decompose(const ModelSpec& model, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& theta_row) {
    const HermitianOperator h = assemble_hamiltonian(model, x, theta_row);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    return StepEigen{es.eigenvalues(), es.eigenvectors()};
}

Vector apply_step(const StepEigen& step, double dt, const Vector& psi) {
    return step.eigenvectors *
           (phase_factors(step.eigenvalues, dt).cwiseProduct(step.eigenvectors.adjoint() * psi));
}

} // namespace

PulseSchedule::PulseSchedule(Eigen::MatrixXd amplitudes, double dt)
    : amplitudes_(std::move(amplitudes)), dt_(dt) {
    if (amplitudes_.rows() < 1 || amplitudes_.cols() < 1) {
        throw std::invalid_argument("PulseSchedule: amplitude grid must be at least 1x1");
    }
    if (!amplitudes_.allFinite()) {
        throw std::invalid_argument("PulseSchedule: non-finite amplitude");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw std::invalid_argument("PulseSchedule: dt must be positive and finite");
    }
}

Matrix expm_step(const HermitianOperator& h, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("expm_step: non-finite time");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    return es.eigenvectors() *
           phase_factors(es.eigenvalues(), t).asDiagonal() *
           es.eigenvectors().adjoint();
}

Vector propagate_vector(const ModelSpec& model, const Eigen::VectorXd& x,
                        const PulseSchedule& schedule, Vector psi) {
    if (schedule.channels() != model.control_count()) {
        throw std::invalid_argument("propagate: schedule has " +
                                    std::to_string(schedule.channels()) +
                                    " channels, model expects " +
                                    std::to_string(model.control_count()));
    }
    if (psi.size() != model.dim()) {
        throw std::invalid_argument("propagate: state dimension mismatch");
    }
    for (int k = 0; k < schedule.steps(); ++k) {
        const StepEigen step = decompose(model, x, schedule.amplitudes().row(k).transpose());
        psi = apply_step(step, schedule.dt(), psi);
    }
    return psi;
}

StateVector propagate(const ModelSpec& model, const Eigen::VectorXd& x,
                      const PulseSchedule& schedule) {
    Vector psi = propagate_vector(model, x, schedule,
                                  model.initial_state().amplitudes());
    return StateVector::trusted(std::move(psi));
}

PropagationTrace propagate_traced(const ModelSpec& model, const Eigen::VectorXd& x,
                                  const PulseSchedule& schedule) {
    if (schedule.channels() != model.control_count()) {
        throw std::invalid_argument("propagate: schedule channel count mismatch");
    }
    PropagationTrace trace;
    trace.dt = schedule.dt();
    trace.states.reserve(static_cast<std::size_t>(schedule.steps()) + 1);
    trace.steps.reserve(static_cast<std::size_t>(schedule.steps()));
    trace.states.push_back(model.initial_state().amplitudes());
    for (int k = 0; k < schedule.steps(); ++k) {
        trace.steps.push_back(
            decompose(model, x, schedule.amplitudes().row(k).transpose()));
        trace.states.push_back(apply_step(trace.steps.back(), schedule.dt(),
                                          trace.states.back()));
    }
    return trace;
}

double predict(const ModelSpec& model, const Eigen::VectorXd& x,
               const PulseSchedule& schedule) {
    const Vector psi = propagate_vector(model, x, schedule,
                                        model.initial_state().amplitudes());
    const Complex value = psi.dot(model.observable().matrix() * psi);
    if (std::abs(value.imag()) >= 1e-8) {
        throw NumericalError("predict: expectation has imaginary residue " +
                             std::to_string(value.imag()));
    }
    return value.real();
}

double predict(const ModelSpec& model, double x, const PulseSchedule& schedule) {
    Eigen::VectorXd xv(1);
    xv[0] = x;
    return predict(model, xv, schedule);
}

} // namespace pulsekit
