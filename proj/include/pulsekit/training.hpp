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
#include <utility>
#include <vector>

#include "pulsekit/dynamics.hpp"
#include "pulsekit/operators.hpp"

namespace pulsekit {

/// Supervised samples (x, y) with x in [-1,1]^m and y inside the observable
/// spectrum bounds [-1, 1].
class Dataset {
  public:
    Dataset(std::vector<Eigen::VectorXd> xs, std::vector<double> ys);

    static Dataset from_points(const std::vector<std::pair<double, double>>& points);

    std::size_t size() const { return xs_.size(); }
    const std::vector<Eigen::VectorXd>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

  private:
    std::vector<Eigen::VectorXd> xs_;
    std::vector<double> ys_;
};

enum class TargetKind {
    Poly12,       // degree-12 polynomial benchmark; exceeds [-1,1] near x = 1
    Poly12Scaled, // the same polynomial divided by its max magnitude on [-1,1]
    Sigmoid10,    // (1 - e^{-10x}) / (1 + e^{-10x})
};

double target_value(TargetKind kind, double x);

/// n_points samples with x evenly spaced on [-1, 1] inclusive. Throws when a
/// target value falls outside the observable bounds [-1, 1].
Dataset sample_target(TargetKind kind, int n_points);

struct TrainConfig {
    double learning_rate = 0.1;
    int iterations = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    double init_scale = 1.0;
    std::uint64_t seed = 0;
    /// Stop once the recorded loss drops to this value (0 disables).
    double target_loss = 0.0;
};

struct TrainResult {
    PulseSchedule final_schedule;
    /// Loss before each update, plus the loss at the final parameters.
    std::vector<double> loss_history;
    /// Gradient norms aligned with loss_history.
    std::vector<double> grad_norm_history;
    double wall_time_seconds = 0.0;
};

/// Mean squared error of the model predictions over the dataset.
double loss(const ModelSpec& model, const PulseSchedule& schedule,
            const Dataset& data, int threads = 1);

/// Exact dL/dtheta_{k,j} via the chain rule through every step unitary; the
/// per-step derivative of exp(-iH dt) uses the divided-difference construction
/// in the eigenbasis of H.
Eigen::MatrixXd gradient(const ModelSpec& model, const PulseSchedule& schedule,
                         const Dataset& data, int threads = 1);

/// Single gradient entry (0-based step/channel); avoids the full per-step
/// derivative work when only one parameter is probed.
double gradient_entry(const ModelSpec& model, const PulseSchedule& schedule,
                      const Dataset& data, int step, int channel,
                      int threads = 1);

std::pair<double, Eigen::MatrixXd> loss_and_gradient(const ModelSpec& model,
                                                     const PulseSchedule& schedule,
                                                     const Dataset& data,
                                                     int threads = 1);

/// Adam with bias correction on a flat parameter vector.
class AdamOptimizer {
  public:
    AdamOptimizer(double learning_rate, double beta1, double beta2, double eps,
                  Eigen::Index size);

    void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
    int iterations_done() const { return t_; }

  private:
    double lr_, beta1_, beta2_, eps_;
    int t_ = 0;
    Eigen::VectorXd m_, v_;
};

/// Full-batch Adam on the flattened K x p schedule. Deterministic for fixed
/// inputs; aborts with NumericalError if the loss or gradient goes non-finite.
TrainResult train(const ModelSpec& model, const PulseSchedule& schedule_init,
                  const Dataset& data, const TrainConfig& config,
                  int threads = 1);

/// Amplitudes i.i.d. uniform on [-init_scale, init_scale] from the seeded
/// platform-independent generator, filled row by row.
PulseSchedule init_schedule(int steps, int channels, double dt,
                            double init_scale, std::uint64_t seed);

} // namespace pulsekit
