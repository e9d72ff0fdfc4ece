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

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pulsekit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kSpectrumTol = 1e-9;

enum class PauliAxis { X, Y, Z };

/// Max elementwise |A - A^dagger|; zero for an exactly Hermitian matrix.
double hermiticity_error(const Matrix& m);

/// The 2x2 Pauli matrix for the given axis.
const Matrix& pauli_matrix(PauliAxis axis);

/// Kronecker product, left factor on the slower (most significant) index.
Matrix kron(const Matrix& a, const Matrix& b);

/// Dense Hermitian matrix of dimension >= 2, validated at construction.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& matrix() const { return entries_; }

  private:
    Matrix entries_;
};

/// Unit-norm complex state vector.
class StateVector {
  public:
    explicit StateVector(Vector amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }

    /// Wrap a vector whose norm is guaranteed by construction (unitary
    /// propagation of an already validated state); skips the norm check.
    static StateVector trusted(Vector amplitudes);

  private:
    struct Trusted {};
    StateVector(Vector amplitudes, Trusted) : amplitudes_(std::move(amplitudes)) {}

    Vector amplitudes_;
};

/// Full definition of one pulse-based model: data-encoding Hamiltonians D_i,
/// control Hamiltonians H_j, a measured observable with spectrum spanning
/// exactly [-1, 1], and the initial state.
class ModelSpec {
  public:
    ModelSpec(std::vector<HermitianOperator> encoders,
              std::vector<HermitianOperator> controls,
              HermitianOperator observable, StateVector initial_state);

    Eigen::Index dim() const { return observable_.dim(); }
    int input_dim() const { return static_cast<int>(encoders_.size()); }
    int control_count() const { return static_cast<int>(controls_.size()); }
    bool univariate() const { return encoders_.size() == 1; }

    const std::vector<HermitianOperator>& encoders() const { return encoders_; }
    const std::vector<HermitianOperator>& controls() const { return controls_; }
    const HermitianOperator& observable() const { return observable_; }
    const StateVector& initial_state() const { return initial_state_; }

  private:
    std::vector<HermitianOperator> encoders_;
    std::vector<HermitianOperator> controls_;
    HermitianOperator observable_;
    StateVector initial_state_;
};

/// ab - ba for equally sized square matrices.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Tensor product of single-site Paulis with identity on unlisted sites.
/// Sites are 1-based and site 1 is the leftmost Kronecker factor.
HermitianOperator pauli_string(const std::vector<std::pair<int, PauliAxis>>& axes,
                               int n_qubits);

struct SpinOperators {
    HermitianOperator jx;
    HermitianOperator jy;
    HermitianOperator jz;
};

/// Standard angular-momentum matrices of the d-dimensional su(2) irreducible
/// representation (spin j = (d-1)/2, Condon-Shortley phases).
SpinOperators spin_irrep(int d);

/// Affine rescale so the spectrum spans exactly [-1, 1]; eigenvectors are
/// untouched. Throws DegenerateObservableError when the input is proportional
/// to the identity.
HermitianOperator rescale_observable(const HermitianOperator& m);

/// H(x, theta) = sum_i x_i D_i + sum_j theta_j H_j.
HermitianOperator assemble_hamiltonian(const ModelSpec& model,
                                       const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& theta_row);

} // namespace pulsekit
