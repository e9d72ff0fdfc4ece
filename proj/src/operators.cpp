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

#include "pulsekit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "pulsekit/errors.hpp"

namespace pulsekit {

namespace {

const Complex kI(0.0, 1.0);

Matrix make_pauli(PauliAxis axis) {
    Matrix m(2, 2);
    switch (axis) {
    case PauliAxis::X:
        m << 0, 1, 1, 0;
        break;
    case PauliAxis::Y:
        m << 0, -kI, kI, 0;
        break;
    case PauliAxis::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

} // namespace

double hermiticity_error(const Matrix& m) {
    return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

const Matrix& pauli_matrix(PauliAxis axis) {
    static const Matrix x = make_pauli(PauliAxis::X);
    static const Matrix y = make_pauli(PauliAxis::Y);
    static const Matrix z = make_pauli(PauliAxis::Z);
    switch (axis) {
    case PauliAxis::X:
        return x;
    case PauliAxis::Y:
        return y;
    default:
        return z;
    }
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianOperator::HermitianOperator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square");
    }
    if (entries_.rows() < 2) {
        throw std::invalid_argument("HermitianOperator: dimension must be >= 2");
    }
    const double err = hermiticity_error(entries_);
    if (!(err <= kHermitianTol)) {
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian "
                                    "(max |A - A^dagger| = " +
                                    std::to_string(err) + ")");
    }
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw std::invalid_argument("StateVector: empty amplitude vector");
    }
    const double norm = amplitudes_.norm();
    if (!(std::abs(norm - 1.0) <= kStateNormTol)) {
        throw std::invalid_argument("StateVector: norm " + std::to_string(norm) +
                                    " is not 1");
    }
}

StateVector StateVector::trusted(Vector amplitudes) {
    return StateVector(std::move(amplitudes), Trusted{});
}

ModelSpec::ModelSpec(std::vector<HermitianOperator> encoders,
                     std::vector<HermitianOperator> controls,
                     HermitianOperator observable, StateVector initial_state)
    : encoders_(std::move(encoders)), controls_(std::move(controls)),
      observable_(std::move(observable)), initial_state_(std::move(initial_state)) {
    if (encoders_.empty()) {
        throw std::invalid_argument("ModelSpec: at least one encoding Hamiltonian required");
    }
    if (controls_.empty()) {
        throw std::invalid_argument("ModelSpec: at least one control Hamiltonian required");
    }
    const Eigen::Index d = observable_.dim();
    for (const auto& e : encoders_) {
        if (e.dim() != d) {
            throw std::invalid_argument("ModelSpec: encoder dimension mismatch");
        }
    }
    for (const auto& c : controls_) {
        if (c.dim() != d) {
            throw std::invalid_argument("ModelSpec: control dimension mismatch");
        }
    }
    if (initial_state_.dim() != d) {
        throw std::invalid_argument("ModelSpec: initial state dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(observable_.matrix(),
                                             Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (std::abs(lo + 1.0) > kSpectrumTol || std::abs(hi - 1.0) > kSpectrumTol) {
        throw std::invalid_argument(
            "ModelSpec: observable spectrum must span exactly [-1, 1]; got [" +
            std::to_string(lo) + ", " + std::to_string(hi) +
            "] (apply rescale_observable first)");
    }
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("commutator: dimension mismatch (" +
                                    std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    }
    return a * b - b * a;
}

HermitianOperator pauli_string(const std::vector<std::pair<int, PauliAxis>>& axes,
                               int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("pauli_string: n_qubits must be >= 1");
    }
    std::set<int> seen;
    for (const auto& [site, axis] : axes) {
        (void)axis;
        if (site < 1 || site > n_qubits) {
            throw std::invalid_argument("pauli_string: site " + std::to_string(site) +
                                        " out of range 1.." + std::to_string(n_qubits));
        }
        if (!seen.insert(site).second) {
            throw std::invalid_argument("pauli_string: duplicate site " +
                                        std::to_string(site));
        }
    }
    Matrix result = Matrix::Identity(1, 1);
    for (int site = 1; site <= n_qubits; ++site) {
        const auto it = std::find_if(axes.begin(), axes.end(),
                                     [site](const auto& a) { return a.first == site; });
        if (it == axes.end()) {
            result = kron(result, Matrix::Identity(2, 2));
        } else {
            result = kron(result, pauli_matrix(it->second));
        }
    }
    return HermitianOperator(std::move(result));
}

SpinOperators spin_irrep(int d) {
    if (d < 2) {
        throw std::invalid_argument("spin_irrep: dimension must be >= 2");
    }
    const double j = 0.5 * (d - 1);
    Matrix jz = Matrix::Zero(d, d);
    Matrix jplus = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        const double m = j - a; // basis ordered by decreasing magnetic number
        jz(a, a) = m;
        if (a > 0) {
            // <j, m+1 | J+ | j, m> with Condon-Shortley (real positive) phases
            jplus(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    const Matrix jminus = jplus.adjoint();
    Matrix jx = 0.5 * (jplus + jminus);
    Matrix jy = (jplus - jminus) / Complex(0.0, 2.0);
    return SpinOperators{HermitianOperator(std::move(jx)),
                         HermitianOperator(std::move(jy)),
                         HermitianOperator(std::move(jz))};
}

HermitianOperator rescale_observable(const HermitianOperator& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix(), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (hi - lo < 1e-12) {
        throw DegenerateObservableError(
            "rescale_observable: spectrum is a single point (" + std::to_string(lo) +
            "); observable proportional to identity cannot span [-1, 1]");
    }
    const Eigen::Index d = m.dim();
    Matrix rescaled = 2.0 / (hi - lo) * (m.matrix() - lo * Matrix::Identity(d, d)) -
                      Matrix::Identity(d, d);
    return HermitianOperator(std::move(rescaled));
}

HermitianOperator assemble_hamiltonian(const ModelSpec& model,
                                       const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& theta_row) {
    if (x.size() != model.input_dim()) {
        throw std::invalid_argument("assemble_hamiltonian: x has length " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(model.input_dim()));
    }
    if (theta_row.size() != model.control_count()) {
        throw std::invalid_argument("assemble_hamiltonian: theta row has length " +
                                    std::to_string(theta_row.size()) + ", expected " +
                                    std::to_string(model.control_count()));
    }
    if (!x.allFinite() || !theta_row.allFinite()) {
        throw std::invalid_argument("assemble_hamiltonian: non-finite coefficients");
    }
    Matrix h = Matrix::Zero(model.dim(), model.dim());
    for (int i = 0; i < model.input_dim(); ++i) {
        h += x[i] * model.encoders()[static_cast<std::size_t>(i)].matrix();
    }
    for (int jc = 0; jc < model.control_count(); ++jc) {
        h += theta_row[jc] * model.controls()[static_cast<std::size_t>(jc)].matrix();
    }
    return HermitianOperator(std::move(h));
}

} // namespace pulsekit
