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

#include "pulsekit/lie_engine.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "pulsekit/errors.hpp"

namespace pulsekit {

namespace {

const Complex kI(0.0, 1.0);

double skewness_error(const Matrix& m) {
    return (m + m.adjoint().eval()).cwiseAbs().maxCoeff();
}

} // namespace

Complex hs_inner(const Matrix& a, const Matrix& b) {
    return a.conjugate().cwiseProduct(b).sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

Matrix liouvillian(const Matrix& h, const Matrix& x) {
    return -kI * (h * x - x * h);
}

Matrix OperatorSubspace::sweep(Matrix v) const {
    for (const Matrix& b : basis_) {
        Complex coef = hs_inner(b, v);
        if (field_ == SpanField::Real) {
            coef = Complex(coef.real(), 0.0);
        }
        v -= coef * b;
    }
    return v;
}

Matrix OperatorSubspace::project(const Matrix& x) const {
    Matrix p = Matrix::Zero(x.rows(), x.cols());
    for (const Matrix& b : basis_) {
        Complex coef = hs_inner(b, x);
        if (field_ == SpanField::Real) {
            coef = Complex(coef.real(), 0.0);
        }
        p += coef * b;
    }
    return p;
}

double OperatorSubspace::residual(const Matrix& x) const {
    return hs_norm(x - project(x));
}

double OperatorSubspace::admission_residual(const Matrix& candidate) const {
    const double norm = hs_norm(candidate);
    if (norm < 1e-14) {
        return 0.0;
    }
    // Two Gram-Schmidt sweeps; the second repairs cancellation in the first.
    return hs_norm(sweep(sweep(candidate / norm)));
}

bool OperatorSubspace::try_add(const Matrix& candidate, double tol) {
    const double norm = hs_norm(candidate);
    if (norm < 1e-14) {
        return false;
    }
    Matrix v = sweep(sweep(candidate / norm));
    const double r = hs_norm(v);
    if (r <= tol) {
        return false;
    }
    basis_.push_back(v / r);
    return true;
}

Matrix OperatorSubspace::gram() const {
    const int n = dimension();
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = hs_inner(basis_[static_cast<std::size_t>(i)],
                               basis_[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

OperatorSubspace lie_closure(const std::vector<Matrix>& generators, int max_dim,
                             double tol) {
    if (generators.empty()) {
        throw std::invalid_argument("lie_closure: no generators");
    }
    const Eigen::Index d = generators.front().rows();
    if (max_dim < 1 || max_dim > d * d) {
        throw std::invalid_argument("lie_closure: max_dim must be in 1..d^2");
    }
    for (const Matrix& g : generators) {
        if (g.rows() != d || g.cols() != d) {
            throw std::invalid_argument("lie_closure: generator dimension mismatch");
        }
        const double skew = skewness_error(g);
        if (skew > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
            throw std::invalid_argument(
                "lie_closure: generator is not skew-Hermitian (max |A + A^dagger| = " +
                std::to_string(skew) + ")");
        }
    }

    OperatorSubspace algebra(d, SpanField::Real);
    // (i, j) index pairs still awaiting a commutator; when element n joins the
    // basis, all pairs (i, n) for i < n are enqueued. The queue draining with
    // no growth is exactly a full sweep that added nothing.
    std::deque<std::pair<int, int>> pending;
    auto enqueue_with_all = [&pending](int n) {
        for (int i = 0; i < n; ++i) {
            pending.emplace_back(i, n);
        }
    };

    for (const Matrix& g : generators) {
        if (algebra.dimension() >= max_dim) {
            if (algebra.admission_residual(g) > tol) {
                algebra.mark_truncated();
            }
            continue;
        }
        if (algebra.try_add(g, tol)) {
            enqueue_with_all(algebra.dimension() - 1);
        }
    }

    while (!pending.empty() && !algebra.truncated()) {
        const auto [i, j] = pending.front();
        pending.pop_front();
        const Matrix c = commutator(algebra.basis()[static_cast<std::size_t>(i)],
                                    algebra.basis()[static_cast<std::size_t>(j)]);
        if (algebra.dimension() >= max_dim) {
            if (algebra.admission_residual(c) > tol) {
                algebra.mark_truncated();
            }
            continue;
        }
        if (algebra.try_add(c, tol)) {
            enqueue_with_all(algebra.dimension() - 1);
        }
    }
    return algebra;
}

bool is_fully_controllable(const OperatorSubspace& closure) {
    const Eigen::Index d = closure.dim_space();
    const int dim = closure.dimension();
    if (dim == d * d) {
        return true;
    }
    if (dim == d * d - 1) {
        for (const Matrix& b : closure.basis()) {
            if (std::abs(b.trace()) > 1e-8) {
                return false;
            }
        }
        return true;
    }
    return false;
}

OperatorSubspace orbit_span(const std::vector<Matrix>& seeds,
                            const std::vector<HermitianOperator>& controls,
                            double tol) {
    Eigen::Index d = 0;
    if (!controls.empty()) {
        d = controls.front().dim();
    } else if (!seeds.empty()) {
        d = seeds.front().rows();
    }
    OperatorSubspace span(d, SpanField::Complex);
    std::deque<int> expand;
    for (const Matrix& s : seeds) {
        if (s.rows() != d || s.cols() != d) {
            throw std::invalid_argument("orbit_span: seed dimension mismatch");
        }
        if (span.try_add(s, tol)) {
            expand.push_back(span.dimension() - 1);
        }
    }
    while (!expand.empty()) {
        const int idx = expand.front();
        expand.pop_front();
        for (const HermitianOperator& h : controls) {
            const Matrix image =
                liouvillian(h.matrix(), span.basis()[static_cast<std::size_t>(idx)]);
            if (span.try_add(image, tol)) {
                expand.push_back(span.dimension() - 1);
            }
        }
    }
    return span;
}

OperatorSubspace orbit_span(const Matrix& seed,
                            const std::vector<HermitianOperator>& controls,
                            double tol) {
    return orbit_span(std::vector<Matrix>{seed}, controls, tol);
}

OperatorSubspace orbit_span(const OperatorSubspace& seed,
                            const std::vector<HermitianOperator>& controls,
                            double tol) {
    return orbit_span(seed.basis(), controls, tol);
}

SChain s_chain(const ModelSpec& model, int k_max, double tol) {
    if (!model.univariate()) {
        throw UnsupportedModelError(
            "s_chain: series analysis supports univariate models only (m = 1), got m = " +
            std::to_string(model.input_dim()));
    }
    if (k_max < 0) {
        throw std::invalid_argument("s_chain: k_max must be >= 0");
    }
    const Matrix& drift = model.encoders().front().matrix();

    SChain chain;
    chain.levels.reserve(static_cast<std::size_t>(k_max) + 1);
    chain.levels.push_back(orbit_span(model.observable().matrix(), model.controls(), tol));
    for (int k = 1; k <= k_max; ++k) {
        std::vector<Matrix> seeds;
        seeds.reserve(chain.levels.back().basis().size());
        for (const Matrix& b : chain.levels.back().basis()) {
            seeds.push_back(liouvillian(drift, b));
        }
        chain.levels.push_back(orbit_span(seeds, model.controls(), tol));
    }

    // Smallest period (1 or 2) stabilizing the whole tail from an onset of at
    // most 2. Without such a period the chain is reported inconclusive.
    for (int period = 1; period <= 2 && !chain.period; ++period) {
        for (int onset = 0; onset <= 2; ++onset) {
            if (onset + period > k_max) {
                break;
            }
            bool ok = true;
            for (int k = onset; k + period <= k_max; ++k) {
                if (!spans_same(chain.levels[static_cast<std::size_t>(k)],
                                chain.levels[static_cast<std::size_t>(k + period)])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                chain.period = period;
                break;
            }
        }
    }
    return chain;
}

ExpressivityReport expressivity_check(const ModelSpec& model, int k_max, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("expressivity_check: tolerance must be positive");
    }
    const SChain chain = s_chain(model, k_max, kSubspaceTol);
    const Vector& psi = model.initial_state().amplitudes();

    ExpressivityReport report;
    report.k_max = k_max;
    report.period = chain.period;
    bool any_vanishes = false;
    for (int k = 0; k <= k_max; ++k) {
        const OperatorSubspace& level = chain.levels[static_cast<std::size_t>(k)];
        double residual = 0.0;
        for (const Matrix& b : level.basis()) {
            residual = std::max(residual, std::abs(psi.dot(b * psi)));
        }
        ExpressivityRow row;
        row.k = k;
        row.subspace_dim = level.dimension();
        row.max_abs_expectation = residual;
        // An empty level has expectation set {0} and therefore vanishes.
        row.vanishes = residual < tol;
        any_vanishes = any_vanishes || row.vanishes;
        report.per_k.push_back(row);
    }
    report.verdict = any_vanishes ? ExpressivityVerdict::FailsNecessaryCondition
                                  : ExpressivityVerdict::PassesNecessaryCondition;
    return report;
}

double containment_residual(const OperatorSubspace& inner,
                            const OperatorSubspace& outer) {
    double worst = 0.0;
    for (const Matrix& b : inner.basis()) {
        worst = std::max(worst, outer.residual(b));
    }
    return worst;
}

bool spans_same(const OperatorSubspace& a, const OperatorSubspace& b, double tol) {
    if (a.dimension() != b.dimension()) {
        return false;
    }
    return containment_residual(a, b) < tol && containment_residual(b, a) < tol;
}

Matrix subspace_projector(const OperatorSubspace& s) {
    const Eigen::Index d = s.dim_space();
    Matrix p = Matrix::Zero(d * d, d * d);
    for (const Matrix& b : s.basis()) {
        const Matrix flat = b.reshaped(d * d, 1);
        p += flat * flat.adjoint();
    }
    return p;
}

double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b) {
    const Matrix diff = subspace_projector(a) - subspace_projector(b);
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::string pauli_label(const Matrix& basis_element) {
    const Eigen::Index d = basis_element.rows();
    int n = 0;
    while ((Eigen::Index(1) << n) < d) {
        ++n;
    }
    if ((Eigen::Index(1) << n) != d || n > 6) {
        return "dim-" + std::to_string(d) + " element";
    }
    // Strip a global i if the element is skew-Hermitian.
    Matrix h = basis_element;
    bool skew = false;
    if (skewness_error(h) < 1e-8) {
        h = -kI * h;
        skew = true;
    }

    const char axis_names[] = {'I', 'X', 'Y', 'Z'};
    std::string best_label(static_cast<std::size_t>(std::max(n, 1)), 'I');
    double best_weight = 0.0;
    const Eigen::Index strings = Eigen::Index(1) << (2 * n);
    for (Eigen::Index code = 0; code < strings; ++code) {
        Matrix p = Matrix::Identity(1, 1);
        std::string label;
        Eigen::Index rest = code;
        for (int site = 0; site < n; ++site) {
            const int axis = static_cast<int>(rest % 4);
            rest /= 4;
            label.push_back(axis_names[axis]);
            if (axis == 0) {
                p = kron(p, Matrix::Identity(2, 2));
            } else {
                p = kron(p, pauli_matrix(static_cast<PauliAxis>(axis - 1)));
            }
        }
        const double coef = std::abs((p * h).trace()) / static_cast<double>(d);
        const double weight = coef * std::sqrt(static_cast<double>(d)) / hs_norm(h);
        if (weight > best_weight) {
            best_weight = weight;
            best_label = label;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), " (%.2f)", best_weight);
    return (skew ? "i*" : "") + best_label + buf;
}

} // namespace pulsekit
