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

#include <optional>
#include <vector>

#include "pulsekit/operators.hpp"

namespace pulsekit {

inline constexpr double kSubspaceTol = 1e-10;

/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const Matrix& a, const Matrix& b);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const Matrix& a);

/// Control Liouvillian: X -> [-iH, X].
Matrix liouvillian(const Matrix& h, const Matrix& x);

/// Scalar field a subspace is spanned over. Lie algebra closures are real
/// vector spaces of skew-Hermitian matrices; the operator subspaces entering
/// expectation-value analysis are complex spans.
enum class SpanField { Real, Complex };

/// A matrix subspace held as an orthonormal basis under the Hilbert-Schmidt
/// inner product. Built incrementally by modified Gram-Schmidt with one
/// re-orthogonalization pass; a candidate counts as a new direction when its
/// residual exceeds `tol` after normalization.
class OperatorSubspace {
  public:
    OperatorSubspace(Eigen::Index dim_space, SpanField field)
        : dim_space_(dim_space), field_(field) {}

    Eigen::Index dim_space() const { return dim_space_; }
    SpanField field() const { return field_; }
    int dimension() const { return static_cast<int>(basis_.size()); }
    bool empty() const { return basis_.empty(); }
    const std::vector<Matrix>& basis() const { return basis_; }

    /// Orthogonal projection of x onto the span.
    Matrix project(const Matrix& x) const;

    /// ||x - project(x)||_HS.
    double residual(const Matrix& x) const;

    /// Try to extend the basis with `candidate`; returns true if a direction
    /// was added. Candidates of negligible norm are ignored.
    bool try_add(const Matrix& candidate, double tol = kSubspaceTol);

    /// Residual norm the candidate would have, without modifying the basis.
    double admission_residual(const Matrix& candidate) const;

    /// Gram matrix of the basis (identity up to orthonormalization error).
    Matrix gram() const;

    bool truncated() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }

  private:
    Matrix sweep(Matrix v) const;

    Eigen::Index dim_space_;
    SpanField field_;
    bool truncated_ = false;
    std::vector<Matrix> basis_;
};

/// Smallest real Lie algebra containing the skew-Hermitian generators,
/// computed by breadth-first commutator expansion. Expansion stops when a
/// full sweep of pairwise commutators adds nothing, or when the dimension
/// reaches max_dim (the result is then marked truncated).
OperatorSubspace lie_closure(const std::vector<Matrix>& generators, int max_dim,
                             double tol = kSubspaceTol);

/// True iff the closure spans su(d) (dimension d^2-1, traceless basis) or
/// u(d) (dimension d^2).
bool is_fully_controllable(const OperatorSubspace& closure);

/// Span of all nested control Liouvillians applied to the seed matrices,
/// including the seeds themselves (the zero-application term).
OperatorSubspace orbit_span(const std::vector<Matrix>& seeds,
                            const std::vector<HermitianOperator>& controls,
                            double tol = kSubspaceTol);
OperatorSubspace orbit_span(const Matrix& seed,
                            const std::vector<HermitianOperator>& controls,
                            double tol = kSubspaceTol);
OperatorSubspace orbit_span(const OperatorSubspace& seed,
                            const std::vector<HermitianOperator>& controls,
                            double tol = kSubspaceTol);

/// The alternating subspace chain of a univariate model: S_0 is the control
/// orbit of the observable, and S_k the control orbit of the drift Liouvillian
/// image of S_{k-1}. `period` reports the smallest period (1 or 2) under
/// which the chain stabilizes within the computed range, when one exists.
struct SChain {
    std::vector<OperatorSubspace> levels; // index k = 0..k_max
    std::optional<int> period;
};

SChain s_chain(const ModelSpec& model, int k_max, double tol = kSubspaceTol);

enum class ExpressivityVerdict {
    FailsNecessaryCondition,
    PassesNecessaryCondition,
};

struct ExpressivityRow {
    int k = 0;
    int subspace_dim = 0;
    double max_abs_expectation = 0.0;
    bool vanishes = false;
};

/// Per-level expectation residuals of the subspace chain against the initial
/// state. The verdict is FailsNecessaryCondition iff some level's expectation
/// set is {0}; an empty level counts as vanishing.
struct ExpressivityReport {
    int k_max = 0;
    std::vector<ExpressivityRow> per_k;
    std::optional<int> period;
    ExpressivityVerdict verdict = ExpressivityVerdict::PassesNecessaryCondition;
};

ExpressivityReport expressivity_check(const ModelSpec& model, int k_max,
                                      double tol = kSubspaceTol);

/// Max residual of `inner` basis elements against `outer` (0 when contained).
double containment_residual(const OperatorSubspace& inner,
                            const OperatorSubspace& outer);

/// Equal dimension and mutual containment within tol.
bool spans_same(const OperatorSubspace& a, const OperatorSubspace& b,
                double tol = 1e-8);

/// Orthogonal projector onto the span, as a d^2 x d^2 matrix acting on
/// vectorized matrices. Intended for verification at small dimension.
Matrix subspace_projector(const OperatorSubspace& s);

/// Operator-norm distance between the subspace projectors.
double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b);

/// Nearest Pauli-string label of a (skew-)Hermitian basis element when the
/// dimension is a power of two, e.g. "XZ (0.71)"; otherwise a placeholder.
std::string pauli_label(const Matrix& basis_element);

} // namespace pulsekit
