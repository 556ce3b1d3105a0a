/*
   Copyright 2026 The nilpo Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NILPO_LINALG_HPP
#define NILPO_LINALG_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nilpo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Relative tolerance used when a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

/// Largest row or column count `tensor` will produce.
inline constexpr Eigen::Index kTensorDimensionCap = 4096;

inline void require_finite(const ComplexMatrix& m, const char* what = "matrix") {
    if (m.rows() == 0 || m.cols() == 0) throw InputError(std::string(what) + ": empty matrix");
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                throw InputError(std::string(what) + ": non-finite entry");
}

inline void require_square(const ComplexMatrix& m, const char* what = "matrix") {
    require_finite(m, what);
    if (m.rows() != m.cols()) throw InputError(std::string(what) + ": expected a square matrix");
}

inline void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("size mismatch");
}

/// Singular values in descending order.
inline RealVector singular_values(const ComplexMatrix& m) {
    if (std::max(m.rows(), m.cols()) <= 64) return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
    return Eigen::BDCSVD<ComplexMatrix>(m).singularValues();
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
    require_finite(m);
    const RealVector s = singular_values(m);
    return s.size() == 0 ? 0.0 : s(0);
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

/// Nilpotent Jordan block J_n(0) with ones on the subdiagonal (e_k -> e_{k+1}).
inline ComplexMatrix jordan_block(Eigen::Index n) {
    ComplexMatrix j = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) j(k + 1, k) = 1.0;
    return j;
}

/// Anti-diagonal permutation.
inline ComplexMatrix flip(Eigen::Index n) {
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) f(k, n - 1 - k) = 1.0;
    return f;
}

/// Kronecker product, row index i*rows(B)+k.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                            Eigen::Index cap = kTensorDimensionCap) {
    require_finite(a, "tensor lhs");
    require_finite(b, "tensor rhs");
    if (a.rows() > cap / b.rows() || a.cols() > cap / b.cols())
        throw CapacityError("tensor product exceeds dimension cap " + std::to_string(cap));
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
    Eigen::Index rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    ComplexMatrix out = ComplexMatrix::Zero(rows, cols);
    Eigen::Index r = 0, c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix parts[] = {a, b};
    return direct_sum(std::span<const ComplexMatrix>(parts));
}

/// Permutation P with P (x ⊗ y) = y ⊗ x on C^n ⊗ C^n.
inline ComplexMatrix tensor_swap(Eigen::Index n) {
    ComplexMatrix p = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) p(j * n + i, i * n + j) = 1.0;
    return p;
}

/// ‖M*M − I‖ (operator norm).
inline double unitarity_defect(const ComplexMatrix& m) {
    return operator_norm(m.adjoint() * m - identity(m.cols()));
}

struct PolarDecomposition {
    ComplexMatrix unitary;   ///< V
    ComplexMatrix modulus;   ///< P = |M| = (M*M)^{1/2}
};

/// M = V P with P = |M| and V unitary.
///
/// V = U W* from the SVD M = U S W*. On ran|M| this is the canonical partial
/// isometry; on ker|M| the right and left singular vectors belonging to zero
/// singular values are paired in index order, which makes the completion
/// deterministic.
inline PolarDecomposition polar_decompose(const ComplexMatrix& m) {
    require_square(m, "polar_decompose");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ComplexMatrix& w = svd.matrixV();
    PolarDecomposition out;
    out.unitary = svd.matrixU() * w.adjoint();
    out.modulus = w * svd.singularValues().cast<Complex>().asDiagonal() * w.adjoint();
    out.modulus = (out.modulus + out.modulus.adjoint()) / 2.0;
    return out;
}

/// Unitary factor only; for X = X^T and invertible this is again symmetric.
inline ComplexMatrix unitary_part(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

/// Nearest matrix with orthonormal columns (polar factor of a tall matrix).
inline ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

/// Orthonormal basis (as columns) of the orthogonal complement of the column span of `q`,
/// assumed orthonormal. Returns an n×(n−k) matrix.
inline ComplexMatrix orthonormal_complement(const ComplexMatrix& q, Eigen::Index n) {
    const Eigen::Index k = q.cols();
    if (k == 0) return identity(n);
    Eigen::HouseholderQR<ComplexMatrix> qr(q);
    ComplexMatrix full = qr.householderQ() * identity(n);
    return full.rightCols(n - k);
}

/// Orthonormal basis of {x : K x ≈ 0}, columns of right singular vectors whose singular value
/// is at most `rel_tol`·σ_max (or exactly zero when K = 0).
inline ComplexMatrix nullspace(const ComplexMatrix& k, double rel_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(k, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double cut = rel_tol * std::max(s.size() ? s(0) : 0.0, 1e-300);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    return svd.matrixV().rightCols(k.cols() - rank);
}

/// Divides a vector by the phase of its first entry of largest modulus (up to 1e-8 relative),
/// so that entry becomes real and positive.
inline Complex phase_of_leading_entry(const ComplexVector& v) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
    if (best == 0.0) return 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) >= best * (1.0 - 1e-8)) return v(i) / std::abs(v(i));
    return 1.0;
}

/// Antiunitary map x ↦ G·conj(x), stored through the symmetric unitary G.
class Conjugation {
   public:
    /// Validates G = G^T and G G* = I to `tol` (absolute, G has norm one).
    static Conjugation from_matrix(ComplexMatrix g, double tol = kDefaultTol) {
        require_square(g, "conjugation");
        const double sym = operator_norm(g - g.transpose());
        const double uni = operator_norm(g * g.adjoint() - identity(g.rows()));
        if (sym > tol) throw InputError("conjugation matrix is not symmetric (defect " + fmt_real(sym) + ")");
        if (uni > tol) throw InputError("conjugation matrix is not unitary (defect " + fmt_real(uni) + ")");
        return Conjugation(std::move(g));
    }

    /// Entrywise complex conjugation on C^n.
    static Conjugation entrywise(Eigen::Index n) { return Conjugation(identity(n)); }

    const ComplexMatrix& matrix() const noexcept { return g_; }
    Eigen::Index dim() const noexcept { return g_.rows(); }

    ComplexVector apply(const ComplexVector& x) const {
        if (x.size() != dim()) throw InputError("conjugation: vector size mismatch");
        return g_ * x.conjugate();
    }

    double symmetry_defect() const { return operator_norm(g_ - g_.transpose()); }
    double unitarity_defect() const { return nilpo::unitarity_defect(g_); }

   private:
    explicit Conjugation(ComplexMatrix g) : g_(std::move(g)) {}
    ComplexMatrix g_;
};

/// The linear map C∘M∘C, i.e. G·conj(M)·conj(G).
inline ComplexMatrix conjugate_by(const Conjugation& c, const ComplexMatrix& m) {
    require_square(m, "conjugate_by");
    if (m.rows() != c.dim()) throw InputError("conjugate_by: size mismatch");
    return c.matrix() * m.conjugate() * c.matrix().conjugate();
}

/// Sorted-descending ℓ² distance between two singular value lists (shorter one zero-padded).
inline double spectrum_distance(const RealVector& a, const RealVector& b) {
    const Eigen::Index n = std::max(a.size(), b.size());
    RealVector pa = RealVector::Zero(n), pb = RealVector::Zero(n);
    pa.head(a.size()) = a;
    pb.head(b.size()) = b;
    std::sort(pa.data(), pa.data() + n, std::greater<>());
    std::sort(pb.data(), pb.data() + n, std::greater<>());
    return (pa - pb).norm();
}

}  // namespace nilpo

#endif  // NILPO_LINALG_HPP
