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

#ifndef NILPO_INDESTRUCTIBLE_HPP
#define NILPO_INDESTRUCTIBLE_HPP

#include <optional>
#include <vector>

#include "csym.hpp"

namespace nilpo {

enum class Destruction { destroyed, indestructible_sampled };

inline const char* to_string(Destruction d) {
    return d == Destruction::destroyed ? "destroyed" : "indestructible_sampled";
}

/// Evidence that A⊗B fails to be complex symmetric for the 3×3 witness B(α,β).
///
/// With w = yx², any conjugation of A⊗B would force
///   ‖w(A,A*)‖·‖w(B,B*)‖ = ‖w(A,A*)‖·‖w(B*,B)‖,
/// while ‖w(B,B*)‖ = α²β ≠ αβ² = ‖w(B*,B)‖. So ‖w(A,A*)‖ > 0 destroys symmetry.
struct DestructorCertificate {
    ComplexMatrix witness_b;
    double alpha = 1.0;
    double beta = 2.0;
    NCWord word = NCWord::parse("yxx");
    double norm_wa = 0.0;
    double norm_wb = 0.0;
    double norm_wb_rev = 0.0;
    /// ‖w(A⊗B, (A⊗B)*)‖ and ‖w((A⊗B)*, A⊗B)‖ computed on the tensor space directly, when it fits.
    std::optional<double> norm_w_tensor;
    std::optional<double> norm_w_tensor_rev;
    Destruction conclusion = Destruction::indestructible_sampled;
};

/// B(α,β) = [[0,α,0],[0,0,β],[0,0,0]].
inline ComplexMatrix destructor_matrix(double alpha, double beta) {
    ComplexMatrix b = ComplexMatrix::Zero(3, 3);
    b(0, 1) = alpha;
    b(1, 2) = beta;
    return b;
}

inline DestructorCertificate destructor_witness(const ComplexMatrix& a, double alpha = 1.0, double beta = 2.0) {
    require_square(a, "destructor_witness");
    if (!(alpha > 0.0) || !(beta > 0.0)) throw InputError("destructor_witness: alpha and beta must be positive");
    if (alpha == beta) throw InputError("destructor_witness: alpha == beta degenerates the witness");

    DestructorCertificate cert;
    cert.alpha = alpha;
    cert.beta = beta;
    cert.witness_b = destructor_matrix(alpha, beta);
    const ComplexMatrix& b = cert.witness_b;
    cert.norm_wa = operator_norm(eval_nc(cert.word, a, a.adjoint()));
    cert.norm_wb = operator_norm(eval_nc(cert.word, b, b.adjoint()));
    cert.norm_wb_rev = operator_norm(eval_nc(cert.word, b.adjoint(), b));
    if (3 * a.rows() <= 192) {
        const ComplexMatrix ab = tensor(a, b);
        cert.norm_w_tensor = operator_norm(eval_nc(cert.word, ab, ab.adjoint()));
        cert.norm_w_tensor_rev = operator_norm(eval_nc(cert.word, ab.adjoint(), ab));
    }
    cert.conclusion = is_square_zero(a) ? Destruction::indestructible_sampled : Destruction::destroyed;
    return cert;
}

/// Conjugation making A⊗B symmetric when A² = 0 (then (A⊗B)² = 0 as well).
inline Conjugation nilpotent2_tensor_conjugation(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "nilpotent2_tensor_conjugation lhs");
    require_square(b, "nilpotent2_tensor_conjugation rhs");
    if (!is_square_zero(a)) throw PreconditionError("nilpotent2_tensor_conjugation: A^2 != 0");
    return conjugation_for_nilpotent2(tensor(a, b)).conjugation;
}

/// C_A ⊗ C_B, fixing every product of real basis vectors.
inline Conjugation product_conjugation(const Conjugation& ca, const Conjugation& cb) {
    return Conjugation::from_matrix(tensor(ca.matrix(), cb.matrix()));
}

/// Φ(J⊗J) with Φ(x⊗y) = y⊗x.
inline Conjugation swap_conjugation(const Conjugation& j, Eigen::Index n) {
    if (j.dim() != n) throw InputError("swap_conjugation: dimension mismatch");
    return Conjugation::from_matrix(tensor_swap(n) * tensor(j.matrix(), j.matrix()));
}

/// A ⊗ J A* J.
inline ComplexMatrix twisted_square(const ComplexMatrix& a, const Conjugation& j) {
    return tensor(a, conjugate_by(j, a.adjoint()));
}

struct ShiftBlock {
    Eigen::Index degree = 0;  ///< homogeneous degree n; the block has dimension n + 1
    ComplexMatrix restriction;
};

/// Monomials z^k w^m with k + m < cutoff, ordered by total degree and then by k.
inline std::vector<std::pair<int, int>> bidisk_monomials(int cutoff) {
    std::vector<std::pair<int, int>> out;
    for (int deg = 0; deg < cutoff; ++deg)
        for (int k = 0; k <= deg; ++k) out.emplace_back(k, deg - k);
    return out;
}

/// [Tf](z,w) = z (f(z,w) − f(z,0)) / w on polynomials of total degree < cutoff:
/// T(z^k w^m) = z^{k+1} w^{m−1} for m ≥ 1 and 0 otherwise.
inline ComplexMatrix shift_tensor_coshift_matrix(int cutoff) {
    if (cutoff < 1) throw InputError("shift_tensor_coshift: cutoff must be >= 1");
    const auto basis = bidisk_monomials(cutoff);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto [k, m] = basis[static_cast<std::size_t>(col)];
        if (m == 0) continue;
        for (Eigen::Index row = 0; row < dim; ++row)
            if (basis[static_cast<std::size_t>(row)] == std::pair{k + 1, m - 1}) t(row, col) = 1.0;
    }
    return t;
}

/// True when M is nilpotent with a single Jordan chain spanning the whole space.
inline bool is_single_jordan_chain(const ComplexMatrix& m) {
    const auto order = nilpotency_order(m, 1e-12);
    return order && *order == m.rows();
}

/// Restrictions of the truncated operator to each homogeneous subspace P_n (n < cutoff).
/// Throws AccuracyError if a subspace fails to reduce T or a restriction is not a single chain.
inline std::vector<ShiftBlock> shift_tensor_coshift_blocks(int cutoff) {
    const ComplexMatrix t = shift_tensor_coshift_matrix(cutoff);
    std::vector<ShiftBlock> blocks;
    Eigen::Index offset = 0;
    for (int deg = 0; deg < cutoff; ++deg) {
        const Eigen::Index d = deg + 1;
        ComplexMatrix outside = t.middleCols(offset, d);
        outside.middleRows(offset, d).setZero();
        ComplexMatrix outside_adj = t.adjoint().middleCols(offset, d);
        outside_adj.middleRows(offset, d).setZero();
        if (outside.norm() != 0.0 || outside_adj.norm() != 0.0)
            throw AccuracyError("homogeneous subspace of degree " + std::to_string(deg) + " does not reduce T");
        ShiftBlock block{deg, t.block(offset, offset, d, d)};
        if (!is_single_jordan_chain(block.restriction))
            throw AccuracyError("restriction to degree " + std::to_string(deg) + " is not a single Jordan chain");
        blocks.push_back(std::move(block));
        offset += d;
    }
    return blocks;
}

}  // namespace nilpo

#endif  // NILPO_INDESTRUCTIBLE_HPP
