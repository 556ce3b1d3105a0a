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

#ifndef NILPO_SYNTHESIS_HPP
#define NILPO_SYNTHESIS_HPP

#include <Eigen/Eigenvalues>
#include <cstdint>
#include <optional>
#include <vector>

#include "csym.hpp"
#include "model_space.hpp"
#include "optimize.hpp"
#include "random.hpp"

namespace nilpo {

// ---------------------------------------------------------------------------------------------
// Unitary equivalence.

struct EquivalenceResult {
    double residual = 0.0;              ///< best ‖W X − Y W‖ found
    std::optional<ComplexMatrix> w;     ///< present when residual ≤ 1e-7·‖X‖
    bool screen_passed = false;         ///< invariants (σ(X), σ(X²), kernel dims) agree
};

namespace detail {

inline bool equivalence_screen(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
    const double scale = std::max({operator_norm(x), operator_norm(y), 1e-300});
    const RealVector sx = singular_values(x), sy = singular_values(y);
    if (spectrum_distance(sx, sy) > tol * scale) return false;
    if (spectrum_distance(singular_values(x * x), singular_values(y * y)) > tol * scale * scale) return false;
    auto kernel_dim = [&](const RealVector& s) {
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i) k += s(i) <= kRankCut * scale ? 1 : 0;
        return k;
    };
    return kernel_dim(sx) == kernel_dim(sy);
}

/// Best unitary W found for W X = Y W: the space {W : W X = Y W, W X* = Y* W} contains a unitary
/// exactly when X ≅ Y, and the polar factor of a generic element of it is one.
inline std::pair<double, ComplexMatrix> intertwining_unitary(const ComplexMatrix& x, const ComplexMatrix& y,
                                                             std::uint64_t seed, int starts) {
    const Eigen::Index n = x.rows(), n2 = n * n;
    const ComplexMatrix id = identity(n);
    ComplexMatrix k(2 * n2, n2);
    k.topRows(n2) = tensor(x.transpose(), id) - tensor(id, y);
    k.bottomRows(n2) = tensor(x.adjoint().transpose(), id) - tensor(id, y.adjoint());
    ComplexMatrix basis;
    {
        Eigen::BDCSVD<ComplexMatrix> svd(k, Eigen::ComputeFullV);
        const RealVector& s = svd.singularValues();
        const double cut = 1e-6 * std::max(s(0), 1e-300);
        Eigen::Index rank = 0;
        while (rank < s.size() && s(rank) > cut) ++rank;
        rank = std::min(rank, n2 - 1);
        basis = svd.matrixV().rightCols(n2 - rank);
    }
    auto score = [&](const ComplexMatrix& w) { return operator_norm(w * x - y * w); };

    double best = std::numeric_limits<double>::infinity();
    ComplexMatrix best_w = id;
    auto consider = [&](const ComplexMatrix& w) {
        const double r = score(w);
        if (r < best) {
            best = r;
            best_w = w;
        }
    };
    // Matched singular frames as a fallback candidate.
    {
        Eigen::JacobiSVD<ComplexMatrix> sx(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Eigen::JacobiSVD<ComplexMatrix> sy(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
        consider(sy.matrixU() * sx.matrixU().adjoint());
        consider(sy.matrixV() * sx.matrixV().adjoint());
    }
    for (int start = 0; start < starts; ++start) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(start)));
        ComplexVector c(basis.cols());
        for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = rng.complex_normal();
        const ComplexVector flat = basis * c;
        consider(unitary_part(Eigen::Map<const ComplexMatrix>(flat.data(), n, n)));
    }
    return {best, best_w};
}

}  // namespace detail

/// Heuristic test of X ≅ Y. Both argument orders are searched and the better one kept, so the
/// reported residual is symmetric in (X, Y).
inline EquivalenceResult unitary_equivalence_check(const ComplexMatrix& x, const ComplexMatrix& y,
                                                   std::uint64_t seed = 0, int starts = 4) {
    require_square(x, "unitary_equivalence_check X");
    require_square(y, "unitary_equivalence_check Y");
    require_same_size(x, y);
    EquivalenceResult out;
    out.screen_passed = detail::equivalence_screen(x, y, 1e-7);
    auto forward = detail::intertwining_unitary(x, y, seed, starts);
    auto backward = detail::intertwining_unitary(y, x, seed, starts);
    ComplexMatrix w;
    if (backward.first < forward.first) {
        out.residual = backward.first;
        w = backward.second.adjoint();
    } else {
        out.residual = forward.first;
        w = std::move(forward.second);
    }
    if (out.residual <= 1e-7 * std::max(operator_norm(x), 1e-300)) out.w = std::move(w);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Canonical parts of a square-zero N.

/// W0 N W0* = [[0,0,0],[0,0,0],[B,0,0]] on H ⊕ H' ⊕ H with B = diag(σ) ≥ 0.
struct NilpotentParts {
    ComplexMatrix b;
    Eigen::Index extra_kernel_dim = 0;
    ComplexMatrix w0;

    Eigen::Index rank() const noexcept { return b.rows(); }
};

inline NilpotentParts canonical_nilpotent_parts(const ComplexMatrix& n) {
    const Nilpotent2Form form = nilpotent2_form(n);
    const Eigen::Index r = form.rank(), m = form.extra_kernel_dim;
    NilpotentParts out;
    out.b = form.singular_values.cast<Complex>().asDiagonal();
    out.extra_kernel_dim = m;
    out.w0.resize(n.rows(), n.cols());
    out.w0.topRows(r) = form.w.topRows(r);
    out.w0.middleRows(r, m) = form.w.bottomRows(m);
    out.w0.bottomRows(r) = form.w.middleRows(r, r);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Modulus realization.

struct OptConfig {
    int starts = 16;
    int simplex_evals = 3000;   ///< per start
    int polish_evals = 4000;    ///< per start
    int degree_budget = 0;      ///< symbol coefficients; 0 means one per target
    double zero_radius = 0.9;   ///< zeros are kept in |a| < zero_radius
    int quad = kDefaultQuad;
    std::uint64_t seed = 0;
};

struct ModulusRealization {
    BlaschkeProduct u;
    Symbol phi;
    RealVector target_singular_values;
    RealVector achieved_singular_values;
    double residual = 0.0;
    bool converged = false;
    int start_index = -1;
};

namespace detail {

/// Parameters → (zeros, coefficients). Zeros a = ρ·w/√(1+|w|²) stay inside radius ρ.
struct ModulusParams {
    Eigen::Index zeros = 0;
    Eigen::Index coeffs = 0;
    double radius = 0.9;

    std::vector<Complex> zero_list(const opt::Vector& p) const {
        std::vector<Complex> a(static_cast<std::size_t>(zeros));
        for (Eigen::Index k = 0; k < zeros; ++k) {
            const Complex w(p(2 * k), p(2 * k + 1));
            a[static_cast<std::size_t>(k)] = radius * w / std::sqrt(1.0 + std::norm(w));
        }
        return a;
    }
    Coefficients coefficient_list(const opt::Vector& p) const {
        Coefficients c(static_cast<std::size_t>(coeffs));
        for (Eigen::Index k = 0; k < coeffs; ++k)
            c[static_cast<std::size_t>(k)] = Complex(p(2 * zeros + 2 * k), p(2 * zeros + 2 * k + 1));
        return c;
    }
    Eigen::Index size() const { return 2 * zeros + 2 * coeffs; }
};

inline RealVector closed_form_spectrum(const ModulusParams& layout, const opt::Vector& p) {
    const ComplexMatrix az = compressed_shift_closed_form(layout.zero_list(p));
    return singular_values(poly_eval(layout.coefficient_list(p), az));
}

}  // namespace detail

/// Searches for u (deg = #targets) and polynomial φ with σ(A_φ^u) = targets.
///
/// Objective ‖σ(A_φ^u) − targets‖² evaluated through the closed-form compressed shift; each start
/// runs a simplex search followed by a least-squares polish. The reported spectrum and residual
/// are recomputed from the quadrature TTO matrix. Zero targets are realized by the padding
/// A^{uv}_{vφ} with v = z^{#zeros}.
inline ModulusRealization realize_modulus(const RealVector& targets, const OptConfig& cfg = {}) {
    if (targets.size() < 1) throw InputError("realize_modulus: need at least one target");
    RealVector sorted = targets;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
    for (Eigen::Index k = 0; k < sorted.size(); ++k)
        if (!std::isfinite(sorted(k)) || sorted(k) < 0.0) throw InputError("realize_modulus: targets must be nonnegative");
    Eigen::Index r = 0;
    while (r < sorted.size() && sorted(r) > 0.0) ++r;
    const Eigen::Index zero_count = sorted.size() - r;
    if (cfg.degree_budget != 0 && cfg.degree_budget < r)
        throw InputError("realize_modulus: degree budget below the number of positive targets");

    ModulusRealization out;
    out.target_singular_values = sorted;

    if (r == 0) {
        out.u = BlaschkeProduct::monomial(static_cast<std::size_t>(zero_count));
        out.phi = Symbol::polynomial({});
        out.start_index = 0;
    } else {
        const RealVector positive = sorted.head(r);
        detail::ModulusParams layout{r, cfg.degree_budget == 0 ? r : cfg.degree_budget, cfg.zero_radius};
        const double scale = positive(0);
        auto residuals = [&](const opt::Vector& p) -> opt::Vector {
            return (detail::closed_form_spectrum(layout, p) - positive) / scale;
        };
        auto objective = [&](const opt::Vector& p) { return residuals(p).squaredNorm(); };

        double geo = 0.0;
        for (Eigen::Index k = 0; k < r; ++k) geo += std::log(positive(k));
        geo = std::exp(geo / static_cast<double>(r));

        double best = std::numeric_limits<double>::infinity();
        opt::Vector best_p;
        for (int start = 0; start < std::max(cfg.starts, 1); ++start) {
            opt::Vector p = opt::Vector::Zero(layout.size());
            if (start == 0) {
                // Lower triangular Toeplitz guess on K_{z^r}: exact for r ≤ 2.
                p(2 * r) = geo;
                if (layout.coeffs > 1) p(2 * r + 2) = positive(0) - positive(r - 1);
            } else {
                Rng rng(split_seed(cfg.seed, static_cast<std::uint64_t>(start)));
                for (Eigen::Index k = 0; k < 2 * r; ++k) p(k) = 0.7 * rng.normal();
                for (Eigen::Index k = 2 * r; k < p.size(); ++k) p(k) = geo * rng.normal() / std::sqrt(2.0);
            }
            if (objective(p) > 1e-26) {
                p = opt::nelder_mead(objective, p, 0.25 * std::max(geo / scale, 0.1), cfg.simplex_evals).x;
                p = opt::least_squares_polish(residuals, p, cfg.polish_evals).x;
            }
            const double value = objective(p);
            if (value < best) {
                best = value;
                best_p = p;
                out.start_index = start;
            }
            if (best <= 1e-24) break;
        }
        out.u = BlaschkeProduct(layout.zero_list(best_p));
        out.phi = Symbol::polynomial(layout.coefficient_list(best_p));
        if (zero_count > 0) {
            const BlaschkeProduct v = BlaschkeProduct::monomial(static_cast<std::size_t>(zero_count));
            out.phi = Symbol::from_blaschke(v) * out.phi;
            out.u = out.u * v;
        }
    }

    const ModelSpace space(out.u, cfg.quad);
    out.achieved_singular_values = out.phi.is_zero() ? RealVector(RealVector::Zero(space.dim()))
                                                     : singular_values(tto_matrix(space, out.phi));
    out.residual = spectrum_distance(out.achieved_singular_values, sorted);
    out.converged = out.residual <= 1e-6 * std::max(sorted(0), 1e-300);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Synthesis.

struct SynthesisResult {
    BlaschkeProduct u;             ///< realizes |A^u_φ| ≅ B
    Symbol phi;
    BlaschkeProduct v;             ///< z^{dim H'}
    BlaschkeProduct u_total;       ///< u²v, zero order (u, u, v)
    Symbol symbol_total;           ///< u·v·φ
    ComplexMatrix tto;             ///< A^{u²v}_{uvφ} in the basis of K_{u²v}
    ComplexMatrix w;               ///< W·tto·W* ≈ N
    double equivalence_residual = 0.0;
    double modulus_residual = 0.0;
    bool converged = false;
};

/// Analytic TTO unitarily equivalent to a square-zero N.
///
/// With N ≅ [[0,0,0],[0,0,0],[B,0,0]] on H ⊕ H' ⊕ H and |A^u_φ| ≅ B, the operator
/// A^{u²v}_{uvφ} in the frame K_u ⊕ uK_v ⊕ uvK_u is [[0,0,0],[0,0,0],[uv A^u_φ,0,0]];
/// conjugating by I ⊕ I ⊕ V* (A^u_φ = V|A^u_φ|) turns the corner into |A^u_φ|.
inline SynthesisResult synthesize_tto_for_nilpotent2(const ComplexMatrix& n, const OptConfig& cfg = {}) {
    const NilpotentParts parts = canonical_nilpotent_parts(n);
    const Eigen::Index r = parts.rank(), m = parts.extra_kernel_dim, dim = n.rows();
    SynthesisResult out;
    out.v = BlaschkeProduct::monomial(static_cast<std::size_t>(m));

    if (r == 0) {
        out.u_total = BlaschkeProduct::monomial(static_cast<std::size_t>(dim));
        out.symbol_total = Symbol::polynomial({});
        out.tto = ComplexMatrix::Zero(dim, dim);
        out.w = identity(dim);
        out.equivalence_residual = operator_norm(out.tto - n);
        out.converged = true;
        return out;
    }

    const RealVector sigma = parts.b.diagonal().real();
    const ModulusRealization realization = realize_modulus(sigma, cfg);
    out.u = realization.u;
    out.phi = realization.phi;
    out.modulus_residual = realization.residual;

    const ModelSpace su(out.u, cfg.quad);
    const ComplexMatrix a = tto_matrix(su, out.phi);
    const PolarDecomposition polar = polar_decompose(a);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(polar.modulus);
    const ComplexMatrix frame = eig.eigenvectors().rowwise().reverse();  // |A| = R S R*, S descending

    out.u_total = out.u * out.u * out.v;
    out.symbol_total = Symbol::from_blaschke(out.u) * Symbol::from_blaschke(out.v) * out.phi;
    const ModelSpace total(out.u_total, cfg.quad);
    out.tto = tto_matrix(total, out.symbol_total);
    const Decomposition split = modelspace_decompose3(out.u, out.v, cfg.quad);

    ComplexMatrix to_n_frame = identity(dim);  // diag(R*, I, R*) · diag(I, I, V*)
    to_n_frame.topLeftCorner(r, r) = frame.adjoint();
    to_n_frame.bottomRightCorner(r, r) = frame.adjoint() * polar.unitary.adjoint();
    out.w = parts.w0.adjoint() * to_n_frame * split.q.adjoint();
    out.equivalence_residual = operator_norm(out.w * out.tto * out.w.adjoint() - n);
    out.converged = realization.converged &&
                    out.equivalence_residual <= 1e-6 * std::max(operator_norm(n), 1e-300);
    return out;
}

}  // namespace nilpo

#endif  // NILPO_SYNTHESIS_HPP
