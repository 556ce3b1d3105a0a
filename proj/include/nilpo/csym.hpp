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

#ifndef NILPO_CSYM_HPP
#define NILPO_CSYM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "nc_poly.hpp"
#include "optimize.hpp"
#include "random.hpp"

namespace nilpo {

/// Relative threshold below which T² counts as zero: ‖T²‖ ≤ kSquareZeroTol·‖T‖².
inline constexpr double kSquareZeroTol = 1e-10;

/// Singular values above kRankCut·σ_max count toward the rank.
inline constexpr double kRankCut = 1e-10;

/// Smallest n ≤ rows with ‖Tⁿ‖ ≤ tol·‖T‖ⁿ; the zero matrix has order 1.
inline std::optional<int> nilpotency_order(const ComplexMatrix& t, double tol = kSquareZeroTol) {
    require_square(t, "nilpotency_order");
    const double norm = operator_norm(t);
    if (norm == 0.0) return 1;
    ComplexMatrix power = t;
    double scale = norm;
    for (int n = 1; n <= t.rows(); ++n) {
        if (operator_norm(power) <= tol * scale) return n;
        power = power * t;
        scale *= norm;
    }
    return std::nullopt;
}

inline bool is_square_zero(const ComplexMatrix& t, double tol = kSquareZeroTol) {
    const auto order = nilpotency_order(t, tol);
    return order && *order <= 2;
}

struct SymmetryCheck {
    bool holds = false;
    double residual = 0.0;
};

/// ‖T − C T* C‖ / max(‖T‖, ε).
inline double c_symmetry_residual(const ComplexMatrix& t, const Conjugation& c) {
    require_square(t, "is_c_symmetric");
    if (t.rows() != c.dim()) throw InputError("is_c_symmetric: size mismatch");
    const double scale = std::max(operator_norm(t), 1e-300);
    return operator_norm(t - conjugate_by(c, t.adjoint())) / scale;
}

inline SymmetryCheck is_c_symmetric(const ComplexMatrix& t, const Conjugation& c, double tol = kDefaultTol) {
    const double r = c_symmetry_residual(t, c);
    return {r <= tol, r};
}

/// Canonical form of a square-zero T: W T W* = [[0,0],[A,0]] ⊕ 0 with A = diag(singular_values).
///
/// Row blocks of W: coimage (r), range (r), extra kernel (extra_kernel_dim).
struct Nilpotent2Form {
    ComplexMatrix w;
    RealVector singular_values;
    Eigen::Index extra_kernel_dim = 0;

    Eigen::Index rank() const noexcept { return singular_values.size(); }

    /// [[0,0],[A,0]] ⊕ 0, the matrix W T W* should equal.
    ComplexMatrix block_form() const {
        const Eigen::Index r = rank(), n = w.rows();
        ComplexMatrix out = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < r; ++k) out(r + k, k) = singular_values(k);
        return out;
    }
};

inline void require_square_zero(const ComplexMatrix& t, const char* what) {
    require_square(t, what);
    if (!is_square_zero(t)) throw PreconditionError(std::string(what) + ": matrix is not nilpotent of order <= 2");
}

/// Splits C^n into coimage ⊕ range ⊕ extra kernel of a square-zero T.
inline Nilpotent2Form nilpotent2_form(const ComplexMatrix& t) {
    require_square_zero(t, "nilpotent2_form");
    const Eigen::Index n = t.rows();
    Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double cut = kRankCut * (s.size() ? s(0) : 0.0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cut && s(r) > 0.0) ++r;

    Nilpotent2Form form;
    form.singular_values = s.head(r);
    form.extra_kernel_dim = n - 2 * r;
    if (r == 0) {
        form.w = identity(n);
        return form;
    }
    // T v_k = σ_k u_k with u_k taken directly from T so the pairing is exact.
    ComplexMatrix frame(n, 2 * r);
    for (Eigen::Index k = 0; k < r; ++k) {
        ComplexVector v = svd.matrixV().col(k);
        v /= phase_of_leading_entry(v);
        frame.col(k) = v;
        frame.col(r + k) = t * v / s(k);
    }
    frame = orthonormalize_columns(frame);
    ComplexMatrix q(n, n);
    q.leftCols(2 * r) = frame;
    q.rightCols(n - 2 * r) = orthonormal_complement(frame, n);
    form.w = q.adjoint();
    return form;
}

struct Nilpotent2Conjugation {
    Conjugation conjugation;
    Nilpotent2Form form;
    double residual = 0.0;
};

/// Explicit conjugation for a square-zero T.
///
/// In the canonical basis A is a positive diagonal, so entrywise conjugation J commutes with it
/// and [[0,J],[J,0]] ⊕ J is a conjugation for [[0,0],[A,0]] ⊕ 0. Pulled back through W this
/// gives G = W* G_block conj(W).
inline Nilpotent2Conjugation conjugation_for_nilpotent2(const ComplexMatrix& t) {
    Nilpotent2Form form = nilpotent2_form(t);
    const Eigen::Index n = t.rows(), r = form.rank();
    ComplexMatrix block = identity(n);
    if (r > 0) {
        block.topLeftCorner(2 * r, 2 * r).setZero();
        block.block(0, r, r, r) = identity(r);
        block.block(r, 0, r, r) = identity(r);
    }
    const ComplexMatrix q = form.w.adjoint();
    ComplexMatrix g = q * block * q.transpose();
    g = (g + g.transpose()) / 2.0;
    auto c = Conjugation::from_matrix(std::move(g), 1e-9);
    const double residual = c_symmetry_residual(t, c);
    return {std::move(c), std::move(form), residual};
}

/// ⊕_j (λ_j/2)[[1,i],[i,−1]] followed by one 1×1 zero block per extra kernel dimension.
inline std::vector<ComplexMatrix> canonical_block_decomposition(const ComplexMatrix& t) {
    const Nilpotent2Form form = nilpotent2_form(t);
    std::vector<ComplexMatrix> blocks;
    for (Eigen::Index j = 0; j < form.rank(); ++j) {
        ComplexMatrix b(2, 2);
        b << 1.0, kI, kI, -1.0;
        blocks.push_back(form.singular_values(j) / 2.0 * b);
    }
    for (Eigen::Index k = 0; k < form.extra_kernel_dim; ++k) blocks.push_back(ComplexMatrix::Zero(1, 1));
    return blocks;
}

/// |‖w(T,T*)‖ − ‖w(T*,T)‖|.
inline double word_gap(const ComplexMatrix& t, const NCWord& w) {
    const ComplexMatrix ts = t.adjoint();
    return std::abs(operator_norm(eval_nc(w, t, ts)) - operator_norm(eval_nc(w, ts, t)));
}

/// |‖p(T,T*)‖ − ‖p̃(T*,T)‖|.
inline double polynomial_gap(const ComplexMatrix& t, const NCPolynomial& p) {
    const ComplexMatrix ts = t.adjoint();
    return std::abs(operator_norm(eval_nc(p, t, ts)) - operator_norm(eval_nc(p.conjugate_coefficients(), ts, t)));
}

enum class SearchMode { exhaustive, sampled };

struct WordObstruction {
    NCWord word;
    double gap = 0.0;
};

/// First word (length-lexicographic, x < y) whose gap exceeds tol·‖T‖^len, or, in sampled mode,
/// the first of `samples` random words that does.
inline std::optional<WordObstruction> word_obstruction_search(const ComplexMatrix& t, std::size_t max_len,
                                                              SearchMode mode = SearchMode::exhaustive,
                                                              std::uint64_t seed = 0, double tol = kDefaultTol,
                                                              std::size_t samples = 256) {
    require_square(t, "word_obstruction_search");
    const double norm = operator_norm(t);
    auto test = [&](const NCWord& w) -> std::optional<WordObstruction> {
        const double gap = word_gap(t, w);
        if (gap > tol * std::pow(norm, static_cast<double>(w.size()))) return WordObstruction{w, gap};
        return std::nullopt;
    };
    if (mode == SearchMode::exhaustive) {
        for (const NCWord& w : words_up_to(max_len))
            if (auto hit = test(w)) return hit;
        return std::nullopt;
    }
    Rng rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        const auto len = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(std::max<std::size_t>(max_len, 1))));
        std::vector<Letter> letters(len);
        for (auto& l : letters) l = rng.uniform_int(0, 1) ? Letter::y : Letter::x;
        if (auto hit = test(NCWord(std::move(letters)))) return hit;
    }
    return std::nullopt;
}

struct PolynomialObstruction {
    NCPolynomial polynomial;
    double gap = 0.0;
};

/// Random polynomials with complex Gaussian coefficients over words of length ≤ max_len, `terms`
/// words per polynomial. Reports the first whose gap exceeds tol·(Σ|c|·‖T‖^len). This only
/// searches; absence of a hit says nothing either way.
inline std::optional<PolynomialObstruction> polynomial_obstruction_search(const ComplexMatrix& t, std::size_t max_len,
                                                                          std::size_t terms, std::size_t samples,
                                                                          std::uint64_t seed, double tol = kDefaultTol) {
    require_square(t, "polynomial_obstruction_search");
    const double norm = operator_norm(t);
    const auto words = words_up_to(max_len);
    Rng rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        NCPolynomial p;
        double scale = 0.0;
        for (std::size_t j = 0; j < terms; ++j) {
            const auto& w = words[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(words.size()) - 1))];
            const Complex c = rng.complex_normal();
            p.add(w, c);
            scale += std::abs(c) * std::pow(norm, static_cast<double>(w.size()));
        }
        if (p.empty()) continue;
        const double gap = polynomial_gap(t, p);
        if (gap > tol * scale) return PolynomialObstruction{std::move(p), gap};
    }
    return std::nullopt;
}

enum class Verdict { c_symmetric, obstructed, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::c_symmetric: return "c_symmetric";
        case Verdict::obstructed: return "obstructed";
        default: return "inconclusive";
    }
}

struct CsoCertificate {
    Verdict verdict = Verdict::inconclusive;
    std::optional<Conjugation> conjugation;
    std::optional<NCWord> obstruction_word;
    double residual = 0.0;
    std::optional<double> obstruction_gap;
    std::uint64_t seed = 0;
};

struct SearchConfig {
    double tol = kDefaultTol;
    int starts = 64;
    int iterations = 500;          ///< per start
    double step_tol = 1e-12;       ///< convergence: successive iterates closer than this
    std::size_t max_word_len = 6;
    Eigen::Index max_search_dim = 16;
    std::uint64_t seed = 0;
};

namespace detail {

/// Orthonormal basis of {X : T X = X Tᵀ, X = Xᵀ} in column-major vec coordinates.
inline ComplexMatrix symmetric_intertwiners(const ComplexMatrix& t) {
    const Eigen::Index n = t.rows(), n2 = n * n;
    const ComplexMatrix id = identity(n);
    ComplexMatrix k(2 * n2, n2);
    k.topRows(n2) = tensor(id, t) - tensor(t, id);
    k.bottomRows(n2) = identity(n2) - tensor_swap(n);
    const double scale = std::max(operator_norm(t), 1.0);
    k.bottomRows(n2) *= scale;
    return nullspace(k, 1e-9);
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

/// Levenberg–Marquardt on X*X − I over X in span(basis); projection alone converges linearly.
inline ComplexMatrix polish_unitary_in_span(const ComplexMatrix& basis, const ComplexMatrix& start, int max_evals) {
    const Eigen::Index n = start.rows(), d = basis.cols();
    const ComplexVector c0 = basis.adjoint() * Eigen::Map<const ComplexVector>(start.data(), n * n);
    auto to_matrix = [&](const opt::Vector& p) {
        const ComplexVector c = p.head(d).cast<Complex>() + kI * p.tail(d).cast<Complex>();
        return unvec(basis * c, n);
    };
    const opt::ResidualFn residual = [&](const opt::Vector& p) {
        const ComplexMatrix x = to_matrix(p);
        const ComplexMatrix e = x.adjoint() * x - identity(n);
        opt::Vector r(2 * n * n);
        r.head(n * n) = Eigen::Map<const ComplexVector>(e.data(), n * n).real();
        r.tail(n * n) = Eigen::Map<const ComplexVector>(e.data(), n * n).imag();
        return r;
    };
    opt::Vector p0(2 * d);
    p0 << c0.real(), c0.imag();
    return to_matrix(opt::least_squares_polish(residual, p0, max_evals).x);
}

}  // namespace detail

/// Symmetric unitary G with T G = G Tᵀ by alternating projection between the symmetric
/// intertwiner space and the unitary group, multi-start; the lowest successful start wins.
inline std::optional<Conjugation> intertwiner_search(const ComplexMatrix& t, const SearchConfig& cfg) {
    const Eigen::Index n = t.rows();
    if (n > cfg.max_search_dim) return std::nullopt;
    const ComplexMatrix basis = detail::symmetric_intertwiners(t);
    if (basis.cols() == 0) return std::nullopt;
    for (int start = 0; start < cfg.starts; ++start) {
        Rng rng(split_seed(cfg.seed, static_cast<std::uint64_t>(start)));
        ComplexVector coeffs(basis.cols());
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) = rng.complex_normal();
        ComplexMatrix u = unitary_part(detail::unvec(basis * coeffs, n));
        for (int it = 0; it < cfg.iterations; ++it) {
            const ComplexVector flat = Eigen::Map<const ComplexVector>(u.data(), n * n);
            ComplexMatrix x = detail::unvec(basis * (basis.adjoint() * flat), n);
            x = (x + x.transpose()) / 2.0;
            ComplexMatrix next = unitary_part(x);
            const double step = (next - u).norm();
            u = std::move(next);
            if (step < cfg.step_tol) break;
        }
        u = detail::polish_unitary_in_span(basis, u, 200 * static_cast<int>(basis.cols() + 1));
        ComplexMatrix g = (u + u.transpose()) / 2.0;
        g = unitary_part(g);
        g = (g + g.transpose()) / 2.0;
        Eigen::Map<const ComplexVector> flat(g.data(), n * n);
        g /= phase_of_leading_entry(flat);
        if (operator_norm(g - g.transpose()) > cfg.tol || unitarity_defect(g) > cfg.tol) continue;
        auto c = Conjugation::from_matrix(std::move(g), cfg.tol);
        if (c_symmetry_residual(t, c) <= cfg.tol) return c;
    }
    return std::nullopt;
}

/// Best-effort complex symmetry decision with a reproducible certificate.
inline CsoCertificate find_conjugation(const ComplexMatrix& t, const SearchConfig& cfg = {}) {
    require_square(t, "find_conjugation");
    CsoCertificate cert;
    cert.seed = cfg.seed;
    const double norm = operator_norm(t);

    if (operator_norm(t - t.transpose()) <= cfg.tol * std::max(norm, 1e-300)) {
        auto c = Conjugation::entrywise(t.rows());
        cert.residual = c_symmetry_residual(t, c);
        cert.conjugation = std::move(c);
        cert.verdict = Verdict::c_symmetric;
        return cert;
    }
    if (is_square_zero(t)) {
        auto found = conjugation_for_nilpotent2(t);
        cert.residual = found.residual;
        if (found.residual <= cfg.tol) {
            cert.conjugation = std::move(found.conjugation);
            cert.verdict = Verdict::c_symmetric;
            return cert;
        }
    }
    if (auto c = intertwiner_search(t, cfg)) {
        cert.residual = c_symmetry_residual(t, *c);
        cert.conjugation = std::move(*c);
        cert.verdict = Verdict::c_symmetric;
        return cert;
    }
    if (auto hit = word_obstruction_search(t, cfg.max_word_len, SearchMode::exhaustive, cfg.seed, cfg.tol)) {
        cert.verdict = Verdict::obstructed;
        cert.obstruction_word = hit->word;
        cert.obstruction_gap = hit->gap;
        cert.residual = 0.0;
        return cert;
    }
    cert.verdict = Verdict::inconclusive;
    return cert;
}

}  // namespace nilpo

#endif  // NILPO_CSYM_HPP
