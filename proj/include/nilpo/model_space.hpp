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

#ifndef NILPO_MODEL_SPACE_HPP
#define NILPO_MODEL_SPACE_HPP

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "linalg.hpp"

namespace nilpo {

/// Zeros must stay this far inside the unit circle.
inline constexpr double kBoundaryMargin = 1e-8;
/// Rational symbols need every pole outside this radius.
inline constexpr double kPoleMargin = 1e-6;
inline constexpr int kDefaultQuad = 1024;
inline constexpr double kGramTol = 1e-8;

// ---------------------------------------------------------------------------------------------
// Polynomials in z, coefficients in ascending order.

using Coefficients = std::vector<Complex>;

inline Complex poly_eval(const Coefficients& c, Complex z) {
    Complex acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Coefficients poly_mul(const Coefficients& a, const Coefficients& b) {
    if (a.empty() || b.empty()) return {};
    Coefficients out(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline Coefficients poly_trim(Coefficients c) {
    while (!c.empty() && c.back() == Complex{}) c.pop_back();
    return c;
}

/// Roots via companion matrix eigenvalues.
inline std::vector<Complex> poly_roots(const Coefficients& coeffs) {
    const Coefficients c = poly_trim(coeffs);
    if (c.size() <= 1) return {};
    const auto n = static_cast<Eigen::Index>(c.size() - 1);
    ComplexMatrix comp = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) comp(k, n - 1) = -c[static_cast<std::size_t>(k)] / c.back();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, false);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

/// q with p = (z − a) q + remainder; remainder discarded.
inline Coefficients poly_deflate(const Coefficients& p, Complex a) {
    if (p.size() <= 1) return {};
    Coefficients q(p.size() - 1);
    Complex carry = p.back();
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = p[k] + a * carry;
    }
    return q;
}

/// Σ c_k X^k by Horner.
inline ComplexMatrix poly_eval(const Coefficients& c, const ComplexMatrix& x) {
    ComplexMatrix acc = ComplexMatrix::Zero(x.rows(), x.cols());
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it * identity(x.rows());
    return acc;
}

// ---------------------------------------------------------------------------------------------

/// Finite Blaschke product u(z) = ∏ (a_k − z)/(1 − ā_k z), with the factor for a_k = 0 taken as z.
/// u is fixed only up to a unimodular constant; the model space does not depend on it.
class BlaschkeProduct {
   public:
    BlaschkeProduct() = default;
    BlaschkeProduct(std::initializer_list<Complex> zeros) : BlaschkeProduct(std::vector<Complex>(zeros)) {}
    explicit BlaschkeProduct(std::vector<Complex> zeros) : zeros_(std::move(zeros)) {
        for (const Complex& a : zeros_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InputError("Blaschke zero is not finite");
            if (std::abs(a) > 1.0 - kBoundaryMargin) throw InputError("Blaschke zero too close to the unit circle");
        }
    }

    /// z^n.
    static BlaschkeProduct monomial(std::size_t n) { return BlaschkeProduct(std::vector<Complex>(n, Complex{})); }

    const std::vector<Complex>& zeros() const noexcept { return zeros_; }
    std::size_t degree() const noexcept { return zeros_.size(); }

    static Complex factor(Complex a, Complex z) {
        if (a == Complex{}) return z;
        const Complex den = 1.0 - std::conj(a) * z;
        if (std::abs(den) < 1e-300) throw EvaluationError("Blaschke product evaluated at a pole");
        return (a - z) / den;
    }

    Complex operator()(Complex z) const {
        Complex acc = 1.0;
        for (const Complex& a : zeros_) acc *= factor(a, z);
        return acc;
    }

    /// Zero multiset concatenation, i.e. the product u·v.
    BlaschkeProduct operator*(const BlaschkeProduct& rhs) const {
        std::vector<Complex> z = zeros_;
        z.insert(z.end(), rhs.zeros_.begin(), rhs.zeros_.end());
        return BlaschkeProduct(std::move(z));
    }

    /// Numerator ∏ (a − z) (or z) and denominator ∏ (1 − ā z) as polynomials.
    Coefficients numerator() const {
        Coefficients acc{1.0};
        for (const Complex& a : zeros_)
            acc = poly_mul(acc, a == Complex{} ? Coefficients{0.0, 1.0} : Coefficients{a, -1.0});
        return acc;
    }
    Coefficients denominator() const {
        Coefficients acc{1.0};
        for (const Complex& a : zeros_)
            if (a != Complex{}) acc = poly_mul(acc, Coefficients{1.0, -std::conj(a)});
        return acc;
    }

   private:
    std::vector<Complex> zeros_;
};

/// Analytic symbol: a polynomial, or a rational function whose poles lie outside the closed disk.
class Symbol {
   public:
    Symbol() : num_{}, den_{1.0} {}

    static Symbol polynomial(Coefficients coeffs) {
        Symbol s;
        s.num_ = poly_trim(std::move(coeffs));
        s.validate_finite();
        return s;
    }

    static Symbol rational(Coefficients num, Coefficients den) {
        den = poly_trim(std::move(den));
        if (den.empty()) throw InputError("rational symbol: zero denominator");
        Symbol s;
        s.num_ = poly_trim(std::move(num));
        s.den_ = std::move(den);
        s.validate_finite();
        if (s.den_.size() == 1) {
            for (auto& c : s.num_) c /= s.den_[0];
            s.den_ = {1.0};
            return s;
        }
        for (const Complex& p : poly_roots(s.den_))
            if (std::abs(p) <= 1.0 + kPoleMargin) throw InputError("rational symbol has a pole in the closed disk");
        return s;
    }

    static Symbol from_blaschke(const BlaschkeProduct& u) { return rational(u.numerator(), u.denominator()); }

    Complex operator()(Complex z) const { return poly_eval(num_, z) / poly_eval(den_, z); }

    bool is_polynomial() const noexcept { return den_.size() == 1 && den_[0] == Complex{1.0}; }
    bool is_zero() const noexcept { return num_.empty(); }
    const Coefficients& numerator() const noexcept { return num_; }
    const Coefficients& denominator() const noexcept { return den_; }

    std::size_t degree() const noexcept {
        const std::size_t dn = num_.empty() ? 0 : num_.size() - 1;
        return std::max(dn, den_.size() - 1);
    }

    Symbol operator*(const Symbol& rhs) const {
        if (is_polynomial() && rhs.is_polynomial()) return polynomial(poly_mul(num_, rhs.num_));
        return rational(poly_mul(num_, rhs.num_), poly_mul(den_, rhs.den_));
    }

    Symbol scaled(Complex c) const {
        Symbol s = *this;
        for (auto& k : s.num_) k *= c;
        s.num_ = poly_trim(std::move(s.num_));
        return s;
    }

   private:
    void validate_finite() const {
        for (const auto* list : {&num_, &den_})
            for (const Complex& c : *list)
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("symbol coefficient is not finite");
    }

    Coefficients num_;
    Coefficients den_;
};

/// β_a(z) = (z − a)/(1 − ā z), the factor used to build the basis.
inline Complex disk_automorphism(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

/// k-th Takenaka–Malmquist–Walsh function: √(1−|a_k|²)/(1 − ā_k z) · ∏_{j<k} β_{a_j}(z).
/// For all-zero sequences these are the monomials z^k.
inline Complex tmw_function(const std::vector<Complex>& zeros, std::size_t k, Complex z) {
    Complex acc = std::sqrt(1.0 - std::norm(zeros[k])) / (1.0 - std::conj(zeros[k]) * z);
    for (std::size_t j = 0; j < k; ++j) acc *= disk_automorphism(zeros[j], z);
    return acc;
}

/// Uniform nodes e^{2πi m/Q}.
inline ComplexVector circle_nodes(int quad) {
    ComplexVector z(quad);
    for (int m = 0; m < quad; ++m) z(m) = std::polar(1.0, 2.0 * std::numbers::pi * m / quad);
    return z;
}

/// K_u = H² ⊖ uH² with its Takenaka–Malmquist–Walsh basis sampled on the circle. Inner products
/// are trapezoidal sums; construction fails with AccuracyError if the sampled Gram matrix is
/// further than kGramTol from the identity.
class ModelSpace {
   public:
    explicit ModelSpace(BlaschkeProduct u, int quad = kDefaultQuad) : u_(std::move(u)), quad_(quad) {
        if (quad < 8) throw InputError("model space: quadrature needs at least 8 nodes");
        nodes_ = circle_nodes(quad);
        const auto n = static_cast<Eigen::Index>(u_.degree());
        samples_.resize(quad, n);
        u_samples_.resize(quad);
        for (int m = 0; m < quad; ++m) {
            u_samples_(m) = u_(nodes_(m));
            for (Eigen::Index k = 0; k < n; ++k)
                samples_(m, k) = tmw_function(u_.zeros(), static_cast<std::size_t>(k), nodes_(m));
        }
        gram_defect_ = n == 0 ? 0.0 : operator_norm(inner(samples_, samples_) - identity(n));
        if (gram_defect_ > kGramTol)
            throw AccuracyError("model space Gram residual " + fmt_real(gram_defect_) + " exceeds tolerance at " +
                                std::to_string(quad) + " quadrature nodes");
    }

    const BlaschkeProduct& inner_function() const noexcept { return u_; }
    Eigen::Index dim() const noexcept { return samples_.cols(); }
    int quad() const noexcept { return quad_; }
    const ComplexVector& nodes() const noexcept { return nodes_; }
    /// samples()(m, k) = e_k(z_m).
    const ComplexMatrix& samples() const noexcept { return samples_; }
    const ComplexVector& u_samples() const noexcept { return u_samples_; }
    double gram_defect() const noexcept { return gram_defect_; }

    /// Matrix of pairwise inner products ⟨g_j, f_i⟩, i.e. F* G / Q for sampled families F, G.
    ComplexMatrix inner(const ComplexMatrix& f, const ComplexMatrix& g) const {
        return f.adjoint() * g / static_cast<double>(quad_);
    }

    ComplexVector sample(const Symbol& phi) const {
        ComplexVector s(quad_);
        for (int m = 0; m < quad_; ++m) s(m) = phi(nodes_(m));
        return s;
    }

   private:
    BlaschkeProduct u_;
    int quad_;
    ComplexVector nodes_;
    ComplexMatrix samples_;
    ComplexVector u_samples_;
    double gram_defect_ = 0.0;
};

/// Matrix of A_φ^u = P_u M_φ |K_u in the basis: entries ⟨φ e_j, e_i⟩.
inline ComplexMatrix tto_matrix(const ModelSpace& space, const Symbol& phi) {
    if (space.dim() < 1) throw InputError("tto_matrix: model space is trivial");
    const auto needed = 8 * static_cast<int>(space.inner_function().degree() + phi.degree());
    if (space.quad() < needed)
        throw PreconditionError("tto_matrix: " + std::to_string(space.quad()) + " quadrature nodes, need at least " +
                                std::to_string(needed));
    return space.inner(space.samples(), space.sample(phi).asDiagonal() * space.samples());
}

inline ComplexMatrix tto_matrix(const BlaschkeProduct& u, const Symbol& phi, int quad = kDefaultQuad) {
    return tto_matrix(ModelSpace(u, quad), phi);
}

/// A_z^u.
inline ComplexMatrix compressed_shift(const ModelSpace& space) {
    return tto_matrix(space, Symbol::polynomial({0.0, 1.0}));
}

/// A_z^u from the closed form in the basis: a_i on the diagonal, and for i > j
/// √(1−|a_i|²)·√(1−|a_j|²)·∏_{j<k<i} (−ā_k). No quadrature involved.
inline ComplexMatrix compressed_shift_closed_form(const std::vector<Complex>& zeros) {
    const auto n = static_cast<Eigen::Index>(zeros.size());
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        a(j, j) = zeros[static_cast<std::size_t>(j)];
        const double dj = std::sqrt(1.0 - std::norm(zeros[static_cast<std::size_t>(j)]));
        Complex run = 1.0;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            a(i, j) = dj * std::sqrt(1.0 - std::norm(zeros[static_cast<std::size_t>(i)])) * run;
            run *= -std::conj(zeros[static_cast<std::size_t>(i)]);
        }
    }
    return a;
}

/// ‖φ(A_z^u) − A_φ^u‖ for polynomial φ.
inline double fn_calculus_check(const ModelSpace& space, const Symbol& phi) {
    if (!phi.is_polynomial()) throw InputError("fn_calculus_check: polynomial symbol required");
    const ComplexMatrix lhs = poly_eval(phi.numerator(), compressed_shift(space));
    return operator_norm(lhs - tto_matrix(space, phi));
}

/// C f = conj(z f)·u on K_u, as G_{ij} = ⟨C e_j, e_i⟩. Throws AccuracyError if G is not a
/// symmetric unitary to kGramTol.
inline Conjugation model_conjugation(const ModelSpace& space) {
    const ComplexMatrix& e = space.samples();
    ComplexMatrix ce(e.rows(), e.cols());
    for (Eigen::Index m = 0; m < e.rows(); ++m)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            ce(m, j) = space.u_samples()(m) * std::conj(space.nodes()(m) * e(m, j));
    ComplexMatrix g = space.inner(e, ce);
    try {
        return Conjugation::from_matrix(std::move(g), kGramTol);
    } catch (const InputError& err) {
        throw AccuracyError(std::string("model conjugation: ") + err.what() + "; raise the quadrature size");
    }
}

// ---------------------------------------------------------------------------------------------
// Hankel side.

/// Fourier coefficients ĉ(n) of sampled data on `quad` uniform nodes, indexed by n mod quad.
inline ComplexVector fourier_coefficients(const ComplexVector& samples) {
    Eigen::FFT<double> fft;
    std::vector<Complex> in(samples.data(), samples.data() + samples.size()), out;
    fft.fwd(out, in);
    ComplexVector c(samples.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = out[static_cast<std::size_t>(k)] / static_cast<double>(samples.size());
    return c;
}

inline Complex coefficient_at(const ComplexVector& c, long n) {
    const long q = static_cast<long>(c.size());
    return c(((n % q) + q) % q);
}

/// Smallest power of two ≥ max(quad, 4M).
inline int hankel_quadrature(int quad, int m) {
    int q = 1;
    while (q < std::max(quad, 4 * m)) q <<= 1;
    return q;
}

/// Finite section of H_ψ for ψ = ū φ: H(j, k) = ψ̂(−j−1−k), mapping z^k (k < M) to z^{−j−1}.
inline ComplexMatrix hankel_truncation(const BlaschkeProduct& u, const Symbol& phi, int m, int quad = kDefaultQuad) {
    if (m < 1) throw InputError("hankel_truncation: M must be positive");
    const int q = hankel_quadrature(quad, m);
    const ComplexVector z = circle_nodes(q);
    ComplexVector psi(q);
    for (int k = 0; k < q; ++k) psi(k) = std::conj(u(z(k))) * phi(z(k));
    const ComplexVector c = fourier_coefficients(psi);
    ComplexMatrix h(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) h(j, k) = coefficient_at(c, -j - 1 - k);
    return h;
}

/// M_u H_{ūφ} restricted to K_u, in the basis of K_u, built from an M×M Hankel section.
inline ComplexMatrix hankel_side_matrix(const BlaschkeProduct& u, const Symbol& phi, int m, int quad = kDefaultQuad) {
    const ComplexMatrix h = hankel_truncation(u, phi, m, quad);
    const ModelSpace space(u, hankel_quadrature(quad, m));
    const Eigen::Index n = space.dim();
    ComplexMatrix basis_coeffs(m, n);  // monomial coefficients of e_j
    ComplexMatrix anti_coeffs(m, n);   // coefficients of ū e_i at z^{−j'−1}
    for (Eigen::Index j = 0; j < n; ++j) {
        const ComplexVector ej = space.samples().col(j);
        const ComplexVector c = fourier_coefficients(ej);
        const ComplexVector d = fourier_coefficients(space.u_samples().conjugate().cwiseProduct(ej));
        for (int k = 0; k < m; ++k) {
            basis_coeffs(k, j) = coefficient_at(c, k);
            anti_coeffs(k, j) = coefficient_at(d, -k - 1);
        }
    }
    return anti_coeffs.adjoint() * h * basis_coeffs;
}

struct HankelCheck {
    int m = 0;
    double residual = 0.0;         ///< at M
    double residual_doubled = 0.0; ///< at 2M
    double floor = 0.0;            ///< rounding floor below which decrease is not required
};

/// Compares M_u H_{ūφ}|K_u against A_φ^u at sections M and 2M. Throws AccuracyError when the
/// residual fails to decrease while still above the rounding floor.
inline HankelCheck verify_hankel_factorization(const BlaschkeProduct& u, const Symbol& phi, int m,
                                               int quad = kDefaultQuad) {
    if (m < 64) throw PreconditionError("verify_hankel_factorization: M must be at least 64");
    HankelCheck out;
    out.m = m;
    const ModelSpace space(u, quad);
    const ComplexMatrix reference = tto_matrix(space, phi);
    out.floor = 1e-13 * std::max(1.0, operator_norm(reference));
    out.residual = operator_norm(hankel_side_matrix(u, phi, m, quad) - reference);
    out.residual_doubled = operator_norm(hankel_side_matrix(u, phi, 2 * m, quad) - reference);
    if (out.residual > out.floor && out.residual_doubled >= out.residual)
        throw AccuracyError("Hankel section does not converge: residual " + fmt_real(out.residual) + " at M=" +
                            std::to_string(m) + ", " + fmt_real(out.residual_doubled) + " at 2M");
    return out;
}

// ---------------------------------------------------------------------------------------------
// Coprimality and decompositions.

struct CoprimeReduction {
    BlaschkeProduct u;
    Symbol phi;
    std::vector<Complex> cancelled;
};

/// Removes inner factors shared by u and a polynomial φ while keeping ψ = ū φ unchanged on the
/// circle: for φ = (z − a) q, the factor b_a leaves u and φ becomes (ā z − 1) q (or q when a = 0).
inline CoprimeReduction cancel_common_inner_factor(const BlaschkeProduct& u, const Symbol& phi, double tol = 1e-10) {
    if (!phi.is_polynomial()) throw InputError("cancel_common_inner_factor: polynomial symbol required");
    CoprimeReduction out;
    Coefficients p = phi.numerator();
    std::vector<Complex> kept;
    double scale = 0.0;
    for (const Complex& c : p) scale += std::abs(c);
    for (const Complex& a : u.zeros()) {
        if (!p.empty() && std::abs(poly_eval(p, a)) <= tol * std::max(scale, 1e-300) && p.size() > 1) {
            Coefficients q = poly_deflate(p, a);
            p = a == Complex{} ? q : poly_mul(Coefficients{-1.0, std::conj(a)}, q);
            out.cancelled.push_back(a);
        } else {
            kept.push_back(a);
        }
    }
    out.u = BlaschkeProduct(std::move(kept));
    out.phi = Symbol::polynomial(std::move(p));
    return out;
}

/// Samples of a frame: the basis of each part multiplied by a sampled inner function.
struct FramePart {
    ComplexVector multiplier;  ///< sampled inner function, e.g. u or u·v
    BlaschkeProduct space;
};

/// Q with Q_{ij} = ⟨f_j, e_i⟩ for the concatenated frame f of the parts against the basis e of
/// `target`. Throws AccuracyError if Q fails to be unitary to kGramTol.
inline ComplexMatrix frame_change(const ModelSpace& target, const std::vector<FramePart>& parts,
                                  ComplexMatrix* frame_samples = nullptr) {
    Eigen::Index cols = 0;
    for (const auto& p : parts) cols += static_cast<Eigen::Index>(p.space.degree());
    ComplexMatrix frame(target.quad(), cols);
    Eigen::Index c = 0;
    for (const auto& p : parts) {
        if (p.space.degree() == 0) continue;
        const ModelSpace part(p.space, target.quad());
        frame.middleCols(c, part.dim()) = p.multiplier.asDiagonal() * part.samples();
        c += part.dim();
    }
    ComplexMatrix q = target.inner(target.samples(), frame);
    const double defect = q.size() == 0 ? 0.0 : unitarity_defect(q);
    if (defect > kGramTol) throw AccuracyError("frame change is not unitary (defect " + fmt_real(defect) + ")");
    if (frame_samples) *frame_samples = std::move(frame);
    return q;
}

struct Decomposition {
    ComplexMatrix q;                      ///< basis coordinates -> frame coordinates
    std::vector<Eigen::Index> part_dims;  ///< sizes of the summands in frame order
    double unitarity_defect = 0.0;
};

/// K_{uv} = K_u ⊕ u K_v.
inline Decomposition modelspace_decompose(const BlaschkeProduct& u, const BlaschkeProduct& v, int quad = kDefaultQuad) {
    const ModelSpace target(u * v, quad);
    const ModelSpace su(u, quad);
    const ComplexVector one = ComplexVector::Ones(quad);
    Decomposition d;
    d.q = frame_change(target, {{one, u}, {su.u_samples(), v}});
    d.part_dims = {static_cast<Eigen::Index>(u.degree()), static_cast<Eigen::Index>(v.degree())};
    d.unitarity_defect = d.q.size() == 0 ? 0.0 : unitarity_defect(d.q);
    return d;
}

/// K_{u²v} = K_u ⊕ u K_v ⊕ uv K_u, the target basis built from the zero sequence (u, u, v).
inline Decomposition modelspace_decompose3(const BlaschkeProduct& u, const BlaschkeProduct& v, int quad = kDefaultQuad) {
    const ModelSpace target(u * u * v, quad);
    const ModelSpace su(u, quad), sv(v, quad);
    const ComplexVector one = ComplexVector::Ones(quad);
    Decomposition d;
    d.q = frame_change(target, {{one, u}, {su.u_samples(), v}, {su.u_samples().cwiseProduct(sv.u_samples()), u}});
    d.part_dims = {static_cast<Eigen::Index>(u.degree()), static_cast<Eigen::Index>(v.degree()),
                   static_cast<Eigen::Index>(u.degree())};
    d.unitarity_defect = d.q.size() == 0 ? 0.0 : unitarity_defect(d.q);
    return d;
}

struct BlockStructure {
    ComplexMatrix matrix;          ///< A^{uv}_{vφ} from K_u ⊕ uK_v to vK_u ⊕ K_v
    double off_block = 0.0;        ///< largest norm among the three blocks that must vanish
    double leading_block = 0.0;    ///< ‖top-left block − A^u_φ‖
    double spectrum = 0.0;         ///< singular value distance, top-left block vs A^u_φ
    double residual() const { return std::max({off_block, leading_block, spectrum}); }
};

/// Matrix of A^{uv}_{vφ} in the split frames, which should be [[A^u_φ, 0], [0, 0]].
inline BlockStructure block_structure_check(const BlaschkeProduct& u, const BlaschkeProduct& v, const Symbol& phi,
                                            int quad = kDefaultQuad) {
    const ModelSpace target(u * v, quad), su(u, quad), sv(v, quad);
    const Eigen::Index r = su.dim(), s = sv.dim();
    ComplexMatrix domain(quad, r + s), codomain(quad, r + s);
    domain.leftCols(r) = su.samples();
    domain.rightCols(s) = su.u_samples().asDiagonal() * sv.samples();
    codomain.leftCols(r) = sv.u_samples().asDiagonal() * su.samples();
    codomain.rightCols(s) = sv.samples();
    const Symbol vphi = Symbol::from_blaschke(v) * phi;
    BlockStructure out;
    out.matrix = target.inner(codomain, target.sample(vphi).asDiagonal() * domain);
    const ComplexMatrix a = tto_matrix(su, phi);
    auto block_norm = [](const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : operator_norm(m); };
    out.off_block = std::max({block_norm(out.matrix.topRightCorner(r, s)), block_norm(out.matrix.bottomLeftCorner(s, r)),
                              block_norm(out.matrix.bottomRightCorner(s, s))});
    out.leading_block = operator_norm(out.matrix.topLeftCorner(r, r) - a);
    out.spectrum = spectrum_distance(singular_values(out.matrix.topLeftCorner(r, r)), singular_values(a));
    return out;
}

}  // namespace nilpo

#endif  // NILPO_MODEL_SPACE_HPP
