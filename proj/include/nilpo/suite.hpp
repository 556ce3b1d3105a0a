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

#ifndef NILPO_SUITE_HPP
#define NILPO_SUITE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "indestructible.hpp"
#include "json_io.hpp"
#include "synthesis.hpp"

namespace nilpo::suite {

struct RunConfig {
    std::uint64_t seed = 2026;
    double tol = kDefaultTol;
    int quad = kDefaultQuad;
    int budget = 3000;  ///< simplex evaluations per optimizer start
};

inline void validate(const RunConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw InputError("tol must be positive");
    if (cfg.quad < 64) throw InputError("quad must be at least 64");
    if (cfg.budget < 1) throw InputError("budget must be positive");
}

enum class Status { pass, fail, unconverged };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "unconverged";
    }
}

struct Entry {
    std::string name;
    std::string anchor;
    Status status = Status::fail;
    std::map<std::string, double> residuals;
    std::string detail;
    double wall_seconds = 0.0;
};

struct Report {
    RunConfig config;
    std::vector<Entry> entries;

    bool all_passed() const {
        for (const auto& e : entries)
            if (e.status != Status::pass) return false;
        return true;
    }
};

/// Wall times are left out unless asked for, so equal configs give byte-identical output.
inline io::json report_to_json(const Report& r, bool with_timings = false) {
    io::json entries = io::json::array();
    for (const auto& e : r.entries) {
        io::json j = {{"name", e.name}, {"anchor", e.anchor}, {"status", to_string(e.status)},
                      {"residuals", e.residuals}, {"detail", e.detail}};
        if (with_timings) j["wall_seconds"] = e.wall_seconds;
        entries.push_back(std::move(j));
    }
    return {{"seed", r.config.seed},
            {"tol", r.config.tol},
            {"quad", r.config.quad},
            {"budget", r.config.budget},
            {"passed", r.all_passed()},
            {"entries", std::move(entries)}};
}

namespace detail {

inline Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

/// Scales a pinned threshold with the configured tolerance (identity at the default 1e-9).
inline double scaled(const RunConfig& cfg, double pinned) { return pinned * (cfg.tol / kDefaultTol); }

inline void track_max(std::map<std::string, double>& m, const std::string& key, double v) {
    auto [it, inserted] = m.emplace(key, v);
    if (!inserted) it->second = std::max(it->second, v);
}

inline Entry square_zero_conjugations(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    const double tol = scaled(cfg, 1e-9);
    Rng rng(seed);
    bool ok = true;
    e.residuals["max_residual"] = 0.0;
    e.residuals["max_g_defect"] = 0.0;
    e.residuals["max_isometry_defect"] = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int dim = rng.uniform_int(1, 12);
        const int rank = rng.uniform_int(0, dim / 2);
        const ComplexMatrix t = random_nilpotent2(rng, rank, dim - 2 * rank);
        const auto found = conjugation_for_nilpotent2(t);
        const Conjugation& c = found.conjugation;
        const double g_defect = std::max(c.symmetry_defect(), c.unitarity_defect());
        const ComplexVector x = random_gaussian(rng, dim, 1), y = random_gaussian(rng, dim, 1);
        const double inner = std::abs(c.apply(x).dot(c.apply(y)) - std::conj(x.dot(y))) / (x.norm() * y.norm());
        const double invol = (c.apply(c.apply(x)) - x).norm() / x.norm();
        const double iso = std::max(inner, invol);
        track_max(e.residuals, "max_residual", found.residual);
        track_max(e.residuals, "max_g_defect", g_defect);
        track_max(e.residuals, "max_isometry_defect", iso);
        ok = ok && found.residual <= tol && g_defect <= tol && iso <= 1e-12;
    }
    e.status = verdict(ok);
    e.detail = "200 random T with T^2 = 0, dims <= 12";
    return e;
}

inline Entry explicit_blocks(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    const double tol = scaled(cfg, 1e-7);
    Rng rng(seed);
    bool ok = true;
    e.residuals["max_residual"] = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int r = rng.uniform_int(1, 6);
        ComplexMatrix t = ComplexMatrix::Zero(2 * r, 2 * r);
        for (int j = 0; j < r; ++j) t(r + j, j) = rng.uniform(0.1, 3.0);
        const auto blocks = canonical_block_decomposition(t);
        const ComplexMatrix y = direct_sum(std::span<const ComplexMatrix>(blocks));
        const auto eq = unitary_equivalence_check(t, y, split_seed(seed, static_cast<std::uint64_t>(k)));
        track_max(e.residuals, "max_residual", eq.residual);
        ok = ok && eq.residual <= tol && eq.screen_passed;
    }
    e.status = verdict(ok);
    e.detail = "50 random positive diagonal A, dims <= 6";
    return e;
}

inline Entry indestructible_forward(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    const double tol = scaled(cfg, 1e-9);
    Rng rng(seed);
    bool ok = true;
    e.residuals["max_residual"] = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int dim_a = rng.uniform_int(2, 4);
        const int rank = rng.uniform_int(1, dim_a / 2);
        const ComplexMatrix a = random_nilpotent2(rng, rank, dim_a - 2 * rank);
        const int dim_b = rng.uniform_int(1, 4);
        const ComplexMatrix b = random_gaussian(rng, dim_b, dim_b);
        const Conjugation c = nilpotent2_tensor_conjugation(a, b);
        const auto check = is_c_symmetric(tensor(a, b), c, tol);
        track_max(e.residuals, "max_residual", check.residual);
        ok = ok && check.holds;
    }
    e.status = verdict(ok);
    e.detail = "100 random square-zero A (dims <= 4) with Gaussian B (dims <= 4)";
    return e;
}

inline Entry indestructible_reverse(const RunConfig&, std::uint64_t seed) {
    Entry e;
    Rng rng(seed);
    bool ok = true;
    e.residuals["max_norm_wB_error"] = 0.0;
    e.residuals["max_norm_wB_rev_error"] = 0.0;
    e.residuals["min_norm_wA"] = std::numeric_limits<double>::infinity();
    e.residuals["max_tensor_identity_error"] = 0.0;
    int made = 0;
    while (made < 100) {
        const int dim = rng.uniform_int(1, 5);
        const ComplexMatrix a = random_gaussian(rng, dim, dim);
        const double na = operator_norm(a);
        if (operator_norm(a * a) <= 0.1 * na * na) continue;
        ++made;
        const auto cert = destructor_witness(a, 1.0, 2.0);
        const double err_b = std::abs(cert.norm_wb - 2.0), err_rev = std::abs(cert.norm_wb_rev - 4.0);
        const double norm_wa_rev = operator_norm(eval_nc(cert.word, a.adjoint(), a));
        const double tensor_err =
            std::max(std::abs(cert.norm_w_tensor.value_or(0.0) - 2.0 * cert.norm_wa) / cert.norm_wa,
                     std::abs(cert.norm_w_tensor_rev.value_or(0.0) - 4.0 * norm_wa_rev) / norm_wa_rev);
        track_max(e.residuals, "max_norm_wB_error", err_b);
        track_max(e.residuals, "max_norm_wB_rev_error", err_rev);
        e.residuals["min_norm_wA"] = std::min(e.residuals["min_norm_wA"], cert.norm_wa);
        track_max(e.residuals, "max_tensor_identity_error", tensor_err);
        ok = ok && err_b <= 1e-10 && err_rev <= 1e-10 && cert.norm_wa > 1e-6 &&
             cert.conclusion == Destruction::destroyed && tensor_err <= 1e-9;
    }
    e.status = verdict(ok);
    e.detail = "100 random A with ||A^2|| > 0.1 ||A||^2, dims <= 5, alpha = 1, beta = 2";
    return e;
}

inline Entry twisted_tensor(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    const double tol = scaled(cfg, 1e-9);
    Rng rng(seed);
    bool ok = true;
    e.residuals["max_residual"] = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int n = rng.uniform_int(1, 5);
        const ComplexMatrix a = random_gaussian(rng, n, n);
        const Conjugation j = Conjugation::entrywise(n);
        const auto check = is_c_symmetric(twisted_square(a, j), swap_conjugation(j, n), tol);
        track_max(e.residuals, "max_residual", check.residual);
        ok = ok && check.holds;
    }
    e.status = verdict(ok);
    e.detail = "50 random A, dims <= 5, entrywise J";
    return e;
}

inline Entry shift_coshift(const RunConfig&, std::uint64_t) {
    Entry e;
    constexpr int cutoff = 8;
    const auto blocks = shift_tensor_coshift_blocks(cutoff);
    bool ok = static_cast<int>(blocks.size()) == cutoff;
    std::vector<ComplexMatrix> parts;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        ok = ok && blocks[k].restriction.rows() == static_cast<Eigen::Index>(k + 1) &&
             is_single_jordan_chain(blocks[k].restriction);
        parts.push_back(blocks[k].restriction);
    }
    auto nonzero = [](const RealVector& s) {
        std::vector<double> v;
        for (Eigen::Index k = 0; k < s.size(); ++k)
            if (s(k) > 1e-12) v.push_back(s(k));
        return RealVector(Eigen::Map<RealVector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    const RealVector full = nonzero(singular_values(shift_tensor_coshift_matrix(cutoff)));
    const RealVector sum = nonzero(singular_values(direct_sum(std::span<const ComplexMatrix>(parts))));
    const double dist = full.size() == sum.size() ? spectrum_distance(full, sum) : 1.0;
    e.residuals["spectrum_distance"] = dist;
    e.status = verdict(ok && dist <= 1e-10);
    e.detail = "cutoff 8: blocks of sizes 1..8";
    return e;
}

inline Entry tto_suite(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    const double tol8 = scaled(cfg, 1e-8), tol6 = scaled(cfg, 1e-6);
    Rng rng(seed);
    bool ok = true;
    for (const char* key : {"max_csym", "max_fn_calculus", "max_hankel_256", "max_hankel_512"}) e.residuals[key] = 0.0;
    int not_decreasing = 0;
    for (int k = 0; k < 30; ++k) {
        const int degree = rng.uniform_int(1, 8);
        std::vector<Complex> zeros;
        for (int j = 0; j < degree; ++j) zeros.push_back(rng.in_disk(0.8));
        const BlaschkeProduct u(std::move(zeros));
        Coefficients c;
        const int pdeg = rng.uniform_int(0, 4);
        for (int j = 0; j <= pdeg; ++j) c.push_back(rng.complex_normal());
        const Symbol phi = Symbol::polynomial(std::move(c));

        const ModelSpace space(u, cfg.quad);
        const double csym = c_symmetry_residual(tto_matrix(space, phi), model_conjugation(space));
        const double fn = fn_calculus_check(space, phi);
        const HankelCheck h = verify_hankel_factorization(u, phi, 256, cfg.quad);
        const bool decreasing = h.residual_doubled < h.residual || (h.residual <= h.floor && h.residual_doubled <= h.floor);
        not_decreasing += decreasing ? 0 : 1;
        track_max(e.residuals, "max_csym", csym);
        track_max(e.residuals, "max_fn_calculus", fn);
        track_max(e.residuals, "max_hankel_256", h.residual);
        track_max(e.residuals, "max_hankel_512", h.residual_doubled);
        ok = ok && csym <= tol8 && fn <= tol8 && h.residual <= tol6 && decreasing;
    }
    e.residuals["hankel_not_decreasing"] = not_decreasing;
    e.status = verdict(ok);
    e.detail = "30 random Blaschke products (degree <= 8, |zeros| <= 0.8), polynomial symbols of degree <= 4";
    return e;
}

inline Entry padded_blocks(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    const double tol = scaled(cfg, 1e-7);
    Rng rng(seed);
    bool ok = true;
    e.residuals["max_residual"] = 0.0;
    for (int k = 0; k < 10; ++k) {
        std::vector<Complex> zu, zv;
        for (int j = rng.uniform_int(1, 3); j > 0; --j) zu.push_back(rng.in_disk(0.8));
        for (int j = rng.uniform_int(1, 3); j > 0; --j) zv.push_back(rng.in_disk(0.8));
        Coefficients c;
        for (int j = rng.uniform_int(0, 3); j >= 0; --j) c.push_back(rng.complex_normal());
        const auto b = block_structure_check(BlaschkeProduct(std::move(zu)), BlaschkeProduct(std::move(zv)),
                                             Symbol::polynomial(std::move(c)), cfg.quad);
        track_max(e.residuals, "max_residual", b.residual());
        ok = ok && b.residual() <= tol;
    }
    e.status = verdict(ok);
    e.detail = "10 random (u, v, phi)";
    return e;
}

inline Entry synthesis_round_trip(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    Rng rng(seed);
    OptConfig opt;
    opt.quad = cfg.quad;
    opt.simplex_evals = cfg.budget;
    int converged = 0, false_success = 0, flagged = 0;
    e.residuals["max_converged_residual"] = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int rank = rng.uniform_int(1, 3);
        const int extra = rng.uniform_int(0, 8 - 2 * rank);
        const ComplexMatrix n = random_nilpotent2(rng, rank, extra);
        opt.seed = split_seed(seed, static_cast<std::uint64_t>(k));
        const SynthesisResult s = synthesize_tto_for_nilpotent2(n, opt);
        const double recomputed = operator_norm(s.w * s.tto * s.w.adjoint() - n);
        const bool within = recomputed <= 1e-6 * operator_norm(n);
        if (s.converged) {
            ++converged;
            if (!within) ++false_success;
            track_max(e.residuals, "max_converged_residual", recomputed);
        } else {
            ++flagged;
        }
    }
    double exact = 0.0;
    bool exact_shape = true;
    for (double s : {0.5, 1.0, 2.0, 3.7}) {
        ComplexMatrix n = ComplexMatrix::Zero(2, 2);
        n(1, 0) = s;
        const SynthesisResult r = synthesize_tto_for_nilpotent2(n, opt);
        exact = std::max(exact, r.equivalence_residual);
        const auto& num = r.symbol_total.numerator();
        exact_shape = exact_shape && r.u_total.degree() == 2 && std::abs(r.u_total.zeros()[0]) == 0.0 &&
                      std::abs(r.u_total.zeros()[1]) == 0.0 && r.symbol_total.is_polynomial() && num.size() == 2 &&
                      std::abs(num[0]) <= 1e-12 && std::abs(num[1] - s) <= 1e-10;
    }
    e.residuals["converged_fraction"] = converged / 50.0;
    e.residuals["false_success"] = false_success;
    e.residuals["flagged_unconverged"] = flagged;
    e.residuals["exact_case_residual"] = exact;
    const bool ok = converged >= 45 && false_success == 0 && exact <= 1e-10 && exact_shape;
    e.status = ok ? Status::pass : (false_success == 0 && converged < 45 ? Status::unconverged : Status::fail);
    e.detail = "50 random N (rank <= 3, dim <= 8); exact cases N = [[0,0],[s,0]]";
    return e;
}

inline Entry word_identity(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    Rng rng(seed);
    const auto words = words_up_to(5);
    bool ok = words.size() == 62;
    e.residuals["max_scaled_gap"] = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = rng.uniform_int(2, 6);
        ComplexMatrix s = random_gaussian(rng, n, n);
        s = (s + s.transpose()).eval() / 2.0;
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix t = u * s * u.adjoint();
        const Conjugation c = Conjugation::from_matrix(u * u.transpose());
        ok = ok && is_c_symmetric(t, c, scaled(cfg, 1e-9)).holds;
        const double norm = operator_norm(t);
        for (const auto& w : words) {
            const double scaled_gap = word_gap(t, w) / std::pow(norm, static_cast<double>(w.size()));
            track_max(e.residuals, "max_scaled_gap", scaled_gap);
            ok = ok && scaled_gap <= scaled(cfg, 1e-8);
        }
    }
    e.status = verdict(ok);
    e.detail = "100 verified C-symmetric matrices, all 62 words of length <= 5";
    return e;
}

inline Entry shift_word_search(const RunConfig& cfg, std::uint64_t seed) {
    Entry e;
    bool ok = true;
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const ComplexMatrix s = jordan_block(n);
        ok = ok && !word_obstruction_search(s, 4, SearchMode::exhaustive, seed, cfg.tol).has_value();
        for (const auto& w : words_up_to(4)) worst = std::max(worst, word_gap(s, w));
    }
    e.residuals["max_gap"] = worst;
    e.status = verdict(ok);
    e.detail = "J_n(0), n = 2..6, words of length <= 4";
    return e;
}

}  // namespace detail

struct SuiteItem {
    const char* key;
    const char* name;
    const char* anchor;
    Entry (*run)(const RunConfig&, std::uint64_t);
};

inline const std::vector<SuiteItem>& suite_items() {
    static const std::vector<SuiteItem> items = {
        {"square_zero_conjugations", "square-zero conjugations", "order-two nilpotents are complex symmetric",
         detail::square_zero_conjugations},
        {"explicit_blocks", "explicit 2x2 blocks", "[[0,0],[A,0]] is a direct sum of (lambda/2)[[1,i],[i,-1]]",
         detail::explicit_blocks},
        {"indestructible_forward", "indestructibility (square-zero side)", "A^2 = 0 makes every A (x) B complex symmetric",
         detail::indestructible_forward},
        {"indestructible_reverse", "indestructibility (destructor side)", "A^2 != 0 is destroyed by B(alpha,beta) with w = yx^2",
         detail::indestructible_reverse},
        {"twisted_tensor", "twisted tensor squares", "A (x) J A* J is complex symmetric under swap(J (x) J)",
         detail::twisted_tensor},
        {"shift_coshift", "shift (x) coshift truncation", "S (x) S* splits into nilpotent Jordan blocks on homogeneous polynomials",
         detail::shift_coshift},
        {"tto_suite", "truncated Toeplitz identities", "analytic TTOs: C-symmetry, functional calculus, Hankel factorization",
         detail::tto_suite},
        {"padded_blocks", "padded TTO block form", "A^{uv}_{v phi} = [[A^u_phi, 0], [0, 0]] from K_u + uK_v to vK_u + K_v",
         detail::padded_blocks},
        {"synthesis_round_trip", "TTO synthesis round trip", "order-two nilpotents are unitarily equivalent to analytic TTOs",
         detail::synthesis_round_trip},
        {"word_identity", "word norm identity", "C-symmetric T has ||w(T,T*)|| = ||w(T*,T)|| for every word",
         detail::word_identity},
        {"shift_word_search", "word search on truncated shifts", "words alone cannot separate the shift",
         detail::shift_word_search},
    };
    return items;
}

/// Runs one entry; exceptions become a failed entry carrying the diagnostic.
inline Entry run_item(const SuiteItem& item, std::size_t index, const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Entry e;
    try {
        e = item.run(cfg, split_seed(cfg.seed, index));
    } catch (const std::exception& err) {
        e = Entry{};
        e.status = Status::fail;
        e.detail = std::string("error: ") + err.what();
    }
    e.name = item.name;
    e.anchor = item.anchor;
    e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return e;
}

inline Report run_suite(const RunConfig& cfg) {
    validate(cfg);
    Report r{cfg, {}};
    const auto& items = suite_items();
    for (std::size_t k = 0; k < items.size(); ++k) r.entries.push_back(run_item(items[k], k, cfg));
    return r;
}

}  // namespace nilpo::suite

#endif  // NILPO_SUITE_HPP
