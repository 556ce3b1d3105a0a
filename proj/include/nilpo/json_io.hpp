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

#ifndef NILPO_JSON_IO_HPP
#define NILPO_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "csym.hpp"
#include "indestructible.hpp"
#include "model_space.hpp"
#include "synthesis.hpp"

namespace nilpo::io {

using nlohmann::json;

inline json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_list_to_json(const std::vector<Complex>& v) {
    json out = json::array();
    for (const Complex& c : v) out.push_back(complex_to_json(c));
    return out;
}

inline std::vector<Complex> complex_list_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

/// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.
inline json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw InputError("matrix JSON needs rows, cols and data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw InputError("matrix rows/cols must be integers");
    const auto rows = j["rows"].get<long long>(), cols = j["cols"].get<long long>();
    if (rows <= 0 || cols <= 0) throw InputError("matrix rows/cols must be positive");
    const json& data = j["data"];
    if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols)
        throw InputError("matrix data length differs from rows*cols");
    ComplexMatrix m(rows, cols);
    for (long long i = 0; i < rows; ++i)
        for (long long k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * cols + k)]);
    require_finite(m);
    return m;
}

/// {"zeros": [[re, im], ...]}.
inline json blaschke_to_json(const BlaschkeProduct& u) { return {{"zeros", complex_list_to_json(u.zeros())}}; }

inline BlaschkeProduct blaschke_from_json(const json& j) {
    if (!j.is_object() || !j.contains("zeros")) throw InputError("Blaschke JSON needs zeros");
    return BlaschkeProduct(complex_list_from_json(j["zeros"]));
}

/// {"poly": [...]} or {"rational": {"num": [...], "den": [...]}}, coefficients ascending.
inline json symbol_to_json(const Symbol& s) {
    if (s.is_polynomial()) return {{"poly", complex_list_to_json(s.numerator())}};
    return {{"rational", {{"num", complex_list_to_json(s.numerator())}, {"den", complex_list_to_json(s.denominator())}}}};
}

inline Symbol symbol_from_json(const json& j) {
    if (j.is_object() && j.contains("poly")) return Symbol::polynomial(complex_list_from_json(j["poly"]));
    if (j.is_object() && j.contains("rational")) {
        const json& r = j["rational"];
        if (!r.is_object() || !r.contains("num") || !r.contains("den"))
            throw InputError("rational symbol needs num and den");
        return Symbol::rational(complex_list_from_json(r["num"]), complex_list_from_json(r["den"]));
    }
    throw InputError("symbol JSON needs poly or rational");
}

inline json real_list_to_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
    return out;
}

/// {"verdict", "G"?, "word"?, "residual", "gap"?, "seed"}.
inline json certificate_to_json(const CsoCertificate& c) {
    json out = {{"verdict", to_string(c.verdict)}, {"residual", c.residual}, {"seed", c.seed}};
    if (c.conjugation) out["G"] = matrix_to_json(c.conjugation->matrix());
    if (c.obstruction_word) out["word"] = c.obstruction_word->str();
    if (c.obstruction_gap) out["gap"] = *c.obstruction_gap;
    return out;
}

inline json destructor_to_json(const DestructorCertificate& d) {
    json out = {{"witness_B", matrix_to_json(d.witness_b)},
                {"alpha", d.alpha},
                {"beta", d.beta},
                {"word", d.word.str()},
                {"norm_wA", d.norm_wa},
                {"norm_wB", d.norm_wb},
                {"norm_wB_rev", d.norm_wb_rev},
                {"conclusion", to_string(d.conclusion)}};
    if (d.norm_w_tensor) out["norm_w_tensor"] = *d.norm_w_tensor;
    if (d.norm_w_tensor_rev) out["norm_w_tensor_rev"] = *d.norm_w_tensor_rev;
    return out;
}

inline json realization_to_json(const ModulusRealization& m) {
    return {{"u", blaschke_to_json(m.u)},
            {"phi", symbol_to_json(m.phi)},
            {"target_singular_values", real_list_to_json(m.target_singular_values)},
            {"achieved_singular_values", real_list_to_json(m.achieved_singular_values)},
            {"residual", m.residual},
            {"converged", m.converged}};
}

inline json synthesis_to_json(const SynthesisResult& s) {
    return {{"u", blaschke_to_json(s.u)},
            {"phi", symbol_to_json(s.phi)},
            {"v", blaschke_to_json(s.v)},
            {"u_total", blaschke_to_json(s.u_total)},
            {"symbol_total", symbol_to_json(s.symbol_total)},
            {"tto", matrix_to_json(s.tto)},
            {"W", matrix_to_json(s.w)},
            {"equivalence_residual", s.equivalence_residual},
            {"modulus_residual", s.modulus_residual},
            {"converged", s.converged}};
}

}  // namespace nilpo::io

#endif  // NILPO_JSON_IO_HPP
