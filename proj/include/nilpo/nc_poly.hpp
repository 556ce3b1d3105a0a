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

#ifndef NILPO_NC_POLY_HPP
#define NILPO_NC_POLY_HPP

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "linalg.hpp"

namespace nilpo {

enum class Letter : unsigned char { x = 0, y = 1 };

/// Word in two noncommuting letters. The empty word is the identity.
///
/// Letters are written left to right as a product, so "yxx" evaluates to Y·X·X.
class NCWord {
   public:
    NCWord() = default;
    explicit NCWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static NCWord parse(std::string_view text) {
        std::vector<Letter> letters;
        letters.reserve(text.size());
        for (char c : text) {
            if (c == 'x')
                letters.push_back(Letter::x);
            else if (c == 'y')
                letters.push_back(Letter::y);
            else
                throw InputError(std::string("word: unexpected letter '") + c + "'");
        }
        return NCWord(std::move(letters));
    }

    std::string str() const {
        std::string s;
        for (Letter l : letters_) s.push_back(l == Letter::x ? 'x' : 'y');
        return s;
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    NCWord operator+(const NCWord& rhs) const {
        std::vector<Letter> out = letters_;
        out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
        return NCWord(std::move(out));
    }

    /// Length-lexicographic with x < y.
    std::strong_ordering operator<=>(const NCWord& rhs) const {
        if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
        return letters_ <=> rhs.letters_;
    }
    bool operator==(const NCWord&) const = default;

   private:
    std::vector<Letter> letters_;
};

/// All nonempty words of length ≤ max_len in length-lexicographic order (x < y).
inline std::vector<NCWord> words_up_to(std::size_t max_len) {
    std::vector<NCWord> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t count = std::size_t{1} << len;
        for (std::size_t code = 0; code < count; ++code) {
            std::vector<Letter> letters(len);
            for (std::size_t k = 0; k < len; ++k)
                letters[k] = ((code >> (len - 1 - k)) & 1u) ? Letter::y : Letter::x;
            out.emplace_back(std::move(letters));
        }
    }
    return out;
}

/// Finite complex combination of words; zero coefficients are never stored.
class NCPolynomial {
   public:
    NCPolynomial() = default;

    static NCPolynomial from_word(const NCWord& w, Complex c = 1.0) {
        NCPolynomial p;
        p.add(w, c);
        return p;
    }

    void add(const NCWord& w, Complex c) {
        const Complex total = terms_[w] + c;
        if (total == Complex{}) {
            terms_.erase(w);
        } else {
            terms_[w] = total;
        }
    }

    const std::map<NCWord, Complex>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    std::size_t degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

    /// Coefficientwise complex conjugate (p̃).
    NCPolynomial conjugate_coefficients() const {
        NCPolynomial out;
        for (const auto& [w, c] : terms_) out.terms_.emplace(w, std::conj(c));
        return out;
    }

    std::string str() const {
        std::string s;
        for (const auto& [w, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + fmt_real(c.real()) + (c.imag() < 0 ? "-" : "+") +
                 fmt_real(std::abs(c.imag())) + "i)" + (w.empty() ? std::string("1") : w.str());
        }
        return s.empty() ? "0" : s;
    }

   private:
    std::map<NCWord, Complex> terms_;
};

/// w(X, Y).
inline ComplexMatrix eval_nc(const NCWord& w, const ComplexMatrix& x, const ComplexMatrix& y) {
    require_square(x, "eval_nc x");
    require_square(y, "eval_nc y");
    if (x.rows() != y.rows()) throw InputError("eval_nc: X and Y differ in size");
    ComplexMatrix out = identity(x.rows());
    for (Letter l : w.letters()) out = out * (l == Letter::x ? x : y);
    return out;
}

/// p(X, Y).
inline ComplexMatrix eval_nc(const NCPolynomial& p, const ComplexMatrix& x, const ComplexMatrix& y) {
    require_square(x, "eval_nc x");
    require_square(y, "eval_nc y");
    if (x.rows() != y.rows()) throw InputError("eval_nc: X and Y differ in size");
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto& [w, c] : p.terms()) out += c * eval_nc(w, x, y);
    return out;
}

}  // namespace nilpo

#endif  // NILPO_NC_POLY_HPP
