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

#ifndef NILPO_RANDOM_HPP
#define NILPO_RANDOM_HPP

#include <cstdint>
#include <random>

#include "linalg.hpp"

namespace nilpo {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of substream `index` under `base`. Streams depend only on (base, index), so work can be
/// scheduled in any order without perturbing them.
constexpr std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    Rng split(std::uint64_t index) { return Rng(split_seed(engine_(), index)); }

    double normal() { return normal_(engine_); }
    double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * unit_(engine_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Standard complex Gaussian (E|z|² = 1).
    Complex complex_normal() {
        const double re = normal(), im = normal();
        return Complex(re, im) / std::sqrt(2.0);
    }

    /// Uniform point in the disk of radius r.
    Complex in_disk(double r) {
        const double rho = r * std::sqrt(uniform());
        const double theta = uniform(0.0, 2.0 * M_PI);
        return std::polar(rho, theta);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

inline ComplexMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
    return m;
}

/// Haar-distributed unitary (QR of a Gaussian matrix with the R-diagonal phases removed).
inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
    const ComplexMatrix g = random_gaussian(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * identity(n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0) q.col(k) *= r(k, k) / a;
    }
    return q;
}

/// W* ([[0,0],[A,0]] ⊕ 0) W with A = diag of positive values, a random unitary W, and
/// `extra_kernel` trailing zero dimensions; dimension 2·rank + extra_kernel.
inline ComplexMatrix random_nilpotent2(Rng& rng, Eigen::Index rank, Eigen::Index extra_kernel,
                                       double lo = 0.2, double hi = 3.0) {
    const Eigen::Index n = 2 * rank + extra_kernel;
    ComplexMatrix core = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < rank; ++k) core(rank + k, k) = rng.uniform(lo, hi);
    const ComplexMatrix w = random_unitary(rng, n);
    return w.adjoint() * core * w;
}

}  // namespace nilpo

#endif  // NILPO_RANDOM_HPP
