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

#include <gtest/gtest.h>

#include <nilpo/csym.hpp>
#include <nilpo/model_space.hpp>
#include <nilpo/random.hpp>

using namespace nilpo;

namespace {

BlaschkeProduct random_blaschke(Rng& rng, int degree, double radius) {
    std::vector<Complex> zeros;
    for (int k = 0; k < degree; ++k) zeros.push_back(rng.in_disk(radius));
    return BlaschkeProduct(std::move(zeros));
}

Symbol random_poly(Rng& rng, int degree) {
    Coefficients c;
    for (int k = 0; k <= degree; ++k) c.push_back(rng.complex_normal());
    return Symbol::polynomial(std::move(c));
}

}  // namespace

TEST(Blaschke, Evaluation) {
    EXPECT_NEAR(std::abs(BlaschkeProduct::monomial(1)(0.5) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(BlaschkeProduct::monomial(2)(kI) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(BlaschkeProduct({Complex{0.5, 0.0}})(1.0) + 1.0), 0.0, 1e-15);
}

TEST(Blaschke, UnimodularOnCircle) {
    Rng rng(1);
    const auto u = random_blaschke(rng, 5, 0.9);
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(u(std::polar(1.0, 0.4 * k))), 1.0, 1e-13);
}

TEST(Blaschke, RejectsZerosOnOrOutsideCircle) {
    EXPECT_THROW(BlaschkeProduct({Complex{1.0, 0.0}}), InputError);
    EXPECT_THROW(BlaschkeProduct({Complex{0.0, 2.0}}), InputError);
}

TEST(Blaschke, NumeratorOverDenominator) {
    const BlaschkeProduct u({Complex{0.3, 0.1}, Complex{-0.5, 0.2}, Complex{}});
    for (Complex z : {Complex{0.2, 0.1}, Complex{-0.7, 0.3}})
        EXPECT_LT(std::abs(poly_eval(u.numerator(), z) / poly_eval(u.denominator(), z) - u(z)), 1e-14);
}

TEST(Symbol, RationalNormalizesAndChecksPoles) {
    EXPECT_THROW(Symbol::rational({1.0}, {-0.5, 1.0}), InputError);
    const auto s = Symbol::rational({2.0, 4.0}, {2.0});
    EXPECT_TRUE(s.is_polynomial());
    EXPECT_LT(std::abs(s(0.5) - 2.0), 1e-15);
}

TEST(ModelSpace, GramCheckAndGuard) {
    const ModelSpace k(BlaschkeProduct({Complex{0.5, 0.1}, Complex{-0.2, 0.6}, Complex{}}), 1024);
    EXPECT_LT(k.gram_defect(), 1e-12);
    EXPECT_THROW(ModelSpace(BlaschkeProduct(std::vector<Complex>(6, Complex{0.99, 0.0})), 64), AccuracyError);
}

TEST(TTO, MonomialExamples) {
    const ComplexMatrix a = tto_matrix(BlaschkeProduct::monomial(2), Symbol::polynomial({0.0, 1.0}));
    EXPECT_LT((a - jordan_block(2)).norm(), 1e-14);
    for (std::size_t n : {1u, 3u, 5u})
        EXPECT_LT((tto_matrix(BlaschkeProduct::monomial(n), Symbol::polynomial({0.0, 1.0})) - jordan_block(n)).norm(),
                  1e-13);
    Rng rng(2);
    const auto u = random_blaschke(rng, 4, 0.8);
    EXPECT_LT((tto_matrix(u, Symbol::polynomial({1.0})) - identity(4)).norm(), 1e-13);
}

TEST(TTO, QuadratureGuard) {
    EXPECT_THROW(tto_matrix(BlaschkeProduct::monomial(8), Symbol::polynomial(Coefficients(8, 1.0)), 64),
                 PreconditionError);
}

TEST(CompressedShift, ClosedFormMatchesQuadrature) {
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const auto u = random_blaschke(rng, rng.uniform_int(1, 8), 0.8);
        const ModelSpace space(u, 1024);
        EXPECT_LT((compressed_shift(space) - compressed_shift_closed_form(u.zeros())).norm(), 1e-12);
    }
}

TEST(FunctionalCalculus, Examples) {
    const ModelSpace cube(BlaschkeProduct::monomial(3), 1024);
    const ComplexMatrix s = tto_matrix(cube, Symbol::polynomial({0.0, 1.0}));
    EXPECT_LT((tto_matrix(cube, Symbol::polynomial({0.0, 0.0, 1.0})) - s * s).norm(), 1e-14);
    EXPECT_LT(fn_calculus_check(cube, Symbol::polynomial({Complex{2.0, -1.0}})), 1e-14);

    const ModelSpace k(BlaschkeProduct({Complex{}, Complex{0.5, 0.0}}), 1024);
    EXPECT_LE(fn_calculus_check(k, Symbol::polynomial({1.0, 1.0})), 1e-10);
}

TEST(ModelConjugation, MonomialsGiveTheFlip) {
    for (std::size_t n : {1u, 2u, 3u, 6u}) {
        const ModelSpace space(BlaschkeProduct::monomial(n), 1024);
        EXPECT_LT((model_conjugation(space).matrix() - flip(static_cast<Eigen::Index>(n))).norm(), 1e-13) << n;
    }
}

TEST(ModelConjugation, AnalyticTTOsAreCSymmetric) {
    Rng rng(4);
    const ModelSpace space(BlaschkeProduct({Complex{0.3, 0.0}, Complex{-0.4, 0.0}}), 1024);
    const Conjugation c = model_conjugation(space);
    for (int k = 0; k < 5; ++k) EXPECT_TRUE(is_c_symmetric(tto_matrix(space, random_poly(rng, 1)), c).holds);
}

class TTOProperty : public ::testing::TestWithParam<int> {};

TEST_P(TTOProperty, RandomSpacesAndSymbols) {
    Rng rng(split_seed(5, static_cast<std::uint64_t>(GetParam())));
    const auto u = random_blaschke(rng, rng.uniform_int(1, 8), 0.8);
    const Symbol phi = random_poly(rng, rng.uniform_int(0, 4));
    const ModelSpace space(u, 1024);
    const ComplexMatrix a = tto_matrix(space, phi);
    EXPECT_LE(c_symmetry_residual(a, model_conjugation(space)), 1e-8);
    EXPECT_LE(fn_calculus_check(space, phi), 1e-8);
    const HankelCheck h = verify_hankel_factorization(u, phi, 256, 1024);
    EXPECT_LE(h.residual, 1e-6);
    EXPECT_TRUE(h.residual_doubled < h.residual || std::max(h.residual, h.residual_doubled) <= h.floor);
}

INSTANTIATE_TEST_SUITE_P(Random, TTOProperty, ::testing::Range(0, 20));

TEST(Hankel, Examples) {
    const auto z2 = BlaschkeProduct::monomial(2);
    EXPECT_LE(verify_hankel_factorization(z2, Symbol::polynomial({0.0, 1.0}), 64).residual, 1e-10);
    const auto zero = verify_hankel_factorization(z2, Symbol::polynomial({}), 64);
    EXPECT_EQ(zero.residual, 0.0);
    EXPECT_LE(verify_hankel_factorization(BlaschkeProduct({Complex{0.5, 0.0}}), Symbol::polynomial({1.0}), 256).residual,
              1e-6);
}

TEST(Hankel, TruncationErrorShrinksWithSection) {
    const BlaschkeProduct u({Complex{0.9, 0.0}});
    const Symbol phi = Symbol::polynomial({1.0});
    const double coarse = verify_hankel_factorization(u, phi, 64, 1024).residual;
    const double fine = verify_hankel_factorization(u, phi, 128, 1024).residual;
    EXPECT_GT(coarse, 1e-8);
    EXPECT_LT(fine, 1e-3 * coarse);
}

TEST(Hankel, RejectsSmallSections) {
    EXPECT_THROW(verify_hankel_factorization(BlaschkeProduct::monomial(2), Symbol::polynomial({1.0}), 16), PreconditionError);
}

TEST(Coprime, CancelsSharedFactorWithoutChangingTheSymbolOnTheCircle) {
    const BlaschkeProduct u({Complex{0.5, 0.0}, Complex{0.2, 0.3}});
    const Symbol phi = Symbol::polynomial(poly_mul({-0.5, 1.0}, {1.0, 2.0}));
    const auto red = cancel_common_inner_factor(u, phi);
    ASSERT_EQ(red.cancelled.size(), 1u);
    EXPECT_EQ(red.u.degree(), 1u);
    for (int k = 0; k < 8; ++k) {
        const Complex z = std::polar(1.0, 0.7 * k);
        EXPECT_LT(std::abs(std::conj(u(z)) * phi(z) - std::conj(red.u(z)) * red.phi(z)), 1e-13);
    }
    const auto none = cancel_common_inner_factor(u, Symbol::polynomial({1.0, 1.0}));
    EXPECT_TRUE(none.cancelled.empty());
}

TEST(Decompose, Examples) {
    const auto zz = modelspace_decompose(BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(1));
    EXPECT_LT((zz.q - identity(2)).norm(), 1e-13);

    const auto d = modelspace_decompose(BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(1));
    EXPECT_LT(d.unitarity_defect, 1e-12);
    EXPECT_LT((d.q.cwiseAbs() - identity(3)).norm(), 1e-12);

    const auto g = modelspace_decompose(BlaschkeProduct({Complex{0.5, 0.0}}), BlaschkeProduct({Complex{-0.3, 0.0}}));
    EXPECT_LT(g.unitarity_defect, 1e-8);
}

TEST(Decompose, ThreeParts) {
    Rng rng(6);
    for (int k = 0; k < 5; ++k) {
        const auto u = random_blaschke(rng, rng.uniform_int(1, 3), 0.8);
        const auto v = random_blaschke(rng, rng.uniform_int(1, 3), 0.8);
        EXPECT_LT(modelspace_decompose3(u, v).unitarity_defect, 1e-8);
    }
}

TEST(BlockStructure, Examples) {
    const Complex c{1.5, -0.5};
    const ComplexMatrix a = tto_matrix(BlaschkeProduct::monomial(2), Symbol::polynomial({0.0, c}));
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(1, 0) = c;
    EXPECT_LT((a - expected).norm(), 1e-14);

    const auto zero = block_structure_check(BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(1),
                                            Symbol::polynomial({}), 1024);
    EXPECT_LT(zero.matrix.norm(), 1e-15);

    const auto b = block_structure_check(BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(1),
                                         Symbol::polynomial({1.0, 1.0}), 1024);
    EXPECT_LE(b.residual(), 1e-7);
}

TEST(BlockStructure, RandomFactors) {
    Rng rng(7);
    for (int k = 0; k < 8; ++k) {
        const auto u = random_blaschke(rng, rng.uniform_int(1, 3), 0.8);
        const auto v = random_blaschke(rng, rng.uniform_int(1, 3), 0.8);
        EXPECT_LE(block_structure_check(u, v, random_poly(rng, 2), 1024).residual(), 1e-7);
    }
}
