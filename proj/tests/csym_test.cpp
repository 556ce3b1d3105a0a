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
#include <nilpo/indestructible.hpp>
#include <nilpo/random.hpp>

using namespace nilpo;

namespace {

double distance_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
    Eigen::Index i, j;
    b.cwiseAbs().maxCoeff(&i, &j);
    const Complex phase = a(i, j) / b(i, j);
    return (a - phase * b).norm();
}

}  // namespace

TEST(NilpotencyOrder, Examples) {
    EXPECT_EQ(nilpotency_order(jordan_block(2)), 2);
    EXPECT_FALSE(nilpotency_order(identity(3)).has_value());
    EXPECT_EQ(nilpotency_order(direct_sum(jordan_block(3), ComplexMatrix::Zero(1, 1))), 3);
    EXPECT_EQ(nilpotency_order(ComplexMatrix::Zero(2, 2)), 1);
}

TEST(IsCSymmetric, Examples) {
    Rng rng(1);
    ComplexMatrix m = random_gaussian(rng, 4, 4);
    m = (m + m.transpose()).eval();
    const auto sym = is_c_symmetric(m, Conjugation::entrywise(4));
    EXPECT_TRUE(sym.holds);
    EXPECT_EQ(sym.residual, 0.0);

    EXPECT_TRUE(is_c_symmetric(jordan_block(2), Conjugation::from_matrix(flip(2))).holds);
    const auto bad = is_c_symmetric(jordan_block(2), Conjugation::entrywise(2));
    EXPECT_FALSE(bad.holds);
    EXPECT_NEAR(bad.residual, 1.0, 1e-14);
}

TEST(IsCSymmetric, DimensionMismatch) {
    EXPECT_THROW(is_c_symmetric(identity(3), Conjugation::entrywise(2)), InputError);
}

TEST(Nilpotent2Conjugation, JordanTwoIsTheSwap) {
    const auto c = conjugation_for_nilpotent2(jordan_block(2));
    EXPECT_LT((c.conjugation.matrix() - flip(2)).norm(), 1e-14);
    EXPECT_EQ(c.residual, 0.0);
}

TEST(Nilpotent2Conjugation, ZeroAndRejections) {
    const auto c = conjugation_for_nilpotent2(ComplexMatrix::Zero(3, 3));
    EXPECT_LT(c.residual, 1e-15);
    EXPECT_THROW(conjugation_for_nilpotent2(jordan_block(3)), PreconditionError);
    EXPECT_THROW(conjugation_for_nilpotent2(ComplexMatrix::Zero(2, 3)), InputError);
}

TEST(Nilpotent2Conjugation, CanonicalSingularValues) {
    ComplexMatrix t = ComplexMatrix::Zero(4, 4);
    t(2, 0) = 3.0;
    t(3, 1) = 1.0;
    const auto c = conjugation_for_nilpotent2(t);
    ASSERT_EQ(c.form.rank(), 2);
    EXPECT_NEAR(c.form.singular_values(0), 3.0, 1e-12);
    EXPECT_NEAR(c.form.singular_values(1), 1.0, 1e-12);
    EXPECT_LE(c.residual, 1e-10);
    EXPECT_LT((c.form.w * t * c.form.w.adjoint() - c.form.block_form()).norm(), 1e-12);
}

class SquareZeroProperty : public ::testing::TestWithParam<int> {};

TEST_P(SquareZeroProperty, ConjugationExistsAndIsValid) {
    Rng rng(split_seed(11, static_cast<std::uint64_t>(GetParam())));
    const Eigen::Index dim = rng.uniform_int(1, 12);
    const Eigen::Index rank = rng.uniform_int(0, dim / 2);
    const ComplexMatrix t = random_nilpotent2(rng, rank, dim - 2 * rank);
    const auto c = conjugation_for_nilpotent2(t);
    EXPECT_LE(c.residual, 1e-9);
    EXPECT_LE(c.conjugation.symmetry_defect(), 1e-12);
    EXPECT_LE(c.conjugation.unitarity_defect(), 1e-12);
    EXPECT_LT(unitarity_defect(c.form.w), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Random, SquareZeroProperty, ::testing::Range(0, 40));

TEST(CanonicalBlocks, Examples) {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(1, 0) = 2.0;
    auto blocks = canonical_block_decomposition(t);
    ASSERT_EQ(blocks.size(), 1u);
    ComplexMatrix expected(2, 2);
    expected << 1.0, kI, kI, -1.0;
    EXPECT_LT((blocks[0] - expected).norm(), 1e-14);

    blocks = canonical_block_decomposition(ComplexMatrix::Zero(2, 2));
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[0].rows(), 1);
    EXPECT_EQ(blocks[0](0, 0), Complex{});

    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d(2, 0) = 3.0;
    d(3, 1) = 1.0;
    blocks = canonical_block_decomposition(d);
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_NEAR(operator_norm(blocks[0]), 3.0, 1e-12);
    EXPECT_NEAR(operator_norm(blocks[1]), 1.0, 1e-12);
}

TEST(CanonicalBlocks, EachBlockSquaresToZero) {
    ComplexMatrix b(2, 2);
    b << 1.0, kI, kI, -1.0;
    EXPECT_LT((b * b).norm(), 1e-15);
    EXPECT_NEAR(operator_norm(b), 2.0, 1e-14);
}

TEST(FindConjugation, JordanBlocksAreCertified) {
    for (Eigen::Index n = 1; n <= 6; ++n) {
        SearchConfig cfg;
        cfg.seed = 5;
        const auto cert = find_conjugation(jordan_block(n), cfg);
        ASSERT_EQ(cert.verdict, Verdict::c_symmetric) << n;
        ASSERT_TRUE(cert.conjugation);
        EXPECT_LE(cert.residual, 1e-9);
        EXPECT_LT(distance_up_to_phase(cert.conjugation->matrix(), flip(n)), 1e-6) << n;
    }
}

TEST(FindConjugation, TransposeSymmetricGivesIdentity) {
    Rng rng(2);
    ComplexMatrix m = random_gaussian(rng, 5, 5);
    m = (m + m.transpose()).eval();
    const auto cert = find_conjugation(m);
    ASSERT_EQ(cert.verdict, Verdict::c_symmetric);
    EXPECT_EQ((cert.conjugation->matrix() - identity(5)).norm(), 0.0);
    EXPECT_EQ(cert.residual, 0.0);
}

TEST(FindConjugation, DestructorWitnessIsObstructed) {
    const auto cert = find_conjugation(destructor_matrix(1.0, 2.0));
    ASSERT_EQ(cert.verdict, Verdict::obstructed);
    ASSERT_TRUE(cert.obstruction_word);
    ASSERT_TRUE(cert.obstruction_gap);
    EXPECT_NEAR(*cert.obstruction_gap, 2.0, 1e-12);
    // The reported word must reproduce its own gap.
    EXPECT_NEAR(word_gap(destructor_matrix(1.0, 2.0), *cert.obstruction_word), *cert.obstruction_gap, 1e-14);
}

TEST(FindConjugation, RandomUnitaryConjugatesOfSymmetricMatrices) {
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const Eigen::Index n = rng.uniform_int(2, 5);
        ComplexMatrix s = random_gaussian(rng, n, n);
        s = (s + s.transpose()).eval();
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix t = u * s * u.adjoint();
        SearchConfig cfg;
        cfg.seed = split_seed(3, static_cast<std::uint64_t>(k));
        const auto cert = find_conjugation(t, cfg);
        ASSERT_EQ(cert.verdict, Verdict::c_symmetric);
        EXPECT_TRUE(is_c_symmetric(t, *cert.conjugation).holds);
    }
}

TEST(FindConjugation, UnitaryConjugatesOfJordanBlocks) {
    Rng rng(6);
    for (Eigen::Index n = 3; n <= 7; ++n) {
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix t = u * jordan_block(n) * u.adjoint();
        const auto cert = find_conjugation(t);
        ASSERT_EQ(cert.verdict, Verdict::c_symmetric) << n;
        EXPECT_LE(cert.residual, 1e-9);
    }
}

TEST(FindConjugation, IsDeterministicForSeed) {
    SearchConfig cfg;
    cfg.seed = 99;
    const auto a = find_conjugation(jordan_block(4), cfg);
    const auto b = find_conjugation(jordan_block(4), cfg);
    ASSERT_TRUE(a.conjugation && b.conjugation);
    EXPECT_EQ(a.conjugation->matrix(), b.conjugation->matrix());
}

TEST(WordSearch, ShiftsHaveNoWordObstruction) {
    for (Eigen::Index n = 2; n <= 6; ++n)
        EXPECT_FALSE(word_obstruction_search(jordan_block(n), 4).has_value()) << n;
}

TEST(WordSearch, DestructorWitness) {
    const auto hit = word_obstruction_search(destructor_matrix(1.0, 2.0), 3);
    ASSERT_TRUE(hit);
    EXPECT_NEAR(hit->gap, 2.0, 1e-12);
    EXPECT_NEAR(word_gap(destructor_matrix(1.0, 2.0), NCWord::parse("yxx")), 2.0, 1e-12);
}

TEST(WordSearch, RealSymmetricHasNone) {
    Rng rng(4);
    ComplexMatrix m = random_gaussian(rng, 4, 4).real().cast<Complex>();
    m = (m + m.transpose()).eval();
    EXPECT_FALSE(word_obstruction_search(m, 5).has_value());
    EXPECT_FALSE(word_obstruction_search(m, 5, SearchMode::sampled, 3).has_value());
}

TEST(WordIdentity, HoldsOnConstructedCSymmetricMatrices) {
    Rng rng(5);
    const auto words = words_up_to(5);
    for (int k = 0; k < 20; ++k) {
        const Eigen::Index n = rng.uniform_int(2, 6);
        ComplexMatrix s = random_gaussian(rng, n, n);
        s = (s + s.transpose()).eval();
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix t = u * s * u.adjoint();
        ASSERT_TRUE(is_c_symmetric(t, Conjugation::from_matrix(u * u.transpose())).holds);
        const double norm = operator_norm(t);
        for (const auto& w : words)
            EXPECT_LE(word_gap(t, w), 1e-8 * std::pow(norm, static_cast<double>(w.size()))) << w.str();
    }
}

TEST(PolynomialSearch, FindsObstructionOnWitnessOnly) {
    EXPECT_TRUE(polynomial_obstruction_search(destructor_matrix(1.0, 2.0), 3, 2, 64, 1).has_value());
    EXPECT_FALSE(polynomial_obstruction_search(jordan_block(3), 3, 2, 64, 1).has_value());
}
