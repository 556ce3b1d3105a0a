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

#include <limits>

#include <nilpo/linalg.hpp>
#include <nilpo/random.hpp>

using namespace nilpo;

namespace {

ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (const auto& v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST(OperatorNorm, SmallCases) {
    EXPECT_NEAR(operator_norm(mat({{1, 0}, {0, 2}})), 2.0, 1e-14);
    EXPECT_EQ(operator_norm(ComplexMatrix::Zero(3, 3)), 0.0);
    EXPECT_NEAR(operator_norm(mat({{0, 0}, {5, 0}})), 5.0, 1e-14);
}

TEST(OperatorNorm, RejectsNonFinite) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(operator_norm(m), InputError);
}

TEST(Tensor, IdentityFactorGivesBlockDiagonal) {
    Rng rng(1);
    const ComplexMatrix b = random_gaussian(rng, 3, 3);
    const ComplexMatrix t = tensor(identity(2), b);
    EXPECT_EQ((t - direct_sum(b, b)).norm(), 0.0);
}

TEST(Tensor, JordanTimesJordan) {
    const ComplexMatrix t = tensor(jordan_block(2), jordan_block(2));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(3, 0) = 1.0;
    EXPECT_EQ((t - expected).norm(), 0.0);
}

TEST(Tensor, NormIsMultiplicative) {
    Rng rng(2);
    for (int k = 0; k < 40; ++k) {
        const ComplexMatrix a = random_gaussian(rng, rng.uniform_int(1, 5), rng.uniform_int(1, 5));
        const ComplexMatrix b = random_gaussian(rng, rng.uniform_int(1, 5), rng.uniform_int(1, 5));
        const double expected = operator_norm(a) * operator_norm(b);
        EXPECT_NEAR(operator_norm(tensor(a, b)), expected, 1e-10 * expected);
    }
    EXPECT_NEAR(operator_norm(tensor(2.0 * identity(2), 3.0 * identity(3))), 6.0, 1e-14);
}

TEST(Tensor, CapacityGuard) {
    EXPECT_THROW(tensor(identity(100), identity(100), 4096), CapacityError);
}

TEST(Tensor, SwapExchangesFactors) {
    Rng rng(3);
    const ComplexMatrix a = random_gaussian(rng, 3, 3), b = random_gaussian(rng, 3, 3);
    const ComplexMatrix p = tensor_swap(3);
    EXPECT_LT((p * tensor(a, b) * p.transpose() - tensor(b, a)).norm(), 1e-13);
    EXPECT_EQ(unitarity_defect(p), 0.0);
}

TEST(Polar, Cases) {
    const ComplexMatrix d = mat({{2, 0}, {0, 0.5}});
    auto p = polar_decompose(d);
    EXPECT_LT((p.unitary - identity(2)).norm(), 1e-14);
    EXPECT_LT((p.modulus - d).norm(), 1e-14);

    p = polar_decompose(mat({{0, 0}, {1, 0}}));
    EXPECT_LT((p.modulus - mat({{1, 0}, {0, 0}})).norm(), 1e-14);
    EXPECT_LT(unitarity_defect(p.unitary), 1e-14);
    EXPECT_LT((p.unitary * p.modulus - mat({{0, 0}, {1, 0}})).norm(), 1e-14);

    Rng rng(4);
    const ComplexMatrix u = random_unitary(rng, 4);
    p = polar_decompose(u);
    EXPECT_LT((p.unitary - u).norm(), 1e-12);
    EXPECT_LT((p.modulus - identity(4)).norm(), 1e-12);
}

TEST(Polar, RandomReconstruction) {
    Rng rng(5);
    for (int k = 0; k < 30; ++k) {
        const ComplexMatrix m = random_gaussian(rng, 5, 5);
        const auto p = polar_decompose(m);
        EXPECT_LT((p.unitary * p.modulus - m).norm(), 1e-12 * m.norm());
        EXPECT_LT(unitarity_defect(p.unitary), 1e-12);
        EXPECT_LT((p.modulus - p.modulus.adjoint()).norm(), 1e-13 * m.norm());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p.modulus);
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
    }
}

TEST(Conjugation, RejectsInvalidMatrices) {
    EXPECT_THROW(Conjugation::from_matrix(mat({{0, 1}, {0, 0}})), InputError);
    EXPECT_THROW(Conjugation::from_matrix(mat({{2, 0}, {0, 1}})), InputError);
    EXPECT_THROW(Conjugation::from_matrix(mat({{0, 1}, {-1, 0}})), InputError);
    EXPECT_NO_THROW(Conjugation::from_matrix(flip(5)));
}

TEST(Conjugation, SandwichExamples) {
    const ComplexMatrix real = mat({{1, 2}, {-3, 0.5}});
    EXPECT_EQ((conjugate_by(Conjugation::entrywise(2), real) - real).norm(), 0.0);

    const auto swap = Conjugation::from_matrix(flip(2));
    EXPECT_EQ((conjugate_by(swap, mat({{0, 1}, {0, 0}})) - mat({{0, 0}, {1, 0}})).norm(), 0.0);
}

TEST(Conjugation, InvariantsOnRandomSymmetricUnitaries) {
    Rng rng(6);
    for (int k = 0; k < 30; ++k) {
        const Eigen::Index n = rng.uniform_int(1, 8);
        const ComplexMatrix u = random_unitary(rng, n);
        const auto c = Conjugation::from_matrix(u * u.transpose());
        const ComplexVector x = random_gaussian(rng, n, 1), y = random_gaussian(rng, n, 1);
        EXPECT_LT((c.apply(c.apply(x)) - x).norm(), 1e-12 * x.norm());
        EXPECT_LT(std::abs(c.apply(x).dot(c.apply(y)) - std::conj(x.dot(y))), 1e-12 * x.norm() * y.norm());
        const ComplexMatrix m = random_gaussian(rng, n, n);
        EXPECT_LT((conjugate_by(c, conjugate_by(c, m)) - m).norm(), 1e-12 * m.norm());
    }
}

TEST(Nullspace, ReturnsOrthonormalKernel) {
    Rng rng(7);
    const ComplexMatrix a = random_gaussian(rng, 3, 6);
    const ComplexMatrix k = nullspace(a, 1e-10);
    ASSERT_EQ(k.cols(), 3);
    EXPECT_LT((a * k).norm(), 1e-12);
    EXPECT_LT((k.adjoint() * k - identity(3)).norm(), 1e-12);
}

TEST(Complement, CompletesToUnitary) {
    Rng rng(8);
    const ComplexMatrix q = orthonormalize_columns(random_gaussian(rng, 6, 2));
    ComplexMatrix full(6, 6);
    full << q, orthonormal_complement(q, 6);
    EXPECT_LT(unitarity_defect(full), 1e-12);
}

TEST(SpectrumDistance, SortsAndPads) {
    RealVector a(3), b(2);
    a << 1, 3, 0;
    b << 3, 1;
    EXPECT_EQ(spectrum_distance(a, b), 0.0);
}

TEST(Seeds, SplitStreamsAreDeterministicAndDistinct) {
    EXPECT_EQ(split_seed(42, 3), split_seed(42, 3));
    EXPECT_NE(split_seed(42, 3), split_seed(42, 4));
    EXPECT_NE(split_seed(42, 3), split_seed(43, 3));
    Rng a(9), b(9);
    EXPECT_EQ(random_gaussian(a, 3, 3), random_gaussian(b, 3, 3));
}

TEST(RandomNilpotent, SquaresToZeroWithRequestedRank) {
    Rng rng(10);
    for (int k = 0; k < 20; ++k) {
        const Eigen::Index r = rng.uniform_int(0, 3), m = rng.uniform_int(0, 3);
        const ComplexMatrix t = random_nilpotent2(rng, r, m);
        ASSERT_EQ(t.rows(), 2 * r + m);
        EXPECT_LT((t * t).norm(), 1e-12 * std::max(1.0, t.norm() * t.norm()));
        const RealVector s = singular_values(t);
        Eigen::Index rank = 0;
        for (Eigen::Index j = 0; j < s.size(); ++j) rank += s(j) > 1e-9 ? 1 : 0;
        EXPECT_EQ(rank, r);
    }
}
