#include "helpers.hpp"
#include "oracles.hpp"

#include "projposet/error.hpp"
#include "projposet/json_io.hpp"
#include "projposet/matrix.hpp"
#include "projposet/projection_poset.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace projposet;
using testing_helpers::mat;

TEST(Matrix, RrefExamples)
{
    auto f = Field::make(2, 1);
    auto id = Matrix::identity(f, 3);
    EXPECT_EQ(rref(id).reduced, id);
    EXPECT_EQ(rref(id).rank, 3u);
    auto z = Matrix::zero(f, 2, 3);
    EXPECT_EQ(rref(z).reduced, z);
    EXPECT_EQ(rank(z), 0u);
    auto r = rref(mat(f, {{1, 1}, {1, 1}}));
    EXPECT_EQ(r.reduced, mat(f, {{1, 1}, {0, 0}}));
    EXPECT_EQ(r.rank, 1u);
}

TEST(Matrix, KernelExamples)
{
    auto f2 = Field::make(2, 1);
    EXPECT_EQ(kernel_basis(Matrix::identity(f2, 3)).rows(), 0u);
    EXPECT_EQ(kernel_basis(Matrix::zero(f2, 3, 3)).rows(), 3u);
    auto f3 = Field::make(3, 1);
    auto d = mat(f3, {{1, 0}, {0, 0}});
    EXPECT_EQ(kernel_basis(d), mat(f3, {{0, 1}}));
    EXPECT_EQ(map_kernel_basis(d), mat(f3, {{0, 1}}));
}

TEST(Matrix, MapKernelFollowsRowConvention)
{
    auto f = Field::make(3, 1);
    // v -> v M with M = [[1,1],[2,2]] kills (1,1) and no other line.
    auto m = mat(f, {{1, 1}, {2, 2}});
    auto k = map_kernel_basis(m);
    ASSERT_EQ(k.rows(), 1u);
    auto image = row_times(k.row(0), m);
    EXPECT_EQ(image, (std::vector<Elem>{0, 0}));
    EXPECT_EQ(k, mat(f, {{1, 1}}));
}

TEST(Matrix, IdempotentExamples)
{
    auto f2 = Field::make(2, 1);
    EXPECT_TRUE(is_idempotent(mat(f2, {{1, 0}, {0, 0}})));
    auto inv = mat(f2, {{1, 1}, {0, 1}});
    EXPECT_FALSE(is_idempotent(inv));
    EXPECT_EQ(inv * inv, Matrix::identity(f2, 2));
}

TEST(Matrix, IdempotentCountsMatchBruteForceOracle)
{
    // Frozen from oracle::idempotents.
    EXPECT_EQ(enumerate_idempotents(Field::make(2, 1), 2).size(), 8u);
    EXPECT_EQ(enumerate_idempotents(Field::make(2, 1), 3).size(), 58u);
    EXPECT_EQ(enumerate_idempotents(Field::make(3, 1), 2).size(), 14u);
    EXPECT_EQ(enumerate_idempotents(Field::make(3, 1), 3).size(), 236u);
    EXPECT_EQ(oracle::idempotents(2, 3).size(), 14u);
}

TEST(Matrix, InverseRoundTripAndSingular)
{
    for (auto spec : {"2", "3", "4", "5", "9"}) {
        auto f = Field::parse(spec);
        std::mt19937_64 rng(7);
        for (int t = 0; t < 50; ++t) {
            Matrix m(f, 3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    m(i, j) = static_cast<Elem>(rng() % f->order());
            if (!is_invertible(m)) {
                EXPECT_THROW(inverse(m), SingularMatrix);
                continue;
            }
            EXPECT_EQ(m * inverse(m), Matrix::identity(f, 3));
            EXPECT_EQ(inverse(m) * m, Matrix::identity(f, 3));
        }
    }
}

TEST(Matrix, RankNullityAndRrefIdempotence)
{
    auto f = Field::make(5, 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Matrix m(f, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = static_cast<Elem>(rng() % 5 < 2 ? 0 : rng() % 5);
        auto red = rref(m);
        EXPECT_EQ(rref(red.reduced).reduced, red.reduced);
        EXPECT_EQ(red.rank + kernel_basis(m).rows(), c);
        EXPECT_EQ(red.rank + map_kernel_basis(m).rows(), r);
        auto ker = map_kernel_basis(m);
        for (std::size_t i = 0; i < ker.rows(); ++i)
            for (auto x : row_times(ker.row(i), m))
                EXPECT_EQ(x, 0);
    }
}

TEST(Matrix, CodeRoundTrip)
{
    auto f = Field::make(3, 1);
    for (std::uint64_t c = 0; c < matrix_count(*f, 2, 2); ++c)
        EXPECT_EQ(matrix_code(matrix_from_code(f, 2, 2, c)), c);
}

TEST(Matrix, NormalizedInvertibleCountIsPGL)
{
    // |GL(n,q)| / (q - 1)
    EXPECT_EQ(normalized_invertible_matrices(Field::make(2, 1), 3).size(), 168u);
    EXPECT_EQ(normalized_invertible_matrices(Field::make(3, 1), 2).size(), 24u);
    EXPECT_EQ(normalized_invertible_matrices(Field::make(2, 2), 2).size(), 60u);
}

TEST(JsonIo, MatrixRoundTrip)
{
    for (auto spec : {"2", "4", "9"}) {
        auto f = Field::parse(spec);
        Matrix m(f, 2, 3);
        for (std::size_t i = 0; i < 6; ++i)
            m(i / 3, i % 3) = static_cast<Elem>((i * 5 + 1) % f->order());
        EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
    }
}
