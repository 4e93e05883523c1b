/*
   Copyright 2026 The pgconic Authors

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

#include <random>
#include <vector>

#include "pgconic/mat2.hpp"

namespace pgconic {
namespace {

using Dense = std::vector<std::vector<int>>;

// Textbook elimination on an int matrix, one entry at a time.
std::size_t naive_rank(Dense m) {
    std::size_t r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && m[i][c]) {
                for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
            }
        }
        ++r;
    }
    return r;
}

Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    std::bernoulli_distribution bit(density);
    Dense d(rows, std::vector<int>(cols));
    for (auto& row : d) {
        for (auto& v : row) v = bit(rng) ? 1 : 0;
    }
    return d;
}

BitMatrix to_bits(const Dense& d) {
    BitMatrix m(d.size(), d.empty() ? 0 : d[0].size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d[i].size(); ++j) m.set(i, j, d[i][j] != 0);
    }
    return m;
}

TEST(BitMatrix, RankAgreesWithNaiveOracleOnThousandRandom64x64) {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> dens(0.02, 0.6);
    for (int t = 0; t < 1000; ++t) {
        Dense d = random_dense(rng, 64, 64, dens(rng));
        if (t % 4 == 0) {
            // force dependencies: copy sums of rows
            std::uniform_int_distribution<std::size_t> pick(0, 63);
            for (int k = 0; k < 20; ++k) {
                const auto a = pick(rng), b = pick(rng), c = pick(rng);
                for (std::size_t j = 0; j < 64; ++j) d[a][j] = d[b][j] ^ d[c][j];
            }
        }
        ASSERT_EQ(to_bits(d).rank(), naive_rank(d)) << "trial " << t;
    }
}

TEST(BitMatrix, RankOnOddShapes) {
    std::mt19937_64 rng(5);
    for (std::size_t rows : {1U, 7U, 63U, 65U, 130U}) {
        for (std::size_t cols : {1U, 64U, 65U, 129U}) {
            const Dense d = random_dense(rng, rows, cols, 0.3);
            EXPECT_EQ(to_bits(d).rank(), naive_rank(d));
        }
    }
}

TEST(BitMatrix, NullspaceIsComplementaryAndAnnihilates) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        const Dense d = random_dense(rng, 40, 70, 0.2);
        const BitMatrix m = to_bits(d);
        const BitMatrix ns = m.nullspace();
        EXPECT_EQ(ns.rows(), m.cols() - m.rank());
        EXPECT_EQ(ns.rank(), ns.rows());
        EXPECT_TRUE((m * ns.transpose()).is_zero());
        const BitMatrix lns = m.left_nullspace();
        EXPECT_EQ(lns.rows(), m.rows() - m.rank());
        EXPECT_TRUE((lns * m).is_zero());
    }
}

TEST(BitMatrix, ProductAgreesWithSemiringProducts) {
    std::mt19937_64 rng(3);
    const BitMatrix a = to_bits(random_dense(rng, 33, 70, 0.4));
    const BitMatrix b = to_bits(random_dense(rng, 70, 20, 0.4));
    const auto ai = to_integer(a), bi = to_integer(b);
    EXPECT_EQ(from_integer_mod2(dense_multiply<IntegerSemiring>(ai, bi)), a * b);
    EXPECT_EQ(from_integer_mod2(dense_multiply<Gf2Semiring>(ai, bi)), a * b);
    EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
}

TEST(BitMatrix, IdentityAndOnes) {
    const auto i = BitMatrix::identity(100);
    EXPECT_EQ(i.rank(), 100U);
    EXPECT_EQ(BitMatrix::all_ones(10, 90).rank(), 1U);
    EXPECT_EQ(i * i, i);
    EXPECT_EQ(intersection_dim(BitMatrix::identity(5), BitMatrix::all_ones(1, 5)), 1U);
}

// Rank over GF(2^k) checked through the k x k multiplication-matrix expansion,
// whose GF(2) rank is k times the rank over the extension.
std::size_t expanded_rank(const ExtMatrix& m) {
    const Field& f = *m.field();
    const std::size_t k = f.degree();
    Dense d(m.rows() * k, std::vector<int>(m.cols() * k, 0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            for (std::size_t b = 0; b < k; ++b) {
                const auto img = f.coefficients(f.mul(m.at(i, j), Elem{1U << b}));
                for (std::size_t c = 0; c < k; ++c) d[i * k + b][j * k + c] = c < img.size() ? static_cast<int>(img[c]) : 0;
            }
        }
    }
    return naive_rank(d);
}

TEST(ExtMatrix, RankMatchesExpansionOracle) {
    std::mt19937_64 rng(17);
    for (std::uint32_t k : {1U, 2U, 4U, 6U, 9U}) {
        const auto f = Field::make(2, k);
        std::uniform_int_distribution<std::uint32_t> el(0, f->order() - 1);
        std::bernoulli_distribution zero(0.5);
        for (int t = 0; t < 20; ++t) {
            ExtMatrix m(f, 9, 12);
            for (std::size_t i = 0; i < 9; ++i) {
                for (std::size_t j = 0; j < 12; ++j) m.at(i, j) = zero(rng) ? Elem{0} : Elem{el(rng)};
            }
            if (t % 2 == 0) {
                // row 8 := row 0 + c * row 1
                const Elem c{el(rng)};
                for (std::size_t j = 0; j < 12; ++j) m.at(8, j) = f->add(m.at(0, j), f->mul(c, m.at(1, j)));
            }
            EXPECT_EQ(m.rank() * k, expanded_rank(m)) << "k=" << k;
        }
    }
}

TEST(ExtMatrix, LiftPreservesBinaryRank) {
    std::mt19937_64 rng(23);
    const auto f = Field::make(2, 6);
    for (int t = 0; t < 20; ++t) {
        const BitMatrix b = to_bits(random_dense(rng, 30, 40, 0.15));
        EXPECT_EQ(ExtMatrix::lift(f, b).rank(), b.rank());
    }
    EXPECT_THROW(ExtMatrix(Field::make(3, 1), 2, 2), std::invalid_argument);
}

}  // namespace
}  // namespace pgconic
