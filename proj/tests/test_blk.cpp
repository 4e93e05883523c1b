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

#include <array>
#include <map>

#include "pgconic/blk.hpp"

namespace pgconic {
namespace {

struct Fixture {
    PlanePtr plane;
    Group H;
    ClassPartition part;
    ClassAlgebra z;
    std::vector<BlockIdempotent> blocks;
    CheckResult log{"blocks"};

    explicit Fixture(std::uint64_t q)
        : plane(make_plane(q)), H(make_H(plane)), part(classify_by_t(H)), z(H, part, binfield_for(q)) {
        blocks = compute_blocks(z, H, part, log);
    }
    static Group make_H(const PlanePtr& pl) {
        Group h = Group::build_H(pl);
        h.build_multiplication_table();
        return h;
    }

    // Group-algebra element whose coefficient on g is e(class of g).
    std::vector<Elem> expand(const ZVec& e) const {
        std::vector<Elem> v(H.size());
        for (std::uint32_t g = 0; g < H.size(); ++g) v[g] = e[part.class_of[g]];
        return v;
    }
    // (a*b)(g) = sum over x of a(x) b(x^-1 g).
    std::vector<Elem> convolve(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
        const Field& f = *z.field();
        std::vector<Elem> r(H.size(), Elem{0});
        for (std::uint32_t x = 0; x < H.size(); ++x) {
            if (a[x].value == 0) continue;
            for (std::uint32_t y = 0; y < H.size(); ++y) {
                if (b[y].value == 0) continue;
                const auto g = H.mul(x, y);
                r[g] = f.add(r[g], f.mul(a[x], b[y]));
            }
        }
        return r;
    }
};

TEST(Blocks, ExpectedCounts) {
    const std::map<std::uint64_t, std::uint64_t> want{{3, 1}, {5, 2}, {7, 2}, {9, 3}, {11, 4}, {13, 5}, {17, 5}, {19, 7}};
    for (const auto& [q, n] : want) EXPECT_EQ(expected_block_count(q), n) << "q=" << q;
    EXPECT_EQ(block_split(13), (std::pair<std::uint64_t, unsigned>{3, 2}));
    EXPECT_EQ(block_split(7), (std::pair<std::uint64_t, unsigned>{1, 3}));
}

// Class-sum product computed by multiplying every pair of group elements.
TEST(Blocks, StructureConstantsAgainstPairEnumeration) {
    Fixture fx(5);
    const std::size_t r = fx.z.dim();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<std::uint64_t> hits(fx.H.size(), 0);
            for (auto x : fx.part.classes[i].members) {
                for (auto y : fx.part.classes[j].members) ++hits[fx.H.mul(x, y)];
            }
            for (std::size_t k = 0; k < r; ++k) {
                for (auto g : fx.part.classes[k].members) {
                    ASSERT_EQ(hits[g], fx.z.constant(i, j, k)) << i << "," << j << "," << k;
                }
            }
        }
    }
    const auto i0 = fx.part.index(ClassKind::Zero);
    const ZVec sq = fx.z.mul(fx.z.basis(i0), fx.z.basis(i0));
    for (std::size_t k = 0; k < r; ++k) {
        std::uint64_t c = 0;
        const auto g = fx.part.classes[k].members.front();
        for (auto x : fx.part.classes[i0].members) {
            for (auto y : fx.part.classes[i0].members) c += fx.H.mul(x, y) == g;
        }
        EXPECT_EQ(sq[k].value, c % 2) << fx.z.label(k);
    }
    EXPECT_TRUE(fx.z.check(fx.H, fx.part).ok);
}

// GF(2)[n]/(n^4) x GF(2)[m]/(m^2), elements as bit masks of coefficients.
using Pair = std::array<unsigned, 2>;
unsigned truncated_square(unsigned a, unsigned len) {
    unsigned r = 0;
    for (unsigned i = 0; i < len; ++i) {
        if (a >> i & 1U && 2 * i < len) r |= 1U << (2 * i);  // cross terms cancel in characteristic 2
    }
    return r;
}

TEST(Blocks, PurifyRemovesNilpotentError) {
    auto mul = [](const Pair& a, const Pair& b) {
        EXPECT_EQ(a, b);
        return Pair{truncated_square(a[0], 4), truncated_square(a[1], 2)};
    };
    const Pair e{0b0011, 0b10};  // (1 + n, m)
    const auto pure = purify(e, mul);
    ASSERT_TRUE(pure.has_value());
    EXPECT_EQ(*pure, (Pair{1, 0}));
    EXPECT_FALSE(purify(e, mul, 1).has_value());
}

TEST(Blocks, CentralIdempotentsByConvolution) {
    for (auto q : {5U, 7U}) {
        Fixture fx(q);
        ASSERT_TRUE(fx.log.ok) << fx.log.summary();
        ASSERT_EQ(fx.blocks.size(), expected_block_count(q));
        const Field& f = *fx.z.field();
        std::vector<Elem> sum(fx.H.size(), Elem{0});
        for (std::size_t i = 0; i < fx.blocks.size(); ++i) {
            const auto e = fx.expand(fx.blocks[i].coeffs);
            EXPECT_EQ(fx.convolve(e, e), e) << fx.blocks[i].label;
            for (std::size_t j = i + 1; j < fx.blocks.size(); ++j) {
                const auto prod = fx.convolve(e, fx.expand(fx.blocks[j].coeffs));
                for (auto v : prod) EXPECT_EQ(v.value, 0U);
            }
            for (std::uint32_t g = 0; g < fx.H.size(); g += 5) {
                std::vector<Elem> delta(fx.H.size(), Elem{0});
                delta[g] = Elem{1};
                EXPECT_EQ(fx.convolve(e, delta), fx.convolve(delta, e));
            }
            for (std::uint32_t g = 0; g < fx.H.size(); ++g) sum[g] = f.add(sum[g], e[g]);
        }
        for (std::uint32_t g = 0; g < fx.H.size(); ++g) EXPECT_EQ(sum[g].value, g == fx.H.identity() ? 1U : 0U);
        EXPECT_EQ(fx.blocks.front().label, "B0");
        EXPECT_EQ(fx.z.augmentation(fx.blocks.front().coeffs), f.one());
    }
}

TEST(Blocks, IdealDimensions) {
    for (auto [q, d0] : {std::pair{5U, 16U}, {7U, 64U}, {9U, 64U}}) {
        Fixture fx(q);
        std::uint64_t total = 0, n0 = 0;
        for (const auto& b : fx.blocks) {
            ASSERT_TRUE(b.ideal_dim.has_value());
            total += *b.ideal_dim;
            if (b.family == BlockFamily::DefectZero && !b.principal) {
                EXPECT_EQ(*b.ideal_dim, d0);
                ++n0;
            }
        }
        EXPECT_EQ(total, fx.H.size());
        EXPECT_EQ(n0, expected_defect_zero_blocks(q));
    }
}

TEST(Blocks, DeterminateCoefficientPatterns) {
    for (auto q : {3U, 5U, 7U, 9U, 11U}) {
        Fixture fx(q);
        EXPECT_TRUE(fx.log.ok) << fx.log.summary();
        const auto rep = verify_expression_patterns(fx.z, fx.part, fx.blocks, q);
        EXPECT_TRUE(rep.check.ok) << rep.check.summary();
    }
}

TEST(Blocks, FingerprintLabelsAgreeWithIdealDimensions) {
    for (auto q : {9U, 11U}) {
        Fixture fx(q);
        BlockOptions light;
        light.max_heavy_q = 0;
        CheckResult log("light");
        const auto fp = compute_blocks(fx.z, fx.H, fx.part, log, light);
        ASSERT_TRUE(log.ok) << log.summary();
        ASSERT_EQ(fp.size(), fx.blocks.size());
        for (const auto& b : fp) {
            auto it = std::find_if(fx.blocks.begin(), fx.blocks.end(), [&](const BlockIdempotent& x) { return x.coeffs == b.coeffs; });
            ASSERT_NE(it, fx.blocks.end());
            EXPECT_EQ(it->family, b.family);
        }
    }
}

TEST(Blocks, ProjectionDimensions) {
    for (auto q : {5U, 7U, 9U, 11U}) {
        Fixture fx(q);
        const IncidenceSystem sys(fx.plane);
        std::vector<std::uint32_t> some{0, 1, 2, 17};
        const auto rep = block_module_analysis(sys, fx.H, fx.part, fx.z, fx.blocks, some);
        EXPECT_TRUE(rep.check.ok) << rep.check.summary();
        std::size_t ker = 0;
        for (const auto& row : rep.rows) {
            ker += row.kernel_dim;
            if (row.family == BlockFamily::DefectZero) {
                if (q % 4 == 1) {
                    EXPECT_EQ(row.kernel_dim, q - 1);
                } else {
                    EXPECT_EQ(row.mu2_dim, q + 1);
                }
            } else if (q % 4 == 1) {
                EXPECT_EQ(row.kernel_dim, 0U);
            } else {
                EXPECT_EQ(row.mu2_dim, 0U);
            }
        }
        EXPECT_EQ(ker, expected_null_dimension(q));
    }
}

}  // namespace
}  // namespace pgconic
