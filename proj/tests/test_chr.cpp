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

#include <cmath>

#include "pgconic/chr.hpp"

namespace pgconic {
namespace {

struct Tables {
    Group H;
    ClassPartition part;
    CharTable table;
    explicit Tables(std::uint64_t q) : H(Group::build_H(make_plane(q))), part(classify_by_t(H)), table(q, part) {}
};

TEST(Characters, DegreesSumOfSquaresIsGroupOrder) {
    for (auto q : {3U, 5U, 7U, 9U, 11U, 13U}) {
        Tables s(q);
        EXPECT_EQ(s.table.rows().size(), s.part.classes.size());
        double sum = 0.0;
        for (const auto& r : s.table.rows()) sum += r.degree() * r.degree();
        EXPECT_NEAR(sum, static_cast<double>(order_H(q)), 1e-9) << "q=" << q;
        EXPECT_TRUE(check_char_table(s.table).ok) << check_char_table(s.table).summary();
        EXPECT_LT(orthogonality_check(s.table), 1e-9);
    }
}

// The Steinberg character is the conic permutation character minus one.
TEST(Characters, SteinbergFromConicFixedPoints) {
    for (auto q : {5U, 7U, 9U, 11U}) {
        Tables s(q);
        const auto& gamma = s.table.row("gamma");
        for (std::size_t c = 0; c < s.part.classes.size(); ++c) {
            const auto g = s.part.classes[c].members.front();
            int fixed = 0;
            for (auto p : s.H.plane().conic_points()) fixed += s.H.point_image(g, p) == p;
            EXPECT_NEAR(gamma.values[c].real(), fixed - 1, 1e-9) << s.part.classes[c].label();
        }
        EXPECT_NEAR(s.table.inner(gamma.values, gamma.values).real(), 1.0, 1e-9);
    }
}

// Burnside: the mean of fix(g)^2 over H counts the stabilizer orbits.
TEST(Characters, PermutationCharacterByElementSums) {
    for (auto [q, orbits] : {std::pair{5U, 3U}, {7U, 6U}, {9U, 6U}}) {
        Tables s(q);
        const auto& ip = s.H.plane().internal_points();
        std::uint64_t sq = 0;
        std::vector<std::uint64_t> fix(s.H.size(), 0);
        for (std::uint32_t g = 0; g < s.H.size(); ++g) {
            for (auto p : ip) fix[g] += s.H.point_image(g, p) == p;
            sq += fix[g] * fix[g];
        }
        EXPECT_EQ(sq % s.H.size(), 0U);
        EXPECT_EQ(sq / s.H.size(), orbits);
        const auto perm = permutation_character(s.H, s.part);
        for (std::size_t c = 0; c < s.part.classes.size(); ++c) {
            for (auto g : s.part.classes[c].members) ASSERT_EQ(fix[g], perm[c]);
        }
        const auto rep = decomposition_check(s.H, s.part, s.table);
        EXPECT_TRUE(rep.check.ok) << rep.check.summary();
        EXPECT_EQ(rep.self_inner, static_cast<std::int64_t>(orbits));
        EXPECT_EQ(rep.stabilizer_orbits, orbits);
    }
}

TEST(Characters, Multiplicities) {
    for (auto q : {5U, 7U, 11U, 13U}) {
        Tables s(q);
        const auto rep = decomposition_check(s.H, s.part, s.table);
        EXPECT_TRUE(rep.check.ok) << rep.check.summary();
        EXPECT_EQ(rep.residual, expected_residual(q));
        for (const auto& m : rep.multiplicities) {
            if (m.label == "1") {
                EXPECT_EQ(m.value, 1.0);
            }
            if (m.label == "gamma") {
                EXPECT_EQ(m.value, q % 4 == 1 ? 1.0 : 0.0);
            }
            if (q % 4 == 1 && m.label.rfind("chi", 0) == 0) {
                EXPECT_EQ(m.value, 1.0) << m.label;
            }
            if (q % 4 == 3 && m.label.rfind("phi", 0) == 0) {
                EXPECT_EQ(m.value, 1.0) << m.label;
            }
        }
    }
}

TEST(Characters, ResidualClosedForm) {
    EXPECT_EQ(expected_residual(9), 10U);
    EXPECT_EQ(expected_residual(13), 0U);
    EXPECT_EQ(expected_residual(11), 10U);
    EXPECT_EQ(expected_residual(7), 0U);
}

}  // namespace
}  // namespace pgconic
