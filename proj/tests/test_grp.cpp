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

#include <algorithm>

#include "pgconic/grp.hpp"

namespace pgconic {
namespace {

TEST(Group, Orders) {
    for (auto q : {3U, 5U, 7U, 9U, 11U}) {
        const auto pl = make_plane(q);
        const auto H = Group::build_H(pl);
        const auto G = Group::build_G(pl);
        EXPECT_EQ(H.size(), order_H(q));
        EXPECT_EQ(G.size(), 2 * order_H(q));
        EXPECT_EQ(H.mul(H.identity(), 0), 0U);
        for (std::uint32_t g = 0; g < H.size(); g += 7) EXPECT_EQ(H.mul(g, H.inv(g)), H.identity());
    }
}

TEST(Group, ClassesFromTraceMatchConjugationOrbits) {
    for (auto q : {5U, 7U, 9U}) {
        auto H = Group::build_H(make_plane(q));
        const auto part = classify_by_t(H);
        ASSERT_EQ(part.classes.size(), class_count(q));
        auto orbits = classes_by_orbits(H);
        std::vector<std::vector<std::uint32_t>> by_t;
        for (const auto& c : part.classes) by_t.push_back(c.members);
        for (auto& o : orbits) std::sort(o.begin(), o.end());
        std::sort(orbits.begin(), orbits.end());
        std::sort(by_t.begin(), by_t.end());
        EXPECT_EQ(orbits, by_t) << "q=" << q;
        for (const auto& c : part.classes) EXPECT_EQ(c.size(), expected_class_size(q, c.kind)) << c.label();
        EXPECT_TRUE(check_conjugacy_classes(H, part).ok);
    }
}

TEST(Group, ClassCountAndSizesAtThirteen) {
    auto H = Group::build_H(make_plane(13));
    const auto part = classify_by_t(H);
    EXPECT_EQ(part.classes.size(), 9U);
    std::uint64_t sum = 0;
    for (const auto& c : part.classes) {
        sum += c.size();
        if (c.kind == ClassKind::Theta) {
            EXPECT_EQ(c.size(), 182U);
        }
    }
    EXPECT_EQ(sum, 1092U);
    EXPECT_EQ(class_count(7), 6U);
}

// Involutions of the point stabilizer counted from g^2 = 1 alone.
TEST(Group, StabilizerInvolutionsByDirectSquaring) {
    for (auto q : {3U, 5U, 7U, 9U, 11U, 13U}) {
        auto H = Group::build_H(make_plane(q));
        const auto p = H.plane().internal_points().front();
        const auto K = point_stabilizer(H, p);
        EXPECT_EQ(K.size(), q + 1);
        EXPECT_TRUE(is_closed(H, K));
        std::uint64_t inv = 0;
        for (auto g : K.elements) {
            if (g != H.identity() && H.mul(g, g) == H.identity()) ++inv;
        }
        EXPECT_EQ(inv, stabilizer_involution_count(q)) << "q=" << q;
        const auto part = classify_by_t(H);
        EXPECT_TRUE(check_stabilizer_class_counts(H, part).ok);
    }
}

TEST(Group, TransitivityAndFixture) {
    for (auto q : {3U, 5U, 7U}) {
        const auto pl = make_plane(q);
        const auto H = Group::build_H(pl);
        const auto G = Group::build_G(pl);
        EXPECT_TRUE(check_transitivity(H, G, true).ok);
        EXPECT_TRUE(check_stabilizer_fixture(G).ok);
        EXPECT_EQ(point_orbits(H, all_elements(H), pl->internal_points()).size(), 1U);
    }
}

TEST(Group, EvenIntersectionsAndShiftedSquares) {
    for (auto q : {5U, 7U, 9U, 11U}) {
        const auto pl = make_plane(q);
        EXPECT_TRUE(check_even_intersections(*pl).ok);
        EXPECT_TRUE(check_shifted_squares(pl->field()).ok);
    }
}

TEST(Group, NeighbourSetSize) {
    for (auto q : {5U, 7U, 9U}) {
        const auto pl = make_plane(q);
        for (auto p : pl->internal_points()) {
            const auto n = neighbor_set(*pl, p);
            EXPECT_EQ(n.size(), expected_neighbor_count(q));
            EXPECT_EQ(std::count(n.begin(), n.end(), p), q % 4 == 3 ? 1 : 0);
        }
    }
}

TEST(Group, ParityAnalysis) {
    for (auto q : {5U, 7U, 9U}) {
        auto H = Group::build_H(make_plane(q));
        H.build_multiplication_table();
        const auto part = classify_by_t(H);
        const auto rep = parity_analysis(H, part);
        EXPECT_TRUE(rep.polar_parity.ok) << rep.polar_parity.summary();
        EXPECT_TRUE(rep.neighbor_parity.ok) << rep.neighbor_parity.summary();
        EXPECT_TRUE(rep.invariance.ok) << rep.invariance.summary();
        EXPECT_FALSE(rep.configurations.empty());
    }
}

}  // namespace
}  // namespace pgconic
