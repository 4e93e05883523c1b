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

#include <cstdint>
#include <numeric>
#include <set>

#include "pgconic/ff.hpp"

namespace pgconic {
namespace {

const std::uint32_t kOrders[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49};

TEST(Field, PrimePowerDecomposition) {
    EXPECT_EQ(Field::prime_power(27), (std::pair<std::uint32_t, std::uint32_t>{3, 3}));
    EXPECT_EQ(Field::prime_power(13), (std::pair<std::uint32_t, std::uint32_t>{13, 1}));
    EXPECT_EQ(Field::prime_power(64), (std::pair<std::uint32_t, std::uint32_t>{2, 6}));
    EXPECT_FALSE(Field::prime_power(1));
    EXPECT_FALSE(Field::prime_power(15));
    EXPECT_FALSE(Field::prime_power(12));
}

TEST(Field, GeometryRejectsEvenAndComposite) {
    EXPECT_THROW(Field::for_geometry(4), std::invalid_argument);
    EXPECT_THROW(Field::for_geometry(15), std::invalid_argument);
    EXPECT_THROW(Field::for_geometry(1), std::invalid_argument);
    EXPECT_NO_THROW(Field::for_geometry(9));
}

TEST(Field, AxiomsExhaustive) {
    for (auto q : kOrders) {
        const auto pe = *Field::prime_power(q);
        const auto f = Field::make(pe.first, pe.second);
        ASSERT_EQ(f->order(), q);
        const auto el = f->elements();
        for (auto a : el) {
            EXPECT_EQ(f->add(a, f->zero()), a);
            EXPECT_EQ(f->mul(a, f->one()), a);
            EXPECT_EQ(f->add(a, f->neg(a)), f->zero());
            if (a != f->zero()) {
                EXPECT_EQ(f->mul(a, f->inv(a)), f->one()) << "q=" << q;
            }
            for (auto b : el) {
                EXPECT_EQ(f->add(a, b), f->add(b, a));
                EXPECT_EQ(f->mul(a, b), f->mul(b, a));
                if (q <= 16) {
                    for (auto c : el) {
                        ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
                        ASSERT_EQ(f->mul(a, f->mul(b, c)), f->mul(f->mul(a, b), c));
                    }
                }
            }
        }
        // p copies of 1 sum to zero
        Elem s = f->zero();
        for (std::uint32_t i = 0; i < pe.first; ++i) s = f->add(s, f->one());
        EXPECT_EQ(s, f->zero());
    }
}

TEST(Field, PrimitiveElementGeneratesUnits) {
    for (auto q : kOrders) {
        const auto pe = *Field::prime_power(q);
        const auto f = Field::make(pe.first, pe.second);
        std::set<std::uint32_t> seen;
        Elem x = f->one();
        for (std::uint32_t i = 0; i + 1 < q; ++i) {
            seen.insert(x.value);
            x = f->mul(x, f->primitive());
        }
        EXPECT_EQ(seen.size(), q - 1) << "q=" << q;
        EXPECT_EQ(x, f->one());
        for (std::uint32_t i = 0; i + 1 < q; ++i) EXPECT_EQ(f->log(f->exp(i)), i);
        EXPECT_EQ(f->pow(f->primitive(), -1), f->inv(f->primitive()));
    }
}

TEST(Field, SquaresAgreeWithBruteForce) {
    for (auto q : {3U, 5U, 7U, 9U, 11U, 13U, 25U, 27U}) {
        const auto f = Field::for_geometry(q);
        std::set<std::uint32_t> sq;
        for (auto x : f->elements()) {
            if (x != f->zero()) sq.insert(f->mul(x, x).value);
        }
        EXPECT_EQ(sq.size(), (q - 1) / 2);
        for (auto x : f->elements()) {
            if (x == f->zero()) continue;
            const bool want = sq.count(x.value) > 0;
            EXPECT_EQ(f->is_square(x), want) << "q=" << q << " x=" << f->to_string(x);
            EXPECT_EQ(f->is_square_by_log(x), want);
        }
        const auto sc = square_classes(*f);
        EXPECT_EQ(sc.squares.size(), (q - 1) / 2);
        EXPECT_EQ(sc.non_squares.size(), (q - 1) / 2);
    }
}

TEST(Field, ShiftedSquareCountsMatchClosedForm) {
    for (auto q : {3U, 5U, 7U, 9U, 11U, 13U, 17U, 19U, 23U, 25U, 27U}) {
        const auto f = Field::for_geometry(q);
        EXPECT_EQ(shifted_square_counts(*f), expected_shifted_square_counts(q)) << "q=" << q;
    }
}

TEST(Field, CoefficientRoundTrip) {
    const auto f = Field::make(3, 3);
    for (auto x : f->elements()) EXPECT_EQ(f->from_coefficients(f->coefficients(x)), x);
    EXPECT_EQ(f->modulus().size(), 4U);
    EXPECT_EQ(f->modulus().back(), 1U);
}

TEST(Field, BinaryFieldDegree) {
    // order of 2 modulo the odd part of lcm(q-1, q+1), by direct search
    for (std::uint64_t q : {3U, 5U, 7U, 9U, 11U, 13U, 17U, 19U, 23U, 25U, 27U}) {
        std::uint64_t l = std::lcm(q - 1, q + 1);
        while (l % 2 == 0) l /= 2;
        std::uint32_t k = 1;
        std::uint64_t v = 2 % l;
        while (l > 1 && v != 1) {
            v = v * 2 % l;
            ++k;
        }
        EXPECT_EQ(binfield_degree(q), k) << "q=" << q;
        EXPECT_EQ(binfield_for(q)->order(), 1U << k);
    }
    EXPECT_EQ(binfield_degree(3), 1U);
    EXPECT_EQ(binfield_degree(5), 2U);
    EXPECT_EQ(binfield_degree(9), 4U);
    EXPECT_EQ(binfield_degree(13), 6U);
    EXPECT_THROW(binfield_degree(4), std::invalid_argument);
}

}  // namespace
}  // namespace pgconic
