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

#include "pgconic/alist.hpp"
#include "pgconic/inc.hpp"

namespace pgconic {
namespace {

TEST(Alist, RoundTripIncidenceMatrices) {
    for (auto q : {3U, 5U, 7U, 9U, 11U, 13U}) {
        const IncidenceSystem sys(make_plane(q));
        const std::string text = to_alist(sys.A());
        EXPECT_EQ(from_alist(text), sys.A());
        std::istringstream is(text);
        std::size_t n = 0, m = 0, wc = 0, wr = 0;
        is >> n >> m >> wc >> wr;
        EXPECT_EQ(n, sys.size());
        EXPECT_EQ(m, sys.size());
        EXPECT_EQ(wc, (q + 1) / 2);
        EXPECT_EQ(wr, (q + 1) / 2);
        for (std::size_t i = 0; i < n + m; ++i) {
            std::size_t w = 0;
            is >> w;
            EXPECT_EQ(w, (q + 1) / 2);
        }
    }
}

TEST(Alist, QThreeText) {
    const IncidenceSystem sys(make_plane(3));
    EXPECT_EQ(to_alist(sys.A()), "3 3\n2 2\n2 2 2\n2 2 2\n2 3\n1 3\n1 2\n2 3\n1 3\n1 2\n");
}

TEST(Alist, RoundTripRandomRectangular) {
    std::mt19937_64 rng(31);
    std::bernoulli_distribution bit(0.2);
    for (int t = 0; t < 20; ++t) {
        BitMatrix m(13, 29);
        for (std::size_t i = 0; i < 13; ++i) {
            for (std::size_t j = 0; j < 29; ++j) m.set(i, j, bit(rng));
        }
        EXPECT_EQ(from_alist(to_alist(m)), m);
    }
}

TEST(Alist, RejectsInconsistentInput) {
    EXPECT_THROW(from_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n"), std::runtime_error);  // sections disagree
    EXPECT_THROW(from_alist("2 2\n2 1\n1 1\n1 1\n1\n2\n1\n2\n"), std::runtime_error);  // max weight wrong
    EXPECT_THROW(from_alist("2 2\n1 1\n1 1\n1 1\n3\n2\n1\n2\n"), std::runtime_error);  // index out of range
    EXPECT_THROW(from_alist("2"), std::runtime_error);
    EXPECT_EQ(from_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n1\n2\n"), BitMatrix::identity(2));
}

TEST(Alist, Csv) {
    std::ostringstream os;
    write_csv(os, BitMatrix::identity(2));
    EXPECT_EQ(os.str(), "1,0\n0,1\n");
}

}  // namespace
}  // namespace pgconic
