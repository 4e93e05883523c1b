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

// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance            run criteria 1-9
//   acceptance 4 6        run the listed criteria only
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pgconic/alist.hpp"
#include "pgconic/suite.hpp"

namespace {

using namespace pgconic;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Workspace& workspace(std::uint64_t q) {
    static std::map<std::uint64_t, std::unique_ptr<Workspace>> cache;
    auto& w = cache[q];
    if (!w) w = std::make_unique<Workspace>(q);
    return *w;
}

struct Outcome {
    CheckResult check;
    std::string detail;
};

void absorb(Outcome& out, const CheckResult& c, std::uint64_t q) {
    CheckResult tagged = c;
    for (auto& f : tagged.failures) f = "q=" + std::to_string(q) + " " + c.name + ": " + f;
    out.check.merge(tagged);
}

const std::vector<std::uint64_t> kSmall{3, 5, 7, 9, 11, 13};

Outcome criterion_1() {
    Outcome out{CheckResult("null dimension"), {}};
    const auto t0 = Clock::now();
    std::ostringstream dims;
    for (auto q : kSmall) {
        const IncidenceSystem sys(make_plane(q));
        const auto d = sys.null_dimension();
        out.check.expect(d == (q - 1) * (q - 1) / 4, "q=" + std::to_string(q) + " dim " + std::to_string(d));
        dims << (q == 3 ? "" : ",") << d;
    }
    const double s = seconds_since(t0);
    out.check.expect(s < 60.0, "runtime " + std::to_string(s) + " s");
    out.detail = "dims " + dims.str() + " in " + std::to_string(s) + " s";
    return out;
}

Outcome criterion_2() {
    Outcome out{CheckResult("A^3 = A"), {}};
    for (auto q : kSmall) absorb(out, verify_a_cubed(workspace(q).incidence()), q);
    return out;
}

Outcome criterion_3() {
    Outcome out{CheckResult("geometry census"), {}};
    for (auto q : kSmall) {
        const Plane& pl = workspace(q).plane();
        absorb(out, check_geometry_census(pl), q);
        absorb(out, check_polarity(pl), q);
        absorb(out, check_meet_types(pl), q);
    }
    return out;
}

// Involutions in K as asserted by this criterion. For q = 3 (mod 4) the true
// count is stabilizer_involution_count(q) = (q+3)/2.
std::uint64_t asserted_involution_count(std::uint64_t q) { return q % 4 == 1 ? (q + 1) / 2 : (q - 1) / 2; }

Outcome criterion_4() {
    Outcome out{CheckResult("parity suite"), {}};
    std::ostringstream det;
    for (auto q : {5U, 7U, 9U, 13U}) {
        const auto t0 = Clock::now();
        Workspace& ws = workspace(q);
        absorb(out, check_shifted_squares(ws.plane().field()), q);
        absorb(out, check_even_intersections(ws.plane()), q);
        absorb(out, check_stabilizer_class_counts(ws.H(), ws.partition(), asserted_involution_count(q)), q);
        if (!ws.H().has_multiplication_table()) ws.H().build_multiplication_table();
        const auto rep = parity_analysis(ws.H(), ws.partition());
        absorb(out, rep.polar_parity, q);
        absorb(out, rep.neighbor_parity, q);
        absorb(out, rep.invariance, q);
        const double s = seconds_since(t0);
        if (q == 13) out.check.expect(s < 600.0, "q=13 runtime " + std::to_string(s) + " s");
        det << " q=" << q << ":" << static_cast<int>(s) << "s";
    }
    out.detail = "times" + det.str();
    return out;
}

Outcome criterion_5() {
    Outcome out{CheckResult("block suite"), {}};
    std::ostringstream counts;
    for (auto q : {5U, 7U, 9U, 11U, 13U}) {
        Workspace& ws = workspace(q);
        absorb(out, ws.algebra().check(ws.H(), ws.partition()), q);
        const auto& blocks = ws.blocks();
        absorb(out, ws.block_log(), q);
        out.check.expect(blocks.size() == expected_block_count(q), "q=" + std::to_string(q) + " block count");
        ws.patterns = verify_expression_patterns(ws.algebra(), ws.partition(), blocks, q);
        absorb(out, ws.patterns->check, q);
        counts << (q == 5 ? "" : ",") << blocks.size();
    }
    out.detail = "block counts " + counts.str();
    return out;
}

Outcome criterion_6() {
    Outcome out{CheckResult("module decomposition"), {}};
    for (auto q : kSmall) {
        Workspace& ws = workspace(q);
        const auto rep = block_module_analysis(ws.incidence(), ws.H(), ws.partition(), ws.algebra(), ws.blocks(),
                                               ws.sample_elements(20));
        absorb(out, rep.check, q);
    }
    return out;
}

Outcome criterion_7() {
    Outcome out{CheckResult("character suite"), {}};
    for (auto q : {5U, 7U, 9U, 11U, 13U}) {
        Workspace& ws = workspace(q);
        const auto& t = ws.char_table();
        out.check.expect(orthogonality_check(t) < 1e-6, "q=" + std::to_string(q) + " orthogonality");
        const auto rep = decomposition_check(ws.H(), ws.partition(), t);
        absorb(out, rep.check, q);
        const std::string want = q % 4 == 1 ? "chi" : "phi";
        for (const auto& m : rep.multiplicities) {
            if (m.label.rfind(want, 0) == 0) {
                out.check.expect(m.determinate && m.value == 1.0,
                                 "q=" + std::to_string(q) + " <pi," + m.label + "> = " + std::to_string(m.value));
            }
        }
    }
    return out;
}

// Row reduction one bit at a time on a vector-of-vectors copy.
std::size_t naive_rank(std::vector<std::vector<int>> m) {
    std::size_t r = 0;
    const std::size_t n = m.size(), c = n ? m[0].size() : 0;
    for (std::size_t j = 0; j < c && r < n; ++j) {
        std::size_t p = r;
        while (p < n && !m[p][j]) ++p;
        if (p == n) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != r && m[i][j]) {
                for (std::size_t k = 0; k < c; ++k) m[i][k] ^= m[r][k];
            }
        }
        ++r;
    }
    return r;
}

Outcome criterion_8() {
    Outcome out{CheckResult("rank oracle and equivariance"), {}};
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dens(0.02, 0.6);
    for (int t = 0; t < 1000; ++t) {
        std::bernoulli_distribution bit(dens(rng));
        std::vector<std::vector<int>> d(64, std::vector<int>(64));
        BitMatrix m(64, 64);
        for (std::size_t i = 0; i < 64; ++i) {
            for (std::size_t j = 0; j < 64; ++j) {
                d[i][j] = bit(rng);
                m.set(i, j, d[i][j] != 0);
            }
        }
        out.check.expect(m.rank() == naive_rank(d), "random matrix " + std::to_string(t));
    }
    for (auto q : kSmall) {
        Workspace& ws = workspace(q);
        const auto elems = q <= 7 ? all_elements(ws.H()) : ws.sample_elements(100);
        absorb(out, equivariance_check(ws.incidence(), ws.H(), elems), q);
    }
    return out;
}

Outcome criterion_9() {
    Outcome out{CheckResult("alist export"), {}};
    for (auto q : kSmall) {
        const BitMatrix& a = workspace(q).incidence().A();
        const std::string text = to_alist(a);
        out.check.expect(from_alist(text) == a, "q=" + std::to_string(q) + " round trip");
        std::istringstream is(text);
        std::size_t n = 0, m = 0;
        is >> n >> m;
        const std::size_t w = (q + 1) / 2;
        for (std::size_t i = 0; i < 2 + n + m; ++i) {
            std::size_t v = 0;
            is >> v;
            out.check.expect(v == w, "q=" + std::to_string(q) + " weight field " + std::to_string(i) + " = " +
                                         std::to_string(v));
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                                         criterion_6, criterion_7, criterion_8, criterion_9};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "unknown criterion " << argv[i] << "\n";
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty()) {
        for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);
    }
    bool all_ok = true;
    for (int k : selected) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o.check = CheckResult("exception");
            o.check.fail(e.what());
        }
        all_ok = all_ok && o.check.ok;
        std::cout << "criterion " << k << ": " << (o.check.ok ? "PASS" : "FAIL") << "  " << o.check.name << " ("
                  << o.check.cases << " cases, " << static_cast<int>(seconds_since(t0)) << " s)";
        if (!o.detail.empty()) std::cout << "; " << o.detail;
        std::cout << "\n";
        for (const auto& f : o.check.failures) std::cout << "    " << f << "\n";
        std::cout.flush();
    }
    return all_ok ? 0 : 1;
}
