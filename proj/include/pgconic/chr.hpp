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

#pragma once

// Complex character table of H = PSL(2, q), the permutation character of H
// on the internal points, and its decomposition.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "check.hpp"
#include "grp.hpp"

namespace pgconic {

using cplx = std::complex<double>;

struct CharColumn {
    ClassKind kind = ClassKind::Identity;
    std::uint32_t param = 0;
    std::string label;
    std::uint64_t size = 0;
};

enum class CharFamily { Trivial, Steinberg, Principal, Discrete, Half };

struct Character {
    std::string label;
    CharFamily family = CharFamily::Trivial;
    std::vector<cplx> values;
    std::vector<bool> ambiguous;  // the value is fixed only up to a sign choice

    bool any_ambiguous() const {
        for (bool a : ambiguous) {
            if (a) return true;
        }
        return false;
    }
    double degree() const { return values.front().real(); }
};

class CharTable {
  public:
    /// Columns follow the order of `part`; the class kinds and torus
    /// parameters select the table entries.
    CharTable(std::uint64_t q, const ClassPartition& part) : q_(q) {
        for (const auto& c : part.classes) columns_.push_back({c.kind, c.param, c.label(), c.size()});
        const bool one_mod_4 = q % 4 == 1;
        const double qd = static_cast<double>(q);
        const double two_pi = 2.0 * std::numbers::pi;
        auto eps_pow = [&](double e) { return std::polar(1.0, two_pi * e / static_cast<double>(q - 1)); };
        auto del_pow = [&](double e) { return std::polar(1.0, two_pi * e / static_cast<double>(q + 1)); };
        const std::uint32_t n_phi = one_mod_4 ? static_cast<std::uint32_t>((q - 5) / 4) : static_cast<std::uint32_t>((q - 3) / 4);
        const std::uint32_t n_chi = one_mod_4 ? static_cast<std::uint32_t>((q - 1) / 4) : static_cast<std::uint32_t>((q - 3) / 4);

        auto add_row = [&](std::string label, CharFamily fam, auto value) {
            Character ch;
            ch.label = std::move(label);
            ch.family = fam;
            for (const auto& col : columns_) {
                bool amb = false;
                ch.values.push_back(value(col, amb));
                ch.ambiguous.push_back(amb);
            }
            rows_.push_back(std::move(ch));
        };

        add_row("1", CharFamily::Trivial, [](const CharColumn&, bool&) { return cplx(1.0); });
        add_row("gamma", CharFamily::Steinberg, [&](const CharColumn& c, bool&) -> cplx {
            switch (c.kind) {
                case ClassKind::Identity: return qd;
                case ClassKind::FPlus:
                case ClassKind::FMinus: return 0.0;
                case ClassKind::Theta: return 1.0;
                case ClassKind::Zero: return one_mod_4 ? 1.0 : -1.0;
                case ClassKind::Pi: return -1.0;
            }
            return 0.0;
        });
        for (std::uint32_t s = 1; s <= n_chi; ++s) {
            add_row("chi" + std::to_string(s), CharFamily::Discrete, [&, s](const CharColumn& c, bool&) -> cplx {
                switch (c.kind) {
                    case ClassKind::Identity: return qd - 1;
                    case ClassKind::FPlus:
                    case ClassKind::FMinus: return -1.0;
                    case ClassKind::Theta: return 0.0;
                    case ClassKind::Zero: return one_mod_4 ? 0.0 : -2.0 * (s % 2 == 0 ? 1.0 : -1.0);
                    case ClassKind::Pi: {
                        const double e = 2.0 * c.param * s;
                        return -del_pow(e) - del_pow(-e);
                    }
                }
                return 0.0;
            });
        }
        for (std::uint32_t r = 1; r <= n_phi; ++r) {
            add_row("phi" + std::to_string(r), CharFamily::Principal, [&, r](const CharColumn& c, bool&) -> cplx {
                switch (c.kind) {
                    case ClassKind::Identity: return qd + 1;
                    case ClassKind::FPlus:
                    case ClassKind::FMinus: return 1.0;
                    case ClassKind::Theta: {
                        const double e = 2.0 * c.param * r;
                        return eps_pow(e) + eps_pow(-e);
                    }
                    case ClassKind::Zero: return one_mod_4 ? 2.0 * (r % 2 == 0 ? 1.0 : -1.0) : 0.0;
                    case ClassKind::Pi: return 0.0;
                }
                return 0.0;
            });
        }
        for (int j = 1; j <= 2; ++j) {
            const double sign = j == 1 ? 1.0 : -1.0;
            if (one_mod_4) {
                add_row("beta" + std::to_string(j), CharFamily::Half, [&, sign](const CharColumn& c, bool& amb) -> cplx {
                    switch (c.kind) {
                        case ClassKind::Identity: return (qd + 1) / 2;
                        case ClassKind::FPlus:
                        case ClassKind::FMinus: {
                            amb = true;
                            const double s = c.kind == ClassKind::FPlus ? sign : -sign;
                            return (1.0 + s * std::sqrt(qd)) / 2;
                        }
                        case ClassKind::Theta: amb = true; return 1.0;
                        case ClassKind::Zero: return ((q - 1) / 4) % 2 == 0 ? 1.0 : -1.0;
                        case ClassKind::Pi: return 0.0;
                    }
                    return 0.0;
                });
            } else {
                add_row("eta" + std::to_string(j), CharFamily::Half, [&, sign](const CharColumn& c, bool& amb) -> cplx {
                    switch (c.kind) {
                        case ClassKind::Identity: return (qd - 1) / 2;
                        case ClassKind::FPlus:
                        case ClassKind::FMinus: {
                            amb = true;
                            const double s = c.kind == ClassKind::FPlus ? sign : -sign;
                            return cplx(-1.0, s * std::sqrt(qd)) / 2.0;
                        }
                        case ClassKind::Theta: return 0.0;
                        case ClassKind::Zero: return ((q + 5) / 4) % 2 == 0 ? 1.0 : -1.0;
                        case ClassKind::Pi: amb = true; return -1.0;
                    }
                    return 0.0;
                });
            }
        }
    }

    std::uint64_t q() const { return q_; }
    std::uint64_t group_order() const { return order_H(q_); }
    const std::vector<CharColumn>& columns() const { return columns_; }
    const std::vector<Character>& rows() const { return rows_; }
    const Character& row(const std::string& label) const {
        for (const auto& r : rows_) {
            if (r.label == label) return r;
        }
        throw std::out_of_range("no character " + label);
    }

    /// <f, g> = (1/|H|) sum_C |C| f(C) conj(g(C)).
    cplx inner(const std::vector<cplx>& f, const std::vector<cplx>& g) const {
        cplx s = 0.0;
        for (std::size_t i = 0; i < columns_.size(); ++i) s += static_cast<double>(columns_[i].size) * f[i] * std::conj(g[i]);
        return s / static_cast<double>(group_order());
    }

    /// True when no character has a sign-ambiguous entry in column i.
    bool column_unambiguous(std::size_t i) const {
        for (const auto& r : rows_) {
            if (r.ambiguous[i]) return false;
        }
        return true;
    }

  private:
    std::uint64_t q_;
    std::vector<CharColumn> columns_;
    std::vector<Character> rows_;
};

/// Largest deviation from orthonormality over pairs of unambiguous rows and
/// from the column relations over pairs of unambiguous columns.
inline double orthogonality_check(const CharTable& t) {
    double worst = 0.0;
    const auto& rows = t.rows();
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a].any_ambiguous()) continue;
        for (std::size_t b = a; b < rows.size(); ++b) {
            if (rows[b].any_ambiguous()) continue;
            const cplx ip = t.inner(rows[a].values, rows[b].values);
            worst = std::max(worst, std::abs(ip - cplx(a == b ? 1.0 : 0.0)));
        }
    }
    const auto& cols = t.columns();
    const double order = static_cast<double>(t.group_order());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (!t.column_unambiguous(c)) continue;
        for (std::size_t d = c; d < cols.size(); ++d) {
            if (!t.column_unambiguous(d)) continue;
            cplx s = 0.0;
            for (const auto& r : rows) s += r.values[c] * std::conj(r.values[d]);
            const double want = c == d ? order / static_cast<double>(cols[c].size) : 0.0;
            worst = std::max(worst, std::abs(s - want) / std::max(1.0, want));
        }
    }
    return worst;
}

inline CheckResult check_char_table(const CharTable& t, double tol = 1e-6) {
    CheckResult r("character table");
    double sq = 0.0;
    for (const auto& row : t.rows()) sq += row.degree() * row.degree();
    r.expect(std::abs(sq - static_cast<double>(t.group_order())) < tol, "sum of squared degrees != |H|");
    for (const auto& c : t.columns()) {
        r.expect(c.size == expected_class_size(t.q(), c.kind), "class size mismatch for " + c.label);
    }
    const double dev = orthogonality_check(t);
    r.expect(dev < tol, "orthogonality deviation " + std::to_string(dev));
    return r;
}

/// Number of internal points fixed by a representative of each class.
inline std::vector<std::uint64_t> permutation_character(const Group& H, const ClassPartition& part) {
    const auto internal = H.plane().internal_points();
    std::vector<std::uint64_t> out;
    for (const auto& c : part.classes) {
        const std::uint32_t g = c.members.front();
        std::uint64_t n = 0;
        for (auto p : internal) n += H.point_image(g, p) == p ? 1 : 0;
        out.push_back(n);
    }
    return out;
}

struct Multiplicity {
    std::string label;
    double value = 0.0;
    bool determinate = true;  // false: depends on a sign choice, not reported as a number
};

struct DecompositionReport {
    CheckResult check{"permutation character"};
    std::vector<Multiplicity> multiplicities;
    std::uint64_t residual = 0;  // |I| minus the part carried by sign-free characters
    std::int64_t self_inner = 0;  // <pi, pi>
    std::uint64_t stabilizer_orbits = 0;
};

inline std::uint64_t expected_residual(std::uint64_t q) {
    switch (q % 8) {
        case 1: return q + 1;
        case 3: return q - 1;
        default: return 0;
    }
}

inline DecompositionReport decomposition_check(const Group& H, const ClassPartition& part, const CharTable& t,
                                               double tol = 1e-6) {
    DecompositionReport rep;
    CheckResult& chk = rep.check;
    const std::uint64_t q = t.q();
    const bool one_mod_4 = q % 4 == 1;
    const auto perm = permutation_character(H, part);
    const std::uint64_t n_internal = H.plane().internal_points().size();
    std::vector<cplx> pv(perm.begin(), perm.end());
    chk.expect(perm.front() == n_internal, "pi(1) != |I|");

    auto snap = [&](cplx v, const std::string& what) -> std::int64_t {
        const double re = std::round(v.real());
        chk.expect(std::abs(v - cplx(re)) < tol, what + " is not an integer: " + std::to_string(v.real()));
        return static_cast<std::int64_t>(re);
    };

    std::int64_t carried = 0;
    for (const auto& row : t.rows()) {
        // A product with pi is sign-free when pi vanishes on every ambiguous entry.
        bool determinate = true;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            if (row.ambiguous[i] && perm[i] != 0) determinate = false;
        }
        Multiplicity m{row.label, 0.0, determinate};
        if (determinate) {
            const std::int64_t v = snap(t.inner(pv, row.values), "<pi, " + row.label + ">");
            m.value = static_cast<double>(v);
            chk.expect(v >= 0, "negative multiplicity for " + row.label);
            if (!row.any_ambiguous()) carried += v * static_cast<std::int64_t>(std::llround(row.degree()));
            switch (row.family) {
                case CharFamily::Trivial: chk.expect(v == 1, "<pi, 1> != 1"); break;
                case CharFamily::Steinberg:
                    chk.expect(v == (one_mod_4 ? 1 : 0), "<pi, gamma> = " + std::to_string(v));
                    break;
                case CharFamily::Discrete:
                    if (one_mod_4) chk.expect(v == 1, "<pi, " + row.label + "> = " + std::to_string(v));
                    break;
                case CharFamily::Principal:
                    if (!one_mod_4) chk.expect(v == 1, "<pi, " + row.label + "> = " + std::to_string(v));
                    break;
                case CharFamily::Half: break;
            }
        }
        rep.multiplicities.push_back(m);
    }
    rep.residual = n_internal - static_cast<std::uint64_t>(carried);
    chk.expect(rep.residual == expected_residual(q), "residual degree " + std::to_string(rep.residual) +
                                                         ", expected " + std::to_string(expected_residual(q)));

    rep.self_inner = snap(t.inner(pv, pv), "<pi, pi>");
    const auto p0 = H.plane().internal_points().front();
    const auto k = point_stabilizer(H, p0);
    rep.stabilizer_orbits = point_orbits(H, k.elements, H.plane().internal_points()).size();
    chk.expect(static_cast<std::uint64_t>(rep.self_inner) == rep.stabilizer_orbits,
               "<pi, pi> differs from the stabilizer orbit count");
    return rep;
}

}  // namespace pgconic
