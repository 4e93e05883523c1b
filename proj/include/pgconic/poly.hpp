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

// Univariate polynomials over a Field, with enough machinery to factor
// small polynomials completely: square-free decomposition, distinct-degree
// and Cantor-Zassenhaus equal-degree splitting.

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ff.hpp"

namespace pgconic {

/// Coefficients low degree first; the zero polynomial is empty.
struct Poly {
    std::vector<Elem> c;

    bool operator==(const Poly&) const = default;

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    Elem lead() const { return c.back(); }
};

namespace poly {

inline Poly trimmed(Poly a) {
    while (!a.c.empty() && a.c.back().value == 0) a.c.pop_back();
    return a;
}

inline Poly constant(const Field&, Elem a) { return trimmed(Poly{{a}}); }
inline Poly x(const Field& f) { return Poly{{f.zero(), f.one()}}; }

inline Poly add(const Field& f, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), f.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.add(r.c[i], b.c[i]);
    return trimmed(std::move(r));
}

inline Poly sub(const Field& f, const Poly& a, const Poly& b) {
    Poly nb = b;
    for (auto& v : nb.c) v = f.neg(v);
    return add(f, a, nb);
}

inline Poly scale(const Field& f, const Poly& a, Elem s) {
    Poly r = a;
    for (auto& v : r.c) v = f.mul(v, s);
    return trimmed(std::move(r));
}

inline Poly mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].value == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
    }
    return trimmed(std::move(r));
}

/// (quotient, remainder)
inline std::pair<Poly, Poly> divmod(const Field& f, Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    a = trimmed(std::move(a));
    Poly q;
    if (a.degree() < b.degree()) return {q, a};
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), f.zero());
    const Elem li = f.inv(b.lead());
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(a.degree() - b.degree());
        const Elem t = f.mul(a.lead(), li);
        q.c[shift] = t;
        for (std::size_t i = 0; i < b.c.size(); ++i) a.c[shift + i] = f.sub(a.c[shift + i], f.mul(t, b.c[i]));
        a = trimmed(std::move(a));
    }
    return {trimmed(std::move(q)), a};
}

inline Poly mod(const Field& f, const Poly& a, const Poly& b) { return divmod(f, a, b).second; }
inline Poly quo(const Field& f, const Poly& a, const Poly& b) { return divmod(f, a, b).first; }

inline Poly monic(const Field& f, const Poly& a) {
    if (a.is_zero()) return a;
    return scale(f, a, f.inv(a.lead()));
}

inline Poly gcd(const Field& f, Poly a, Poly b) {
    while (!b.is_zero()) {
        a = mod(f, a, b);
        std::swap(a, b);
    }
    return monic(f, a);
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<Poly, Poly, Poly> xgcd(const Field& f, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = constant(f, f.one()), s1;
    Poly t0, t1 = constant(f, f.one());
    while (!r1.is_zero()) {
        auto [qt, rem] = divmod(f, r0, r1);
        r0 = std::exchange(r1, rem);
        s0 = std::exchange(s1, sub(f, s0, mul(f, qt, s1)));
        t0 = std::exchange(t1, sub(f, t0, mul(f, qt, t1)));
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Elem li = f.inv(r0.lead());
    return {scale(f, r0, li), scale(f, s0, li), scale(f, t0, li)};
}

inline Poly mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m) { return mod(f, mul(f, a, b), m); }

inline Poly powmod(const Field& f, Poly base, std::uint64_t e, const Poly& m) {
    Poly r = mod(f, constant(f, f.one()), m);
    base = mod(f, base, m);
    while (e > 0) {
        if (e & 1U) r = mulmod(f, r, base, m);
        base = mulmod(f, base, base, m);
        e >>= 1U;
    }
    return r;
}

inline Poly derivative(const Field& f, const Poly& a) {
    Poly r;
    for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(f.mul(f.from_int(static_cast<std::int64_t>(i)), a.c[i]));
    return trimmed(std::move(r));
}

inline Elem eval(const Field& f, const Poly& a, Elem x) {
    Elem r = f.zero();
    for (std::size_t i = a.c.size(); i-- > 0;) r = f.add(f.mul(r, x), a.c[i]);
    return r;
}

/// p-th root of a polynomial whose derivative vanishes.
inline Poly pth_root(const Field& f, const Poly& a) {
    const std::uint32_t p = f.characteristic();
    // In GF(p^e) the p-th root of y is y^(p^(e-1)).
    std::uint64_t root_exp = 1;
    for (std::uint32_t i = 1; i < f.degree(); ++i) root_exp *= p;
    Poly r;
    for (std::size_t i = 0; i < a.c.size(); i += p) r.c.push_back(f.pow(a.c[i], static_cast<std::int64_t>(root_exp)));
    return trimmed(std::move(r));
}

/// Square-free decomposition of a monic polynomial: pairs (g_i, i) with
/// f = prod g_i^i and each g_i square-free (not necessarily irreducible).
inline std::vector<std::pair<Poly, unsigned>> squarefree(const Field& f, const Poly& a) {
    std::vector<std::pair<Poly, unsigned>> out;
    if (a.degree() <= 0) return out;
    const Poly da = derivative(f, a);
    if (da.is_zero()) {
        for (auto [g, m] : squarefree(f, pth_root(f, a))) out.emplace_back(g, m * f.characteristic());
        return out;
    }
    Poly c = gcd(f, a, da);
    Poly w = quo(f, a, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        const Poly y = gcd(f, w, c);
        const Poly fac = quo(f, w, y);
        if (fac.degree() > 0) out.emplace_back(monic(f, fac), i);
        ++i;
        w = y;
        c = quo(f, c, y);
    }
    if (c.degree() > 0) {
        for (auto [g, m] : squarefree(f, pth_root(f, monic(f, c)))) out.emplace_back(g, m * f.characteristic());
    }
    return out;
}

/// Splits a monic square-free polynomial into (product of all irreducible
/// factors of degree d, d).
inline std::vector<std::pair<Poly, unsigned>> distinct_degree(const Field& f, Poly a) {
    std::vector<std::pair<Poly, unsigned>> out;
    const Poly xx = x(f);
    Poly h = mod(f, xx, a);
    for (unsigned d = 1; a.degree() >= 2L * d; ++d) {
        h = powmod(f, h, f.order(), a);
        const Poly g = gcd(f, a, sub(f, h, xx));
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            a = quo(f, a, g);
            h = mod(f, h, a);
        }
    }
    if (a.degree() > 0) out.emplace_back(monic(f, a), static_cast<unsigned>(a.degree()));
    return out;
}

/// Cantor-Zassenhaus: splits a product of distinct irreducibles of equal
/// degree d into its factors. Deterministic for a given seed.
inline std::vector<Poly> equal_degree(const Field& f, const Poly& a, unsigned d, std::mt19937_64& rng) {
    if (a.degree() == static_cast<long>(d)) return {monic(f, a)};
    const std::uint32_t qf = f.order();
    std::uniform_int_distribution<std::uint32_t> coef(0, qf - 1);
    for (;;) {
        Poly r;
        for (long i = 0; i < a.degree(); ++i) r.c.push_back(Elem{coef(rng)});
        r = trimmed(std::move(r));
        if (r.degree() < 1) continue;
        Poly b;
        if (f.characteristic() == 2) {
            // trace map r + r^2 + ... + r^(2^(k d - 1))
            Poly t = r, acc = r;
            for (unsigned i = 1; i < f.degree() * d; ++i) {
                t = mulmod(f, t, t, a);
                acc = add(f, acc, t);
            }
            b = acc;
        } else {
            // r^((Q^d - 1)/2) = (r^(1 + Q + ... + Q^(d-1)))^((Q-1)/2)
            Poly t = r, prod = mod(f, r, a);
            for (unsigned i = 1; i < d; ++i) {
                t = powmod(f, t, qf, a);
                prod = mulmod(f, prod, t, a);
            }
            b = sub(f, powmod(f, prod, (qf - 1) / 2, a), constant(f, f.one()));
        }
        const Poly g = gcd(f, a, b);
        if (g.degree() > 0 && g.degree() < a.degree()) {
            auto left = equal_degree(f, g, d, rng);
            auto right = equal_degree(f, quo(f, a, g), d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

/// Complete factorization of a non-constant polynomial into monic
/// irreducibles with multiplicities, sorted by (degree, coefficients).
inline std::vector<std::pair<Poly, unsigned>> factor(const Field& f, const Poly& a) {
    std::vector<std::pair<Poly, unsigned>> out;
    std::mt19937_64 rng(0x5eed);
    for (const auto& [sf, m] : squarefree(f, monic(f, a))) {
        for (const auto& [dd, d] : distinct_degree(f, sf)) {
            for (auto& g : equal_degree(f, dd, d, rng)) out.emplace_back(std::move(g), m);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        if (l.first.degree() != r.first.degree()) return l.first.degree() < r.first.degree();
        return std::lexicographical_compare(l.first.c.rbegin(), l.first.c.rend(), r.first.c.rbegin(), r.first.c.rend());
    });
    return out;
}

}  // namespace poly
}  // namespace pgconic
