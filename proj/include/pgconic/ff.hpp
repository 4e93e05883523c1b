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

// Finite fields GF(p^e) with table-driven arithmetic.
//
// An element is stored as the integer whose base-p digits are its
// coefficients over the prime field (c0 + c1*p + ... ), which also fixes the
// element ordering used everywhere else in the library. The modulus is the
// monic irreducible of degree e with the smallest such code, and the primitive
// element is the smallest generator of the multiplicative group.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgconic {

struct Elem {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const Elem&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Dense polynomials over the prime field GF(p), low degree first. Only used
// while constructing a Field; afterwards everything goes through tables.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PrimePoly pp_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    // m is monic
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - (std::uint64_t{lead} * m[i]) % p) % p);
        }
        trim(a);
    }
    return a;
}

inline PrimePoly pp_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return pp_mod(std::move(r), m, p);
}

inline PrimePoly pp_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& m, std::uint32_t p) {
    PrimePoly r{1};
    r = pp_mod(r, m, p);
    base = pp_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1U) r = pp_mulmod(r, base, m, p);
        base = pp_mulmod(base, base, m, p);
        e >>= 1U;
    }
    return r;
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        const std::int64_t qt = r / nr;
        t = std::exchange(nt, t - qt * nt);
        r = std::exchange(nr, r - qt * nr);
    }
    return static_cast<std::uint32_t>((t % p + p) % p);
}

inline PrimePoly pp_gcd(PrimePoly a, PrimePoly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        const std::uint32_t li = inv_mod(b.back(), p);
        for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * li % p);
        a = pp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: f of degree e is irreducible iff x^(p^e) = x mod f and
// gcd(x^(p^(e/r)) - x, f) = 1 for every prime r dividing e.
inline bool is_irreducible(const PrimePoly& f, std::uint32_t p) {
    const std::size_t e = f.size() - 1;
    if (e == 1) return true;
    const PrimePoly x{0, 1};
    auto x_pow_p_power = [&](std::size_t k) {
        PrimePoly r = x;
        for (std::size_t i = 0; i < k; ++i) r = pp_powmod(r, p, f, p);
        return r;
    };
    auto minus_x = [&](PrimePoly r) {
        r.resize(std::max<std::size_t>(r.size(), 2), 0);
        r[1] = (r[1] + p - 1) % p;
        trim(r);
        return r;
    };
    if (!minus_x(x_pow_p_power(e)).empty()) return false;
    for (auto r : prime_factors(e)) {
        const PrimePoly g = pp_gcd(f, minus_x(x_pow_p_power(e / r)), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

/// GF(p^e). Immutable after construction; share it through
/// std::shared_ptr<const Field>.
class Field {
  public:
    static constexpr std::uint64_t kMaxOrder = 1U << 16;

    static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t e) {
        return std::shared_ptr<const Field>(new Field(p, e));
    }

    /// Field for the plane geometry: q must be an odd prime power.
    static std::shared_ptr<const Field> for_geometry(std::uint64_t q) {
        auto pe = prime_power(q);
        if (!pe) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
        if (pe->first == 2) throw std::invalid_argument("q = " + std::to_string(q) + " is even; geometry needs odd q");
        return make(pe->first, pe->second);
    }

    /// Decomposes q = p^e, or nullopt if q is not a prime power.
    static std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
        if (q < 2) return std::nullopt;
        const auto f = detail::prime_factors(q);
        if (f.size() != 1) return std::nullopt;
        std::uint32_t e = 0;
        for (std::uint64_t r = q; r > 1; r /= f[0]) ++e;
        return std::pair{static_cast<std::uint32_t>(f[0]), e};
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return e_; }
    std::uint32_t order() const { return q_; }
    /// Monic modulus, low degree first (so back() == 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Elem primitive() const { return xi_; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }

    /// Image of an integer under Z -> GF(p).
    Elem from_int(std::int64_t n) const {
        const std::int64_t r = ((n % p_) + p_) % p_;
        return Elem{static_cast<std::uint32_t>(r)};
    }

    std::vector<Elem> elements() const {
        std::vector<Elem> out(q_);
        for (std::uint32_t i = 0; i < q_; ++i) out[i] = Elem{i};
        return out;
    }

    Elem add(Elem a, Elem b) const {
        if (e_ == 1) {
            const std::uint32_t s = a.value + b.value;
            return Elem{s >= p_ ? s - p_ : s};
        }
        if (p_ == 2) return Elem{a.value ^ b.value};
        if (!add_table_.empty()) return Elem{add_table_[std::size_t{a.value} * q_ + b.value]};
        return Elem{digit_add(a.value, b.value)};
    }

    Elem neg(Elem a) const {
        if (p_ == 2) return a;
        if (e_ == 1) return Elem{a.value == 0 ? 0 : p_ - a.value};
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t v = a.value; v > 0; v /= p_, scale *= p_) {
            const std::uint32_t d = v % p_;
            out += ((p_ - d) % p_) * scale;
        }
        return Elem{out};
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a.value == 0 || b.value == 0) return zero();
        return Elem{exp_[log_[a.value] + log_[b.value]]};
    }

    Elem inv(Elem a) const {
        if (a.value == 0) throw std::domain_error("inverse of zero");
        const std::uint32_t l = log_[a.value];
        return Elem{exp_[l == 0 ? 0 : (q_ - 1) - l]};
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::int64_t n) const {
        if (a.value == 0) {
            if (n < 0) throw std::domain_error("negative power of zero");
            return n == 0 ? one() : zero();
        }
        const std::int64_t m = q_ - 1;
        const std::int64_t l = ((std::int64_t{log_[a.value]} * (n % m)) % m + m) % m;
        return Elem{exp_[static_cast<std::size_t>(l)]};
    }

    /// Discrete logarithm base the primitive element.
    std::uint32_t log(Elem a) const {
        if (a.value == 0) throw std::domain_error("log of zero");
        return log_[a.value];
    }

    /// xi^i for any integer i.
    Elem exp(std::int64_t i) const {
        const std::int64_t m = q_ - 1;
        return Elem{exp_[static_cast<std::size_t>(((i % m) + m) % m)]};
    }

    /// Euler's criterion x^((q-1)/2) == 1. Zero is in neither class.
    bool is_square(Elem x) const {
        if (x.value == 0) throw std::domain_error("zero is neither a square nor a non-square");
        if (p_ == 2) return true;
        return pow(x, (q_ - 1) / 2) == one();
    }

    /// Same predicate read off the log table: squares have even logarithm.
    bool is_square_by_log(Elem x) const {
        if (x.value == 0) throw std::domain_error("zero is neither a square nor a non-square");
        if (p_ == 2) return true;
        return log(x) % 2 == 0;
    }

    Elem frobenius(Elem x) const { return pow(x, p_); }

    std::vector<std::uint32_t> coefficients(Elem x) const {
        std::vector<std::uint32_t> c(e_, 0);
        std::uint32_t v = x.value;
        for (std::uint32_t i = 0; i < e_; ++i, v /= p_) c[i] = v % p_;
        return c;
    }

    Elem from_coefficients(const std::vector<std::uint32_t>& c) const {
        std::uint32_t v = 0, scale = 1;
        for (std::uint32_t i = 0; i < e_; ++i, scale *= p_) v += (i < c.size() ? c[i] % p_ : 0) * scale;
        return Elem{v};
    }

    /// Human readable form: integers for prime fields, polynomials in `a`
    /// (a root of the modulus) otherwise.
    std::string to_string(Elem x) const {
        if (e_ == 1) return std::to_string(x.value);
        const auto c = coefficients(x);
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (c[i] != 1 || i == 0) s += std::to_string(c[i]);
            if (i >= 1) s += "a";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

    std::string modulus_string() const {
        std::string s;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            if (modulus_[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
            if (i >= 1) s += "x";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

  private:
    Field(std::uint32_t p, std::uint32_t e) : p_(p), e_(e) {
        if (!detail::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
        if (e == 0) throw std::invalid_argument("extension degree must be positive");
        const std::uint64_t q = detail::ipow(p, e);
        if (q > kMaxOrder) throw std::invalid_argument("field order " + std::to_string(q) + " exceeds table limit");
        q_ = static_cast<std::uint32_t>(q);
        choose_modulus();
        choose_primitive();
        if (e_ > 1 && p_ != 2 && q_ <= 1024) {
            add_table_.resize(std::size_t{q_} * q_);
            for (std::uint32_t a = 0; a < q_; ++a) {
                for (std::uint32_t b = 0; b < q_; ++b) add_table_[std::size_t{a} * q_ + b] = digit_add(a, b);
            }
        }
    }

    std::uint32_t digit_add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < e_; ++i, a /= p_, b /= p_, scale *= p_) out += ((a % p_ + b % p_) % p_) * scale;
        return out;
    }

    detail::PrimePoly as_poly(std::uint32_t v) const {
        detail::PrimePoly c(e_, 0);
        for (std::uint32_t i = 0; i < e_; ++i, v /= p_) c[i] = v % p_;
        detail::trim(c);
        return c;
    }

    std::uint32_t from_poly(const detail::PrimePoly& c) const {
        std::uint32_t v = 0, scale = 1;
        for (std::size_t i = 0; i < c.size(); ++i, scale *= p_) v += c[i] * scale;
        return v;
    }

    void choose_modulus() {
        // Smallest code c0 + c1 p + ... + c_{e-1} p^{e-1} among monic irreducibles.
        for (std::uint32_t code = 0; code < q_; ++code) {
            detail::PrimePoly f(e_ + 1, 0);
            std::uint32_t v = code;
            for (std::uint32_t i = 0; i < e_; ++i, v /= p_) f[i] = v % p_;
            f[e_] = 1;
            if (e_ > 1 && f[0] == 0) continue;  // divisible by x
            if (detail::is_irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    void choose_primitive() {
        const std::uint64_t m = q_ - 1;
        const auto factors = detail::prime_factors(m);
        for (std::uint32_t code = 1; code < q_; ++code) {
            const auto g = as_poly(code);
            bool generator = true;
            for (auto r : factors) {
                if (from_poly(detail::pp_powmod(g, m / r, modulus_, p_)) == 1) {
                    generator = false;
                    break;
                }
            }
            if (!generator) continue;
            xi_ = Elem{code};
            exp_.assign(2 * m + 1, 0);
            log_.assign(q_, 0);
            detail::PrimePoly cur{1};
            for (std::uint64_t i = 0; i < m; ++i) {
                const std::uint32_t v = from_poly(cur);
                exp_[i] = v;
                exp_[i + m] = v;
                log_[v] = static_cast<std::uint32_t>(i);
                cur = detail::pp_mulmod(cur, g, modulus_, p_);
            }
            exp_[2 * m] = exp_[0];
            return;
        }
        throw std::logic_error("no primitive element found");
    }

    std::uint32_t p_ = 0;
    std::uint32_t e_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    Elem xi_{};
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> add_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Non-zero squares and non-squares, each sorted by element code.
struct SquareClasses {
    std::vector<Elem> squares;
    std::vector<Elem> non_squares;
};

inline SquareClasses square_classes(const Field& f) {
    SquareClasses sc;
    for (std::uint32_t v = 1; v < f.order(); ++v) {
        (f.is_square(Elem{v}) ? sc.squares : sc.non_squares).push_back(Elem{v});
    }
    return sc;
}

/// |(Sq-1) n Sq|, |(Sq-1) n Nsq|, |(Nsq-1) n Sq|, |(Nsq-1) n Nsq| and the
/// number of shifts s-1 that land on zero (exactly one: s = 1).
struct ShiftedSquareCounts {
    std::uint64_t sq_sq = 0;
    std::uint64_t sq_nsq = 0;
    std::uint64_t nsq_sq = 0;
    std::uint64_t nsq_nsq = 0;
    std::uint64_t to_zero = 0;

    bool operator==(const ShiftedSquareCounts&) const = default;
};

inline ShiftedSquareCounts shifted_square_counts(const Field& f) {
    if (f.order() % 2 == 0) throw std::invalid_argument("shifted square counts need odd q");
    ShiftedSquareCounts c;
    for (std::uint32_t v = 1; v < f.order(); ++v) {
        const Elem s{v};
        const Elem t = f.sub(s, f.one());
        const bool s_sq = f.is_square(s);
        if (t == f.zero()) {
            ++c.to_zero;
            continue;
        }
        const bool t_sq = f.is_square(t);
        if (s_sq) {
            ++(t_sq ? c.sq_sq : c.sq_nsq);
        } else {
            ++(t_sq ? c.nsq_sq : c.nsq_nsq);
        }
    }
    return c;
}

/// Closed forms for the four shifted counts, by q mod 4.
inline ShiftedSquareCounts expected_shifted_square_counts(std::uint64_t q) {
    ShiftedSquareCounts c;
    c.to_zero = 1;
    if (q % 4 == 1) {
        c.sq_sq = (q - 5) / 4;
        c.sq_nsq = c.nsq_sq = c.nsq_nsq = (q - 1) / 4;
    } else {
        c.nsq_sq = (q + 1) / 4;
        c.sq_sq = c.sq_nsq = c.nsq_nsq = (q - 3) / 4;
    }
    return c;
}

/// Multiplicative order of a modulo m (m odd, m >= 1).
inline std::uint32_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 1;
    std::uint64_t x = a % m;
    for (std::uint32_t k = 1; k <= m; ++k) {
        if (x == 1) return k;
        x = x * a % m;
    }
    throw std::invalid_argument("element is not a unit");
}

/// Degree k of the characteristic-2 field GF(2^k) used for block
/// computations of PSL(2,q): the order of 2 modulo the odd part of
/// lcm(q-1, q+1).
inline std::uint32_t binfield_degree(std::uint64_t q) {
    if (q % 2 == 0 || q < 3) throw std::invalid_argument("q must be odd");
    std::uint64_t l = std::lcm(q - 1, q + 1);
    while (l % 2 == 0) l /= 2;
    return multiplicative_order(2, l);
}

inline FieldPtr binfield_for(std::uint64_t q) { return Field::make(2, binfield_degree(q)); }

}  // namespace pgconic
