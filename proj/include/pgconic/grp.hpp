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

// The conic groups H = PSL(2,q) and G = PGL(2,q) as 3x3 symmetric-square
// matrices, their actions on points and lines, conjugacy classes of H and
// the class-by-class parity counts used by the block computations.
//
// Points act on the right as row vectors: p^g = p * M_g, so the element
// g*h has matrix M_g * M_h. Lines transform as l^g = M_g^{-1} * l^T.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "check.hpp"
#include "ff.hpp"
#include "pg.hpp"

namespace pgconic {

struct Mat3Hash {
    std::size_t operator()(const Mat3& m) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const auto& e : m) h = (h ^ e.value) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

/// Symmetric-square image of (a,b;c,d) acting on (X0,X1,X2).
inline Mat3 symmetric_square(const Field& f, Elem a, Elem b, Elem c, Elem d) {
    const Elem two = f.from_int(2);
    return Mat3{f.mul(a, a),           f.mul(a, b), f.mul(b, b),
                f.mul(two, f.mul(a, c)), f.add(f.mul(a, d), f.mul(b, c)), f.mul(two, f.mul(b, d)),
                f.mul(c, c),           f.mul(c, d), f.mul(d, d)};
}

class Group {
  public:
    enum class Kind { H, G };

    static Group build_H(PlanePtr plane) {
        Group g(std::move(plane), Kind::H);
        const Field& f = g.field();
        const std::uint32_t q = f.order();
        std::set<Mat3> mats;
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                for (std::uint32_t c = 0; c < q; ++c) {
                    const Elem ea{a}, eb{b}, ec{c};
                    if (a != 0) {
                        const Elem d = f.div(f.add(f.one(), f.mul(eb, ec)), ea);
                        mats.insert(symmetric_square(f, ea, eb, ec, d));
                    } else if (b != 0 && c == f.neg(f.inv(eb)).value) {
                        for (std::uint32_t d = 0; d < q; ++d) mats.insert(symmetric_square(f, ea, eb, ec, Elem{d}));
                    }
                }
            }
        }
        for (const auto& m : mats) g.add_element(m);
        g.finish();
        return g;
    }

    static Group build_G(PlanePtr plane) {
        Group h = build_H(plane);
        Group g(std::move(plane), Kind::G);
        const Field& f = g.field();
        for (const auto& m : h.mats_) g.add_element(m);
        const Elem xi_inv = f.inv(f.primitive());
        const Mat3 coset = mat3::diag(f.one(), xi_inv, f.mul(xi_inv, xi_inv));
        for (const auto& m : h.mats_) g.add_element(mat3::mul(f, coset, m));
        g.finish();
        return g;
    }

    Kind kind() const { return kind_; }
    bool is_H() const { return kind_ == Kind::H; }
    const Plane& plane() const { return *plane_; }
    const PlanePtr& plane_ptr() const { return plane_; }
    const Field& field() const { return plane_->field(); }
    std::size_t size() const { return mats_.size(); }
    const Mat3& matrix(std::uint32_t g) const { return mats_.at(g); }
    std::uint32_t identity() const { return identity_; }

    /// Index of the element whose matrix is a scalar multiple of m.
    std::optional<std::uint32_t> find(const Mat3& m) const {
        const auto it = lookup_.find(mat3::projective_normal(field(), m));
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    std::uint32_t index_of(const Mat3& m) const {
        auto r = find(m);
        if (!r) throw std::out_of_range("matrix is not in the group");
        return *r;
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (!table_.empty()) return table_[std::size_t{a} * mats_.size() + b];
        return index_of(mat3::mul(field(), mats_[a], mats_[b]));
    }
    std::uint32_t inv(std::uint32_t a) const { return inv_.at(a); }
    /// g^{-1} x g
    std::uint32_t conj(std::uint32_t x, std::uint32_t g) const { return mul(mul(inv_[g], x), g); }

    /// Fills the |G|x|G| product table; later mul() calls are lookups.
    void build_multiplication_table() {
        if (!table_.empty()) return;
        const std::size_t n = mats_.size();
        std::vector<std::uint32_t> t(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) t[a * n + b] = index_of(mat3::mul(field(), mats_[a], mats_[b]));
        }
        table_ = std::move(t);
    }
    bool has_multiplication_table() const { return !table_.empty(); }

    /// tr(g)+1; equals s^2 for the image of a 2x2 matrix of trace s.
    Elem t_value(std::uint32_t g) const {
        if (!is_H()) throw std::logic_error("T-values are defined on H only");
        return f_add(mat3::trace(field(), mats_[g]), field().one());
    }

    std::uint32_t point_image(std::uint32_t g, std::uint32_t p) const { return point_perm_[g * npts_ + p]; }
    std::uint32_t line_image(std::uint32_t g, std::uint32_t l) const { return line_perm_[g * npts_ + l]; }

  private:
    Group(PlanePtr plane, Kind k) : plane_(std::move(plane)), kind_(k) {}

    Elem f_add(Elem a, Elem b) const { return field().add(a, b); }

    void add_element(const Mat3& m) {
        const Mat3 key = mat3::projective_normal(field(), m);
        if (lookup_.count(key) != 0) throw std::logic_error("duplicate group element");
        lookup_.emplace(key, static_cast<std::uint32_t>(mats_.size()));
        mats_.push_back(m);
    }

    void finish() {
        const Field& f = field();
        identity_ = index_of(mat3::identity(f));
        const std::size_t n = mats_.size();
        inv_.resize(n);
        for (std::size_t g = 0; g < n; ++g) inv_[g] = index_of(mat3::inverse(f, mats_[g]));
        npts_ = static_cast<std::uint32_t>(plane_->size());
        point_perm_.resize(n * npts_);
        line_perm_.resize(n * npts_);
        for (std::size_t g = 0; g < n; ++g) {
            const Mat3 minv = mat3::inverse(f, mats_[g]);
            for (std::uint32_t i = 0; i < npts_; ++i) {
                point_perm_[g * npts_ + i] =
                    plane_->index_of(Point{mat3::row_times(f, plane_->point(i).x, mats_[g])});
                line_perm_[g * npts_ + i] = plane_->index_of(Line{mat3::times_column(f, minv, plane_->line(i).x)});
            }
        }
    }

    PlanePtr plane_;
    Kind kind_;
    std::vector<Mat3> mats_;
    std::unordered_map<Mat3, std::uint32_t, Mat3Hash> lookup_;
    std::uint32_t identity_ = 0;
    std::vector<std::uint32_t> inv_;
    std::uint32_t npts_ = 0;
    std::vector<std::uint32_t> point_perm_;
    std::vector<std::uint32_t> line_perm_;
    std::vector<std::uint32_t> table_;
};

inline std::uint64_t order_H(std::uint64_t q) { return q * (q * q - 1) / 2; }

// ---------------------------------------------------------------------------
// Conjugacy classes

enum class ClassKind { Identity, FPlus, FMinus, Zero, Theta, Pi };

struct ConjClass {
    ClassKind kind = ClassKind::Identity;
    std::uint32_t param = 0;  // torus parameter for Theta / Pi, else 0
    Elem t_value{};
    std::vector<std::uint32_t> members;  // ascending element indices

    std::size_t size() const { return members.size(); }

    std::string label() const {
        switch (kind) {
            case ClassKind::Identity: return "D";
            case ClassKind::FPlus: return "F+";
            case ClassKind::FMinus: return "F-";
            case ClassKind::Zero: return "[0]";
            case ClassKind::Theta: return "theta" + std::to_string(param);
            case ClassKind::Pi: return "pi" + std::to_string(param);
        }
        return "?";
    }
};

inline std::uint32_t theta_class_count(std::uint64_t q) {
    return static_cast<std::uint32_t>(q % 4 == 1 ? (q - 5) / 4 : (q - 3) / 4);
}
inline std::uint32_t pi_class_count(std::uint64_t q) {
    return static_cast<std::uint32_t>(q % 4 == 1 ? (q - 1) / 4 : (q - 3) / 4);
}
inline std::uint32_t class_count(std::uint64_t q) { return static_cast<std::uint32_t>((q + 5) / 2); }

inline std::uint64_t expected_class_size(std::uint64_t q, ClassKind k) {
    switch (k) {
        case ClassKind::Identity: return 1;
        case ClassKind::FPlus:
        case ClassKind::FMinus: return (q * q - 1) / 2;
        case ClassKind::Zero: return q % 4 == 1 ? q * (q + 1) / 2 : q * (q - 1) / 2;
        case ClassKind::Theta: return q * (q + 1);
        case ClassKind::Pi: return q * (q - 1);
    }
    return 0;
}

/// Least j >= 1 with (xi^j + xi^-j)^2 = t, or nullopt.
inline std::optional<std::uint32_t> theta_param(const Field& f, Elem t) {
    const std::uint32_t half = (f.order() - 1) / 2;
    for (std::uint32_t j = 1; j < half; ++j) {
        const Elem s = f.add(f.exp(j), f.exp(-static_cast<std::int64_t>(j)));
        if (f.mul(s, s) == t) return j;
    }
    return std::nullopt;
}

/// t_0 = 2, t_1 = s, t_{k+1} = s t_k - t_{k-1}: the traces w^k + w^-k of a
/// norm-one element w of GF(q^2) with w + w^-1 = s.
inline std::vector<Elem> lucas_sequence(const Field& f, Elem s, std::uint32_t n) {
    std::vector<Elem> t{f.from_int(2), s};
    while (t.size() <= n) t.push_back(f.sub(f.mul(s, t[t.size() - 1]), t[t.size() - 2]));
    t.resize(n + 1);
    return t;
}

/// Least s with s^2-4 a non-square whose Lucas sequence first returns to 2
/// at index q+1, so w generates the norm-one subgroup.
inline Elem lucas_generator(const Field& f) {
    const std::uint32_t q = f.order();
    for (std::uint32_t v = 0; v < q; ++v) {
        const Elem s{v};
        const Elem disc = f.sub(f.mul(s, s), f.from_int(4));
        if (disc == f.zero() || f.is_square(disc)) continue;
        const auto t = lucas_sequence(f, s, q + 1);
        std::uint32_t first = 0;
        for (std::uint32_t k = 1; k <= q + 1; ++k) {
            if (t[k] == f.from_int(2)) {
                first = k;
                break;
            }
        }
        if (first == q + 1) return s;
    }
    throw std::logic_error("no generator of the norm-one torus");
}

/// Least k >= 1 with t_k^2 = t, or nullopt.
inline std::optional<std::uint32_t> pi_param(const Field& f, Elem t) {
    const std::uint32_t q = f.order();
    const auto seq = lucas_sequence(f, lucas_generator(f), (q + 1) / 2);
    for (std::uint32_t k = 1; k < (q + 1) / 2; ++k) {
        if (f.mul(seq[k], seq[k]) == t) return k;
    }
    return std::nullopt;
}

struct ClassPartition {
    std::vector<ConjClass> classes;
    std::vector<std::uint32_t> class_of;  // element -> class index

    std::size_t index(ClassKind k, std::uint32_t param = 0) const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].kind == k && classes[i].param == param) return i;
        }
        throw std::out_of_range("no such class");
    }
};

/// Conjugacy orbit of x under the whole group.
inline std::vector<std::uint32_t> conjugacy_orbit(const Group& grp, std::uint32_t x) {
    std::vector<char> seen(grp.size(), 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t g = 0; g < grp.size(); ++g) {
        const auto y = grp.conj(x, g);
        if (!seen[y]) {
            seen[y] = 1;
            out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Fast route: classes read off from T-values, with F+/F- separated by the
/// conjugacy orbit of the unipotent (1,1;0,1).
inline ClassPartition classify_by_t(const Group& H) {
    if (!H.is_H()) throw std::invalid_argument("classify_by_t needs H");
    const Field& f = H.field();
    const Elem four = f.from_int(4);
    const std::uint32_t u = H.index_of(symmetric_square(f, f.one(), f.one(), f.zero(), f.one()));
    const auto fplus = conjugacy_orbit(H, u);
    std::vector<char> in_fplus(H.size(), 0);
    for (auto x : fplus) in_fplus[x] = 1;

    std::map<std::pair<int, std::uint32_t>, ConjClass> by_key;
    for (std::uint32_t g = 0; g < H.size(); ++g) {
        const Elem t = H.t_value(g);
        ConjClass c;
        c.t_value = t;
        if (g == H.identity()) {
            c.kind = ClassKind::Identity;
        } else if (t == four) {
            c.kind = in_fplus[g] ? ClassKind::FPlus : ClassKind::FMinus;
        } else if (t == f.zero()) {
            c.kind = ClassKind::Zero;
        } else if (f.is_square(f.sub(t, four))) {
            c.kind = ClassKind::Theta;
            const auto j = theta_param(f, t);
            if (!j) throw std::logic_error("split class without torus parameter");
            c.param = *j;
        } else {
            c.kind = ClassKind::Pi;
            const auto k = pi_param(f, t);
            if (!k) throw std::logic_error("non-split class without torus parameter");
            c.param = *k;
        }
        auto& slot = by_key[{static_cast<int>(c.kind), c.param}];
        if (slot.members.empty()) {
            slot.kind = c.kind;
            slot.param = c.param;
            slot.t_value = c.t_value;
        }
        slot.members.push_back(g);
    }
    ClassPartition part;
    part.class_of.assign(H.size(), 0);
    for (auto& [key, c] : by_key) {
        for (auto m : c.members) part.class_of[m] = static_cast<std::uint32_t>(part.classes.size());
        part.classes.push_back(std::move(c));
    }
    return part;
}

/// Oracle route: orbits of conjugation, each sorted, listed by least member.
inline std::vector<std::vector<std::uint32_t>> classes_by_orbits(const Group& grp) {
    std::vector<char> done(grp.size(), 0);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t x = 0; x < grp.size(); ++x) {
        if (done[x]) continue;
        auto orb = conjugacy_orbit(grp, x);
        for (auto y : orb) done[y] = 1;
        out.push_back(std::move(orb));
    }
    return out;
}

/// Both class routes agree, sizes and count follow the closed forms, and [0]
/// is exactly the set of involutions.
inline CheckResult check_conjugacy_classes(const Group& H, const ClassPartition& part) {
    CheckResult r("conjugacy classes");
    const std::uint64_t q = H.field().order();
    auto brute = classes_by_orbits(H);
    std::vector<std::vector<std::uint32_t>> fast;
    for (const auto& c : part.classes) fast.push_back(c.members);
    std::sort(brute.begin(), brute.end());
    std::sort(fast.begin(), fast.end());
    r.expect(brute == fast, "T-value classes differ from conjugation orbits");
    r.expect(part.classes.size() == class_count(q),
             "class count " + std::to_string(part.classes.size()) + " != " + std::to_string(class_count(q)));
    std::uint64_t total = 0;
    std::uint32_t thetas = 0, pis = 0;
    for (const auto& c : part.classes) {
        total += c.size();
        thetas += c.kind == ClassKind::Theta;
        pis += c.kind == ClassKind::Pi;
        r.expect(c.size() == expected_class_size(q, c.kind),
                 c.label() + " has size " + std::to_string(c.size()));
    }
    r.expect(total == H.size(), "class equation");
    r.expect(thetas == theta_class_count(q), "theta class count");
    r.expect(pis == pi_class_count(q), "pi class count");
    const auto zero = part.index(ClassKind::Zero);
    for (std::uint32_t g = 0; g < H.size(); ++g) {
        const bool involution = g != H.identity() && H.mul(g, g) == H.identity();
        r.expect(involution == (part.class_of[g] == zero), "[0] differs from the involutions");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Subgroups, orbits, stabilizers

struct Subgroup {
    std::vector<std::uint32_t> elements;
    std::size_t size() const { return elements.size(); }
};

inline Subgroup point_stabilizer(const Group& grp, std::uint32_t p) {
    Subgroup s;
    for (std::uint32_t g = 0; g < grp.size(); ++g) {
        if (grp.point_image(g, p) == p) s.elements.push_back(g);
    }
    return s;
}

inline Subgroup line_stabilizer(const Group& grp, std::uint32_t l) {
    Subgroup s;
    for (std::uint32_t g = 0; g < grp.size(); ++g) {
        if (grp.line_image(g, l) == l) s.elements.push_back(g);
    }
    return s;
}

inline bool is_closed(const Group& grp, const Subgroup& s) {
    std::vector<char> in(grp.size(), 0);
    for (auto g : s.elements) in[g] = 1;
    for (auto a : s.elements) {
        if (!in[grp.inv(a)]) return false;
        for (auto b : s.elements) {
            if (!in[grp.mul(a, b)]) return false;
        }
    }
    return true;
}

/// Orbits of the elements on `domain` under image(g, x). The domain must be
/// invariant; orbits come back sorted, ordered by least member.
template <typename Image>
std::vector<std::vector<std::uint32_t>> orbits(const std::vector<std::uint32_t>& elements,
                                               const std::vector<std::uint32_t>& domain, Image image) {
    std::map<std::uint32_t, char> done;
    for (auto x : domain) done[x] = 0;
    std::vector<std::vector<std::uint32_t>> out;
    for (auto x : domain) {
        if (done[x]) continue;
        std::set<std::uint32_t> orb;
        for (auto g : elements) orb.insert(image(g, x));
        for (auto y : orb) {
            if (done.count(y) == 0) throw std::invalid_argument("domain is not invariant");
            done[y] = 1;
        }
        out.emplace_back(orb.begin(), orb.end());
    }
    return out;
}

inline std::vector<std::vector<std::uint32_t>> point_orbits(const Group& grp, const std::vector<std::uint32_t>& elems,
                                                            const std::vector<std::uint32_t>& domain) {
    return orbits(elems, domain, [&](std::uint32_t g, std::uint32_t x) { return grp.point_image(g, x); });
}

inline std::vector<std::vector<std::uint32_t>> line_orbits(const Group& grp, const std::vector<std::uint32_t>& elems,
                                                           const std::vector<std::uint32_t>& domain) {
    return orbits(elems, domain, [&](std::uint32_t g, std::uint32_t x) { return grp.line_image(g, x); });
}

inline std::vector<std::uint32_t> all_elements(const Group& grp) {
    std::vector<std::uint32_t> v(grp.size());
    for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

/// The internal point (1,0,-xi).
inline std::uint32_t base_internal_point(const Plane& pl) {
    const Field& f = pl.field();
    return pl.index_of(Point{Triple{f.one(), f.zero(), f.neg(f.primitive())}});
}

/// The four families listing G_p for p = (1,0,-xi).
inline std::vector<Mat3> stabilizer_families(const Field& f) {
    const Elem xi = f.primitive();
    const Elem xi_inv = f.inv(xi);
    const Elem xi2 = f.mul(xi, xi);
    const Elem xi_inv2 = f.mul(xi_inv, xi_inv);
    const Elem two = f.from_int(2);
    std::vector<Mat3> out;
    for (const Elem d : f.elements()) {
        for (const Elem c : f.elements()) {
            const Elem dd = f.mul(d, d), cc = f.mul(c, c), cd = f.mul(c, d);
            const Elem cd2 = f.mul(two, cd);
            if (f.sub(dd, f.mul(cc, xi)) == f.one()) {
                out.push_back(Mat3{dd, f.mul(cd, xi), f.mul(cc, xi2), cd2, f.add(dd, f.mul(cc, xi)), f.mul(cd2, xi), cc,
                                   cd, dd});
            }
            if (f.add(f.neg(dd), f.mul(cc, xi)) == f.one()) {
                out.push_back(Mat3{dd, f.neg(f.mul(cd, xi)), f.mul(cc, xi2), cd2, f.neg(f.add(dd, f.mul(cc, xi))),
                                   f.mul(cd2, xi), cc, f.neg(cd), dd});
            }
            if (f.sub(f.mul(dd, xi), cc) == f.one()) {
                out.push_back(Mat3{dd, cd, cc, f.mul(cd2, xi_inv), f.add(dd, f.mul(cc, xi_inv)), cd2,
                                   f.mul(cc, xi_inv2), f.mul(cd, xi_inv), dd});
            }
            if (f.add(f.neg(f.mul(dd, xi)), cc) == f.one()) {
                out.push_back(Mat3{dd, f.neg(cd), cc, f.mul(cd2, xi_inv), f.neg(f.add(dd, f.mul(cc, xi_inv))), cd2,
                                   f.mul(cc, xi_inv2), f.neg(f.mul(cd, xi_inv)), dd});
            }
        }
    }
    return out;
}

/// The enumerated stabilizer of (1,0,-xi) in G equals the four families.
inline CheckResult check_stabilizer_fixture(const Group& G) {
    CheckResult r("stabilizer fixture");
    if (G.is_H()) throw std::invalid_argument("fixture is defined for G");
    const auto p = base_internal_point(G.plane());
    const auto stab = point_stabilizer(G, p);
    std::set<std::uint32_t> listed;
    for (const auto& m : stabilizer_families(G.field())) {
        const auto idx = G.find(m);
        r.expect(idx.has_value(), "family member outside G");
        if (idx) listed.insert(*idx);
    }
    const std::set<std::uint32_t> enumerated(stab.elements.begin(), stab.elements.end());
    r.expect(listed == enumerated, "families differ from the enumerated stabilizer");
    r.expect(stab.size() == 2 * (G.field().order() + 1), "|G_p| != 2(q+1)");
    return r;
}

/// Single orbits: H on I, Pa, E, Se; G on the same four sets; the stabilizer
/// K = G_p of each internal p on I and E of p^perp and on Pa and Se through p.
inline CheckResult check_transitivity(const Group& H, const Group& G, bool every_point = true) {
    CheckResult r("transitivity");
    const Plane& pl = H.plane();
    for (const Group* grp : {&H, &G}) {
        const auto all = all_elements(*grp);
        const std::string who = grp->is_H() ? "H" : "G";
        r.expect(point_orbits(*grp, all, pl.internal_points()).size() == 1, who + " not transitive on I");
        r.expect(point_orbits(*grp, all, pl.external_points()).size() == 1, who + " not transitive on E");
        r.expect(line_orbits(*grp, all, pl.passant_lines()).size() == 1, who + " not transitive on Pa");
        r.expect(line_orbits(*grp, all, pl.secant_lines()).size() == 1, who + " not transitive on Se");
    }
    std::vector<std::uint32_t> targets = pl.internal_points();
    if (!every_point) targets = {base_internal_point(pl)};
    for (auto p : targets) {
        const auto K = point_stabilizer(G, p);
        const auto polar = pl.polar(p);
        std::vector<std::uint32_t> ip, ep, pa, se;
        for (auto x : pl.points_on(polar)) {
            if (pl.point_type(x) == PointType::Internal) ip.push_back(x);
            if (pl.point_type(x) == PointType::External) ep.push_back(x);
        }
        for (auto l : pl.lines_through(p)) {
            if (pl.line_type(l) == LineType::Passant) pa.push_back(l);
            if (pl.line_type(l) == LineType::Secant) se.push_back(l);
        }
        const std::string at = " at point " + std::to_string(p);
        r.expect(K.size() == 2 * (pl.q() + 1), "|G_p|" + at);
        r.expect(point_orbits(G, K.elements, ip).size() == 1, "K on I of the polar" + at);
        r.expect(point_orbits(G, K.elements, ep).size() == 1, "K on E of the polar" + at);
        r.expect(line_orbits(G, K.elements, pa).size() == 1, "K on Pa through p" + at);
        r.expect(line_orbits(G, K.elements, se).size() == 1, "K on Se through p" + at);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Neighbour sets

/// Internal points on the passant lines through p; p itself is included iff
/// q = 3 (mod 4).
inline std::vector<std::uint32_t> neighbor_set(const Plane& pl, std::uint32_t p) {
    if (pl.point_type(p) != PointType::Internal) throw std::invalid_argument("neighbor_set needs an internal point");
    std::set<std::uint32_t> s;
    for (auto l : pl.lines_through(p)) {
        if (pl.line_type(l) != LineType::Passant) continue;
        for (auto x : pl.points_on(l)) {
            if (pl.point_type(x) == PointType::Internal && x != p) s.insert(x);
        }
    }
    if (!pl.q_is_1_mod_4()) s.insert(p);
    return {s.begin(), s.end()};
}

/// The support of row p of A^2 mod 2: N(p) with membership of p toggled.
inline std::vector<std::uint32_t> neighbor_closure(const Plane& pl, std::uint32_t p) {
    auto s = neighbor_set(pl, p);
    auto it = std::lower_bound(s.begin(), s.end(), p);
    if (it != s.end() && *it == p) {
        s.erase(it);
    } else {
        s.insert(it, p);
    }
    return s;
}

inline std::uint64_t expected_neighbor_count(std::uint64_t q) {
    return q % 4 == 1 ? (q * q - 1) / 4 : (q * q + 3) / 4;
}

// ---------------------------------------------------------------------------
// Parity analyses

inline CheckResult check_shifted_squares(const Field& f) {
    CheckResult r("shifted square counts");
    r.expect(shifted_square_counts(f) == expected_shifted_square_counts(f.order()), "counts differ from closed form");
    return r;
}

/// |N(p) n I_l| is even for every internal p and passant l.
inline CheckResult check_even_intersections(const Plane& pl) {
    CheckResult r("even intersections");
    const std::size_t n = pl.size();
    for (auto p : pl.internal_points()) {
        std::vector<char> in(n, 0);
        for (auto x : neighbor_set(pl, p)) in[x] = 1;
        for (auto l : pl.passant_lines()) {
            std::uint32_t c = 0;
            for (auto x : pl.points_on(l)) c += in[x];
            r.expect(c % 2 == 0, "odd intersection at p=" + std::to_string(p) + " l=" + std::to_string(l));
        }
    }
    return r;
}

/// |H_p n [0]|. H_p is dihedral of order q+1, so this is (q+1)/2 reflections
/// plus the central involution when (q+1)/2 is even.
inline std::uint64_t stabilizer_involution_count(std::uint64_t q) { return q % 4 == 1 ? (q + 1) / 2 : (q + 3) / 2; }

/// |H_p n C| for each class, every internal p. `zero_count` replaces the
/// expected |H_p n [0]| when given.
inline CheckResult check_stabilizer_class_counts(const Group& H, const ClassPartition& part,
                                                 std::optional<std::uint64_t> zero_count = std::nullopt) {
    CheckResult r("stabilizer class counts");
    const std::uint64_t q = H.field().order();
    const std::uint64_t zero_expected = zero_count.value_or(stabilizer_involution_count(q));
    for (auto p : H.plane().internal_points()) {
        std::vector<std::uint64_t> cnt(part.classes.size(), 0);
        for (auto g : point_stabilizer(H, p).elements) ++cnt[part.class_of[g]];
        for (std::size_t c = 0; c < cnt.size(); ++c) {
            std::uint64_t want = 0;
            switch (part.classes[c].kind) {
                case ClassKind::Identity: want = 1; break;
                case ClassKind::FPlus:
                case ClassKind::FMinus:
                case ClassKind::Theta: want = 0; break;
                case ClassKind::Pi: want = 2; break;
                case ClassKind::Zero: want = zero_expected; break;
            }
            r.expect(cnt[c] == want, "|K n " + part.classes[c].label() + "| = " + std::to_string(cnt[c]) + ", expected " +
                                         std::to_string(want) + " at p=" + std::to_string(p));
        }
    }
    return r;
}

/// Class indices with F+ and F- merged into one slot, as [4].
struct MergedClasses {
    std::vector<std::string> labels;
    std::vector<ClassKind> kinds;
    std::vector<std::uint32_t> slot_of_class;

    explicit MergedClasses(const ClassPartition& part) {
        for (const auto& c : part.classes) {
            const bool f4 = c.kind == ClassKind::FPlus || c.kind == ClassKind::FMinus;
            const std::string l = f4 ? "[4]" : c.label();
            auto it = std::find(labels.begin(), labels.end(), l);
            if (it == labels.end()) {
                labels.push_back(l);
                kinds.push_back(f4 ? ClassKind::FPlus : c.kind);
                it = labels.end() - 1;
            }
            slot_of_class.push_back(static_cast<std::uint32_t>(it - labels.begin()));
        }
    }
    std::size_t size() const { return labels.size(); }
};

/// Per-class counts of elements mapping the polar of p to a passant line
/// through each internal point; result[x][slot] for x indexing all points.
inline std::vector<std::vector<std::uint32_t>> count_polar_hits(const Group& H, const ClassPartition& part,
                                                                const MergedClasses& mc, std::uint32_t p) {
    const Plane& pl = H.plane();
    std::vector<std::vector<std::uint32_t>> cnt(pl.size(), std::vector<std::uint32_t>(mc.size(), 0));
    const auto polar = pl.polar(p);
    for (std::uint32_t h = 0; h < H.size(); ++h) {
        const auto slot = mc.slot_of_class[part.class_of[h]];
        for (auto x : pl.points_on(H.line_image(h, polar))) ++cnt[x][slot];
    }
    return cnt;
}

/// Per-class counts of elements h with p^h in N(x), for every internal x.
inline std::vector<std::vector<std::uint32_t>> count_neighbor_hits(const Group& H, const ClassPartition& part,
                                                                   const MergedClasses& mc,
                                                                   const std::vector<std::vector<std::uint32_t>>& nbr,
                                                                   std::uint32_t p) {
    const Plane& pl = H.plane();
    std::vector<std::vector<std::uint32_t>> cnt(pl.size(), std::vector<std::uint32_t>(mc.size(), 0));
    for (std::uint32_t h = 0; h < H.size(); ++h) {
        const auto slot = mc.slot_of_class[part.class_of[h]];
        // p^h in N(x) iff x in N(p^h)
        for (auto x : nbr[H.point_image(h, p)]) ++cnt[x][slot];
    }
    return cnt;
}

/// Per-class counts of elements mapping the polar of p to exactly l.
inline std::vector<std::uint32_t> count_polar_to_line(const Group& H, const ClassPartition& part, std::uint32_t p,
                                                      std::uint32_t l) {
    std::vector<std::uint32_t> cnt(part.classes.size(), 0);
    const auto polar = H.plane().polar(p);
    for (std::uint32_t h = 0; h < H.size(); ++h) {
        if (H.line_image(h, polar) == l) ++cnt[part.class_of[h]];
    }
    return cnt;
}

struct ParityReport {
    CheckResult polar_parity{"polar-hit parity"};
    CheckResult neighbor_parity{"neighbour-hit parity"};
    CheckResult invariance{"conjugation invariance"};
    /// Configurations seen per case label, e.g. "polar(ii)".
    std::map<std::string, std::uint64_t> configurations;
    /// Odd-class patterns per case, e.g. "polar(ii): theta1,theta2".
    std::map<std::string, std::uint64_t> patterns;
    bool ok() const { return polar_parity.ok && neighbor_parity.ok && invariance.ok; }
};

/// Exhaustive parity analysis over ordered pairs of distinct internal points.
/// Classes are D, [4], theta_i, pi_k and [0]; the polar-hit counts skip [0],
/// where D and [0] are odd together whenever q lies on the polar of p.
inline ParityReport parity_analysis(const Group& H, const ClassPartition& part, unsigned threads = 1,
                                    std::uint32_t invariance_samples = 8) {
    const Plane& pl = H.plane();
    const bool one_mod_4 = pl.q_is_1_mod_4();
    const MergedClasses mc(part);
    const auto& internal = pl.internal_points();

    std::vector<std::vector<std::uint32_t>> nbr(pl.size());
    for (auto x : internal) nbr[x] = neighbor_set(pl, x);
    std::vector<std::uint64_t> slot_size(mc.size(), 0);
    for (const auto& c : part.classes) slot_size[mc.slot_of_class[&c - part.classes.data()]] += c.size();

    struct Local {
        ParityReport rep;
    };
    std::vector<Local> local(internal.size());

    auto pattern_of = [&](const std::vector<std::uint32_t>& odd) {
        std::string s;
        for (auto slot : odd) s += (s.empty() ? "" : ",") + mc.labels[slot];
        return s.empty() ? std::string("none") : s;
    };

    parallel_for(internal.size(), threads, [&](std::size_t ip) {
        const auto p = internal[ip];
        ParityReport& rep = local[ip].rep;
        const auto hits = count_polar_hits(H, part, mc, p);
        const auto nhits = count_neighbor_hits(H, part, mc, nbr, p);
        const auto polar = pl.polar(p);
        for (auto x : internal) {
            if (x == p) continue;
            const auto join = pl.index_of(pl.join(p, x));
            const bool passant = pl.line_type(join) == LineType::Passant;
            const bool on_polar = pl.incident(x, polar);
            const std::string where = " (p=" + std::to_string(p) + ", q=" + std::to_string(x) + ")";

            std::vector<std::uint32_t> odd;
            for (std::uint32_t s = 0; s < mc.size(); ++s) {
                if (mc.kinds[s] == ClassKind::Zero) continue;
                if (hits[x][s] % 2 == 1) odd.push_back(s);
            }
            auto only = [&](ClassKind k) {
                return std::all_of(odd.begin(), odd.end(), [&](auto s) { return mc.kinds[s] == k; });
            };
            std::string cs;
            if (one_mod_4) {
                if (passant) {
                    cs = "polar(i)";
                    rep.polar_parity.expect(odd.empty(), cs + " odd at " + pattern_of(odd) + where);
                } else if (!on_polar) {
                    cs = "polar(ii)";
                    rep.polar_parity.expect(only(ClassKind::Theta) && odd.size() <= 2,
                                           cs + " odd at " + pattern_of(odd) + where);
                } else {
                    cs = "polar(iii)";
                    rep.polar_parity.expect(only(ClassKind::Identity), cs + " odd at " + pattern_of(odd) + where);
                }
            } else {
                if (!passant) {
                    cs = "polar(iv)";
                    rep.polar_parity.expect(odd.empty(), cs + " odd at " + pattern_of(odd) + where);
                } else if (!on_polar) {
                    cs = "polar(v)";
                    rep.polar_parity.expect(only(ClassKind::Pi) && odd.size() <= 2,
                                           cs + " odd at " + pattern_of(odd) + where);
                } else {
                    cs = "polar(vi)";
                    rep.polar_parity.expect(only(ClassKind::Identity), cs + " odd at " + pattern_of(odd) + where);
                }
            }
            ++rep.configurations[cs];
            ++rep.patterns[cs + ": " + pattern_of(odd)];

            // q = 1 (mod 4) uses U_{p,N(q)}, q = 3 (mod 4) its complement in I.
            std::vector<std::uint32_t> nodd;
            for (std::uint32_t s = 0; s < mc.size(); ++s) {
                const std::uint64_t c = one_mod_4 ? nhits[x][s] : slot_size[s] - nhits[x][s];
                if (c % 2 == 1) nodd.push_back(s);
            }
            std::size_t ident = 0, theta = 0, pi = 0, other = 0;
            for (auto s : nodd) {
                switch (mc.kinds[s]) {
                    case ClassKind::Identity: ++ident; break;
                    case ClassKind::Theta: ++theta; break;
                    case ClassKind::Pi: ++pi; break;
                    default: ++other;
                }
            }
            std::string cn;
            if (one_mod_4) {
                if (passant) {
                    cn = "neighbour(i)";
                    rep.neighbor_parity.expect(other == 0 && theta == 0 && pi <= 1,
                                              cn + " odd at " + pattern_of(nodd) + where);
                } else {
                    cn = "neighbour(ii)";
                    rep.neighbor_parity.expect(nodd.empty(), cn + " odd at " + pattern_of(nodd) + where);
                }
            } else {
                if (passant) {
                    cn = "neighbour(iii)";
                    rep.neighbor_parity.expect(nodd.empty(), cn + " odd at " + pattern_of(nodd) + where);
                } else {
                    cn = "neighbour(iv)";
                    rep.neighbor_parity.expect(other == 0 && pi == 0 && theta <= 1,
                                              cn + " odd at " + pattern_of(nodd) + where);
                }
            }
            ++rep.configurations[cn];
            ++rep.patterns[cn + ": " + pattern_of(nodd)];
        }

        // Counts are invariant when p and every q are moved by g.
        for (std::uint32_t t = 0; t < invariance_samples && ip < 2; ++t) {
            const auto g = static_cast<std::uint32_t>((std::uint64_t{t} * 7919 + 1) % H.size());
            const auto moved = count_polar_hits(H, part, mc, H.point_image(g, p));
            for (auto x : internal) {
                rep.invariance.expect(moved[H.point_image(g, x)] == hits[x],
                                      "counts change under conjugation at p=" + std::to_string(p));
            }
        }
    });

    ParityReport out;
    for (const auto& l : local) {
        out.polar_parity.merge(l.rep.polar_parity);
        out.neighbor_parity.merge(l.rep.neighbor_parity);
        out.invariance.merge(l.rep.invariance);
        for (const auto& [k, v] : l.rep.configurations) out.configurations[k] += v;
        for (const auto& [k, v] : l.rep.patterns) out.patterns[k] += v;
    }
    return out;
}

}  // namespace pgconic
