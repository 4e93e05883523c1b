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

// The center Z(FH) over F = GF(2^k) in the class-sum basis, its primitive
// idempotents (the 2-block idempotents of H), and their action on F^I.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "check.hpp"
#include "ff.hpp"
#include "grp.hpp"
#include "inc.hpp"
#include "mat2.hpp"
#include "poly.hpp"

namespace pgconic {

/// Coordinates of a central element in the class-sum basis.
using ZVec = std::vector<Elem>;

class ClassAlgebra {
  public:
    ClassAlgebra(const Group& H, const ClassPartition& part, FieldPtr f) : f_(std::move(f)) {
        if (f_->characteristic() != 2) throw std::invalid_argument("class algebra needs characteristic 2");
        r_ = part.classes.size();
        for (const auto& c : part.classes) {
            sizes_.push_back(c.size());
            labels_.push_back(c.label());
        }
        exact_ = enumerate(H, part, false);
        mod2_.resize(exact_.size());
        for (std::size_t i = 0; i < exact_.size(); ++i) mod2_[i] = static_cast<std::uint8_t>(exact_[i] & 1U);
    }

    std::size_t dim() const { return r_; }
    const FieldPtr& field() const { return f_; }
    std::uint64_t class_size(std::size_t i) const { return sizes_.at(i); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// a_ijk = #{(x, y) in C_i x C_j : xy = z_k}.
    std::uint64_t constant(std::size_t i, std::size_t j, std::size_t k) const { return exact_[(i * r_ + j) * r_ + k]; }
    bool constant_mod2(std::size_t i, std::size_t j, std::size_t k) const {
        return mod2_[(i * r_ + j) * r_ + k] != 0;
    }

    ZVec zero() const { return ZVec(r_, Elem{0}); }
    ZVec one() const { return basis(0); }
    ZVec basis(std::size_t i) const {
        ZVec v = zero();
        v.at(i) = Elem{1};
        return v;
    }

    ZVec add(const ZVec& a, const ZVec& b) const {
        ZVec r = a;
        for (std::size_t i = 0; i < r_; ++i) r[i] = f_->add(r[i], b[i]);
        return r;
    }
    ZVec scale(const ZVec& a, Elem c) const {
        ZVec r = a;
        for (auto& v : r) v = f_->mul(v, c);
        return r;
    }
    ZVec mul(const ZVec& a, const ZVec& b) const {
        ZVec r = zero();
        for (std::size_t i = 0; i < r_; ++i) {
            if (a[i].value == 0) continue;
            for (std::size_t j = 0; j < r_; ++j) {
                if (b[j].value == 0) continue;
                const Elem c = f_->mul(a[i], b[j]);
                const std::uint8_t* row = &mod2_[(i * r_ + j) * r_];
                for (std::size_t k = 0; k < r_; ++k) {
                    if (row[k]) r[k] = f_->add(r[k], c);
                }
            }
        }
        return r;
    }
    bool is_zero(const ZVec& a) const {
        for (const auto& v : a) {
            if (v.value != 0) return false;
        }
        return true;
    }

    /// Value of the trivial representation: sum of e(C) |C| mod 2.
    Elem augmentation(const ZVec& e) const {
        Elem s{0};
        for (std::size_t i = 0; i < r_; ++i) {
            if (sizes_[i] & 1U) s = f_->add(s, e[i]);
        }
        return s;
    }

    std::string to_string(const ZVec& e) const {
        std::string s;
        for (std::size_t i = 0; i < r_; ++i) {
            if (!s.empty()) s += ", ";
            s += labels_[i] + "=" + f_->to_string(e[i]);
        }
        return s;
    }

    /// Recomputes the constants with the last member of each class as the
    /// representative and checks commutativity, the identity row and the
    /// counting identity.
    CheckResult check(const Group& H, const ClassPartition& part) const {
        CheckResult res("class algebra");
        res.expect(enumerate(H, part, true) == exact_, "constants depend on the class representative");
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < r_; ++j) {
                std::uint64_t total = 0;
                for (std::size_t k = 0; k < r_; ++k) {
                    res.expect(constant(i, j, k) == constant(j, i, k), "a_ijk != a_jik");
                    total += constant(i, j, k) * sizes_[k];
                }
                res.expect(total == sizes_[i] * sizes_[j], "counting identity fails for " + labels_[i] + "," + labels_[j]);
                res.expect(constant(0, i, j) == (i == j ? 1U : 0U), "identity class is not the unit");
            }
        }
        return res;
    }

  private:
    std::vector<std::uint64_t> enumerate(const Group& H, const ClassPartition& part, bool last_rep) const {
        std::vector<std::uint64_t> a(r_ * r_ * r_, 0);
        for (std::size_t k = 0; k < r_; ++k) {
            const auto& m = part.classes[k].members;
            const std::uint32_t z = last_rep ? m.back() : m.front();
            for (std::uint32_t x = 0; x < H.size(); ++x) {
                const std::uint32_t y = H.mul(H.inv(x), z);
                ++a[(part.class_of[x] * r_ + part.class_of[y]) * r_ + k];
            }
        }
        return a;
    }

    FieldPtr f_;
    std::size_t r_ = 0;
    std::vector<std::uint64_t> sizes_;
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> exact_;
    std::vector<std::uint8_t> mod2_;
};

// ---------------------------------------------------------------------------
// Idempotents

/// Squares e until it stops changing. In characteristic 2,
/// (e + r)^2 = e + r^2 for an idempotent e and a commuting r, so a nilpotent
/// error dies out. Returns nullopt if no fixed point is reached within
/// max_rounds.
template <typename V, typename Mul>
std::optional<V> purify(V e, Mul&& mul, unsigned max_rounds = 64) {
    for (unsigned i = 0; i < max_rounds; ++i) {
        V sq = mul(e, e);
        if (sq == e) return e;
        e = std::move(sq);
    }
    return std::nullopt;
}

/// Minimal polynomial of multiplication by x on the component with unit e
/// (x is assumed to lie in that component).
inline Poly component_minimal_polynomial(const ClassAlgebra& z, const ZVec& e, const ZVec& x) {
    const Field& f = *z.field();
    struct Row {
        ZVec v;
        std::size_t pivot;
        std::vector<Elem> combo;
    };
    std::vector<Row> rows;
    ZVec power = e;
    for (std::size_t m = 0; m <= z.dim(); ++m) {
        ZVec v = power;
        std::vector<Elem> combo(m + 1, Elem{0});
        combo[m] = Elem{1};
        for (const auto& row : rows) {
            const Elem t = v[row.pivot];
            if (t.value == 0) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(v[i], f.mul(t, row.v[i]));
            for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] = f.sub(combo[i], f.mul(t, row.combo[i]));
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv].value == 0) ++piv;
        if (piv == v.size()) return poly::trimmed(Poly{combo});
        const Elem inv = f.inv(v[piv]);
        for (auto& c : v) c = f.mul(c, inv);
        for (auto& c : combo) c = f.mul(c, inv);
        rows.push_back({std::move(v), piv, std::move(combo)});
        power = z.mul(power, x);
    }
    throw std::logic_error("Krylov sequence did not terminate");
}

/// p(x) in the component with unit e, where x^0 = e.
inline ZVec evaluate_in_component(const ClassAlgebra& z, const Poly& p, const ZVec& e, const ZVec& x) {
    ZVec acc = z.zero();
    for (std::size_t i = p.c.size(); i-- > 0;) acc = z.add(z.mul(acc, x), z.scale(e, p.c[i]));
    return acc;
}

/// Splits the component e along the primary decomposition of the minimal
/// polynomial of e*b. Returns {e} when that polynomial is primary.
inline std::vector<ZVec> split_component(const ClassAlgebra& z, const ZVec& e, const ZVec& b) {
    const Field& f = *z.field();
    const ZVec x = z.mul(e, b);
    const Poly m = component_minimal_polynomial(z, e, x);
    const auto factors = poly::factor(f, m);
    if (factors.size() <= 1) return {e};
    std::vector<ZVec> out;
    for (const auto& [fac, mult] : factors) {
        Poly g = poly::constant(f, f.one());
        for (unsigned i = 0; i < mult; ++i) g = poly::mul(f, g, fac);
        const Poly h = poly::quo(f, m, g);
        const auto [d, s, t] = poly::xgcd(f, h, g);
        if (d.degree() != 0) throw std::logic_error("primary components are not coprime");
        const Poly u = poly::mod(f, poly::mul(f, s, h), m);
        auto piece = purify(evaluate_in_component(z, u, e, x), [&z](const ZVec& a, const ZVec& b) { return z.mul(a, b); });
        if (!piece) throw std::logic_error("idempotent purification did not converge");
        out.push_back(std::move(*piece));
    }
    return out;
}

/// Complete set of primitive orthogonal idempotents of the center, in the
/// order the splitting produces them.
inline std::vector<ZVec> primitive_idempotents(const ClassAlgebra& z) {
    std::vector<ZVec> comps{z.one()};
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t b = 0; b < z.dim(); ++b) {
            std::vector<ZVec> next;
            for (const auto& e : comps) {
                auto pieces = split_component(z, e, z.basis(b));
                if (pieces.size() > 1) changed = true;
                for (auto& p : pieces) next.push_back(std::move(p));
            }
            comps = std::move(next);
        }
    }
    return comps;
}

inline CheckResult check_idempotent_set(const ClassAlgebra& z, const std::vector<ZVec>& es) {
    CheckResult r("block idempotents");
    ZVec sum = z.zero();
    for (std::size_t i = 0; i < es.size(); ++i) {
        r.expect(!z.is_zero(es[i]), "zero idempotent");
        r.expect(z.mul(es[i], es[i]) == es[i], "e^2 != e");
        for (std::size_t j = i + 1; j < es.size(); ++j) r.expect(z.is_zero(z.mul(es[i], es[j])), "idempotents not orthogonal");
        sum = z.add(sum, es[i]);
    }
    r.expect(sum == z.one(), "idempotents do not sum to 1");
    return r;
}

// ---------------------------------------------------------------------------
// Block counts and labels

/// Odd part and 2-exponent of q - 1 (q = 1 mod 4) or q + 1 (q = 3 mod 4).
inline std::pair<std::uint64_t, unsigned> block_split(std::uint64_t q) {
    std::uint64_t v = q % 4 == 1 ? q - 1 : q + 1;
    unsigned n = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++n;
    }
    return {v, n};
}

inline std::uint64_t expected_defect_zero_blocks(std::uint64_t q) { return q % 4 == 1 ? (q - 1) / 4 : (q - 3) / 4; }
inline std::uint64_t expected_defect_max_blocks(std::uint64_t q) { return (block_split(q).first - 1) / 2; }
inline std::uint64_t expected_block_count(std::uint64_t q) {
    return 1 + expected_defect_zero_blocks(q) + expected_defect_max_blocks(q);
}
/// (q-1)^2 or (q+1)^2: the square of the defect-0 character degree.
inline std::uint64_t defect_zero_ideal_dimension(std::uint64_t q) {
    const std::uint64_t d = q % 4 == 1 ? q - 1 : q + 1;
    return d * d;
}

enum class BlockFamily { Principal, DefectZero, DefectMax };

inline std::string to_string(BlockFamily f) {
    switch (f) {
        case BlockFamily::Principal: return "principal";
        case BlockFamily::DefectZero: return "defect-0";
        case BlockFamily::DefectMax: return "defect-(n-1)";
    }
    return "?";
}

struct BlockIdempotent {
    ZVec coeffs;
    bool principal = false;
    std::optional<std::uint64_t> ideal_dim;
    BlockFamily family = BlockFamily::Principal;
    std::string label;
};

/// Index of the unique idempotent acting as 1 on the trivial module.
inline std::size_t identify_principal(const ClassAlgebra& z, const std::vector<ZVec>& es) {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (z.augmentation(es[i]).value == 1) {
            if (found) throw std::runtime_error("several idempotents act as 1 on the trivial module");
            found = i;
        }
    }
    if (!found) throw std::runtime_error("no idempotent acts as 1 on the trivial module");
    return *found;
}

/// dim e FH: rank of the |H| x |H| matrix whose row g holds e*g.
inline std::uint64_t block_ideal_dimension(const ClassAlgebra& z, const Group& H, const ClassPartition& part,
                                           const ZVec& e) {
    const std::size_t n = H.size();
    ExtMatrix m(z.field(), n, n);
    for (std::uint32_t g = 0; g < n; ++g) {
        const std::uint32_t gi = H.inv(g);
        for (std::uint32_t y = 0; y < n; ++y) m.at(g, y) = e[part.class_of[H.mul(y, gi)]];
    }
    return m.rank();
}

/// Zero-or-not pattern of a block on the Theta or Pi classes.
inline bool vanishes_on(const ClassAlgebra& z, const ClassPartition& part, const ZVec& e, ClassKind k) {
    for (std::size_t i = 0; i < z.dim(); ++i) {
        if (part.classes[i].kind == k && e[i].value != 0) return false;
    }
    return true;
}

struct BlockOptions {
    /// Largest q for which block-ideal dimensions are computed.
    std::uint64_t max_heavy_q = 13;
};

/// Computes, labels and checks the block idempotents. Labels come from
/// block-ideal dimensions when q <= max_heavy_q and from the coefficient
/// fingerprint otherwise; in both cases the family counts must match.
inline std::vector<BlockIdempotent> compute_blocks(const ClassAlgebra& z, const Group& H, const ClassPartition& part,
                                                   CheckResult& log, const BlockOptions& opt = {}) {
    const std::uint64_t q = H.plane().q();
    const bool one_mod_4 = q % 4 == 1;
    const auto es = primitive_idempotents(z);
    log.merge(check_idempotent_set(z, es));
    log.expect(es.size() == expected_block_count(q), "found " + std::to_string(es.size()) + " blocks, expected " +
                                                         std::to_string(expected_block_count(q)));
    const std::size_t p0 = identify_principal(z, es);

    std::vector<BlockIdempotent> out(es.size());
    const bool heavy = q <= opt.max_heavy_q;
    std::uint64_t dim_total = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        out[i].coeffs = es[i];
        out[i].principal = i == p0;
        if (heavy) {
            out[i].ideal_dim = block_ideal_dimension(z, H, part, es[i]);
            dim_total += *out[i].ideal_dim;
        }
    }
    if (heavy) log.expect(dim_total == H.size(), "block ideal dimensions do not sum to |H|");

    const ClassKind zero_kind = one_mod_4 ? ClassKind::Theta : ClassKind::Pi;
    const ClassKind max_kind = one_mod_4 ? ClassKind::Pi : ClassKind::Theta;
    std::vector<std::size_t> ambiguous;
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (out[i].principal) continue;
        if (heavy) {
            out[i].family = *out[i].ideal_dim == defect_zero_ideal_dimension(q) ? BlockFamily::DefectZero
                                                                                : BlockFamily::DefectMax;
            continue;
        }
        const bool z0 = vanishes_on(z, part, es[i], zero_kind);
        const bool zm = vanishes_on(z, part, es[i], max_kind);
        if (z0 && zm) {
            ambiguous.push_back(i);
        } else {
            out[i].family = z0 ? BlockFamily::DefectZero : BlockFamily::DefectMax;
        }
    }
    std::uint64_t n0 = 0, nm = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (out[i].principal) continue;
        if (std::find(ambiguous.begin(), ambiguous.end(), i) != ambiguous.end()) continue;
        (out[i].family == BlockFamily::DefectZero ? n0 : nm)++;
    }
    for (auto i : ambiguous) {
        if (n0 < expected_defect_zero_blocks(q)) {
            out[i].family = BlockFamily::DefectZero;
            ++n0;
        } else {
            out[i].family = BlockFamily::DefectMax;
            ++nm;
        }
    }
    log.expect(n0 == expected_defect_zero_blocks(q), "defect-0 block count " + std::to_string(n0));
    log.expect(nm == expected_defect_max_blocks(q), "defect-(n-1) block count " + std::to_string(nm));

    // Principal first, then defect-0, then defect-(n-1); stable within a family.
    std::stable_sort(out.begin(), out.end(), [](const BlockIdempotent& a, const BlockIdempotent& b) {
        if (a.principal != b.principal) return a.principal;
        return static_cast<int>(a.family) < static_cast<int>(b.family);
    });
    std::uint64_t c0 = 0, cm = 0;
    for (auto& b : out) {
        if (b.principal) {
            b.label = "B0";
        } else if (b.family == BlockFamily::DefectZero) {
            b.label = std::string(one_mod_4 ? "Bs" : "Br") + std::to_string(++c0);
        } else {
            b.label = "Bt'" + std::to_string(++cm);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient patterns

struct PatternEntry {
    std::string block;
    std::string cls;
    std::string value;
    bool asserted = false;  // false: the entry is only reported
};

struct PatternReport {
    CheckResult check{"block coefficient patterns"};
    std::vector<PatternEntry> entries;
};

inline PatternReport verify_expression_patterns(const ClassAlgebra& z, const ClassPartition& part,
                                                const std::vector<BlockIdempotent>& blocks, std::uint64_t q) {
    PatternReport rep;
    const bool one_mod_4 = q % 4 == 1;
    const Field& f = *z.field();
    const std::size_t iplus = part.index(ClassKind::FPlus);
    const std::size_t iminus = part.index(ClassKind::FMinus);
    for (const auto& b : blocks) {
        const ZVec& e = b.coeffs;
        // Required value per class kind, or nullopt when unconstrained.
        auto want = [&](ClassKind k) -> std::optional<std::uint32_t> {
            switch (k) {
                case ClassKind::Identity: return b.principal ? 1U : 0U;
                case ClassKind::Zero: return 0U;
                case ClassKind::FPlus:
                case ClassKind::FMinus:
                    if (b.principal) return std::nullopt;
                    return 1U;
                case ClassKind::Theta:
                    if (one_mod_4) {
                        if (b.family == BlockFamily::DefectZero) return 0U;
                        return std::nullopt;
                    }
                    if (b.principal) return 1U;
                    if (b.family == BlockFamily::DefectMax) return 0U;
                    return std::nullopt;
                case ClassKind::Pi:
                    if (one_mod_4) {
                        if (b.principal) return 1U;
                        if (b.family == BlockFamily::DefectMax) return 0U;
                        return std::nullopt;
                    }
                    if (b.family == BlockFamily::DefectZero) return 0U;
                    return std::nullopt;
            }
            return std::nullopt;
        };
        for (std::size_t i = 0; i < z.dim(); ++i) {
            const auto w = want(part.classes[i].kind);
            rep.entries.push_back({b.label, z.label(i), f.to_string(e[i]), w.has_value()});
            if (w) {
                rep.check.expect(e[i].value == *w, b.label + "(" + z.label(i) + ") = " + f.to_string(e[i]) +
                                                       ", expected " + std::to_string(*w));
            }
        }
        rep.check.expect(e[iplus] == e[iminus], b.label + ": F+ and F- coefficients differ");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Action on F^I

/// M_C[p][p'] = #{h in C : p^h = p'} mod 2, over the internal points.
inline std::vector<BitMatrix> module_class_action(const IncidenceSystem& sys, const Group& H,
                                                  const ClassPartition& part) {
    const std::size_t n = sys.size();
    std::vector<BitMatrix> out;
    for (const auto& c : part.classes) {
        BitMatrix m(n, n);
        for (auto h : c.members) {
            for (std::size_t i = 0; i < n; ++i) m.flip(i, sys.column(H.point_image(h, sys.point(i))));
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline ExtMatrix block_projector(const ClassAlgebra& z, const std::vector<BitMatrix>& action, const ZVec& e) {
    const std::size_t n = action.front().rows();
    ExtMatrix p(z.field(), n, n);
    for (std::size_t i = 0; i < z.dim(); ++i) p.add_scaled(ExtMatrix::lift(z.field(), action[i]), e[i]);
    return p;
}

/// dim of (row space of subspace) * P.
inline std::size_t block_project(const FieldPtr& f, const BitMatrix& subspace, const ExtMatrix& projector) {
    if (subspace.rows() == 0) return 0;
    return image_dim(ExtMatrix::lift(f, subspace), projector);
}

struct BlockProjection {
    std::string label;
    BlockFamily family = BlockFamily::Principal;
    std::size_t module_dim = 0;  // rank of P_B on F^I
    std::size_t kernel_dim = 0;  // dim Ker(phi) P_B
    std::size_t image_dim = 0;   // dim Im(phi) P_B
    std::size_t mu2_dim = 0;     // dim Im(mu2) P_B
};

struct ModuleReport {
    CheckResult check{"block decomposition of F^I"};
    std::vector<BlockProjection> rows;
};

/// Projector identities and the kernel / image block contents.
/// `elements` are the group elements used for the commutation check.
inline ModuleReport block_module_analysis(const IncidenceSystem& sys, const Group& H, const ClassPartition& part,
                                          const ClassAlgebra& z, const std::vector<BlockIdempotent>& blocks,
                                          const std::vector<std::uint32_t>& elements) {
    ModuleReport rep;
    CheckResult& chk = rep.check;
    const FieldPtr& f = z.field();
    const std::uint64_t q = sys.plane().q();
    const bool one_mod_4 = q % 4 == 1;
    const std::size_t n = sys.size();
    const auto action = module_class_action(sys, H, part);

    const BitMatrix ker = sys.kernel_basis();
    const BitMatrix im = sys.image_basis();
    const BitMatrix mu2 = sys.mu2_image_basis();

    std::vector<ExtMatrix> projectors;
    for (const auto& b : blocks) projectors.push_back(block_projector(z, action, b.coeffs));
    std::vector<ExtMatrix> perms;
    for (auto g : elements) perms.push_back(ExtMatrix::lift(f, sys.permutation_matrix(H, g)));

    ExtMatrix total(f, n, n);
    std::size_t module_sum = 0, kernel_sum = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        const ExtMatrix& p = projectors[i];
        chk.expect(p * p == p, b.label + ": projector is not idempotent");
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            chk.expect((p * projectors[j]).is_zero(), b.label + ": projectors not orthogonal");
        }
        for (const auto& ph : perms) chk.expect(p * ph == ph * p, b.label + ": projector does not commute with H");
        total.add_scaled(p, Elem{1});

        BlockProjection row;
        row.label = b.label;
        row.family = b.principal ? BlockFamily::Principal : b.family;
        row.module_dim = p.rank();
        row.kernel_dim = block_project(f, ker, p);
        row.image_dim = block_project(f, im, p);
        row.mu2_dim = block_project(f, mu2, p);
        module_sum += row.module_dim;
        kernel_sum += row.kernel_dim;

        if (one_mod_4) {
            if (row.family == BlockFamily::DefectZero) {
                chk.expect(row.kernel_dim == q - 1, b.label + ": dim Ker(phi) P_B = " + std::to_string(row.kernel_dim));
                chk.expect(row.image_dim == 0, b.label + ": Im(phi) P_B != 0");
            } else {
                chk.expect(row.kernel_dim == 0, b.label + ": Ker(phi) P_B != 0");
            }
        } else {
            if (row.family == BlockFamily::DefectZero) {
                chk.expect(row.mu2_dim == q + 1, b.label + ": dim Im(mu2) P_B = " + std::to_string(row.mu2_dim));
                chk.expect(row.image_dim == 0, b.label + ": Im(phi) P_B != 0");
            } else {
                chk.expect(row.mu2_dim == 0, b.label + ": Im(mu2) P_B != 0");
            }
        }
        rep.rows.push_back(std::move(row));
    }
    chk.expect(total == ExtMatrix::identity(f, n), "projectors do not sum to the identity");
    chk.expect(module_sum == n, "block parts of F^I do not sum to |I|");
    chk.expect(kernel_sum == ker.rows(), "block parts of Ker(phi) do not sum to its dimension");
    return rep;
}

}  // namespace pgconic
