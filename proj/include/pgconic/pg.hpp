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

// PG(2,q) for odd q together with the conic X1^2 = X0 X2, its polarity and
// the classification of points (internal / external / on the conic) and
// lines (passant / tangent / secant).
//
// Points and lines are homogeneous triples normalized so the first non-zero
// coordinate is 1. Both lists are sorted lexicographically by element code,
// and every index handed out by Plane refers to that order.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "check.hpp"
#include "ff.hpp"

namespace pgconic {

using Triple = std::array<Elem, 3>;

struct Point {
    Triple x;
    auto operator<=>(const Point&) const = default;
};

struct Line {
    Triple x;
    auto operator<=>(const Line&) const = default;
};

enum class PointType { Internal, External, OnConic };
enum class LineType { Passant, Tangent, Secant };

inline const char* to_string(PointType t) {
    switch (t) {
        case PointType::Internal: return "internal";
        case PointType::External: return "external";
        case PointType::OnConic: return "on-conic";
    }
    return "?";
}

inline const char* to_string(LineType t) {
    switch (t) {
        case LineType::Passant: return "passant";
        case LineType::Tangent: return "tangent";
        case LineType::Secant: return "secant";
    }
    return "?";
}

/// Row-major 3x3 matrix over a Field.
using Mat3 = std::array<Elem, 9>;

namespace mat3 {

inline Mat3 identity(const Field& f) {
    Mat3 m{};
    m[0] = m[4] = m[8] = f.one();
    return m;
}

/// d(a,b,c)
inline Mat3 diag(Elem a, Elem b, Elem c) {
    const Elem z{};
    return Mat3{a, z, z, z, b, z, z, z, c};
}

/// ad(a,b,c): a in the top-right corner, b centre, c bottom-left.
inline Mat3 antidiag(Elem a, Elem b, Elem c) {
    const Elem z{};
    return Mat3{z, z, a, z, b, z, c, z, z};
}

inline Mat3 mul(const Field& f, const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Elem s = f.zero();
            for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a[3 * i + k], b[3 * k + j]));
            r[3 * i + j] = s;
        }
    }
    return r;
}

inline Elem det(const Field& f, const Mat3& m) {
    auto minor = [&](int a, int b, int c, int d) { return f.sub(f.mul(m[a], m[d]), f.mul(m[b], m[c])); };
    Elem r = f.mul(m[0], minor(4, 5, 7, 8));
    r = f.sub(r, f.mul(m[1], minor(3, 5, 6, 8)));
    return f.add(r, f.mul(m[2], minor(3, 4, 6, 7)));
}

inline Mat3 inverse(const Field& f, const Mat3& m) {
    const Elem d = det(f, m);
    if (d == f.zero()) throw std::domain_error("singular 3x3 matrix");
    const Elem di = f.inv(d);
    auto cof = [&](int r, int c) {
        int rows[2], cols[2];
        for (int i = 0, k = 0; i < 3; ++i) if (i != r) rows[k++] = i;
        for (int j = 0, k = 0; j < 3; ++j) if (j != c) cols[k++] = j;
        Elem v = f.sub(f.mul(m[3 * rows[0] + cols[0]], m[3 * rows[1] + cols[1]]),
                       f.mul(m[3 * rows[0] + cols[1]], m[3 * rows[1] + cols[0]]));
        return ((r + c) % 2 == 0) ? v : f.neg(v);
    };
    Mat3 inv{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) inv[3 * c + r] = f.mul(cof(r, c), di);  // adjugate is the transposed cofactor matrix
    }
    return inv;
}

inline Elem trace(const Field& f, const Mat3& m) { return f.add(f.add(m[0], m[4]), m[8]); }

/// row vector times matrix
inline Triple row_times(const Field& f, const Triple& v, const Mat3& m) {
    Triple r{};
    for (int j = 0; j < 3; ++j) {
        Elem s = f.zero();
        for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(v[k], m[3 * k + j]));
        r[j] = s;
    }
    return r;
}

/// matrix times column vector
inline Triple times_column(const Field& f, const Mat3& m, const Triple& v) {
    Triple r{};
    for (int i = 0; i < 3; ++i) {
        Elem s = f.zero();
        for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(m[3 * i + k], v[k]));
        r[i] = s;
    }
    return r;
}

/// Scales so the first non-zero entry is 1; the canonical form of the
/// matrix as an element of PGL(3,q).
inline Mat3 projective_normal(const Field& f, Mat3 m) {
    for (const Elem& v : m) {
        if (v != f.zero()) {
            const Elem s = f.inv(v);
            for (auto& w : m) w = f.mul(w, s);
            return m;
        }
    }
    throw std::domain_error("zero matrix");
}

}  // namespace mat3

/// First non-zero coordinate scaled to 1. Rejects the zero triple.
inline Triple normalize(const Field& f, Triple t) {
    for (const Elem& v : t) {
        if (v != f.zero()) {
            const Elem s = f.inv(v);
            for (auto& w : t) w = f.mul(w, s);
            return t;
        }
    }
    throw std::invalid_argument("zero triple is not a projective point or line");
}

inline Elem dot(const Field& f, const Triple& a, const Triple& b) {
    return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

inline Triple cross(const Field& f, const Triple& a, const Triple& b) {
    return Triple{f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
                  f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

/// Q(a) = a1^2 - a0 a2; internal iff non-square, external iff square.
inline PointType classify_point(const Field& f, const Point& p) {
    const Triple a = normalize(f, p.x);
    const Elem v = f.sub(f.mul(a[1], a[1]), f.mul(a[0], a[2]));
    if (v == f.zero()) return PointType::OnConic;
    return f.is_square(v) ? PointType::External : PointType::Internal;
}

/// b1^2 - 4 b0 b2; passant iff non-square, secant iff square.
inline LineType classify_line(const Field& f, const Line& l) {
    const Triple b = normalize(f, l.x);
    const Elem v = f.sub(f.mul(b[1], b[1]), f.mul(f.from_int(4), f.mul(b[0], b[2])));
    if (v == f.zero()) return LineType::Tangent;
    return f.is_square(v) ? LineType::Secant : LineType::Passant;
}

inline bool incident(const Field& f, const Point& p, const Line& l) { return dot(f, p.x, l.x) == f.zero(); }

/// Counts of absolute, external and internal points on a line.
struct LineProfile {
    std::uint32_t absolute = 0;
    std::uint32_t external = 0;
    std::uint32_t internal = 0;
    bool operator==(const LineProfile&) const = default;
};

/// Counts of tangent, secant and passant lines through a point.
struct PointProfile {
    std::uint32_t tangent = 0;
    std::uint32_t secant = 0;
    std::uint32_t passant = 0;
    bool operator==(const PointProfile&) const = default;
};

inline LineProfile expected_line_profile(std::uint64_t q, LineType t) {
    const auto h = static_cast<std::uint32_t>(q);
    switch (t) {
        case LineType::Tangent: return {1, h, 0};
        case LineType::Secant: return {2, (h - 1) / 2, (h - 1) / 2};
        case LineType::Passant: return {0, (h + 1) / 2, (h + 1) / 2};
    }
    return {};
}

inline PointProfile expected_point_profile(std::uint64_t q, PointType t) {
    const auto h = static_cast<std::uint32_t>(q);
    switch (t) {
        case PointType::OnConic: return {1, h, 0};
        case PointType::External: return {2, (h - 1) / 2, (h - 1) / 2};
        case PointType::Internal: return {0, (h + 1) / 2, (h + 1) / 2};
    }
    return {};
}

class Plane {
  public:
    explicit Plane(FieldPtr field) : f_(std::move(field)) {
        const Field& f = *f_;
        q_ = f.order();
        if (q_ % 2 == 0) throw std::invalid_argument("the conic plane needs odd q");

        const Elem half_neg = f.neg(f.inv(f.from_int(2)));
        polarity_ = Mat3{f.zero(), f.zero(), half_neg, f.zero(), f.one(), f.zero(), half_neg, f.zero(), f.zero()};
        polarity_inv_ = mat3::inverse(f, polarity_);

        // (0,0,1) < (0,1,a) < (1,a,b) in code order.
        std::vector<Triple> triples;
        triples.reserve(std::size_t{q_} * q_ + q_ + 1);
        triples.push_back({f.zero(), f.zero(), f.one()});
        for (std::uint32_t a = 0; a < q_; ++a) triples.push_back({f.zero(), f.one(), Elem{a}});
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) triples.push_back({f.one(), Elem{a}, Elem{b}});
        }
        index_.assign(std::size_t{q_} * q_ * q_, kNone);
        for (std::uint32_t i = 0; i < triples.size(); ++i) {
            index_[code(triples[i])] = i;
            points_.push_back(Point{triples[i]});
            lines_.push_back(Line{triples[i]});
            point_types_.push_back(classify_point(f, points_.back()));
            line_types_.push_back(classify_line(f, lines_.back()));
        }

        points_on_.resize(lines_.size());
        lines_through_.resize(points_.size());
        for (std::uint32_t j = 0; j < lines_.size(); ++j) {
            auto [u, v] = kernel_basis(lines_[j].x);
            points_on_[j] = span_members(u, v);
        }
        for (std::uint32_t i = 0; i < points_.size(); ++i) {
            auto [u, v] = kernel_basis(points_[i].x);
            lines_through_[i] = span_members(u, v);
        }
        polar_.resize(points_.size());
        pole_.resize(lines_.size());
        for (std::uint32_t i = 0; i < points_.size(); ++i) {
            polar_[i] = index_of(polarity_point(points_[i]));
            pole_[i] = index_of(polarity_line(lines_[i]));
        }
        for (std::uint32_t i = 0; i < points_.size(); ++i) {
            switch (point_types_[i]) {
                case PointType::Internal: internal_.push_back(i); break;
                case PointType::External: external_.push_back(i); break;
                case PointType::OnConic: conic_.push_back(i); break;
            }
            switch (line_types_[i]) {
                case LineType::Passant: passant_.push_back(i); break;
                case LineType::Tangent: tangent_.push_back(i); break;
                case LineType::Secant: secant_.push_back(i); break;
            }
        }
    }

    const Field& field() const { return *f_; }
    const FieldPtr& field_ptr() const { return f_; }
    std::uint32_t q() const { return q_; }
    bool q_is_1_mod_4() const { return q_ % 4 == 1; }

    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<Line>& lines() const { return lines_; }
    const Point& point(std::uint32_t i) const { return points_.at(i); }
    const Line& line(std::uint32_t j) const { return lines_.at(j); }
    PointType point_type(std::uint32_t i) const { return point_types_.at(i); }
    LineType line_type(std::uint32_t j) const { return line_types_.at(j); }

    /// Index of a (not necessarily normalized) point or line.
    std::uint32_t index_of(const Point& p) const { return index_.at(code(normalize(*f_, p.x))); }
    std::uint32_t index_of(const Line& l) const { return index_.at(code(normalize(*f_, l.x))); }

    /// Point indices by type, ascending.
    const std::vector<std::uint32_t>& internal_points() const { return internal_; }
    const std::vector<std::uint32_t>& external_points() const { return external_; }
    const std::vector<std::uint32_t>& conic_points() const { return conic_; }
    const std::vector<std::uint32_t>& passant_lines() const { return passant_; }
    const std::vector<std::uint32_t>& tangent_lines() const { return tangent_; }
    const std::vector<std::uint32_t>& secant_lines() const { return secant_; }

    /// The q+1 points on line j, ascending.
    const std::vector<std::uint32_t>& points_on(std::uint32_t j) const { return points_on_.at(j); }
    /// The q+1 lines through point i, ascending.
    const std::vector<std::uint32_t>& lines_through(std::uint32_t i) const { return lines_through_.at(i); }

    bool incident(std::uint32_t point, std::uint32_t line) const {
        return pgconic::incident(*f_, points_[point], lines_[line]);
    }

    const Mat3& polarity_matrix() const { return polarity_; }
    const Mat3& polarity_matrix_inverse() const { return polarity_inv_; }

    /// p -> the line read off M p^T.
    Line polarity_point(const Point& p) const {
        return Line{normalize(*f_, mat3::times_column(*f_, polarity_, p.x))};
    }
    /// l -> the point l M^{-1}.
    Point polarity_line(const Line& l) const { return Point{normalize(*f_, mat3::row_times(*f_, l.x, polarity_inv_))}; }

    std::uint32_t polar(std::uint32_t point) const { return polar_.at(point); }
    std::uint32_t pole(std::uint32_t line) const { return pole_.at(line); }

    Line join(std::uint32_t a, std::uint32_t b) const {
        if (a == b) throw std::invalid_argument("join of a point with itself");
        return Line{normalize(*f_, cross(*f_, points_[a].x, points_[b].x))};
    }
    Point meet(std::uint32_t a, std::uint32_t b) const {
        if (a == b) throw std::invalid_argument("meet of a line with itself");
        return Point{normalize(*f_, cross(*f_, lines_[a].x, lines_[b].x))};
    }

    LineProfile line_profile(std::uint32_t j) const {
        LineProfile r;
        for (auto i : points_on_[j]) {
            switch (point_types_[i]) {
                case PointType::OnConic: ++r.absolute; break;
                case PointType::External: ++r.external; break;
                case PointType::Internal: ++r.internal; break;
            }
        }
        return r;
    }

    PointProfile point_profile(std::uint32_t i) const {
        PointProfile r;
        for (auto j : lines_through_[i]) {
            switch (line_types_[j]) {
                case LineType::Tangent: ++r.tangent; break;
                case LineType::Secant: ++r.secant; break;
                case LineType::Passant: ++r.passant; break;
            }
        }
        return r;
    }

    /// Type of the point p^perp n l, for p off the conic, l non-tangent, p on l.
    PointType meet_type(std::uint32_t p, std::uint32_t l) const {
        if (point_types_.at(p) == PointType::OnConic) throw std::invalid_argument("meet_type: point lies on the conic");
        if (line_types_.at(l) == LineType::Tangent) throw std::invalid_argument("meet_type: line is a tangent");
        if (!incident(p, l)) throw std::invalid_argument("meet_type: point is not on the line");
        return point_types_[index_of(meet(polar_[p], l))];
    }

  private:
    static constexpr std::uint32_t kNone = 0xffffffffU;

    std::size_t code(const Triple& t) const {
        return (std::size_t{t[0].value} * q_ + t[1].value) * q_ + t[2].value;
    }

    // Two independent solutions of v . x = 0.
    std::pair<Triple, Triple> kernel_basis(const Triple& v) const {
        const Field& f = *f_;
        if (v[0] != f.zero()) {
            const Elem i = f.inv(v[0]);
            return {Triple{f.neg(f.mul(v[1], i)), f.one(), f.zero()}, Triple{f.neg(f.mul(v[2], i)), f.zero(), f.one()}};
        }
        if (v[1] != f.zero()) {
            return {Triple{f.one(), f.zero(), f.zero()}, Triple{f.zero(), f.neg(f.mul(v[2], f.inv(v[1]))), f.one()}};
        }
        return {Triple{f.one(), f.zero(), f.zero()}, Triple{f.zero(), f.one(), f.zero()}};
    }

    std::vector<std::uint32_t> span_members(const Triple& u, const Triple& v) const {
        const Field& f = *f_;
        std::vector<std::uint32_t> out;
        out.reserve(q_ + 1);
        out.push_back(index_[code(normalize(f, v))]);
        for (std::uint32_t t = 0; t < q_; ++t) {
            Triple w{};
            for (int k = 0; k < 3; ++k) w[k] = f.add(u[k], f.mul(Elem{t}, v[k]));
            out.push_back(index_[code(normalize(f, w))]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    FieldPtr f_;
    std::uint32_t q_ = 0;
    Mat3 polarity_{};
    Mat3 polarity_inv_{};
    std::vector<std::uint32_t> index_;
    std::vector<Point> points_;
    std::vector<Line> lines_;
    std::vector<PointType> point_types_;
    std::vector<LineType> line_types_;
    std::vector<std::vector<std::uint32_t>> points_on_;
    std::vector<std::vector<std::uint32_t>> lines_through_;
    std::vector<std::uint32_t> polar_;
    std::vector<std::uint32_t> pole_;
    std::vector<std::uint32_t> internal_, external_, conic_;
    std::vector<std::uint32_t> passant_, tangent_, secant_;
};

using PlanePtr = std::shared_ptr<const Plane>;

inline PlanePtr make_plane(std::uint64_t q) { return std::make_shared<const Plane>(Field::for_geometry(q)); }

// ---------------------------------------------------------------------------
// Geometry checks

/// Type counts, conic equation, per-type profiles and flag double counting.
inline CheckResult check_geometry_census(const Plane& pl) {
    CheckResult r("geometry census");
    const Field& f = pl.field();
    const std::uint64_t q = pl.q();
    r.expect(pl.size() == q * q + q + 1, "point count");
    r.expect(pl.conic_points().size() == q + 1, "|O| != q+1");
    r.expect(pl.internal_points().size() == q * (q - 1) / 2, "|I| != q(q-1)/2");
    r.expect(pl.external_points().size() == q * (q + 1) / 2, "|E| != q(q+1)/2");
    r.expect(pl.passant_lines().size() == q * (q - 1) / 2, "|Pa| != q(q-1)/2");
    r.expect(pl.tangent_lines().size() == q + 1, "|T| != q+1");
    r.expect(pl.secant_lines().size() == q * (q + 1) / 2, "|Se| != q(q+1)/2");
    for (auto i : pl.conic_points()) {
        const auto& x = pl.point(i).x;
        r.expect(f.mul(x[1], x[1]) == f.mul(x[0], x[2]), "conic point off X1^2 = X0 X2");
    }
    std::uint64_t flags = 0;
    for (std::uint32_t j = 0; j < pl.size(); ++j) {
        r.expect(pl.line_profile(j) == expected_line_profile(q, pl.line_type(j)),
                 std::string("profile of ") + to_string(pl.line_type(j)) + " line " + std::to_string(j));
        r.expect(pl.point_profile(j) == expected_point_profile(q, pl.point_type(j)),
                 std::string("profile of ") + to_string(pl.point_type(j)) + " point " + std::to_string(j));
        flags += pl.points_on(j).size();
    }
    r.expect(flags == (q * q + q + 1) * (q + 1), "flag count");
    return r;
}

/// Involution, type bijections and incidence reversal of the polarity.
inline CheckResult check_polarity(const Plane& pl) {
    CheckResult r("polarity");
    for (std::uint32_t i = 0; i < pl.size(); ++i) {
        r.expect(pl.pole(pl.polar(i)) == i, "pole(polar(p)) != p");
        r.expect(pl.polar(pl.pole(i)) == i, "polar(pole(l)) != l");
        LineType want = LineType::Tangent;
        if (pl.point_type(i) == PointType::Internal) want = LineType::Passant;
        if (pl.point_type(i) == PointType::External) want = LineType::Secant;
        r.expect(pl.line_type(pl.polar(i)) == want, "polarity type bijection");
    }
    for (std::uint32_t p = 0; p < pl.size(); ++p) {
        for (std::uint32_t l = 0; l < pl.size(); ++l) {
            r.expect(pl.incident(p, l) == pl.incident(pl.pole(l), pl.polar(p)), "polarity does not reverse incidence");
        }
    }
    return r;
}

/// Type of p^perp n l for every point p off the conic and non-tangent l
/// through p, against the residue of q mod 4.
inline CheckResult check_meet_types(const Plane& pl) {
    CheckResult r("meet types");
    const bool one = pl.q_is_1_mod_4();
    for (std::uint32_t p = 0; p < pl.size(); ++p) {
        const PointType pt = pl.point_type(p);
        if (pt == PointType::OnConic) continue;
        for (auto l : pl.lines_through(p)) {
            const LineType lt = pl.line_type(l);
            if (lt == LineType::Tangent) continue;
            // Internal exactly when (p internal) == (l passant) disagrees with q = 1 (mod 4).
            const bool same = (pt == PointType::Internal) == (lt == LineType::Passant);
            const bool internal = same != one;
            r.expect(pl.meet_type(p, l) == (internal ? PointType::Internal : PointType::External),
                     "meet type at p=" + std::to_string(p) + " l=" + std::to_string(l));
        }
    }
    return r;
}

}  // namespace pgconic
