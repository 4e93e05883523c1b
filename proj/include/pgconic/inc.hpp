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

// The passant-line / internal-point incidence system: A with A[i][j] = 1
// iff p_j lies on the polar of p_i, D = A^2 + I and C = D + J, all over
// GF(2). Row vectors act on the left: phi(x) = xA, mu(x) = xD, mu2(x) = xC.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "check.hpp"
#include "grp.hpp"
#include "mat2.hpp"
#include "pg.hpp"

namespace pgconic {

class IncidenceSystem {
  public:
    explicit IncidenceSystem(PlanePtr plane) : plane_(std::move(plane)) {
        const Plane& pl = *plane_;
        points_ = pl.internal_points();
        const std::size_t n = points_.size();
        column_of_.assign(pl.size(), kNone);
        for (std::size_t i = 0; i < n; ++i) column_of_[points_[i]] = static_cast<std::uint32_t>(i);
        a_ = BitMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto x : pl.points_on(pl.polar(points_[i]))) {
                if (column_of_[x] != kNone) a_.set(i, column_of_[x], true);
            }
        }
        d_ = a_ * a_ + BitMatrix::identity(n);
        c_ = d_ + BitMatrix::all_ones(n, n);
    }

    const Plane& plane() const { return *plane_; }
    std::size_t size() const { return points_.size(); }
    /// Plane index of the i-th internal point.
    std::uint32_t point(std::size_t i) const { return points_.at(i); }
    const std::vector<std::uint32_t>& points() const { return points_; }
    /// Column of a plane point, or throws if it is not internal.
    std::uint32_t column(std::uint32_t plane_index) const {
        const auto c = column_of_.at(plane_index);
        if (c == kNone) throw std::invalid_argument("point is not internal");
        return c;
    }

    const BitMatrix& A() const { return a_; }
    const BitMatrix& D() const { return d_; }
    const BitMatrix& C() const { return c_; }

    /// Row characteristic vector of a set of internal points.
    BitMatrix char_vector(const std::vector<std::uint32_t>& plane_points) const {
        BitMatrix v(1, size());
        for (auto p : plane_points) v.set(0, column(p), true);
        return v;
    }

    /// Permutation matrix of g on I: row i has its 1 in the column of p_i^g.
    BitMatrix permutation_matrix(const Group& grp, std::uint32_t g) const {
        BitMatrix p(size(), size());
        for (std::size_t i = 0; i < size(); ++i) p.set(i, column(grp.point_image(g, points_[i])), true);
        return p;
    }

    BitMatrix kernel_basis() const { return a_.left_nullspace(); }
    BitMatrix image_basis() const { return a_.row_space(); }
    BitMatrix mu2_image_basis() const { return c_.row_space(); }

    std::size_t null_dimension() const { return size() - a_.rank(); }

  private:
    static constexpr std::uint32_t kNone = 0xffffffffU;

    PlanePtr plane_;
    std::vector<std::uint32_t> points_;
    std::vector<std::uint32_t> column_of_;
    BitMatrix a_, d_, c_;
};

inline std::uint64_t expected_null_dimension(std::uint64_t q) { return (q - 1) * (q - 1) / 4; }

/// Symmetry, weights, the diagonal rule, integer A^2 entries, the rows of
/// A^2, D and C against N-hat(p), N(p) and its complement, and A^2 J = 0
/// when q = 3 (mod 4).
inline CheckResult check_incidence_structure(const IncidenceSystem& sys) {
    CheckResult r("incidence structure");
    const Plane& pl = sys.plane();
    const std::size_t n = sys.size();
    const std::uint32_t q = pl.q();
    const BitMatrix& a = sys.A();
    r.expect(a == a.transpose(), "A is not symmetric");
    for (std::size_t i = 0; i < n; ++i) {
        r.expect(a.row_weight(i) == (q + 1) / 2, "row weight of A");
        r.expect(a.col_weight(i) == (q + 1) / 2, "column weight of A");
        r.expect(!a.get(i, i), "diagonal of A");
    }

    const auto ai = to_integer(a);
    const auto a2 = dense_multiply<IntegerSemiring>(ai, ai);
    const auto a2_mod2 = dense_multiply<Gf2Semiring>(ai, ai);
    r.expect(from_integer_mod2(a2) == from_integer_mod2(a2_mod2), "integer and GF(2) squares disagree");
    r.expect(from_integer_mod2(a2) == a * a, "semiring product disagrees with the packed product");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t want = 0;
            if (i == j) {
                want = (q + 1) / 2;
            } else if (pl.line_type(pl.index_of(pl.join(sys.point(i), sys.point(j)))) == LineType::Passant) {
                want = 1;
            }
            r.expect(a2.at(i, j) == want, "integer A^2 entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }

    const BitMatrix a2b = a * a;
    const BitMatrix ones = BitMatrix::all_ones(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = sys.point(i);
        const auto hat = sys.char_vector(neighbor_closure(pl, p));
        const auto nb = sys.char_vector(neighbor_set(pl, p));
        r.expect(a2b.slice_rows(i, i + 1) == hat, "row of A^2 differs from N-hat(p)");
        r.expect(sys.D().slice_rows(i, i + 1) == nb, "row of D differs from N(p)");
        r.expect(sys.C().slice_rows(i, i + 1) == nb + BitMatrix::all_ones(1, n), "row of C differs from the complement");
    }
    if (!pl.q_is_1_mod_4()) r.expect((a2b * ones).is_zero(), "A^2 J != 0");
    return r;
}

inline CheckResult verify_a_cubed(const IncidenceSystem& sys) {
    CheckResult r("A^3 = A");
    r.expect(sys.A() * sys.A() * sys.A() == sys.A(), "A^3 != A over GF(2)");
    return r;
}

/// P_h A = A P_h and P_h D = D P_h for the listed elements (all if empty).
inline CheckResult equivariance_check(const IncidenceSystem& sys, const Group& grp,
                                      std::vector<std::uint32_t> elements = {}) {
    CheckResult r("equivariance");
    if (elements.empty()) elements = all_elements(grp);
    for (auto g : elements) {
        const BitMatrix p = sys.permutation_matrix(grp, g);
        r.expect(p * sys.A() == sys.A() * p, "P_h A != A P_h for element " + std::to_string(g));
        r.expect(p * sys.D() == sys.D() * p, "P_h D != D P_h for element " + std::to_string(g));
    }
    return r;
}

struct FittingSplit {
    std::size_t image_dim = 0;
    std::size_t kernel_dim = 0;
    std::size_t intersection_dim = 0;
};

inline FittingSplit fitting_split(const IncidenceSystem& sys) {
    const BitMatrix im = sys.image_basis();
    const BitMatrix ker = sys.kernel_basis();
    return {im.rows(), ker.rows(), intersection_dim(im, ker)};
}

inline CheckResult check_fitting_split(const IncidenceSystem& sys) {
    CheckResult r("image/kernel splitting");
    const auto s = fitting_split(sys);
    r.expect(s.image_dim + s.kernel_dim == sys.size(), "dimensions do not sum to |I|");
    r.expect(s.intersection_dim == 0, "image and kernel intersect");
    return r;
}

/// Row space of D equals the kernel of phi.
inline CheckResult kernel_image_check(const IncidenceSystem& sys) {
    CheckResult r("kernel equals image of mu");
    const BitMatrix ker = sys.kernel_basis();
    const BitMatrix im = sys.D().row_space();
    r.expect(im.rows() == ker.rows(), "dimensions differ");
    r.expect(row_space_contains(ker, im), "image of mu not inside the kernel");
    r.expect(row_space_contains(im, ker), "kernel not inside the image of mu");
    return r;
}

/// q = 3 (mod 4): Ker(phi) = <J-hat> (+) Im(mu2).
inline CheckResult separate_check(const IncidenceSystem& sys) {
    if (sys.plane().q_is_1_mod_4()) throw std::invalid_argument("separate_check needs q = 3 (mod 4)");
    CheckResult r("kernel splits off the all-one vector");
    const BitMatrix ker = sys.kernel_basis();
    const BitMatrix im2 = sys.mu2_image_basis();
    const BitMatrix j = BitMatrix::all_ones(1, sys.size());
    r.expect(!row_space_contains(im2, j), "J-hat lies in the image of mu2");
    r.expect(im2.rows() + 1 == ker.rows(), "dim Im(mu2) != dim Ker(phi) - 1");
    const BitMatrix sum = im2.stack(j);
    r.expect(row_space_contains(ker, sum) && sum.rank() == ker.rows(), "<J-hat> + Im(mu2) != Ker(phi)");
    return r;
}

inline CheckResult check_null_dimension(const IncidenceSystem& sys) {
    CheckResult r("null dimension");
    const auto got = sys.null_dimension();
    const auto want = expected_null_dimension(sys.plane().q());
    r.expect(got == want, "dim null(A) = " + std::to_string(got) + ", expected " + std::to_string(want));
    return r;
}

}  // namespace pgconic
