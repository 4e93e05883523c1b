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

// Linear algebra over GF(2) with rows packed into 64-bit words, a small
// dense product parameterized by semiring, and dense matrices over GF(2^k).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ff.hpp"

namespace pgconic {

class BitMatrix {
  public:
    using Word = std::uint64_t;
    static constexpr std::size_t kBits = 64;

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + kBits - 1) / kBits), data_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BitMatrix all_ones(std::size_t rows, std::size_t cols) {
        BitMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) m.set(i, j, true);
        }
        return m;
    }

    static BitMatrix from_dense(const std::vector<std::vector<bool>>& d) {
        const std::size_t cols = d.empty() ? 0 : d.front().size();
        BitMatrix m(d.size(), cols);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i].size() != cols) throw std::invalid_argument("ragged dense matrix");
            for (std::size_t j = 0; j < cols; ++j) m.set(i, j, d[i][j]);
        }
        return m;
    }

    std::vector<std::vector<bool>> to_dense() const {
        std::vector<std::vector<bool>> d(rows_, std::vector<bool>(cols_));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) d[i][j] = get(i, j);
        }
        return d;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t i, std::size_t j) const { return (data_[i * stride_ + j / kBits] >> (j % kBits)) & 1U; }
    void set(std::size_t i, std::size_t j, bool v) {
        Word& w = data_[i * stride_ + j / kBits];
        const Word bit = Word{1} << (j % kBits);
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t i, std::size_t j) { data_[i * stride_ + j / kBits] ^= Word{1} << (j % kBits); }

    Word* row(std::size_t i) { return data_.data() + i * stride_; }
    const Word* row(std::size_t i) const { return data_.data() + i * stride_; }

    std::size_t row_weight(std::size_t i) const {
        std::size_t w = 0;
        for (std::size_t k = 0; k < stride_; ++k) w += static_cast<std::size_t>(std::popcount(row(i)[k]));
        return w;
    }
    std::size_t col_weight(std::size_t j) const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < rows_; ++i) w += get(i, j);
        return w;
    }
    bool row_is_zero(std::size_t i) const {
        for (std::size_t k = 0; k < stride_; ++k) {
            if (row(i)[k] != 0) return false;
        }
        return true;
    }
    bool is_zero() const {
        for (auto w : data_) {
            if (w != 0) return false;
        }
        return true;
    }

    bool operator==(const BitMatrix& o) const = default;

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (get(i, j)) t.set(j, i, true);
            }
        }
        return t;
    }

    /// Rows [begin, end).
    BitMatrix slice_rows(std::size_t begin, std::size_t end) const {
        BitMatrix m(end - begin, cols_);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t k = 0; k < stride_; ++k) m.row(i - begin)[k] = row(i)[k];
        }
        return m;
    }

    /// This matrix above `below`.
    BitMatrix stack(const BitMatrix& below) const {
        if (below.cols_ != cols_) throw std::invalid_argument("stack: column mismatch");
        BitMatrix m(rows_ + below.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < stride_; ++k) m.row(i)[k] = row(i)[k];
        }
        for (std::size_t i = 0; i < below.rows_; ++i) {
            for (std::size_t k = 0; k < stride_; ++k) m.row(rows_ + i)[k] = below.row(i)[k];
        }
        return m;
    }

    /// Reduced row echelon form in place with leftmost pivots; returns the
    /// pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            const std::size_t wk = c / kBits;
            const Word bit = Word{1} << (c % kBits);
            std::size_t piv = r;
            while (piv < rows_ && !(row(piv)[wk] & bit)) ++piv;
            if (piv == rows_) continue;
            if (piv != r) {
                for (std::size_t k = 0; k < stride_; ++k) std::swap(row(piv)[k], row(r)[k]);
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i != r && (row(i)[wk] & bit)) {
                    for (std::size_t k = wk; k < stride_; ++k) row(i)[k] ^= row(r)[k];
                }
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        BitMatrix m = *this;
        return m.rref().size();
    }

    /// Basis of the row space (the non-zero rows of the RREF).
    BitMatrix row_space() const {
        BitMatrix m = *this;
        const auto piv = m.rref();
        return m.slice_rows(0, piv.size());
    }

    /// Rows x with A x^T = 0, one per free column, in free-column order.
    BitMatrix nullspace() const {
        BitMatrix m = *this;
        const auto piv = m.rref();
        std::vector<char> is_pivot(cols_, 0);
        for (auto c : piv) is_pivot[c] = 1;
        BitMatrix basis(cols_ - piv.size(), cols_);
        std::size_t b = 0;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            basis.set(b, f, true);
            for (std::size_t r = 0; r < piv.size(); ++r) {
                if (m.get(r, f)) basis.set(b, piv[r], true);
            }
            ++b;
        }
        return basis;
    }

    /// Rows x with x A = 0.
    BitMatrix left_nullspace() const { return transpose().nullspace(); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

inline BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: dimension mismatch");
    BitMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.stride(); ++k) r.row(i)[k] ^= b.row(i)[k];
    }
    return r;
}

/// Row i of the product is the XOR of the rows of b selected by row i of a.
inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    BitMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitMatrix::Word* out = r.row(i);
        const BitMatrix::Word* ai = a.row(i);
        for (std::size_t wk = 0; wk < a.stride(); ++wk) {
            BitMatrix::Word w = ai[wk];
            while (w != 0) {
                const std::size_t k = wk * BitMatrix::kBits + static_cast<std::size_t>(std::countr_zero(w));
                w &= w - 1;
                const BitMatrix::Word* bk = b.row(k);
                for (std::size_t t = 0; t < b.stride(); ++t) out[t] ^= bk[t];
            }
        }
    }
    return r;
}

/// dim(rowspace(a) n rowspace(b)).
inline std::size_t intersection_dim(const BitMatrix& a, const BitMatrix& b) {
    return a.rank() + b.rank() - a.stack(b).rank();
}

/// True iff every row of b lies in the row space of a.
inline bool row_space_contains(const BitMatrix& a, const BitMatrix& b) { return a.stack(b).rank() == a.rank(); }

// ---------------------------------------------------------------------------
// Dense product over a semiring

struct IntegerSemiring {
    using value_type = std::int64_t;
    static value_type zero() { return 0; }
    static value_type add(value_type a, value_type b) { return a + b; }
    static value_type mul(value_type a, value_type b) { return a * b; }
};

struct Gf2Semiring {
    using value_type = std::int64_t;
    static value_type zero() { return 0; }
    static value_type add(value_type a, value_type b) { return a ^ b; }
    static value_type mul(value_type a, value_type b) { return a & b; }
};

template <typename T>
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, T v = T{}) : rows(r), cols(c), data(r * c, v) {}

    T& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    bool operator==(const DenseMatrix&) const = default;
};

template <typename S>
DenseMatrix<typename S::value_type> dense_multiply(const DenseMatrix<typename S::value_type>& a,
                                                   const DenseMatrix<typename S::value_type>& b) {
    if (a.cols != b.rows) throw std::invalid_argument("dense_multiply: dimension mismatch");
    DenseMatrix<typename S::value_type> r(a.rows, b.cols, S::zero());
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const auto aik = a.at(i, k);
            if (aik == S::zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r.at(i, j) = S::add(r.at(i, j), S::mul(aik, b.at(k, j)));
        }
    }
    return r;
}

inline DenseMatrix<std::int64_t> to_integer(const BitMatrix& m) {
    DenseMatrix<std::int64_t> d(m.rows(), m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) d.at(i, j) = m.get(i, j) ? 1 : 0;
    }
    return d;
}

inline BitMatrix from_integer_mod2(const DenseMatrix<std::int64_t>& d) {
    BitMatrix m(d.rows, d.cols);
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t j = 0; j < d.cols; ++j) m.set(i, j, (d.at(i, j) & 1) != 0);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Dense matrices over GF(2^k)

class ExtMatrix {
  public:
    ExtMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, Elem{0}) {
        if (f_->characteristic() != 2) throw std::invalid_argument("ExtMatrix needs a field of characteristic 2");
    }

    static ExtMatrix identity(FieldPtr f, std::size_t n) {
        ExtMatrix m(std::move(f), n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Elem{1};
        return m;
    }

    static ExtMatrix lift(FieldPtr f, const BitMatrix& b) {
        ExtMatrix m(std::move(f), b.rows(), b.cols());
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, j) = Elem{b.get(i, j) ? 1U : 0U};
        }
        return m;
    }

    const FieldPtr& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    bool operator==(const ExtMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    bool is_zero() const {
        for (const auto& e : data_) {
            if (e.value != 0) return false;
        }
        return true;
    }

    /// this += c * other
    void add_scaled(const ExtMatrix& other, Elem c) {
        if (other.rows_ != rows_ || other.cols_ != cols_) throw std::invalid_argument("add_scaled: dimension mismatch");
        if (c.value == 0) return;
        const Field& f = *f_;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (other.data_[i].value != 0) data_[i] = f.add(data_[i], f.mul(c, other.data_[i]));
        }
    }

    std::size_t rank() const {
        ExtMatrix m = *this;
        return m.eliminate();
    }

  private:
    std::size_t eliminate() {
        if (f_->order() <= 256) return eliminate_small();
        const Field& f = *f_;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && at(piv, c).value == 0) ++piv;
            if (piv == rows_) continue;
            if (piv != r) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
            }
            const Elem inv = f.inv(at(r, c));
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = f.mul(at(r, j), inv);
            for (std::size_t i = r + 1; i < rows_; ++i) {
                const Elem t = at(i, c);
                if (t.value == 0) continue;
                for (std::size_t j = c; j < cols_; ++j) at(i, j) = f.sub(at(i, j), f.mul(t, at(r, j)));
            }
            ++r;
        }
        return r;
    }

    // Byte rows and a full multiplication table; same pivoting as eliminate().
    std::size_t eliminate_small() {
        const Field& f = *f_;
        const std::size_t n = f.order();
        std::vector<std::uint8_t> table(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                table[a * n + b] = static_cast<std::uint8_t>(
                    f.mul(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).value);
            }
        }
        std::vector<std::uint8_t> m(data_.size());
        for (std::size_t i = 0; i < data_.size(); ++i) m[i] = static_cast<std::uint8_t>(data_[i].value);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && m[piv * cols_ + c] == 0) ++piv;
            if (piv == rows_) continue;
            std::uint8_t* pr = &m[r * cols_];
            if (piv != r) std::swap_ranges(pr, pr + cols_, &m[piv * cols_]);
            const std::uint8_t* scale = &table[f.inv(Elem{pr[c]}).value * n];
            for (std::size_t j = c; j < cols_; ++j) pr[j] = scale[pr[j]];
            for (std::size_t i = r + 1; i < rows_; ++i) {
                std::uint8_t* row = &m[i * cols_];
                const std::uint8_t t = row[c];
                if (t == 0) continue;
                const std::uint8_t* mt = &table[t * n];
                for (std::size_t j = c; j < cols_; ++j) row[j] ^= mt[pr[j]];
            }
            ++r;
        }
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = Elem{m[i]};
        return r;
    }

    FieldPtr f_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

inline ExtMatrix operator*(const ExtMatrix& a, const ExtMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("ext multiply: dimension mismatch");
    const Field& f = *a.field();
    ExtMatrix r(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem aik = a.at(i, k);
            if (aik.value == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Elem bkj = b.at(k, j);
                if (bkj.value != 0) r.at(i, j) = f.add(r.at(i, j), f.mul(aik, bkj));
            }
        }
    }
    return r;
}

/// dim{ v M : v in rowspace(subspace) }
inline std::size_t image_dim(const ExtMatrix& subspace, const ExtMatrix& m) { return (subspace * m).rank(); }

}  // namespace pgconic
