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

// Text interchange for sparse 0/1 matrices: alist and CSV.
//
// alist layout: "N M" (columns, rows), "maxcolw maxroww", the N column
// weights, the M row weights, then per column its 1-based row indices and
// per row its 1-based column indices.

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mat2.hpp"

namespace pgconic {

inline void write_alist(std::ostream& os, const BitMatrix& m) {
    const std::size_t n = m.cols(), rows = m.rows();
    std::vector<std::vector<std::size_t>> by_col(n), by_row(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m.get(i, j)) {
                by_col[j].push_back(i + 1);
                by_row[i].push_back(j + 1);
            }
        }
    }
    auto max_len = [](const std::vector<std::vector<std::size_t>>& v) {
        std::size_t w = 0;
        for (const auto& x : v) w = std::max(w, x.size());
        return w;
    };
    auto line = [&os](const std::vector<std::size_t>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << '\n';
    };
    os << n << ' ' << rows << '\n' << max_len(by_col) << ' ' << max_len(by_row) << '\n';
    std::vector<std::size_t> w;
    for (const auto& c : by_col) w.push_back(c.size());
    line(w);
    w.clear();
    for (const auto& r : by_row) w.push_back(r.size());
    line(w);
    for (const auto& c : by_col) line(c);
    for (const auto& r : by_row) line(r);
}

inline std::string to_alist(const BitMatrix& m) {
    std::ostringstream os;
    write_alist(os, m);
    return os.str();
}

/// Parses an alist and cross-checks the column and row sections.
inline BitMatrix read_alist(std::istream& is) {
    std::size_t n = 0, rows = 0, maxc = 0, maxr = 0;
    if (!(is >> n >> rows >> maxc >> maxr)) throw std::runtime_error("alist: bad header");
    std::vector<std::size_t> cw(n), rw(rows);
    for (auto& x : cw) {
        if (!(is >> x)) throw std::runtime_error("alist: bad column weights");
    }
    for (auto& x : rw) {
        if (!(is >> x)) throw std::runtime_error("alist: bad row weights");
    }
    BitMatrix m(rows, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < cw[j]; ++k) {
            std::size_t i = 0;
            if (!(is >> i) || i == 0 || i > rows) throw std::runtime_error("alist: bad row index");
            m.set(i - 1, j, true);
        }
    }
    BitMatrix check(rows, n);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < rw[i]; ++k) {
            std::size_t j = 0;
            if (!(is >> j) || j == 0 || j > n) throw std::runtime_error("alist: bad column index");
            check.set(i, j - 1, true);
        }
    }
    if (!(m == check)) throw std::runtime_error("alist: column and row sections disagree");
    std::size_t mc = 0, mr = 0;
    for (auto x : cw) mc = std::max(mc, x);
    for (auto x : rw) mr = std::max(mr, x);
    if (mc != maxc || mr != maxr) throw std::runtime_error("alist: maximum weights disagree with the lists");
    return m;
}

inline BitMatrix from_alist(const std::string& s) {
    std::istringstream is(s);
    return read_alist(is);
}

inline void write_csv(std::ostream& os, const BitMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << (m.get(i, j) ? '1' : '0');
        os << '\n';
    }
}

}  // namespace pgconic
