// Copyright 2026 The ncdef Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef NCDEF_LINALG_HPP
#define NCDEF_LINALG_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ncdef/scalar.hpp"

namespace ncdef {

template <class S> using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using RMat = Mat<Rational>;
using RVec = Vec<Rational>;

/// Reduced row echelon form of a matrix over an exact field.
template <class S>
struct Echelon {
    Mat<S> reduced;           // rank rows are meaningful, the rest are zero
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

/// Gauss-Jordan elimination; first nonzero entry in a column is the pivot.
template <class S>
Echelon<S> rref(Mat<S> a) {
    Echelon<S> e;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && is_zero(a(p, c))) ++p;
        if (p == rows) continue;
        if (p != r) a.row(p).swap(a.row(r));
        const S pinv = inv(a(r, c));
        for (Eigen::Index k = c; k < cols; ++k)
            if (!is_zero(a(r, k))) a(r, k) *= pinv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(a(i, c))) continue;
            const S f = a(i, c);
            for (Eigen::Index k = c; k < cols; ++k)
                if (!is_zero(a(r, k))) a(i, k) -= f * a(r, k);
        }
        e.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    e.reduced = std::move(a);
    return e;
}

template <class S>
int rank(const Mat<S>& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return rref<S>(a).rank();
}

/// Basis of {x : a x = 0}, one basis vector per column.
template <class S>
Mat<S> nullspace(const Mat<S>& a) {
    const Eigen::Index n = a.cols();
    if (a.rows() == 0) return Mat<S>::Identity(n, n);
    Echelon<S> e = rref<S>(a);
    std::vector<bool> is_pivot(n, false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<Eigen::Index> free;
    for (Eigen::Index c = 0; c < n; ++c)
        if (!is_pivot[c]) free.push_back(c);
    Mat<S> basis = Mat<S>::Zero(n, static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = S(1);
        for (int r = 0; r < e.rank(); ++r)
            basis(e.pivots[r], k) = -e.reduced(r, free[k]);
    }
    return basis;
}

/// Solves a X = B column by column. Column k of the result is a particular
/// solution (free variables set to zero) or std::nullopt if inconsistent.
template <class S>
std::vector<std::optional<Vec<S>>> solve_columns(const Mat<S>& a, const Mat<S>& b) {
    const Eigen::Index n = a.cols(), m = b.cols();
    Mat<S> aug(a.rows(), n + m);
    if (a.rows() > 0) {
        aug.leftCols(n) = a;
        aug.rightCols(m) = b;
    }
    std::vector<std::optional<Vec<S>>> out(static_cast<std::size_t>(m));
    if (a.rows() == 0) {
        for (auto& o : out) o = Vec<S>::Zero(n);
        return out;
    }
    // Pivots restricted to the coefficient block.
    Echelon<S> e;
    {
        Mat<S> work = aug;
        const Eigen::Index rows = work.rows();
        Eigen::Index r = 0;
        for (Eigen::Index c = 0; c < n && r < rows; ++c) {
            Eigen::Index p = r;
            while (p < rows && is_zero(work(p, c))) ++p;
            if (p == rows) continue;
            if (p != r) work.row(p).swap(work.row(r));
            const S pinv = inv(work(r, c));
            for (Eigen::Index k = c; k < n + m; ++k)
                if (!is_zero(work(r, k))) work(r, k) *= pinv;
            for (Eigen::Index i = 0; i < rows; ++i) {
                if (i == r || is_zero(work(i, c))) continue;
                const S f = work(i, c);
                for (Eigen::Index k = c; k < n + m; ++k)
                    if (!is_zero(work(r, k))) work(i, k) -= f * work(r, k);
            }
            e.pivots.push_back(static_cast<int>(c));
            ++r;
        }
        e.reduced = std::move(work);
    }
    for (Eigen::Index k = 0; k < m; ++k) {
        bool ok = true;
        for (Eigen::Index r = e.rank(); r < e.reduced.rows(); ++r)
            if (!is_zero(e.reduced(r, n + k))) { ok = false; break; }
        if (!ok) continue;
        Vec<S> x = Vec<S>::Zero(n);
        for (int r = 0; r < e.rank(); ++r) x(e.pivots[r]) = e.reduced(r, n + k);
        out[static_cast<std::size_t>(k)] = std::move(x);
    }
    return out;
}

template <class S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b) {
    Mat<S> bm(b.rows(), 1);
    bm.col(0) = b;
    return solve_columns<S>(a, bm).front();
}

}  // namespace ncdef

#endif  // NCDEF_LINALG_HPP
