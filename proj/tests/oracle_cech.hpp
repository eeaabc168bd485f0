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


// Brute-force graded Čech oracle for products of projective spaces.
//
// Works with the classical cover by the (n_1+1)...(n_r+1) standard affine
// charts and the alternating complex on strictly increasing tuples of charts,
// not with the poset of intersections used by the library. Regularity of a
// torus polyvector on an intersection is decided by writing it out in
// coordinate derivations and checking exponents directly.

#ifndef NCDEF_TESTS_ORACLE_CECH_HPP
#define NCDEF_TESTS_ORACLE_CECH_HPP

#include <vector>

#include "ncdef/linalg.hpp"

namespace oracle {

using ncdef::Rational;
using ncdef::RMat;
using ncdef::RVec;

struct Product {
    std::vector<int> dims;  // P^{dims[0]} x P^{dims[1]} x ...
    int torus_dim() const {
        int s = 0;
        for (int d : dims) s += d;
        return s;
    }
};

inline std::vector<std::vector<int>> all_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        std::vector<int> s;
        for (int a = 0; a < n; ++a)
            if (mask & (1 << a)) s.push_back(a);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline long det(std::vector<std::vector<long>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    // Exact fraction-free Bareiss elimination.
    long prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// An open set of the product given by one nonempty index set per factor.
struct Open {
    std::vector<std::vector<int>> sets;
};

/// Subspace of wedge^p k^N (basis theta_{z_A}) of weight-c polyvectors regular on the open set.
inline RMat sections(const Product& x, const Open& o, int p, const std::vector<int>& c) {
    const int n = x.torus_dim();
    // Coordinates y_j = z^{u_j}; inverted flags.
    std::vector<std::vector<int>> u;
    std::vector<bool> inv;
    int offset = 0;
    for (std::size_t f = 0; f < x.dims.size(); ++f) {
        const int d = x.dims[f];
        const int a0 = o.sets[f].front();
        for (int b = 0; b <= d; ++b) {
            if (b == a0) continue;
            std::vector<int> w(static_cast<std::size_t>(n), 0);
            if (b > 0) w[static_cast<std::size_t>(offset + b - 1)] += 1;
            if (a0 > 0) w[static_cast<std::size_t>(offset + a0 - 1)] -= 1;
            u.push_back(w);
            inv.push_back(std::find(o.sets[f].begin(), o.sets[f].end(), b) != o.sets[f].end());
        }
        offset += d;
    }
    // Exponent of z^c in the y coordinates: solve sum_j w_j u_j = c.
    RMat um(n, n);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) um(a, j) = u[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
    RVec cv(n);
    for (int a = 0; a < n; ++a) cv(a) = c[static_cast<std::size_t>(a)];
    RVec w = *ncdef::solve<Rational>(um, cv);

    const auto subs = all_subsets(n, p);
    std::vector<RVec> constraints;
    for (const auto& t : subs) {
        // Coefficient of d/dy_T in theta_{z_A} is det(u[T][A]) * prod_{j in T} y_j.
        bool regular = true;
        for (int j = 0; j < n; ++j) {
            Rational e = w(j) + Rational(std::find(t.begin(), t.end(), j) != t.end() ? 1 : 0);
            if (!inv[static_cast<std::size_t>(j)] && e < Rational(0)) regular = false;
        }
        if (regular) continue;
        RVec row(static_cast<Eigen::Index>(subs.size()));
        for (std::size_t k = 0; k < subs.size(); ++k) {
            std::vector<std::vector<long>> m;
            for (int j : t) {
                std::vector<long> r;
                for (int a : subs[k]) r.push_back(u[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)]);
                m.push_back(r);
            }
            row(static_cast<Eigen::Index>(k)) = Rational(det(m));
        }
        constraints.push_back(row);
    }
    RMat cm(static_cast<Eigen::Index>(constraints.size()), static_cast<Eigen::Index>(subs.size()));
    for (std::size_t r = 0; r < constraints.size(); ++r) cm.row(static_cast<Eigen::Index>(r)) = constraints[r].transpose();
    if (constraints.empty()) return RMat::Identity(static_cast<Eigen::Index>(subs.size()), static_cast<Eigen::Index>(subs.size()));
    return ncdef::nullspace<Rational>(cm);
}

/// h^q of wedge^p T in weight c, q = 0..qmax.
inline std::vector<int> graded_dims(const Product& x, int p, const std::vector<int>& c, int qmax) {
    // Standard charts: tuples of indices, enumerated in lexicographic order.
    std::vector<std::vector<int>> charts{{}};
    for (int d : x.dims) {
        std::vector<std::vector<int>> next;
        for (const auto& ch : charts)
            for (int a = 0; a <= d; ++a) {
                auto e = ch;
                e.push_back(a);
                next.push_back(e);
            }
        charts = next;
    }
    const int m = static_cast<int>(charts.size());
    auto open_of = [&](const std::vector<int>& tuple) {
        Open o;
        o.sets.resize(x.dims.size());
        for (int s : tuple)
            for (std::size_t f = 0; f < x.dims.size(); ++f) o.sets[f].push_back(charts[static_cast<std::size_t>(s)][f]);
        for (auto& s : o.sets) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        return o;
    };
    // Basis matrices per tuple and per level.
    std::vector<std::vector<std::vector<int>>> tuples;
    std::vector<std::vector<RMat>> bases;
    std::vector<std::vector<int>> offsets;
    std::vector<int> totals;
    for (int q = 0; q <= qmax + 1; ++q) {
        tuples.push_back(q + 1 <= m ? all_subsets(m, q + 1) : std::vector<std::vector<int>>{});
        std::vector<RMat> b;
        std::vector<int> off;
        int tot = 0;
        for (const auto& t : tuples.back()) {
            b.push_back(sections(x, open_of(t), p, c));
            off.push_back(tot);
            tot += static_cast<int>(b.back().cols());
        }
        bases.push_back(b);
        offsets.push_back(off);
        totals.push_back(tot);
    }
    const Eigen::Index amb = static_cast<Eigen::Index>(all_subsets(x.torus_dim(), p).size());
    std::vector<int> ranks;
    for (int q = 0; q <= qmax; ++q) {
        // Ambient target coordinates, basis source coordinates.
        const auto& up = tuples[static_cast<std::size_t>(q + 1)];
        RMat d = RMat::Zero(static_cast<Eigen::Index>(up.size()) * amb, totals[static_cast<std::size_t>(q)]);
        for (std::size_t t = 0; t < up.size(); ++t)
            for (std::size_t k = 0; k < up[t].size(); ++k) {
                auto face = up[t];
                face.erase(face.begin() + static_cast<long>(k));
                const auto& low = tuples[static_cast<std::size_t>(q)];
                const std::size_t s = static_cast<std::size_t>(std::lower_bound(low.begin(), low.end(), face) - low.begin());
                const RMat& b = bases[static_cast<std::size_t>(q)][s];
                if (b.cols() == 0) continue;
                d.block(static_cast<Eigen::Index>(t) * amb, offsets[static_cast<std::size_t>(q)][s], amb, b.cols()) +=
                    Rational(k % 2 ? -1 : 1) * b;
            }
        ranks.push_back(d.size() ? ncdef::rank<Rational>(d) : 0);
    }
    std::vector<int> h;
    for (int q = 0; q <= qmax; ++q)
        h.push_back(totals[static_cast<std::size_t>(q)] - ranks[static_cast<std::size_t>(q)] - (q ? ranks[static_cast<std::size_t>(q - 1)] : 0));
    return h;
}

/// Total h^q over the box of characters with max-norm <= radius.
inline std::vector<int> total_dims(const Product& x, int p, int radius, int qmax) {
    const int n = x.torus_dim();
    std::vector<int> total(static_cast<std::size_t>(qmax + 1), 0);
    std::vector<int> c(static_cast<std::size_t>(n), -radius);
    while (true) {
        auto h = graded_dims(x, p, c, qmax);
        for (int q = 0; q <= qmax; ++q) total[static_cast<std::size_t>(q)] += h[static_cast<std::size_t>(q)];
        int k = n - 1;
        while (k >= 0 && c[static_cast<std::size_t>(k)] == radius) c[static_cast<std::size_t>(k--)] = -radius;
        if (k < 0) break;
        ++c[static_cast<std::size_t>(k)];
    }
    return total;
}

}  // namespace oracle

#endif  // NCDEF_TESTS_ORACLE_CECH_HPP
