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


#include "ncdef/polyvector.hpp"

#include <algorithm>
#include <mutex>

#include "ncdef/errors.hpp"

namespace ncdef {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

const std::vector<Subset>& subsets(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Subset>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    std::vector<Subset> out;
    Subset cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int a = start; a < n; ++a) {
            cur.push_back(a);
            self(self, a + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return cache.emplace(std::make_pair(n, k), std::move(out)).first->second;
}

int subset_index(int n, const Subset& s) {
    const auto& all = subsets(n, static_cast<int>(s.size()));
    auto it = std::lower_bound(all.begin(), all.end(), s);
    if (it == all.end() || *it != s) throw IncompatibleData("subset is not sorted or out of range");
    return static_cast<int>(it - all.begin());
}

namespace {

/// Determinant of the square integer matrix m[rows[r]][cols[c]].
long minor(const std::vector<Weight>& m, const Subset& rows, const Subset& cols) {
    const std::size_t k = rows.size();
    if (k == 0) return 1;
    std::vector<int> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
    long det = 0;
    do {
        long term = 1;
        for (std::size_t i = 0; i < k && term != 0; ++i)
            term *= m[static_cast<std::size_t>(rows[i])][static_cast<std::size_t>(cols[static_cast<std::size_t>(perm[i])])];
        int inversions = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inversions;
        det += (inversions % 2 ? -term : term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

RVec PolyVector::coeff(const Weight& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? RVec(RVec::Zero(rank())) : it->second;
}

void PolyVector::add(const Weight& c, const RVec& v) {
    if (v.isZero()) return;
    auto [it, fresh] = terms_.emplace(c, v);
    if (!fresh) {
        it->second += v;
        if (it->second.isZero()) terms_.erase(it);
    }
}

void PolyVector::add_term(const Weight& c, const Subset& s, const Rational& x) {
    RVec v = RVec::Zero(rank());
    v(subset_index(n_, s)) = x;
    add(c, v);
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
    if (n_ == 0 && p_ == 0 && terms_.empty()) {
        n_ = o.n_;
        p_ = o.p_;
    }
    for (const auto& [c, v] : o.terms_) add(c, v);
    return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o) {
    if (n_ == 0 && p_ == 0 && terms_.empty()) {
        n_ = o.n_;
        p_ = o.p_;
    }
    for (const auto& [c, v] : o.terms_) add(c, -v);
    return *this;
}

PolyVector& PolyVector::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [c, v] : terms_) v *= s;
    return *this;
}

RVec ray_wedge(const Chart& chart, const Subset& t) {
    const int n = chart.dim();
    const auto& all = subsets(n, static_cast<int>(t.size()));
    RVec v(static_cast<Eigen::Index>(all.size()));
    for (std::size_t k = 0; k < all.size(); ++k) v(static_cast<Eigen::Index>(k)) = Rational(minor(chart.rays, t, all[k]));
    return v;
}

RMat section_basis(const Chart& chart, int p, const Weight& c) {
    const int n = chart.dim();
    const Weight w = chart.chart_exponent(c);
    std::vector<RVec> cols;
    for (const Subset& t : subsets(n, p)) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) {
            if (chart.inverted[static_cast<std::size_t>(b)]) continue;
            const bool in_t = std::binary_search(t.begin(), t.end(), b);
            ok = w[static_cast<std::size_t>(b)] + (in_t ? 1 : 0) >= 0;
        }
        if (ok) cols.push_back(ray_wedge(chart, t));
    }
    RMat m(binomial(n, p), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = cols[k];
    return m;
}

std::map<Subset, QPoly> PolyVector::to_chart_form(const Chart& chart) const {
    // theta_{z_A} = sum_T det(U[A, T]) theta_{x_T}, where U has the coordinate
    // exponents u_b as columns.
    std::vector<Weight> u(static_cast<std::size_t>(n_), Weight(static_cast<std::size_t>(n_), 0));
    for (int b = 0; b < n_; ++b)
        for (int a = 0; a < n_; ++a) u[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = chart.coords[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    const auto& all = subsets(n_, p_);
    std::map<Subset, QPoly> out;
    for (const auto& [c, v] : terms_) {
        const Weight w = chart.chart_exponent(c);
        for (const Subset& t : all) {
            Rational x(0);
            for (std::size_t k = 0; k < all.size(); ++k)
                if (!v(static_cast<Eigen::Index>(k)).is_zero()) x += v(static_cast<Eigen::Index>(k)) * Rational(minor(u, all[k], t));
            if (x.is_zero()) continue;
            Weight e = w;
            for (int b : t) e[static_cast<std::size_t>(b)] += 1;
            auto [it, fresh] = out.emplace(t, QPoly(n_));
            it->second.add_term(e, x);
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

PolyVector PolyVector::from_chart_form(const Chart& chart, int p, const std::map<Subset, QPoly>& form) {
    const int n = chart.dim();
    PolyVector out(n, p);
    for (const auto& [t, f] : form) {
        if (static_cast<int>(t.size()) != p) throw ArityMismatch("polyvector component has the wrong degree");
        const RVec wedge = ray_wedge(chart, t);
        f.for_each([&](const Exponent& e, const Rational& x) {
            Weight w = e;
            for (int b : t) w[static_cast<std::size_t>(b)] -= 1;
            out.add(chart.torus_exponent(w), x * wedge);
        });
    }
    return out;
}

bool PolyVector::regular_on(const Chart& chart) const {
    for (const auto& [c, v] : terms_) {
        RMat basis = section_basis(chart, p_, c);
        if (!solve<Rational>(basis, v)) return false;
    }
    return true;
}

std::string PolyVector::str(const Chart& chart) const {
    std::map<Subset, QPoly> form = to_chart_form(chart);
    if (form.empty()) return "0";
    std::string out;
    for (const auto& [t, f] : form) {
        std::string d;
        for (int b : t) d += "*d(" + chart.vars[static_cast<std::size_t>(b)] + ")";
        std::string coeff = to_string(f, chart.vars);
        if (!out.empty()) out += " + ";
        out += (f.size() > 1 ? "(" + coeff + ")" : coeff) + d;
    }
    return out;
}

PolyVectorSection restrict(const Cover& cover, const PolyVectorSection& s, int target) {
    if (!cover.leq(s.chart, target))
        throw NotComparable("cannot restrict from chart " + cover.chart(s.chart).label + " to " + cover.chart(target).label);
    if (!s.field.regular_on(cover.chart(s.chart)))
        throw IncompatibleData("section is not regular on chart " + cover.chart(s.chart).label);
    return PolyVectorSection{target, s.field};
}

}  // namespace ncdef
