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


#include "ncdef/cover.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <set>

#include "ncdef/errors.hpp"
#include "ncdef/linalg.hpp"

namespace ncdef {

namespace {

int dot(const Weight& a, const Weight& b) {
    int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

std::set<Weight> proper_rays(const Chart& c) {
    std::set<Weight> out;
    for (int b = 0; b < c.dim(); ++b)
        if (!c.inverted[static_cast<std::size_t>(b)]) out.insert(c.rays[static_cast<std::size_t>(b)]);
    return out;
}

}  // namespace

Weight Chart::chart_exponent(const Weight& c) const {
    Weight w(rays.size());
    for (std::size_t b = 0; b < rays.size(); ++b) w[b] = dot(c, rays[b]);
    return w;
}

Weight Chart::torus_exponent(const Weight& w) const {
    Weight c(coords.empty() ? 0 : coords[0].size(), 0);
    for (std::size_t b = 0; b < coords.size(); ++b)
        for (std::size_t a = 0; a < c.size(); ++a) c[a] += w[b] * coords[b][a];
    return c;
}

bool Chart::regular(const Weight& c) const {
    for (std::size_t b = 0; b < rays.size(); ++b)
        if (!inverted[b] && dot(c, rays[b]) < 0) return false;
    return true;
}

Cover::Cover(std::string name, std::vector<std::string> torus_vars, std::vector<Chart> charts,
             std::vector<std::pair<int, int>> relations)
    : name_(std::move(name)), torus_vars_(std::move(torus_vars)), charts_(std::move(charts)) {
    const int n = dim();
    const int m = size();
    if (m == 0) throw IncompatibleData("cover has no charts");
    for (Chart& ch : charts_) {
        if (ch.dim() != n || static_cast<int>(ch.inverted.size()) != n || static_cast<int>(ch.vars.size()) != n)
            throw IncompatibleData("chart " + ch.label + " does not have " + std::to_string(n) + " coordinates");
        RMat u(n, n);
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) u(a, b) = ch.coords[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
        auto inv = solve_columns<Rational>(u, RMat::Identity(n, n));
        ch.rays.assign(static_cast<std::size_t>(n), Weight(static_cast<std::size_t>(n), 0));
        for (int a = 0; a < n; ++a) {
            if (!inv[static_cast<std::size_t>(a)]) throw IncompatibleData("chart " + ch.label + " is not smooth (singular exponent matrix)");
            for (int b = 0; b < n; ++b) {
                const Rational& x = (*inv[static_cast<std::size_t>(a)])(b);
                if (!x.is_integer()) throw IncompatibleData("chart " + ch.label + " is not smooth (exponent matrix not unimodular)");
                ch.rays[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = static_cast<int>(x.num().get_si());
            }
        }
    }

    leq_.assign(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m), false));
    for (int i = 0; i < m; ++i) leq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    for (auto [i, j] : relations) {
        if (i < 0 || j < 0 || i >= m || j >= m) throw IncompatibleData("poset relation out of range");
        leq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    }
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (leq(i, k) && leq(k, j)) leq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && leq(i, j) && leq(j, i)) throw IncompatibleData("poset relation has a cycle");

    join_.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int best = -1;
            for (int k = 0; k < m; ++k) {
                if (!leq(i, k) || !leq(j, k)) continue;
                if (best < 0 || leq(k, best)) best = k;
            }
            if (best < 0) throw IncompatibleData("charts " + std::to_string(i) + " and " + std::to_string(j) + " have no join");
            for (int k = 0; k < m; ++k)
                if (leq(i, k) && leq(j, k) && !leq(best, k))
                    throw IncompatibleData("charts " + std::to_string(i) + " and " + std::to_string(j) + " have no least upper bound");
            join_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = best;
        }

    chains_.assign(static_cast<std::size_t>(m + 2), {});
    std::function<void(Chain&)> grow = [&](Chain& c) {
        chains_[c.size()].push_back(c);
        for (int k = c.back() + 1; k < m; ++k) {
            if (!less(c.back(), k)) continue;
            c.push_back(k);
            grow(c);
            c.pop_back();
        }
    };
    // Chains are increasing in the poset; sort indices topologically first.
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j)
            if (less(i, j)) throw IncompatibleData("chart indices must be a linear extension of the poset (i < j in the poset needs i < j as integers)");
    for (int i = 0; i < m; ++i) {
        Chain c{i};
        grow(c);
    }
    for (auto& level : chains_) std::sort(level.begin(), level.end());
    validate();
}

std::vector<std::pair<int, int>> Cover::relations() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (less(i, j)) out.emplace_back(i, j);
    return out;
}

const std::vector<Chain>& Cover::chains(int len) const {
    static const std::vector<Chain> none;
    if (len < 0 || len >= static_cast<int>(chains_.size())) return none;
    return chains_[static_cast<std::size_t>(len)];
}

QPoly Cover::to_torus(int i, const QPoly& f) const {
    const Chart& ch = chart(i);
    QPoly out(dim());
    f.for_each([&](const Exponent& w, const Rational& c) {
        for (int b = 0; b < ch.dim(); ++b)
            if (w[static_cast<std::size_t>(b)] < 0 && !ch.inverted[static_cast<std::size_t>(b)])
                throw IncompatibleData("negative power of the non-inverted coordinate " + ch.vars[static_cast<std::size_t>(b)]);
        out.add_term(ch.torus_exponent(w), c);
    });
    return out;
}

QPoly Cover::to_chart(int i, const QPoly& f) const {
    const Chart& ch = chart(i);
    QPoly out(ch.dim());
    f.for_each([&](const Exponent& c, const Rational& x) {
        if (!ch.regular(c)) throw IncompatibleData("function is not regular on chart " + ch.label);
        out.add_term(ch.chart_exponent(c), x);
    });
    return out;
}

bool Cover::in_chart(int i, const QPoly& f) const {
    bool ok = true;
    f.for_each([&](const Exponent& c, const Rational&) { ok = ok && chart(i).regular(c); });
    return ok;
}

QPoly Cover::restrict(const QPoly& f, int i, int j) const {
    if (!leq(i, j)) throw NotComparable("restriction needs " + std::to_string(i) + " <= " + std::to_string(j));
    return to_chart(j, to_torus(i, f));
}

void Cover::validate() const {
    const int m = size();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int k = join(i, j);
            if (join(j, i) != k) throw IncompatibleData("join is not commutative");
            if (leq(i, j)) {
                std::set<Weight> ri = proper_rays(chart(i)), rj = proper_rays(chart(j));
                if (!std::includes(ri.begin(), ri.end(), rj.begin(), rj.end()))
                    throw IncompatibleData("chart " + chart(j).label + " is not an open subset of chart " + chart(i).label);
            }
            std::set<Weight> ri = proper_rays(chart(i)), rj = proper_rays(chart(j)), common;
            std::set_intersection(ri.begin(), ri.end(), rj.begin(), rj.end(), std::inserter(common, common.begin()));
            if (proper_rays(chart(k)) != common)
                throw IncompatibleData("intersection of " + chart(i).label + " and " + chart(j).label + " is not chart " +
                                       chart(k).label);
            for (int l = 0; l < m; ++l)
                if (join(join(i, j), l) != join(i, join(j, l))) throw IncompatibleData("join is not associative");
        }
}

namespace {

std::vector<std::string> torus_names(int d, const std::string& stem) {
    static const std::vector<std::string> small{"x", "y", "z"};
    std::vector<std::string> out;
    for (int k = 0; k < d; ++k)
        out.push_back(d <= 3 && stem == "x" ? small[static_cast<std::size_t>(k)] : stem + std::to_string(k + 1));
    return out;
}

Weight unit_weight(int n, int a) {
    Weight w(static_cast<std::size_t>(n), 0);
    if (a >= 0) w[static_cast<std::size_t>(a)] = 1;
    return w;
}

/// Standard cover data of P^n: nonempty subsets S of {0..n} with charts
/// X_a/X_{min S}; torus coordinate z_a = X_a/X_0 (a = 1..n).
struct ProjPiece {
    std::vector<int> subset;
    std::vector<Weight> coords;
    std::vector<bool> inverted;
    std::vector<std::string> vars;
};

std::vector<ProjPiece> proj_pieces(int n, const std::string& stem) {
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
        std::vector<int> s;
        for (int a = 0; a <= n; ++a)
            if (mask & (1 << a)) s.push_back(a);
        subsets.push_back(s);
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<ProjPiece> out;
    for (const auto& s : subsets) {
        ProjPiece p;
        p.subset = s;
        const int s0 = s.front();
        for (int a = 0; a <= n; ++a) {
            if (a == s0) continue;
            Weight w = unit_weight(n, a - 1);
            Weight d = unit_weight(n, s0 - 1);
            for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] -= d[static_cast<std::size_t>(k)];
            p.coords.push_back(w);
            p.inverted.push_back(std::find(s.begin(), s.end(), a) != s.end());
            p.vars.push_back(stem + std::to_string(a) + "_" + std::to_string(s0));
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string subset_label(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
    return out + "}";
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Cover make_affine(int d) {
    Chart ch;
    ch.label = "A" + std::to_string(d);
    ch.vars = torus_names(d, "x");
    for (int a = 0; a < d; ++a) ch.coords.push_back(unit_weight(d, a));
    ch.inverted.assign(static_cast<std::size_t>(d), false);
    return Cover("affine(" + std::to_string(d) + ")", ch.vars, {ch}, {});
}

Cover make_chain(int d) {
    std::vector<Chart> charts;
    std::vector<std::pair<int, int>> rel;
    for (int k = 0; k <= d; ++k) {
        Chart ch;
        ch.id = k;
        ch.label = "U" + std::to_string(k);
        ch.vars = torus_names(d, "x");
        for (int a = 0; a < d; ++a) ch.coords.push_back(unit_weight(d, a));
        for (int a = 0; a < d; ++a) ch.inverted.push_back(a < k);
        charts.push_back(ch);
        if (k > 0) rel.emplace_back(k - 1, k);
    }
    return Cover("chain(" + std::to_string(d) + ")", torus_names(d, "x"), charts, rel);
}

Cover make_proj(int n) {
    std::vector<ProjPiece> pieces = proj_pieces(n, "x");
    std::vector<Chart> charts;
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Chart ch;
        ch.id = static_cast<int>(i);
        ch.label = subset_label(pieces[i].subset);
        ch.vars = pieces[i].vars;
        ch.coords = pieces[i].coords;
        ch.inverted = pieces[i].inverted;
        charts.push_back(ch);
        for (std::size_t j = 0; j < pieces.size(); ++j)
            if (i != j && subset_of(pieces[i].subset, pieces[j].subset)) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    return Cover("proj(" + std::to_string(n) + ")", torus_names(n, "z"), charts, rel);
}

Cover make_product(int a, int b) {
    std::vector<ProjPiece> pa = proj_pieces(a, "x"), pb = proj_pieces(b, "y");
    const int n = a + b;
    std::vector<Chart> charts;
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j) idx.emplace_back(i, j);
    // Order by total subset size so that index order extends the poset order.
    std::stable_sort(idx.begin(), idx.end(), [&](const auto& l, const auto& r) {
        return pa[l.first].subset.size() + pb[l.second].subset.size() <
               pa[r.first].subset.size() + pb[r.second].subset.size();
    });
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const ProjPiece& p = pa[idx[k].first];
        const ProjPiece& q = pb[idx[k].second];
        Chart ch;
        ch.id = static_cast<int>(k);
        ch.label = subset_label(p.subset) + "x" + subset_label(q.subset);
        for (std::size_t c = 0; c < p.coords.size(); ++c) {
            Weight w = p.coords[c];
            w.resize(static_cast<std::size_t>(n), 0);
            ch.coords.push_back(w);
            ch.inverted.push_back(p.inverted[c]);
            ch.vars.push_back(p.vars[c]);
        }
        for (std::size_t c = 0; c < q.coords.size(); ++c) {
            Weight w(static_cast<std::size_t>(a), 0);
            w.insert(w.end(), q.coords[c].begin(), q.coords[c].end());
            ch.coords.push_back(w);
            ch.inverted.push_back(q.inverted[c]);
            ch.vars.push_back(q.vars[c]);
        }
        charts.push_back(ch);
    }
    std::vector<std::pair<int, int>> rel;
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t l = 0; l < idx.size(); ++l)
            if (k != l && subset_of(pa[idx[k].first].subset, pa[idx[l].first].subset) &&
                subset_of(pb[idx[k].second].subset, pb[idx[l].second].subset))
                rel.emplace_back(static_cast<int>(k), static_cast<int>(l));
    std::vector<std::string> names = torus_names(a, "z");
    for (const std::string& s : torus_names(b, "w")) names.push_back(s);
    return Cover("product(proj(" + std::to_string(a) + "),proj(" + std::to_string(b) + "))", names, charts, rel);
}

}  // namespace

Cover builtin_variety(const std::string& raw) {
    std::string name;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) name += ch;
    std::smatch m;
    auto number = [&](const std::string& s) {
        int v = std::stoi(s);
        if (v < 1) throw Unsupported("dimension must be at least 1 in '" + raw + "'");
        if (v > 6) throw Unsupported("dimension above 6 is not supported in '" + raw + "'");
        return v;
    };
    if (std::regex_match(name, m, std::regex(R"(affine\((\d+)\))"))) return make_affine(number(m[1]));
    if (std::regex_match(name, m, std::regex(R"(proj\((\d+)\))"))) return make_proj(number(m[1]));
    if (std::regex_match(name, m, std::regex(R"(chain\((\d+)\))"))) return make_chain(number(m[1]));
    if (std::regex_match(name, m, std::regex(R"(product\(proj\((\d+)\),proj\((\d+)\)\))")))
        return make_product(number(m[1]), number(m[2]));
    throw Unsupported("unknown variety '" + raw + "' (expected affine(d), proj(n), product(proj(a),proj(b)) or chain(d))");
}

}  // namespace ncdef
