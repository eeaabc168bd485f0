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


#include "ncdef/cochain.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ncdef/errors.hpp"
#include "ncdef/parallel.hpp"

namespace ncdef {

namespace {

QPoly var(int nv, int k) { return QPoly::variable(nv, k); }

/// f(images) where images may be empty (then f is a constant).
QPoly substitute(const QPoly& f, const std::vector<QPoly>& images, int out_vars) {
    if (images.empty()) return QPoly(out_vars, f.coeff(Exponent{}));
    return f.substitute(images);
}

/// Falling factorial L (L-1) ... (L-k+1).
QPoly falling(const QPoly& l, int k) {
    QPoly out(l.nvars(), Rational(1));
    for (int r = 0; r < k; ++r) out *= l - QPoly(l.nvars(), Rational(r));
    return out;
}

Weight add_weights(Weight a, const Weight& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

/// Stirling numbers of the second kind S(k, j), k, j <= kmax.
const std::vector<std::vector<Rational>>& stirling2(int kmax) {
    static std::mutex mu;
    static std::vector<std::vector<Rational>> table{{Rational(1)}};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= kmax) {
        const std::size_t k = table.size();
        std::vector<Rational> row(k + 1, Rational(0));
        for (std::size_t j = 1; j <= k; ++j) {
            Rational prev_same = j < table[k - 1].size() ? table[k - 1][j] : Rational(0);
            row[j] = Rational(static_cast<long>(j)) * prev_same + table[k - 1][j - 1];
        }
        table.push_back(std::move(row));
    }
    return table;
}

int sign_of(const std::vector<int>& perm) {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

Rational factorial(int p) {
    Rational r(1);
    for (int k = 2; k <= p; ++k) r *= Rational(k);
    return r;
}

}  // namespace

QPoly Cochain::coeff(const Weight& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? QPoly(n_ * p_) : it->second;
}

void Cochain::add(const Weight& c, const QPoly& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = terms_.emplace(c, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Cochain& Cochain::operator+=(const Cochain& o) {
    if (n_ == 0 && terms_.empty()) {
        n_ = o.n_;
        p_ = o.p_;
    }
    if (!o.terms_.empty() && o.p_ != p_) throw ArityMismatch("adding cochains of arity " + std::to_string(p_) + " and " + std::to_string(o.p_));
    for (const auto& [c, f] : o.terms_) add(c, f);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    if (n_ == 0 && terms_.empty()) {
        n_ = o.n_;
        p_ = o.p_;
    }
    if (!o.terms_.empty() && o.p_ != p_) throw ArityMismatch("subtracting cochains of arity " + std::to_string(p_) + " and " + std::to_string(o.p_));
    for (const auto& [c, f] : o.terms_) add(c, -f);
    return *this;
}

Cochain& Cochain::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [c, f] : terms_) f *= s;
    return *this;
}

int Cochain::order() const {
    int d = 0;
    for (const auto& [c, f] : terms_)
        for (int s = 0; s < p_; ++s) d = std::max(d, f.block_degree(s * n_, n_));
    return d;
}

Cochain Cochain::product(int n) {
    Cochain c(n, 2);
    c.add(Weight(static_cast<std::size_t>(n), 0), QPoly(2 * n, Rational(1)));
    return c;
}

Cochain Cochain::identity(int n) {
    Cochain c(n, 1);
    c.add(Weight(static_cast<std::size_t>(n), 0), QPoly(n, Rational(1)));
    return c;
}

Cochain Cochain::one(int n) {
    Cochain c(n, 0);
    c.add(Weight(static_cast<std::size_t>(n), 0), QPoly(0, Rational(1)));
    return c;
}

Cochain Cochain::element(const QPoly& f) {
    Cochain c(f.nvars(), 0);
    f.for_each([&](const Exponent& e, const Rational& x) { c.add(e, QPoly(0, x)); });
    return c;
}

Cochain Cochain::from_slots(int n, int arity, const std::vector<SlotTerm>& terms) {
    Cochain out(n, arity);
    const int nv = n * arity;
    for (const SlotTerm& t : terms) {
        if (static_cast<int>(t.slots.size()) != arity) throw ArityMismatch("slot term has the wrong number of slots");
        QPoly symbol(nv, Rational(1));
        Weight shift(static_cast<std::size_t>(n), 0);
        for (int s = 0; s < arity; ++s)
            for (int a = 0; a < n; ++a) {
                const int k = t.slots[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
                if (k < 0) throw ParseError("negative derivative order");
                symbol *= falling(var(nv, s * n + a), k);
                shift[static_cast<std::size_t>(a)] += k;
            }
        t.coeff.for_each([&](const Exponent& e, const Rational& x) {
            Weight c = e;
            for (int a = 0; a < n; ++a) c[static_cast<std::size_t>(a)] -= shift[static_cast<std::size_t>(a)];
            out.add(c, x * symbol);
        });
    }
    return out;
}

std::vector<SlotTerm> Cochain::to_slots() const {
    const int nv = n_ * p_;
    std::map<std::vector<Exponent>, QPoly> grouped;
    for (const auto& [c, f] : terms_) {
        // Rewrite monomials of F_c in the falling-factorial basis, variable by variable.
        std::map<Exponent, Rational> ff;
        f.for_each([&](const Exponent& e, const Rational& x) {
            std::map<Exponent, Rational> acc{{Exponent(static_cast<std::size_t>(nv), 0), x}};
            for (int v = 0; v < nv; ++v) {
                const int k = e[static_cast<std::size_t>(v)];
                if (k == 0) continue;
                const auto& s2 = stirling2(k);
                std::map<Exponent, Rational> next;
                for (const auto& [g, y] : acc)
                    for (int j = 1; j <= k; ++j) {
                        Exponent h = g;
                        h[static_cast<std::size_t>(v)] = j;
                        next[h] += y * s2[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                    }
                acc = std::move(next);
            }
            for (const auto& [g, y] : acc) ff[g] += y;
        });
        for (const auto& [g, y] : ff) {
            if (y.is_zero()) continue;
            std::vector<Exponent> slots;
            Weight coeff_weight = c;
            for (int s = 0; s < p_; ++s) {
                Exponent alpha(g.begin() + s * n_, g.begin() + (s + 1) * n_);
                for (int a = 0; a < n_; ++a) coeff_weight[static_cast<std::size_t>(a)] += alpha[static_cast<std::size_t>(a)];
                slots.push_back(alpha);
            }
            auto [it, fresh] = grouped.emplace(slots, QPoly(n_));
            it->second.add_term(coeff_weight, y);
        }
    }
    std::vector<SlotTerm> out;
    for (auto& [slots, coeff] : grouped)
        if (!coeff.is_zero()) out.push_back({coeff, slots});
    return out;
}

std::string Cochain::str(const std::vector<std::string>& vars) const {
    std::vector<SlotTerm> ts = to_slots();
    if (ts.empty()) return "0";
    std::string out;
    for (const SlotTerm& t : ts) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(t.coeff, vars) + ")";
        if (p_ == 0) continue;
        out += "*[";
        for (int s = 0; s < p_; ++s) {
            if (s) out += " ; ";
            std::string slot;
            for (int a = 0; a < n_; ++a)
                for (int k = 0; k < t.slots[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]; ++k)
                    slot += (slot.empty() ? "d" : " d") + vars[static_cast<std::size_t>(a)];
            out += slot.empty() ? "1" : slot;
        }
        out += "]";
    }
    return out;
}

QPoly evaluate(const Cochain& c, const std::vector<QPoly>& args) {
    const int n = c.nvars(), p = c.arity();
    if (static_cast<int>(args.size()) != p)
        throw ArityMismatch("cochain of arity " + std::to_string(p) + " applied to " + std::to_string(args.size()) + " arguments");
    QPoly out(n);
    std::vector<std::pair<Exponent, Rational>> chosen;
    std::vector<std::vector<std::pair<Exponent, Rational>>> lists;
    for (const QPoly& a : args) {
        std::vector<std::pair<Exponent, Rational>> l;
        a.for_each([&](const Exponent& e, const Rational& x) { l.emplace_back(e, x); });
        lists.push_back(std::move(l));
    }
    auto rec = [&](auto&& self, std::size_t s) -> void {
        if (s == lists.size()) {
            std::vector<Rational> point;
            Weight total(static_cast<std::size_t>(n), 0);
            Rational scale(1);
            for (const auto& [e, x] : chosen) {
                for (int a = 0; a < n; ++a) point.push_back(Rational(e[static_cast<std::size_t>(a)]));
                total = add_weights(total, e);
                scale *= x;
            }
            for (const auto& [w, f] : c.terms()) {
                Rational v = f.evaluate(point);
                if (!v.is_zero()) out.add_term(add_weights(total, w), scale * v);
            }
            return;
        }
        for (const auto& term : lists[s]) {
            chosen.push_back(term);
            self(self, s + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Cochain coboundary(const Cochain& c) {
    const int n = c.nvars(), p = c.arity();
    const int out_vars = n * (p + 1);
    Cochain out(n, p + 1);
    // images[i] sends the p slots of c to the p+1 slots of the result for the i-th face.
    std::vector<std::vector<QPoly>> images(static_cast<std::size_t>(p + 2));
    for (int face = 0; face <= p + 1; ++face) {
        std::vector<QPoly>& im = images[static_cast<std::size_t>(face)];
        for (int s = 0; s < p; ++s)
            for (int a = 0; a < n; ++a) {
                if (face == 0)
                    im.push_back(var(out_vars, (s + 1) * n + a));
                else if (face == p + 1 || s < face - 1)
                    im.push_back(var(out_vars, s * n + a));
                else if (s == face - 1)
                    im.push_back(var(out_vars, s * n + a) + var(out_vars, (s + 1) * n + a));
                else
                    im.push_back(var(out_vars, (s + 1) * n + a));
            }
    }
    for (const auto& [w, f] : c.terms()) {
        QPoly total(out_vars);
        for (int face = 0; face <= p + 1; ++face) {
            QPoly t = substitute(f, images[static_cast<std::size_t>(face)], out_vars);
            if (face % 2) total -= t;
            else total += t;
        }
        out.add(w, total);
    }
    return out;
}

Cochain compose(const Cochain& outer, int slot, const Cochain& inner) {
    const int n = outer.nvars(), p = outer.arity();
    if (slot < 0 || slot >= p) throw ArityMismatch("composition slot out of range");
    if (inner.nvars() != n && !inner.is_zero()) throw IncompatibleData("composing cochains on different tori");
    const int q = inner.arity();
    const int out_arity = p + q - 1;
    const int out_vars = n * out_arity;
    Cochain out(n, out_arity);
    if (outer.is_zero() || inner.is_zero()) return out;

    std::vector<QPoly> inner_images;
    for (int r = 0; r < q; ++r)
        for (int a = 0; a < n; ++a) inner_images.push_back(var(out_vars, (slot + r) * n + a));

    std::map<Weight, QPoly> inner_moved;
    for (const auto& [w, g] : inner.terms()) inner_moved.emplace(w, substitute(g, inner_images, out_vars));

    for (const auto& [wi, gi] : inner_moved) {
        std::vector<QPoly> im;
        for (int s = 0; s < p; ++s)
            for (int a = 0; a < n; ++a) {
                if (s < slot) {
                    im.push_back(var(out_vars, s * n + a));
                } else if (s == slot) {
                    QPoly sum(out_vars, Rational(wi[static_cast<std::size_t>(a)]));
                    for (int r = 0; r < q; ++r) sum += var(out_vars, (slot + r) * n + a);
                    im.push_back(sum);
                } else {
                    im.push_back(var(out_vars, (s + q - 1) * n + a));
                }
            }
        for (const auto& [wo, fo] : outer.terms()) out.add(add_weights(wo, wi), substitute(fo, im, out_vars) * gi);
    }
    return out;
}

Cochain compose_all(const Cochain& outer, const std::vector<Cochain>& inner) {
    if (static_cast<int>(inner.size()) != outer.arity()) throw ArityMismatch("compose_all needs one inner cochain per slot");
    Cochain out = outer;
    for (int s = outer.arity() - 1; s >= 0; --s) out = compose(out, s, inner[static_cast<std::size_t>(s)]);
    return out;
}

Cochain cup(const Cochain& a, const Cochain& b) {
    const int n = std::max(a.nvars(), b.nvars());
    return compose(compose(Cochain::product(n), 1, b), 0, a);
}

PolyVector hkr_symbol(const Cochain& c, const Chart* chart) {
    const int n = c.nvars(), p = c.arity();
    PolyVector out(n, p);
    if (p == 0) {
        for (const auto& [w, f] : c.terms()) out.add_term(w, {}, f.coeff(Exponent{}));
        return out;
    }
    std::vector<Weight> coords;
    for (int b = 0; b < n; ++b) {
        if (chart) coords.push_back(chart->coords[static_cast<std::size_t>(b)]);
        else {
            Weight e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(b)] = 1;
            coords.push_back(e);
        }
    }
    const auto& subs = subsets(n, p);
    std::vector<RVec> wedges;
    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (chart) wedges.push_back(ray_wedge(*chart, subs[k]));
        else {
            RVec e = RVec::Zero(static_cast<Eigen::Index>(subs.size()));
            e(static_cast<Eigen::Index>(k)) = 1;
            wedges.push_back(e);
        }
    }
    for (const auto& [w, f] : c.terms()) {
        RVec total = RVec::Zero(static_cast<Eigen::Index>(subs.size()));
        for (std::size_t k = 0; k < subs.size(); ++k) {
            std::vector<int> perm(static_cast<std::size_t>(p));
            std::iota(perm.begin(), perm.end(), 0);
            Rational acc(0);
            do {
                std::vector<Rational> point;
                for (int s = 0; s < p; ++s)
                    for (int a = 0; a < n; ++a)
                        point.push_back(Rational(coords[static_cast<std::size_t>(subs[k][static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])])][static_cast<std::size_t>(a)]));
                acc += Rational(sign_of(perm)) * f.evaluate(point);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!acc.is_zero()) total += acc * wedges[k];
        }
        out.add(w, total);
    }
    return out;
}

PolyVector hkr_class(const Cochain& c) {
    if (!coboundary(c).is_zero()) throw NotACocycle("HKR class requested for a cochain that is not closed");
    return hkr_symbol(c);
}

Cochain hkr_inverse(const PolyVector& w) {
    const int n = w.nvars(), p = w.degree();
    Cochain out(n, p);
    if (p == 0) {
        for (const auto& [c, v] : w.terms()) out.add(c, QPoly(0, v(0)));
        return out;
    }
    const int nv = n * p;
    const auto& subs = subsets(n, p);
    const Rational scale = inverse(factorial(p));
    std::vector<QPoly> dets;
    for (const Subset& a : subs) {
        QPoly d(nv);
        std::vector<int> perm(static_cast<std::size_t>(p));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            QPoly t(nv, Rational(sign_of(perm)));
            for (int s = 0; s < p; ++s) t *= var(nv, s * n + a[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])]);
            d += t;
        } while (std::next_permutation(perm.begin(), perm.end()));
        dets.push_back(d * scale);
    }
    for (const auto& [c, v] : w.terms()) {
        QPoly f(nv);
        for (std::size_t k = 0; k < subs.size(); ++k)
            if (!v(static_cast<Eigen::Index>(k)).is_zero()) f += v(static_cast<Eigen::Index>(k)) * dets[k];
        out.add(c, f);
    }
    return out;
}

namespace {

/// F(m) with m_s = U w_s, as a polynomial in the chart exponents w.
QPoly in_chart_exponents(const QPoly& f, const Chart& chart, int p) {
    const int n = chart.dim();
    const int nv = n * p;
    std::vector<QPoly> im;
    for (int s = 0; s < p; ++s)
        for (int a = 0; a < n; ++a) {
            QPoly l(nv);
            for (int b = 0; b < n; ++b) {
                const int u = chart.coords[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
                if (u) l += Rational(u) * var(nv, s * n + b);
            }
            im.push_back(l);
        }
    return substitute(f, im, nv);
}

}  // namespace

bool is_normalized(const Cochain& c) {
    const int n = c.nvars(), p = c.arity();
    bool ok = true;
    for (const auto& [w, f] : c.terms())
        f.for_each([&](const Exponent& e, const Rational&) {
            for (int s = 0; s < p && ok; ++s) {
                int deg = 0;
                for (int a = 0; a < n; ++a) deg += e[static_cast<std::size_t>(s * n + a)];
                if (deg == 0) ok = false;
            }
        });
    return ok;
}

bool chart_valid(const Cover& cover, const Cochain& c, int i, int j) {
    if (!cover.leq(i, j)) throw NotComparable("cochain between incomparable charts");
    const Chart& ci = cover.chart(i);
    const Chart& cj = cover.chart(j);
    const int n = c.nvars(), p = c.arity();
    for (const auto& [w, f] : c.terms()) {
        QPoly g = in_chart_exponents(f, ci, p);
        for (int b = 0; b < n; ++b) {
            if (cj.inverted[static_cast<std::size_t>(b)]) continue;
            int k = 0;
            for (int a = 0; a < n; ++a) k -= w[static_cast<std::size_t>(a)] * cj.rays[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
            if (k <= 0) continue;
            if (p == 0) return false;
            int bi = -1;
            for (int r = 0; r < n; ++r)
                if (!ci.inverted[static_cast<std::size_t>(r)] && ci.rays[static_cast<std::size_t>(r)] == cj.rays[static_cast<std::size_t>(b)]) bi = r;
            if (bi < 0) throw IncompatibleData("chart " + cj.label + " has a boundary ray that " + ci.label + " lacks");
            // Inputs whose b-exponents sum to less than k land outside A_j unless F vanishes.
            std::vector<int> t(static_cast<std::size_t>(p), 0);
            while (true) {
                int sum = std::accumulate(t.begin(), t.end(), 0);
                if (sum < k) {
                    std::vector<QPoly> im;
                    for (int s = 0; s < p; ++s)
                        for (int a = 0; a < n; ++a)
                            im.push_back(a == bi ? QPoly(n * p, Rational(t[static_cast<std::size_t>(s)])) : var(n * p, s * n + a));
                    if (!g.substitute(im).is_zero()) return false;
                }
                int s = p - 1;
                while (s >= 0 && t[static_cast<std::size_t>(s)] >= k - 1) t[static_cast<std::size_t>(s--)] = 0;
                if (s < 0) break;
                ++t[static_cast<std::size_t>(s)];
            }
        }
    }
    return true;
}

QPoly chart_operator_symbol(const Chart& chart, const std::vector<Exponent>& alphas) {
    const int n = chart.dim();
    const int p = static_cast<int>(alphas.size());
    const int nv = n * p;
    QPoly out(nv, Rational(1));
    for (int s = 0; s < p; ++s)
        for (int b = 0; b < n; ++b) {
            const int k = alphas[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
            if (k == 0) continue;
            QPoly l(nv);
            for (int a = 0; a < n; ++a) {
                const int v = chart.rays[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
                if (v) l += Rational(v) * var(nv, s * n + a);
            }
            out *= falling(l, k);
        }
    return out;
}

struct CoboundarySolver::System {
    std::vector<Weight> coeff_weights;        // c' of each unknown (for reporting)
    std::vector<QPoly> symbols;               // F of each unknown at the target weight
    std::map<Exponent, int> rows;             // monomials of the coboundaries
    RMat matrix;                              // rows x unknowns
};

std::shared_ptr<const CoboundarySolver::System> CoboundarySolver::system(int i, int j, int arity, int order,
                                                                       const Weight& c) const {
    auto key = std::make_tuple(i, j, arity, order, c);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const Chart& ci = cover_.chart(i);
    const Chart& cj = cover_.chart(j);
    const int n = cover_.dim();
    auto sys = std::make_shared<System>();

    // Per-slot multi-indices with |alpha| <= order. Order-0 slots are
    // multiplications and are left out in normalised mode.
    std::vector<Exponent> slot_options;
    Exponent cur(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int a, int budget) -> void {
        if (a == n) {
            if (!normalized_ || std::accumulate(cur.begin(), cur.end(), 0) > 0) slot_options.push_back(cur);
            return;
        }
        for (int k = 0; k <= budget; ++k) {
            cur[static_cast<std::size_t>(a)] = k;
            self(self, a + 1, budget - k);
        }
        cur[static_cast<std::size_t>(a)] = 0;
    };
    rec(rec, 0, order);

    std::vector<QPoly> dcols;
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    const std::size_t options = slot_options.size();
    bool done = options == 0 && arity > 0;
    while (!done) {
        std::vector<Exponent> alphas;
        Exponent total(static_cast<std::size_t>(n), 0);
        for (int s = 0; s < arity; ++s) {
            alphas.push_back(slot_options[pick[static_cast<std::size_t>(s)]]);
            for (int b = 0; b < n; ++b) total[static_cast<std::size_t>(b)] += alphas.back()[static_cast<std::size_t>(b)];
        }
        // Coefficient weight c' = c + U * total.
        Weight cp = c;
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) cp[static_cast<std::size_t>(a)] += total[static_cast<std::size_t>(b)] * ci.coords[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
        if (cj.regular(cp)) {
            QPoly sym = arity == 0 ? QPoly(0, Rational(1)) : chart_operator_symbol(ci, alphas);
            Cochain single(n, arity);
            single.add(c, sym);
            QPoly d = coboundary(single).coeff(c);
            d.for_each([&](const Exponent& e, const Rational&) { sys->rows.emplace(e, 0); });
            sys->coeff_weights.push_back(cp);
            sys->symbols.push_back(sym);
            dcols.push_back(d);
        }
        int s = arity - 1;
        while (s >= 0 && pick[static_cast<std::size_t>(s)] + 1 == options) pick[static_cast<std::size_t>(s--)] = 0;
        if (s < 0) break;
        ++pick[static_cast<std::size_t>(s)];
    }
    int r = 0;
    for (auto& [e, idx] : sys->rows) idx = r++;
    sys->matrix = RMat::Zero(r, static_cast<Eigen::Index>(dcols.size()));
    for (std::size_t k = 0; k < dcols.size(); ++k)
        dcols[k].for_each([&](const Exponent& e, const Rational& x) { sys->matrix(sys->rows.at(e), static_cast<Eigen::Index>(k)) = x; });

    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, std::move(sys)).first->second;
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& f, int i, int j, int max_order, SolveStats* stats) const {
    return solve(std::vector<Cochain>{f}, i, j, max_order, stats).front();
}

std::vector<std::optional<Cochain>> CoboundarySolver::solve(const std::vector<Cochain>& fs, int i, int j, int max_order,
                                                            SolveStats* stats) const {
    std::vector<std::optional<Cochain>> out(fs.size());
    if (fs.empty()) return out;
    const int n = cover_.dim();
    const int arity = fs.front().arity();
    if (arity < 1) throw ArityMismatch("solve_coboundary needs a cochain of arity at least 1");
    if (!cover_.leq(i, j)) throw NotComparable("solve_coboundary between incomparable charts");

    std::vector<std::size_t> open;
    int bound = max_order;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (fs[k].arity() != arity) throw ArityMismatch("batched cochains must share an arity");
        if (!coboundary(fs[k]).is_zero()) throw NotACocycle("solve_coboundary needs a cocycle");
        if (!hkr_symbol(fs[k]).is_zero()) continue;
        if (fs[k].is_zero()) {
            out[k] = Cochain(n, arity - 1);
            continue;
        }
        open.push_back(k);
        if (max_order == 0) bound = std::max(bound, std::max(1, fs[k].order()) + 1);
    }
    if (stats) {
        stats->order_bound = bound;
        stats->order_used = 0;
        stats->weights = 0;
    }
    if (open.empty()) return out;
    if (arity == 1) throw IdentityViolation("closed 1-cochain with zero HKR class must vanish");

    std::set<Weight> weight_set;
    for (std::size_t k : open)
        for (const auto& [w, f] : fs[k].terms()) weight_set.insert(w);
    const std::vector<Weight> weights(weight_set.begin(), weight_set.end());

    // Per weight: the primitive pieces for every open right-hand side.
    std::vector<std::vector<QPoly>> pieces(weights.size());
    std::vector<int> used(weights.size(), 0);
    parallel_for(weights.size(), [&](std::size_t wi) {
        const Weight& c = weights[wi];
        for (int order = 1; order <= bound; ++order) {
            auto sys = system(i, j, arity - 1, order, c);
            RMat rhs = RMat::Zero(static_cast<Eigen::Index>(sys->rows.size()), static_cast<Eigen::Index>(open.size()));
            bool representable = true;
            for (std::size_t col = 0; col < open.size() && representable; ++col)
                fs[open[col]].coeff(c).for_each([&](const Exponent& e, const Rational& x) {
                    auto it = sys->rows.find(e);
                    if (it == sys->rows.end()) representable = false;
                    else rhs(it->second, static_cast<Eigen::Index>(col)) = x;
                });
            if (!representable) continue;
            auto sols = solve_columns<Rational>(sys->matrix, rhs);
            if (!std::all_of(sols.begin(), sols.end(), [](const auto& s) { return s.has_value(); })) continue;
            std::vector<QPoly> piece;
            for (const auto& s : sols) {
                QPoly b(n * (arity - 1));
                for (Eigen::Index u = 0; u < s->size(); ++u)
                    if (!(*s)(u).is_zero()) b += (*s)(u) * sys->symbols[static_cast<std::size_t>(u)];
                piece.push_back(std::move(b));
            }
            pieces[wi] = std::move(piece);
            used[wi] = order;
            return;
        }
        throw BoundsTooSmall("no primitive up to differential order " + std::to_string(bound) + " although the HKR class vanishes");
    });

    const Chart& ci = cover_.chart(i);
    for (std::size_t col = 0; col < open.size(); ++col) {
        Cochain b(n, arity - 1);
        for (std::size_t wi = 0; wi < weights.size(); ++wi) b.add(weights[wi], pieces[wi][col]);
        if (b.arity() >= 1) b -= hkr_inverse(hkr_symbol(b, &ci));
        if (coboundary(b) != fs[open[col]]) throw IdentityViolation("primitive does not reproduce the cocycle");
        out[open[col]] = std::move(b);
    }
    if (stats) {
        stats->weights = static_cast<int>(weights.size());
        for (int u : used) stats->order_used = std::max(stats->order_used, u);
    }
    return out;
}

}  // namespace ncdef
