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


#include <algorithm>
#include <set>
#include <sstream>

#include "ncdef/deform.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/parallel.hpp"

namespace ncdef {

bool StageClass::is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const CechClass& c) { return c.is_zero(); });
}

int StageClass::rank() const {
    int r = 0;
    for (const CechClass& c : components)
        for (const auto& [w, v] : c.coordinates)
            for (Eigen::Index k = 0; k < v.size(); ++k)
                if (!v(k).is_zero()) ++r;
    return r;
}

std::string ObstructionReport::summary() const {
    std::ostringstream os;
    auto put = [&](const char* name, const std::optional<StageClass>& s) {
        if (!s) return;
        os << name << (s->is_zero() ? " = 0" : " != 0 (" + std::to_string(s->rank()) + " nonzero coordinates)") << "\n";
    };
    put("xi(3,0)", xi30);
    put("xi(2,1)", xi21);
    put("xi(0,3)", xi03);
    put("xi(1,2)", xi12);
    os << (extendible() ? "extendible" : "obstructed at " + stage);
    os << " (primitive order used " << order_used << ", bound " << order_bound << ")";
    return os.str();
}

namespace {

struct Stager {
    const Geometry& geo;
    int n;
    int kdim;
    ObstructionReport& rep;

    // One Čech class per kernel coordinate of the polyvector cochain `parts`.
    StageClass classify(int p, int q, const std::vector<OrderedCochain<PolyVector>>& parts) const {
        StageClass s;
        s.p = p;
        s.q = q;
        s.components.resize(parts.size());
        parallel_for(parts.size(), [&](std::size_t k) {
            if (p > n) {
                if (!parts[k].is_zero()) throw IdentityViolation("nonzero polyvector of degree above the dimension");
                s.components[k].p = p;
                s.components[k].q = q;
                s.components[k].representative = parts[k];
                return;
            }
            try {
                s.components[k] = class_of(geo.cech(p), parts[k]);
            } catch (const NotClosed& e) {
                throw IdentityViolation(std::string("obstruction cochain is not Čech closed: ") + e.what());
            }
        });
        return s;
    }

    std::vector<OrderedCochain<PolyVector>> empty(int p, int q) const {
        return std::vector<OrderedCochain<PolyVector>>(static_cast<std::size_t>(kdim),
                                                       OrderedCochain<PolyVector>(q, PolyVector(n, p)));
    }

    OrderedCochain<PolyVector> primitive(int p, const OrderedCochain<PolyVector>& c) const {
        auto w = is_coboundary(geo.cech(p), c);
        if (!w) throw IdentityViolation("vanishing class without a Čech primitive");
        return *w;
    }

    void solve_into(std::map<int, JCochain>* out_b, std::map<Chain, JCochain>* out_c, const Chain& key,
                    const JCochain& rhs) {
        SolveStats st;
        auto sols = geo.solver().solve(rhs, key.front(), key.back(), 0, &st);
        rep.order_used = std::max(rep.order_used, st.order_used);
        rep.order_bound = std::max(rep.order_bound, st.order_bound);
        JCochain v;
        for (std::size_t k = 0; k < sols.size(); ++k) {
            if (!sols[k]) throw IdentityViolation("vanishing class but a defect has a nonzero HKR symbol");
            v.push_back(*sols[k]);
        }
        if (out_b) (*out_b)[key.front()] = v;
        else (*out_c)[key] = v;
    }
};

void merge(ChoiceData& into, const ChoiceData& c) {
    auto add = [](auto& m, const auto& src) {
        for (const auto& [key, v] : src) {
            auto it = m.find(key);
            if (it == m.end()) {
                m.emplace(key, v);
                continue;
            }
            for (std::size_t k = 0; k < v.size(); ++k) it->second[k] += v[k];
        }
    };
    add(into.b, c.b);
    add(into.c, c.c);
    add(into.t, c.t);
}

bool all_zero(const JCochain& v) {
    return std::all_of(v.begin(), v.end(), [](const Cochain& c) { return c.is_zero(); });
}

void expect(bool ok, const std::string& what) {
    if (!ok) throw IdentityViolation(what);
}

std::string chain_str(const Chain& c) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
    return s + ")";
}

// dh_kji = -g_kj + g_ki - g_ji.
void check_dh(const Defects& d, const Cover& cover, int kdim) {
    for (const Chain& c : cover.chains(3)) {
        const JCochain& h = d.h.at(c);
        for (int k = 0; k < kdim; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            Cochain want = d.g.at({c[0], c[2]})[kk] - d.g.at({c[1], c[2]})[kk] - d.g.at({c[0], c[1]})[kk];
            expect(coboundary(h[kk]) == want, "dh = -g_kj + g_ki - g_ji fails on " + chain_str(c));
        }
    }
}

// h_kji - h_lji + h_lki - h_lkj = 0.
void check_h_cocycle(const Defects& d, const Cover& cover, int kdim) {
    for (const Chain& c : cover.chains(4))
        for (int k = 0; k < kdim; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            Cochain s = d.h.at({c[0], c[1], c[2]})[kk] - d.h.at({c[0], c[1], c[3]})[kk] +
                        d.h.at({c[0], c[2], c[3]})[kk] - d.h.at({c[1], c[2], c[3]})[kk];
            expect(s.is_zero(), "alternating sum of h fails on " + chain_str(c));
        }
}

// phi(sigma_lkji) - sigma_mkji + sigma_mlji - sigma_mlki + sigma_mlkj = 0.
void check_sigma_cocycle(const Defects& d, const Cover& cover, int kdim) {
    for (const Chain& c : cover.chains(5))
        for (int k = 0; k < kdim; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            auto at = [&](int a, int b, int x, int y) { return d.sigma.at({c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(b)], c[static_cast<std::size_t>(x)], c[static_cast<std::size_t>(y)]})[kk]; };
            Cochain s = at(0, 1, 2, 3) - at(0, 1, 2, 4) + at(0, 1, 3, 4) - at(0, 2, 3, 4) + at(1, 2, 3, 4);
            expect(s.is_zero(), "five-term identity for sigma fails on " + chain_str(c));
        }
}

}  // namespace

Analysis analyze(const CandidateLift& input) {
    const NCDeformation& d0 = input.data;
    const Geometry& geo = *d0.geometry;
    const Cover& cover = geo.cover();
    const int n = cover.dim();
    const int kdim = input.extension.kernel_dim();
    const bool twisted = d0.mode == Mode::Twisted;

    Analysis out;
    ObstructionReport& rep = out.report;
    rep.mode = d0.mode;
    Stager st{geo, n, kdim, rep};
    CandidateLift l = input;

    Defects cur = all_defects(l);
    rep.defects = cur;
    for (const auto& [i, f] : cur.f)
        for (const Cochain& c : f) expect(coboundary(c).is_zero(), "df != 0 on chart " + std::to_string(i));
    for (const auto& [c, g] : cur.g)
        for (int k = 0; k < kdim; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            expect(coboundary(g[kk]) == cur.f.at(c[1])[kk] - cur.f.at(c[0])[kk], "dg != f_j - f_i on " + chain_str(c));
        }
    if (!twisted) check_h_cocycle(cur, cover, kdim);

    // Associativity.
    {
        auto parts = st.empty(3, 0);
        for (const auto& [i, f] : cur.f)
            for (int k = 0; k < kdim; ++k) parts[static_cast<std::size_t>(k)].add({i}, hkr_class(f[static_cast<std::size_t>(k)]));
        rep.xi30 = st.classify(3, 0, parts);
        if (!rep.xi30->is_zero()) {
            rep.stage = "xi(3,0)";
            return out;
        }
        ChoiceData fix;
        for (const auto& [i, f] : cur.f)
            if (!all_zero(f)) st.solve_into(&fix.b, nullptr, {i}, f);
        l = transform(l, fix);
        merge(rep.repairs, fix);
        cur = all_defects(l);
        for (const auto& [i, f] : cur.f) expect(all_zero(f), "associativity repair failed on chart " + std::to_string(i));
        check_dh(cur, cover, kdim);
    }

    // Multiplicativity of the gluings.
    {
        auto parts = st.empty(2, 1);
        for (const auto& [c, g] : cur.g)
            for (int k = 0; k < kdim; ++k) parts[static_cast<std::size_t>(k)].add(c, hkr_class(g[static_cast<std::size_t>(k)]));
        rep.xi21 = st.classify(2, 1, parts);
        if (!rep.xi21->is_zero()) {
            rep.stage = "xi(2,1)";
            return out;
        }
        ChoiceData fix;
        for (int i = 0; i < cover.size(); ++i) fix.b[i] = JCochain(static_cast<std::size_t>(kdim), Cochain(n, 2));
        for (int k = 0; k < kdim; ++k) {
            if (parts[static_cast<std::size_t>(k)].is_zero()) continue;
            OrderedCochain<PolyVector> w = st.primitive(2, parts[static_cast<std::size_t>(k)]);
            for (int i = 0; i < cover.size(); ++i) fix.b[i][static_cast<std::size_t>(k)] = hkr_inverse(-w.at({i}));
        }
        for (const auto& [c, g] : cur.g) {
            JCochain rhs = g;
            for (int k = 0; k < kdim; ++k) {
                const auto kk = static_cast<std::size_t>(k);
                rhs[kk] += fix.b[c[0]][kk] - fix.b[c[1]][kk];
            }
            if (!all_zero(rhs)) st.solve_into(nullptr, &fix.c, c, rhs);
        }
        l = transform(l, fix);
        merge(rep.repairs, fix);
        cur = all_defects(l);
        for (const auto& [c, g] : cur.g) expect(all_zero(g), "multiplicativity repair failed on " + chain_str(c));
        for (const auto& [i, f] : cur.f) expect(all_zero(f), "multiplicativity repair broke associativity");
        if (twisted) check_sigma_cocycle(cur, cover, kdim);
        else check_h_cocycle(cur, cover, kdim);
    }

    // Twist compatibility.
    if (twisted) {
        auto parts = st.empty(0, 3);
        for (const auto& [c, s] : cur.sigma)
            for (int k = 0; k < kdim; ++k) parts[static_cast<std::size_t>(k)].add(c, hkr_class(s[static_cast<std::size_t>(k)]));
        rep.xi03 = st.classify(0, 3, parts);
        if (!rep.xi03->is_zero()) {
            rep.stage = "xi(0,3)";
            return out;
        }
        ChoiceData fix;
        for (int k = 0; k < kdim; ++k) {
            if (parts[static_cast<std::size_t>(k)].is_zero()) continue;
            OrderedCochain<PolyVector> u = st.primitive(0, parts[static_cast<std::size_t>(k)]);
            for (const Chain& c : cover.chains(3)) {
                auto& slot = fix.t[c];
                if (slot.empty()) slot.assign(static_cast<std::size_t>(kdim), Cochain(n, 0));
                slot[static_cast<std::size_t>(k)] = hkr_inverse(u.at(c));
            }
        }
        l = transform(l, fix);
        merge(rep.repairs, fix);
        cur = all_defects(l);
        for (const auto& [c, s] : cur.sigma) expect(all_zero(s), "twist repair failed on " + chain_str(c));
        check_h_cocycle(cur, cover, kdim);
    }

    // Transitivity.
    {
        for (const auto& [c, h] : cur.h)
            for (const Cochain& x : h) expect(coboundary(x).is_zero(), "h is not a derivation on " + chain_str(c));
        auto parts = st.empty(1, 2);
        for (const auto& [c, h] : cur.h)
            for (int k = 0; k < kdim; ++k) parts[static_cast<std::size_t>(k)].add(c, hkr_class(h[static_cast<std::size_t>(k)]));
        rep.xi12 = st.classify(1, 2, parts);
        if (!rep.xi12->is_zero()) {
            rep.stage = "xi(1,2)";
            return out;
        }
        ChoiceData fix;
        for (int k = 0; k < kdim; ++k) {
            if (parts[static_cast<std::size_t>(k)].is_zero()) continue;
            OrderedCochain<PolyVector> w = st.primitive(1, parts[static_cast<std::size_t>(k)]);
            for (const Chain& c : cover.chains(2)) {
                auto& slot = fix.c[c];
                if (slot.empty()) slot.assign(static_cast<std::size_t>(kdim), Cochain(n, 1));
                slot[static_cast<std::size_t>(k)] = hkr_inverse(-w.at(c));
            }
        }
        l = transform(l, fix);
        merge(rep.repairs, fix);
        cur = all_defects(l);
        for (const auto& [c, h] : cur.h) expect(all_zero(h), "transitivity repair failed on " + chain_str(c));
        for (const auto& [c, g] : cur.g) expect(all_zero(g), "transitivity repair broke multiplicativity");
    }

    out.repaired = std::move(l);
    return out;
}

ObstructionReport obstructions(const CandidateLift& l) { return analyze(l).report; }

ChoiceData choice_data(const Geometry& geo, Mode mode, const T1Choice& choice, int kernel_dim) {
    ChoiceData out;
    if (choice.empty()) return out;
    if (static_cast<int>(choice.size()) != kernel_dim)
        throw ArityMismatch("T^1 choice needs one element per kernel basis vector");
    const Cover& cover = geo.cover();
    const int n = cover.dim();
    const auto kd = static_cast<std::size_t>(kernel_dim);
    for (std::size_t k = 0; k < kd; ++k) {
        const T1Element& el = choice[k];
        if (el.bivector && !el.bivector->is_zero()) {
            if (el.bivector->degree() != 2) throw ArityMismatch("T^1 bivector part must have degree 2");
            Cochain b = hkr_inverse(*el.bivector);
            for (int i = 0; i < cover.size(); ++i) {
                if (!el.bivector->regular_on(cover.chart(i))) throw IncompatibleData("bivector is not regular on chart " + cover.chart(i).label);
                auto& slot = out.b[i];
                if (slot.empty()) slot.assign(kd, Cochain(n, 2));
                slot[k] += b;
            }
        }
        if (el.vector_cocycle && !el.vector_cocycle->is_zero()) {
            if (el.vector_cocycle->degree != 1) throw ArityMismatch("T^1 vector part must be a Čech 1-cochain");
            check_closed(geo.poset(), *el.vector_cocycle);
            for (const auto& [c, v] : el.vector_cocycle->values) {
                if (!v.regular_on(cover.chart(c.back()))) throw IncompatibleData("vector field is not regular on its chart");
                auto& slot = out.c[c];
                if (slot.empty()) slot.assign(kd, Cochain(n, 1));
                slot[k] += hkr_inverse(v);
            }
        }
        if (el.twist_cocycle && !el.twist_cocycle->is_zero()) {
            if (mode != Mode::Twisted) throw Unsupported("twist part of a T^1 choice needs twisted mode");
            if (el.twist_cocycle->degree != 2) throw ArityMismatch("T^1 twist part must be a Čech 2-cochain");
            check_closed(geo.poset(), *el.twist_cocycle);
            for (const auto& [c, v] : el.twist_cocycle->values) {
                if (!v.regular_on(cover.chart(c.back()))) throw IncompatibleData("twist function is not regular on its chart");
                auto& slot = out.t[c];
                if (slot.empty()) slot.assign(kd, Cochain(n, 0));
                slot[k] += hkr_inverse(v);
            }
        }
    }
    return out;
}

NCDeformation extend(const NCDeformation& d, const SmallExtension& e, const T1Choice& choice) {
    Analysis a = analyze(lift_candidate(d, e));
    if (!a.report.extendible())
        throw Obstructed("obstruction class " + a.report.stage + " does not vanish", std::move(a.report));
    CandidateLift l = transform(*a.repaired, choice_data(*d.geometry, d.mode, choice, e.kernel_dim()));
    return std::move(l.data);
}

namespace {

int slice_degree(const Cover& cover, const Weight& c, int p) {
    Weight e = cover.chart(0).chart_exponent(c);
    int s = p;
    for (int x : e) s += x;
    return s;
}

int witness_degree(const Cover& cover, const PVCochain& w, int p) {
    for (const auto& [chain, pv] : w)
        if (!pv.is_zero()) return slice_degree(cover, pv.terms().begin()->first, p);
    return 0;
}

CohomologyResult cohomology_for(const Geometry& g, int p, std::optional<int> max_degree,
                                std::optional<int> window = std::nullopt) {
    CohomologyOptions opt;
    opt.window = window;
    if (max_degree) {
        opt.slice = true;
        if (!opt.window) opt.window = std::max(1, *max_degree + g.nvars() + 1);
    }
    try {
        return sheaf_cohomology(g.cover(), p, opt);
    } catch (const WindowTooSmall& e) {
        throw InfiniteDimensional(std::string("cohomology is not finite-dimensional on this cover; choose a degree slice (") +
                                  e.what() + ")");
    }
}

}  // namespace

T1Element T1Basis::element(const std::vector<Rational>& coords) const {
    if (static_cast<int>(coords.size()) != dim()) throw ArityMismatch("T^1 coordinates have the wrong length");
    T1Element el;
    std::size_t k = 0;
    for (const PolyVector& b : bivectors) {
        if (!coords[k].is_zero()) {
            if (!el.bivector) el.bivector = PolyVector(b.nvars(), 2);
            *el.bivector += coords[k] * b;
        }
        ++k;
    }
    auto fold = [&](const std::vector<OrderedCochain<PolyVector>>& basis, std::optional<OrderedCochain<PolyVector>>& slot) {
        for (const auto& v : basis) {
            if (!coords[k].is_zero()) {
                if (!slot) slot = OrderedCochain<PolyVector>(v.degree, v.zero);
                for (const auto& [c, x] : v.values) slot->add(c, coords[k] * x);
            }
            ++k;
        }
    };
    fold(vector_classes, el.vector_cocycle);
    fold(twist_classes, el.twist_cocycle);
    return el;
}

T1Basis t1_basis(const Geometry& g, Mode mode, std::optional<int> max_degree) {
    const Cover& cover = g.cover();
    const int n = cover.dim();
    T1Basis out;
    auto keep = [&](const PVCochain& w, int p) { return !max_degree || witness_degree(cover, w, p) <= *max_degree; };
    if (n >= 2) {
        CohomologyResult r = cohomology_for(g, 2, max_degree);
        for (const PVCochain& w : r.witnesses[0]) {
            if (!keep(w, 2)) continue;
            for (const auto& [chain, pv] : w)
                if (!pv.is_zero()) {
                    out.bivectors.push_back(pv);
                    break;
                }
        }
    }
    {
        CohomologyResult r = cohomology_for(g, 1, max_degree);
        for (const PVCochain& w : r.witnesses[1])
            if (keep(w, 1)) out.vector_classes.push_back(from_pv(w, n, 1, 1));
    }
    if (mode == Mode::Twisted) {
        CohomologyResult r = cohomology_for(g, 0, max_degree);
        for (const PVCochain& w : r.witnesses[2])
            if (keep(w, 0)) out.twist_classes.push_back(from_pv(w, n, 0, 2));
    }
    return out;
}

std::map<std::pair<int, int>, int> tangent_obstruction_dims(const Geometry& g, Mode mode, std::optional<int> max_degree) {
    const Cover& cover = g.cover();
    const int n = cover.dim();
    std::vector<std::pair<int, int>> wanted = {{2, 0}, {1, 1}, {3, 0}, {2, 1}, {1, 2}};
    if (mode == Mode::Twisted) {
        wanted.push_back({0, 2});
        wanted.push_back({0, 3});
    }
    std::map<std::pair<int, int>, int> out;
    std::map<int, CohomologyResult> cache;
    for (auto [p, q] : wanted) {
        out[{p, q}] = 0;
        if (p > n) continue;
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, cohomology_for(g, p, max_degree)).first;
        for (const auto& [c, h] : it->second.pieces)
            if (!max_degree || slice_degree(cover, c, p) <= *max_degree) out[{p, q}] += h[static_cast<std::size_t>(q)];
    }
    return out;
}

std::map<std::pair<int, int>, int> cohomology_table(const Geometry& g, std::optional<int> max_degree,
                                                     std::optional<int> window) {
    const Cover& cover = g.cover();
    std::map<std::pair<int, int>, int> out;
    for (int p = 0; p <= std::min(3, cover.dim()); ++p) {
        const CohomologyResult r = cohomology_for(g, p, max_degree, window);
        for (int q = 0; q <= 3; ++q) out[{p, q}] = 0;
        for (const auto& [c, h] : r.pieces)
            if (!max_degree || slice_degree(cover, c, p) <= *max_degree)
                for (int q = 0; q <= 3; ++q) out[{p, q}] += h[static_cast<std::size_t>(q)];
    }
    return out;
}

}  // namespace ncdef
