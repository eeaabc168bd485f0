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

#include "ncdef/sample.hpp"

#include <algorithm>

namespace ncdef::sample {

QPoly random_poly(Rng& rng, int n, int max_degree, int max_terms, bool laurent) {
    std::uniform_int_distribution<int> coef(-3, 3), nterms(1, max_terms), deg(0, max_degree);
    QPoly f(n);
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Exponent e(static_cast<std::size_t>(n), 0);
        int budget = deg(rng);
        for (int a = 0; a < n; ++a) {
            std::uniform_int_distribution<int> pick(laurent ? -1 : 0, budget);
            e[static_cast<std::size_t>(a)] = pick(rng);
            budget -= std::max(0, e[static_cast<std::size_t>(a)]);
        }
        f.add_term(e, Rational(coef(rng)));
    }
    return f;
}

std::vector<SlotTerm> random_slot_terms(Rng& rng, int n, int arity, int max_order, int max_degree, int max_terms,
                                        int min_order) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::vector<SlotTerm> out;
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        SlotTerm st{random_poly(rng, n, max_degree, 3), {}};
        for (int s = 0; s < arity; ++s) {
            std::uniform_int_distribution<int> ord(min_order, max_order);
            const int budget = ord(rng);
            Exponent alpha(static_cast<std::size_t>(n), 0);
            for (int r = 0; r < budget; ++r)
                alpha[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, n - 1)(rng))] += 1;
            st.slots.push_back(alpha);
        }
        out.push_back(std::move(st));
    }
    return out;
}

Cochain random_cochain(Rng& rng, int n, int arity, int max_order, int max_degree, int min_order) {
    return Cochain::from_slots(n, arity, random_slot_terms(rng, n, arity, max_order, max_degree, 3, min_order));
}

Cochain random_valid(Rng& rng, const Cover& cover, int i, int j, int arity, int max_order, int max_degree) {
    const int n = cover.dim();
    Cochain raw(n, arity);
    if (arity == 0) {
        raw = Cochain::element(random_poly(rng, n, max_degree, 4, true));
    } else {
        std::vector<SlotTerm> terms;
        std::uniform_int_distribution<int> nterms(2, 5), ord(1, max_order), pick(0, n - 1);
        const int k = nterms(rng);
        for (int t = 0; t < k; ++t) {
            SlotTerm st{random_poly(rng, n, max_degree, 2, true), {}};
            for (int s = 0; s < arity; ++s) {
                Exponent alpha(static_cast<std::size_t>(n), 0);
                const int o = ord(rng);
                for (int r = 0; r < o; ++r) alpha[static_cast<std::size_t>(pick(rng))] += 1;
                st.slots.push_back(alpha);
            }
            terms.push_back(std::move(st));
        }
        raw = Cochain::from_slots(n, arity, terms);
    }
    // Keep the weights that already map A_i into A_j.
    Cochain out(n, arity);
    for (const auto& [w, f] : raw.terms()) {
        Cochain piece(n, arity);
        piece.add(w, f);
        if (chart_valid(cover, piece, i, j)) out += piece;
    }
    return out;
}

JCochain random_j(Rng& rng, const Cover& cover, int kdim, int i, int j, int arity) {
    JCochain v;
    for (int k = 0; k < kdim; ++k) v.push_back(random_valid(rng, cover, i, j, arity));
    return v;
}

ChoiceData random_choice(Rng& rng, const NCDeformation& d, int kdim, bool with_twists) {
    const Cover& cover = d.cover();
    ChoiceData c;
    for (int i = 0; i < cover.size(); ++i) c.b[i] = random_j(rng, cover, kdim, i, i, 2);
    for (const Chain& ch : cover.chains(2)) c.c[ch] = random_j(rng, cover, kdim, ch[0], ch[1], 1);
    if (with_twists && d.mode == Mode::Twisted)
        for (const Chain& ch : cover.chains(3)) c.t[ch] = random_j(rng, cover, kdim, ch[2], ch[2], 0);
    return c;
}

EquivalenceStep random_step(Rng& rng, const Cover& cover, const ArtinAlgebra& r, Mode mode) {
    const int n = cover.dim();
    EquivalenceStep s;
    for (int i = 0; i < cover.size(); ++i) {
        Family e = constant_family(r, Cochain::identity(n));
        for (int a = 1; a < r.dim(); ++a) e[static_cast<std::size_t>(a)] = random_valid(rng, cover, i, i, 1);
        s.epsilon.push_back(std::move(e));
    }
    if (mode == Mode::Twisted)
        for (const Chain& ch : cover.chains(2)) {
            Family u = constant_family(r, Cochain::one(n));
            for (int a = 1; a < r.dim(); ++a) u[static_cast<std::size_t>(a)] = random_valid(rng, cover, ch[1], ch[1], 0);
            s.rho.emplace(ch, std::move(u));
        }
    return s;
}

PolyVector random_bivector(Rng& rng, const Cover& cover, int max_degree) {
    const int n = cover.dim();
    std::map<Subset, QPoly> form;
    for (const Subset& s : subsets(n, 2)) form[s] = random_poly(rng, n, max_degree, 2);
    return PolyVector::from_chart_form(cover.chart(0), 2, form);
}

ArtinAlgebra line(const std::string& name, int order) { return artin_quotient({name}, {}, order); }

NCDeformation random_first_order(Rng& rng, const std::shared_ptr<const Geometry>& g, Mode mode) {
    const Cover& cover = g->cover();
    NCDeformation d = NCDeformation::trivial(g, line("t", 0), mode);
    T1Element el;
    if (cover.dim() >= 2 && cover.size() == 1) el.bivector = random_bivector(rng, cover);
    d = extend(d, small_extension(line("t", 1), line("t", 0)), {el});
    return apply_equivalence(d, random_step(rng, cover, d.base, mode));
}

CandidateLift random_lift(Rng& rng, const std::shared_ptr<const Geometry>& g, Mode mode) {
    NCDeformation d = random_first_order(rng, g, mode);
    SmallExtension e = small_extension(line("t", 2), line("t", 1));
    CandidateLift l = lift_candidate(d, e);
    return transform(l, random_choice(rng, l.data, e.kernel_dim()));
}

NCDeformation moyal(std::shared_ptr<const Geometry> g, const ArtinAlgebra& r) {
    if (g->nvars() != 2 || r.nparams() != 1) throw Unsupported("moyal needs a plane cover and a one-parameter base");
    NCDeformation d = NCDeformation::trivial(g, r, Mode::Untwisted);
    for (int a = 1; a < r.dim(); ++a) {
        const int k = r.basis()[static_cast<std::size_t>(a)][0];
        Rational fact(1);
        for (int x = 2; x <= k; ++x) fact *= Rational(x);
        QPoly c(2);
        c.add_term(Exponent{0, 0}, inverse(fact));
        const Cochain term = Cochain::from_slots(2, 2, {{c, {Exponent{k, 0}, Exponent{0, k}}}});
        for (Family& m : d.mult) m[static_cast<std::size_t>(a)] = term;
    }
    return d;
}

Poset random_poset(Rng& rng, int max_size) {
    std::vector<unsigned> family;
    const int target = std::uniform_int_distribution<int>(1, max_size)(rng);
    for (int guard = 0; guard < 200 && static_cast<int>(family.size()) < target; ++guard) {
        std::vector<unsigned> next = family;
        next.push_back(rng() % 16u);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t a = 0; a < next.size(); ++a)
                for (std::size_t b = 0; b < next.size(); ++b) {
                    const unsigned u = next[a] | next[b];
                    if (std::find(next.begin(), next.end(), u) == next.end()) {
                        next.push_back(u);
                        changed = true;
                    }
                }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (static_cast<int>(next.size()) <= max_size) family = next;
    }
    // Number by (size, value) so that the numbering extends inclusion.
    std::sort(family.begin(), family.end(), [](unsigned a, unsigned b) {
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<std::pair<int, int>> rel;
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = 0; b < family.size(); ++b)
            if (a != b && (family[a] & family[b]) == family[a]) rel.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return Poset(static_cast<int>(family.size()), rel);
}

}  // namespace ncdef::sample
