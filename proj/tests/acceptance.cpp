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

// Acceptance runner: one timed pass/fail line per criterion. Pass criterion
// numbers as arguments to run a subset.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "ncdef/deform.hpp"
#include "ncdef/io.hpp"
#include "ncdef/sample.hpp"
#include "ncdef/verify.hpp"
#include "oracle_cech.hpp"
#include "random_data.hpp"

using namespace ncdef;
using sample::line;
using sample::Rng;

namespace {

// Collects the first failure message; an empty string means success.
struct Outcome {
    std::string error;
    std::string note;
    void require(bool ok, const std::string& what) {
        if (!ok && error.empty()) error = what;
    }
};

std::string suite_outcome(const std::string& name, std::uint32_t seed, Outcome& out) {
    verify::Options o;
    o.seed = seed;
    const verify::SuiteResult r = verify::run_suite(name, o);
    std::ostringstream os;
    os << r.instances << " instances, " << r.checks << " checks";
    if (!r.passed()) {
        const auto& f = r.failures.front();
        out.require(false, f.identity + " at " + f.where + " " + f.detail);
    }
    return os.str();
}

std::shared_ptr<const Geometry> geometry(const std::string& name) { return Geometry::make(builtin_variety(name)); }

// 1. d o d = 0 and hkr_class o d = 0.
Outcome hochschild() {
    Outcome out;
    out.note = suite_outcome("hochschild", 1, out);
    return out;
}

// 2. Defect identities and their twisted variants.
Outcome defect_identities() {
    Outcome out;
    out.note = suite_outcome("lemma-df", 2, out);
    return out;
}

// 3. S_n extension of ordered cocycles.
Outcome sn_extension() {
    Outcome out;
    out.note = suite_outcome("sn-extension", 3, out);
    return out;
}

// 4. Cohomology tables, pipeline against the standard-cover oracle.
Outcome cohomology() {
    Outcome out;
    struct Case {
        const char* name;
        oracle::Product x;
        int t1;
        int t2;
    };
    for (const Case& c : {Case{"proj(1)", {{1}}, 0, 0}, Case{"proj(2)", {{2}}, 10, 0},
                          Case{"product(proj(1),proj(1))", {{1, 1}}, 9, 0}}) {
        auto g = geometry(c.name);
        const auto table = cohomology_table(*g);
        const int n = g->nvars();
        for (int p = 0; p <= std::min(3, n); ++p) {
            const std::vector<int> ref = oracle::total_dims(c.x, p, 4, 3);
            for (int q = 0; q <= 3; ++q)
                out.require(table.at({p, q}) == ref[static_cast<std::size_t>(q)],
                            std::string(c.name) + ": pipeline and oracle disagree on h^" + std::to_string(q) + "(wedge^" +
                                std::to_string(p) + " T)");
        }
        for (Mode mode : {Mode::Untwisted, Mode::Twisted}) {
            const auto dims = tangent_obstruction_dims(*g, mode);
            int t1 = dims.at({2, 0}) + dims.at({1, 1}), t2 = dims.at({3, 0}) + dims.at({2, 1}) + dims.at({1, 2});
            if (mode == Mode::Twisted) {
                t1 += dims.at({0, 2});
                t2 += dims.at({0, 3});
            }
            out.require(t1 == c.t1 && t2 == c.t2, std::string(c.name) + " (" + to_string(mode) + "): T1 = " +
                                                      std::to_string(t1) + ", T2 = " + std::to_string(t2));
        }
        if (std::string(c.name) == "proj(1)")
            out.require(table.at({1, 0}) == 3 && table.at({1, 1}) == 0, "proj(1): h0(T) = 3 and h1(T) = 0 expected");
    }
    return out;
}

// Star product of a family over k[t]/t^{N} on polynomial arguments given by
// their t-coefficients.
std::vector<QPoly> star(const ArtinAlgebra& r, const Family& mult, const std::vector<QPoly>& u, const std::vector<QPoly>& v) {
    std::vector<QPoly> w(static_cast<std::size_t>(r.dim()), QPoly(2));
    for (int a = 0; a < r.dim(); ++a)
        for (int b = 0; b < r.dim(); ++b) {
            if (u[static_cast<std::size_t>(a)].is_zero() || v[static_cast<std::size_t>(b)].is_zero()) continue;
            for (const auto& [ab, x] : r.product_terms(a, b))
                for (int c = 0; c < r.dim(); ++c) {
                    if (mult[static_cast<std::size_t>(c)].is_zero()) continue;
                    const QPoly val = evaluate(mult[static_cast<std::size_t>(c)], {u[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]});
                    for (const auto& [k, y] : r.product_terms(ab, c)) w[static_cast<std::size_t>(k)] += (x * y) * val;
                }
        }
    return w;
}

// 5. Moyal product by iterated extension.
Outcome moyal() {
    Outcome out;
    Rng rng(5);
    auto g = geometry("affine(2)");
    NCDeformation d = NCDeformation::trivial(g, line("t", 1), Mode::Untwisted);
    d.mult[0][1] = Cochain::from_slots(2, 2, {{QPoly(2, Rational(1)), {Exponent{1, 0}, Exponent{0, 1}}}});
    out.require(check_validity(d).ok(), "seed d_x (x) d_y is not a valid first-order deformation");
    std::vector<NCDeformation> stages = {d};
    for (int order = 2; order <= 3; ++order) {
        d = extend(d, small_extension(line("t", order), line("t", order - 1)));
        stages.push_back(d);
    }
    const ValidityReport v = check_validity(d);
    out.require(v.ok(), "extension to k[t]/t^4 is not a valid deformation: " + (v.ok() ? "" : v.failures.front()));

    // Associativity by expansion on random polynomials.
    const ArtinAlgebra& r = d.base;
    auto lift_poly = [&](const QPoly& f) {
        std::vector<QPoly> u(static_cast<std::size_t>(r.dim()), QPoly(2));
        u[0] = f;
        return u;
    };
    for (int trial = 0; trial < 5; ++trial) {
        auto f = lift_poly(sample::random_poly(rng, 2, 4, 3)), h = lift_poly(sample::random_poly(rng, 2, 4, 3)),
             k = lift_poly(sample::random_poly(rng, 2, 4, 3));
        out.require(star(r, d.mult[0], star(r, d.mult[0], f, h), k) == star(r, d.mult[0], f, star(r, d.mult[0], h, k)),
                    "star product is not associative mod t^4 on a random triple");
    }

    for (int n = 1; n <= 3; ++n) {
        const NCDeformation& mine = stages[static_cast<std::size_t>(n - 1)];
        const NCDeformation ref = sample::moyal(g, line("t", n));
        // The reference expands as sum_m t^m/m! d_x^m f d_y^m g.
        for (int trial = 0; trial < 3; ++trial) {
            const QPoly f = sample::random_poly(rng, 2, 4, 3), h = sample::random_poly(rng, 2, 4, 3);
            const auto w = star(ref.base, ref.mult[0], lift_poly(f), lift_poly(h));
            Rational fact(1);
            for (int m = 0; m <= n; ++m) {
                if (m > 0) fact *= Rational(m);
                const QPoly want = inverse(fact) * (testdata::apply_derivatives(f, {m, 0}) * testdata::apply_derivatives(h, {0, m}));
                out.require(w[static_cast<std::size_t>(m)] == want, "reference Moyal product has the wrong t^" + std::to_string(m) + " term");
            }
        }
        const auto eq = equivalent(mine, ref);
        out.require(eq.has_value(), "order " + std::to_string(n) + " extension is not equivalent to the Moyal product");
        if (eq) out.require(apply(mine, *eq) == ref, "equivalence at order " + std::to_string(n) + " does not carry it to the Moyal product");
    }
    out.note = "orders 1..3 equivalent to t^n/n! d_x^n (x) d_y^n";
    return out;
}

// 6. Extensions over k[t]/t^2 are a torsor over the rank-3 slice.
Outcome torsor() {
    Outcome out;
    Rng rng(6);
    auto g = geometry("affine(2)");
    const T1Basis basis = t1_basis(*g, Mode::Untwisted, 1);
    out.require(basis.dim() == 3, "slice rank is " + std::to_string(basis.dim()) + ", expected 3");
    if (!out.error.empty()) return out;
    const NCDeformation base = NCDeformation::trivial(g, line("t", 0), Mode::Untwisted);
    const SmallExtension e = small_extension(line("t", 1), line("t", 0));
    std::vector<std::vector<Rational>> vectors;
    for (int mask = 0; mask < 8; ++mask) vectors.push_back({mask & 1, (mask >> 1) & 1, (mask >> 2) & 1});
    std::vector<NCDeformation> ext;
    for (const auto& v : vectors) ext.push_back(extend(base, e, {basis.element(v)}));
    int pairs = 0;
    for (std::size_t a = 0; a < ext.size(); ++a)
        for (std::size_t b = a + 1; b < ext.size(); ++b, ++pairs)
            out.require(!equivalent(ext[a], ext[b]).has_value(), "distinct slice vectors gave equivalent extensions");
    for (std::size_t a = 0; a < ext.size(); ++a) {
        // Same vector, different lift: transport by a random gauge.
        const NCDeformation other = apply_equivalence(ext[a], sample::random_step(rng, g->cover(), ext[a].base, Mode::Untwisted));
        const auto eq = equivalent(other, ext[a]);
        out.require(eq && apply(other, *eq) == ext[a], "equal slice vectors gave inequivalent extensions");
    }
    out.note = std::to_string(pairs) + " inequivalent pairs, 8 self-equivalences";
    return out;
}

// 7. Functoriality of the obstruction classes on random diagrams.
Outcome functoriality() {
    Outcome out;
    Rng rng(7);
    auto g = geometry("affine(3)");
    std::uniform_int_distribution<int> coef(-2, 2), pick(0, 2);
    int nonzero = 0;
    const SmallExtension e = small_extension(line("t", 2), line("t", 1));
    const std::vector<ArtinAlgebra> targets = {artin_quotient({"s", "u"}, {}, 2), line("w", 2),
                                               artin_quotient({"s", "u"}, {parse_poly("s*u", {"s", "u"})}, 2)};
    for (int trial = 0; trial < 20; ++trial) {
        // Moyal-type first-order data: constant and linear bivectors.
        std::map<Subset, QPoly> form;
        const std::vector<std::string> vars = {"x", "y", "z"};
        form[{0, 1}] = QPoly(3, Rational(coef(rng)));
        form[{1, 2}] = QPoly(3, Rational(coef(rng))) + Rational(coef(rng)) * parse_poly("y", vars);
        form[{0, 2}] = Rational(coef(rng)) * parse_poly("x", vars);
        T1Element el;
        el.bivector = PolyVector::from_chart_form(g->cover().chart(0), 2, form);
        const NCDeformation d = extend(NCDeformation::trivial(g, line("t", 0), Mode::Untwisted),
                                       small_extension(line("t", 1), line("t", 0)), {el});

        const ArtinAlgebra& r1p = targets[static_cast<std::size_t>(pick(rng))];
        const SmallExtension e1 = small_extension(r1p, truncate(r1p, 1));
        QPoly img(r1p.nparams());
        for (int a = 0; a < r1p.dim(); ++a)
            if (a > 0) img.add_term(r1p.basis()[static_cast<std::size_t>(a)], Rational(coef(rng)));
        const AlgebraMap beta(e.source(), r1p, {img});
        const std::string msg = functoriality_check(d, e, e1, beta);
        out.require(msg.empty(), "diagram " + std::to_string(trial) + ": " + msg);
        const ObstructionReport rep = obstructions(lift_candidate(d, e));
        if (!rep.extendible() && !kernel_map(e, e1, beta).isZero()) ++nonzero;
    }
    out.note = "20 diagrams, " + std::to_string(nonzero) + " with a nonzero class and nonzero beta_J";
    return out;
}

// Generators of a random monomial ideal containing no constants.
std::vector<QPoly> random_monomial_ideal(Rng& rng, int n, int order) {
    std::uniform_int_distribution<int> count(1, 3), deg(1, order + 1), var(0, n - 1);
    std::vector<QPoly> gens;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        Exponent e(static_cast<std::size_t>(n), 0);
        const int d = deg(rng);
        for (int s = 0; s < d; ++s) e[static_cast<std::size_t>(var(rng))] += 1;
        gens.push_back(QPoly::monomial(e));
    }
    return gens;
}

// 8. Gluing over fiber products and the fiber product of monomial quotients.
Outcome gluing() {
    Outcome out;
    auto g = geometry("affine(2)");
    const std::vector<std::string> params = {"s", "t"};
    const ArtinAlgebra r1 = embed(line("t", 1), params), r2 = embed(line("s", 1), params);
    NCDeformation d1 = NCDeformation::trivial(g, r1, Mode::Untwisted);
    for (int a = 0; a < r1.dim(); ++a)
        if (r1.basis()[static_cast<std::size_t>(a)] == Exponent{0, 1})
            d1.mult[0][static_cast<std::size_t>(a)] = Cochain::from_slots(2, 2, {{QPoly(2, Rational(1)), {Exponent{1, 0}, Exponent{0, 1}}}});
    out.require(check_validity(d1).ok(), "Moyal input over k[t]/t^2 is invalid");
    const NCDeformation d2 = NCDeformation::trivial(g, r2, Mode::Untwisted);
    const Glued gl = glue(d1, d2);
    out.require(gl.ring.algebra.dim() == 3, "k[t]/t^2 x_k k[s]/s^2 should have dimension 3");
    out.require(check_validity(gl.deformation).ok(), "glued deformation is invalid");
    out.require(pushforward(gl.deformation, gl.ring.to_first) == d1, "glued deformation does not truncate to the Moyal input");
    out.require(pushforward(gl.deformation, gl.ring.to_second) == d2, "glued deformation does not truncate to the trivial input");

    Rng rng(8);
    std::uniform_int_distribution<int> nvars(1, 3), ord(1, 5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = nvars(rng), order = ord(rng);
        std::vector<std::string> p;
        for (int a = 0; a < n; ++a) p.push_back("t" + std::to_string(a + 1));
        const auto i1 = random_monomial_ideal(rng, n, order), i2 = random_monomial_ideal(rng, n, order);
        const ArtinAlgebra a1 = artin_quotient(p, i1, order), a2 = artin_quotient(p, i2, order);
        const FiberProduct fp = fiber_product(a1, a2);
        const std::string at = "instance " + std::to_string(trial) + ": ";

        // Intersection of monomial ideals: lcms of generator pairs.
        std::vector<QPoly> meet;
        for (const QPoly& x : i1)
            for (const QPoly& y : i2) {
                Exponent e = x.terms().begin()->first;
                const Exponent& f = y.terms().begin()->first;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::max(e[k], f[k]);
                meet.push_back(QPoly::monomial(e));
            }
        out.require(fp.algebra == artin_quotient(p, meet, order), at + "fiber product is not P/(I1 ∩ I2)");

        // The pair map is an injective ring map onto {(a, b) : a = b in R0}.
        RMat pair(a1.dim() + a2.dim(), fp.algebra.dim());
        pair << fp.to_first.matrix(), fp.to_second.matrix();
        out.require(rank<Rational>(pair) == fp.algebra.dim(), at + "pair map is not injective");
        out.require(fp.first_to_base.matrix() * fp.to_first.matrix() == fp.second_to_base.matrix() * fp.to_second.matrix(),
                    at + "square does not commute");
        out.require(fp.algebra.dim() == a1.dim() + a2.dim() - fp.base.dim(), at + "dimension is not dim R1 + dim R2 - dim R0");
        for (int x = 0; x < fp.algebra.dim(); ++x)
            for (int y = 0; y < fp.algebra.dim(); ++y)
                out.require(fp.to_first.apply(fp.algebra.product(x, y)) ==
                                a1.multiply(fp.to_first.apply(fp.algebra.unit(x)), fp.to_first.apply(fp.algebra.unit(y))),
                            at + "projection is not multiplicative");
    }
    out.note = "20 monomial-ideal instances";
    return out;
}

// 9. Hull of proj(2) to order 3.
Outcome hull_proj2() {
    Outcome out;
    HullOptions opts;
    opts.order = 3;
    const HullResult h = hull(geometry("proj(2)"), opts);
    out.require(h.base.nparams() == 10, "hull has " + std::to_string(h.base.nparams()) + " parameters, expected 10");
    out.require(h.relations.empty(), "hull has nonzero relations");
    out.require(io::to_json(h, false)["relations"].empty(), "serialised hull carries relations");
    out.require(h.valid.size() == 3, "validity was not checked at every order");
    for (std::size_t k = 0; k < h.valid.size(); ++k) out.require(h.valid[k], "family fails validity at order " + std::to_string(k + 1));
    out.note = "k[[t1..t10]], base dimension " + std::to_string(h.base.dim()) + ", no relations";
    return out;
}

// 10. Twist calculus.
Outcome twist() {
    Outcome out;
    out.note = suite_outcome("twist", 10, out);
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "Hochschild calculus", 30, hochschild},   {2, "defect identities", 120, defect_identities},
        {3, "S_n extension", 30, sn_extension},       {4, "cohomology tables", 300, cohomology},
        {5, "Moyal lift", 60, moyal},                 {6, "torsor over T1", 120, torsor},
        {7, "functoriality", 60, functoriality},      {8, "gluing and fiber products", 30, gluing},
        {9, "hull of proj(2)", 600, hull_proj2},      {10, "twist calculus", 60, twist},
    };
    std::set<int> wanted;
    for (int a = 1; a < argc; ++a) wanted.insert(std::atoi(argv[a]));

    int failed = 0;
    for (const Criterion& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.error = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.error.empty() && secs > c.limit) o.error = "over the time limit";
        const bool ok = o.error.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << std::left << std::setw(28) << c.name
                  << std::right << std::fixed << std::setprecision(1) << std::setw(7) << secs << " s (limit " << c.limit
                  << " s)";
        if (!o.note.empty()) std::cout << "  " << o.note;
        if (!ok) std::cout << "\n       " << o.error;
        std::cout << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
