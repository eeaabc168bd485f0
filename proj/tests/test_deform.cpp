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


#include <doctest.h>

#include "random_data.hpp"
#include "ncdef/deform.hpp"

using namespace ncdef;
using testdata::line;

namespace {

std::shared_ptr<const Geometry> geometry(const std::string& name) { return Geometry::make(builtin_variety(name)); }

using testdata::random_first_order;
using testdata::random_lift;

}  // namespace

TEST_CASE("trivial lifts carry no defects") {
    auto g = geometry("proj(1)");
    NCDeformation d = NCDeformation::trivial(g, line("t", 0), Mode::Untwisted);
    CandidateLift l = lift_candidate(d, small_extension(line("t", 1), line("t", 0)));
    CHECK(l.data.mult[0][1].is_zero());
    CHECK(l.data.glue.at({0, 2})[0] == Cochain::identity(1));
    Analysis a = analyze(l);
    CHECK(a.report.extendible());
    CHECK(a.report.xi30->is_zero());
    CHECK(a.report.xi21->is_zero());
    CHECK(a.report.xi12->is_zero());
    CHECK(a.repaired->data == l.data);
}

TEST_CASE("random first-order deformations are valid") {
    std::mt19937 rng(101);
    for (const char* name : {"affine(2)", "proj(1)"}) {
        auto g = geometry(name);
        NCDeformation d = random_first_order(rng, g, Mode::Untwisted);
        ValidityReport rep = check_validity(d);
        INFO(name << ": " << (rep.ok() ? std::string() : rep.failures.front()));
        CHECK(rep.ok());
    }
}

TEST_CASE("defect identities on random lifts") {
    std::mt19937 rng(202);
    for (const char* name : {"affine(2)", "proj(1)"}) {
        auto g = geometry(name);
        const Cover& cover = g->cover();
        for (int trial = 0; trial < 4; ++trial) {
            CandidateLift l = random_lift(rng, g, Mode::Untwisted);
            Defects d = all_defects(l);
            for (const auto& [i, f] : d.f) CHECK(coboundary(f[0]).is_zero());
            // With f' = f - db, the multiplicativity defect satisfies dg_ji = f_j - f_i.
            for (const auto& [c, gv] : d.g) CHECK(coboundary(gv[0]) == d.f.at(c[1])[0] - d.f.at(c[0])[0]);
            for (const Chain& c : cover.chains(4)) {
                Cochain s = d.h.at({c[0], c[1], c[2]})[0] - d.h.at({c[0], c[1], c[3]})[0] + d.h.at({c[0], c[2], c[3]})[0] -
                            d.h.at({c[1], c[2], c[3]})[0];
                CHECK(s.is_zero());
            }
            Analysis a = analyze(l);
            CHECK(a.report.extendible());
            CHECK(check_validity(a.repaired->data).ok());
        }
    }
}

TEST_CASE("choice data changes the defects by coboundaries") {
    std::mt19937 rng(303);
    auto g = geometry("proj(1)");
    const Cover& cover = g->cover();
    CandidateLift l = random_lift(rng, g, Mode::Untwisted);
    ChoiceData ch = testdata::random_choice(rng, l.data, 1);
    CandidateLift l2 = transform(l, ch);
    Defects a = all_defects(l), b = all_defects(l2);
    for (int i = 0; i < cover.size(); ++i) CHECK(b.f.at(i)[0] == a.f.at(i)[0] - coboundary(ch.b.at(i)[0]));
    for (const Chain& c : cover.chains(2))
        CHECK(b.g.at(c)[0] == a.g.at(c)[0] + ch.b.at(c[0])[0] - ch.b.at(c[1])[0] - coboundary(ch.c.at(c)[0]));
    for (const Chain& c : cover.chains(3))
        CHECK(b.h.at(c)[0] == a.h.at(c)[0] + ch.c.at({c[0], c[1]})[0] - ch.c.at({c[0], c[2]})[0] + ch.c.at({c[1], c[2]})[0]);
}

TEST_CASE("Moyal product by iterated extension") {
    auto g = geometry("affine(2)");
    NCDeformation d = NCDeformation::trivial(g, line("t", 1), Mode::Untwisted);
    d.mult[0][1] = Cochain::from_slots(2, 2, {{QPoly(2, Rational(1)), {Exponent{1, 0}, Exponent{0, 1}}}});
    REQUIRE(check_validity(d).ok());
    for (int order = 2; order <= 3; ++order) {
        d = extend(d, small_extension(line("t", order), line("t", order - 1)));
        CHECK(check_validity(d).ok());
        NCDeformation ref = testdata::moyal(g, line("t", order));
        REQUIRE(check_validity(ref).ok());
        auto eq = equivalent(d, ref);
        CHECK(eq.has_value());
        if (eq) CHECK(apply(d, *eq) == ref);
    }
}

namespace {

PolyVector non_poisson(const Cover& cover) {
    std::map<Subset, QPoly> form;
    form[{0, 1}] = QPoly(3, Rational(1));
    QPoly y(3);
    y.add_term(Exponent{0, 1, 0}, Rational(1));
    form[{1, 2}] = y;
    return PolyVector::from_chart_form(cover.chart(0), 2, form);
}

CandidateLift obstructed_lift(const std::shared_ptr<const Geometry>& g) {
    T1Element el;
    el.bivector = non_poisson(g->cover());
    NCDeformation d = extend(NCDeformation::trivial(g, line("t", 0), Mode::Untwisted),
                             small_extension(line("t", 1), line("t", 0)), {el});
    return lift_candidate(d, small_extension(line("t", 2), line("t", 1)));
}

}  // namespace

TEST_CASE("a non-Poisson bivector is obstructed") {
    auto g = geometry("affine(3)");
    CandidateLift l = obstructed_lift(g);
    ObstructionReport r = obstructions(l);
    CHECK(r.stage == "xi(3,0)");
    CHECK_FALSE(r.xi30->is_zero());
    CHECK_FALSE(r.xi21.has_value());
    try {
        extend(pushforward(l.data, l.extension.surjection()), l.extension);
        FAIL("extension should be obstructed");
    } catch (const Obstructed& e) {
        CHECK(e.report.stage == "xi(3,0)");
    }
}

TEST_CASE("obstruction classes do not depend on the lift") {
    std::mt19937 rng(404);
    auto g = geometry("affine(3)");
    CandidateLift l = obstructed_lift(g);
    ObstructionReport a = obstructions(l);
    for (int trial = 0; trial < 3; ++trial) {
        ObstructionReport b = obstructions(transform(l, testdata::random_choice(rng, l.data, 1)));
        REQUIRE(b.xi30.has_value());
        CHECK(b.xi30->components[0].coordinates == a.xi30->components[0].coordinates);
    }
    auto g2 = geometry("proj(1)");
    CandidateLift l2 = random_lift(rng, g2, Mode::Untwisted);
    ObstructionReport c = obstructions(l2);
    ObstructionReport d = obstructions(transform(l2, testdata::random_choice(rng, l2.data, 1)));
    CHECK(c.extendible());
    CHECK(d.extendible());
}

TEST_CASE("twisted lifts on a chain of five charts") {
    std::mt19937 rng(505);
    auto g = geometry("chain(4)");
    const Cover& cover = g->cover();
    REQUIRE(cover.chains(5).size() == 1);
    NCDeformation d = NCDeformation::trivial(g, line("t", 1), Mode::Twisted);
    d = apply_equivalence(d, testdata::random_step(rng, cover, d.base, Mode::Twisted));
    ValidityReport rep = check_validity(d);
    INFO((rep.ok() ? std::string() : rep.failures.front()));
    REQUIRE(rep.ok());
    CHECK_NOTHROW(check_twist(d));

    SmallExtension e = small_extension(line("t", 2), line("t", 1));
    CandidateLift l = transform(lift_candidate(d, e), testdata::random_choice(rng, d, 1));
    Defects df = all_defects(l);
    bool any = false;
    for (const auto& [c, s] : df.sigma) any = any || !s[0].is_zero();
    CHECK(any);
    const Chain m = cover.chains(5).front();
    auto sg = [&](int a, int b, int x, int y) { return df.sigma.at({m[a], m[b], m[x], m[y]})[0]; };
    CHECK((sg(0, 1, 2, 3) - sg(0, 1, 2, 4) + sg(0, 1, 3, 4) - sg(0, 2, 3, 4) + sg(1, 2, 3, 4)).is_zero());
    Analysis a = analyze(l);
    CHECK(a.report.extendible());
    CHECK(a.report.xi03.has_value());
    CHECK_FALSE(a.report.repairs.t.empty());
    CHECK(check_validity(a.repaired->data).ok());

    ChoiceData ch = testdata::random_choice(rng, l.data, 1, false);
    Defects b = all_defects(transform(l, ch));
    for (const Chain& c : cover.chains(3))
        CHECK(b.h.at(c)[0] == df.h.at(c)[0] + ch.c.at({c[0], c[1]})[0] - ch.c.at({c[0], c[2]})[0] + ch.c.at({c[1], c[2]})[0]);
}

TEST_CASE("extensions form a torsor over the tangent slice") {
    std::mt19937 rng(606);
    auto g = geometry("affine(2)");
    T1Basis basis = t1_basis(*g, Mode::Untwisted, 1);
    REQUIRE(basis.dim() == 3);
    CHECK(basis.bivectors.size() == 3);
    CHECK_THROWS_AS(t1_basis(*g, Mode::Untwisted), InfiniteDimensional);

    const NCDeformation base = NCDeformation::trivial(g, line("t", 0), Mode::Untwisted);
    const SmallExtension e = small_extension(line("t", 1), line("t", 0));
    std::vector<NCDeformation> ext;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<Rational> v = {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
        ext.push_back(extend(base, e, {basis.element(v)}));
    }
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) CHECK_FALSE(equivalent(ext[a], ext[b]).has_value());
    for (int a = 0; a < 8; ++a) {
        NCDeformation moved = apply_equivalence(ext[a], testdata::random_step(rng, g->cover(), ext[a].base, Mode::Untwisted));
        auto eq = equivalent(moved, ext[a]);
        REQUIRE(eq.has_value());
        CHECK(apply(moved, *eq) == ext[a]);
    }
}

TEST_CASE("obstruction classes are functorial") {
    std::mt19937 rng(707);
    auto g = geometry("affine(3)");
    CandidateLift l = obstructed_lift(g);
    const NCDeformation d = pushforward(l.data, l.extension.surjection());
    const ArtinAlgebra r1p = artin_quotient({"s", "u"}, {}, 2);
    const SmallExtension e1 = small_extension(r1p, artin_quotient({"s", "u"}, {}, 1));
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 4; ++trial) {
        QPoly img(2);
        img.add_term(Exponent{1, 0}, Rational(coef(rng)));
        img.add_term(Exponent{0, 1}, Rational(coef(rng)));
        img.add_term(Exponent{1, 1}, Rational(coef(rng)));
        const AlgebraMap beta(l.extension.source(), r1p, {img});
        RMat bj = kernel_map(l.extension, e1, beta);
        CHECK(bj.rows() == 3);
        CHECK(functoriality_check(d, l.extension, e1, beta) == "");
    }
    // One-parameter target with beta(t) = w.
    QPoly bad(1);
    bad.add_term(Exponent{1}, Rational(1));
    const ArtinAlgebra w = line("w", 2);
    const SmallExtension ew = small_extension(w, line("w", 1));
    CHECK(functoriality_check(d, l.extension, ew, AlgebraMap(l.extension.source(), w, {bad})) == "");
}

TEST_CASE("pushforward to the residue field is trivial") {
    std::mt19937 rng(808);
    auto g = geometry("proj(1)");
    NCDeformation d = random_first_order(rng, g, Mode::Untwisted);
    NCDeformation k = pushforward(d, AlgebraMap(d.base, line("t", 0), {QPoly(1)}));
    CHECK(k == NCDeformation::trivial(g, line("t", 0), Mode::Untwisted));
}

TEST_CASE("gluing over a fiber product") {
    auto g = geometry("affine(2)");
    const std::vector<std::string> params = {"s", "t"};
    const ArtinAlgebra r1 = embed(line("t", 1), params);
    const ArtinAlgebra r2 = embed(line("s", 1), params);
    NCDeformation d1 = NCDeformation::trivial(g, r1, Mode::Untwisted);
    for (int a = 0; a < r1.dim(); ++a)
        if (r1.basis()[static_cast<std::size_t>(a)] == Exponent{0, 1})
            d1.mult[0][static_cast<std::size_t>(a)] = Cochain::from_slots(2, 2, {{QPoly(2, Rational(1)), {Exponent{1, 0}, Exponent{0, 1}}}});
    REQUIRE(check_validity(d1).ok());
    NCDeformation d2 = NCDeformation::trivial(g, r2, Mode::Untwisted);
    Glued gl = glue(d1, d2);
    CHECK(gl.ring.algebra.dim() == 3);
    CHECK(pushforward(gl.deformation, gl.ring.to_first) == d1);
    CHECK(pushforward(gl.deformation, gl.ring.to_second) == d2);

    // Second input over k[t]/t^3, identified with the first over k[t]/t^2 by a gauge.
    NCDeformation m1 = testdata::moyal(g, line("t", 1));
    NCDeformation m2 = testdata::moyal(g, line("t", 2));
    EquivalenceStep gauge;
    gauge.epsilon.push_back(constant_family(m2.base, Cochain::identity(2)));
    gauge.epsilon[0][1] = Cochain::from_slots(2, 1, {{QPoly(2, Rational(1)), {Exponent{2, 0}}}});
    m2 = apply_equivalence(m2, gauge);
    FiberProduct fp = fiber_product(m1.base, m2.base);
    CHECK_THROWS_AS(glue(m1, m2), NotGluable);
    auto iso = equivalent(pushforward(m2, fp.second_to_base), pushforward(m1, fp.first_to_base));
    REQUIRE(iso.has_value());
    Glued g2 = glue(m1, m2, *iso);
    CHECK(g2.ring.algebra.dim() == 3);
    CHECK(pushforward(g2.deformation, g2.ring.to_first) == m1);
    CHECK(equivalent(g2.deformation, m2).has_value());
}

TEST_CASE("twist changes and twist coboundaries") {
    std::mt19937 rng(1010);
    auto g = geometry("chain(3)");
    const Cover& cover = g->cover();
    const int n = cover.dim();
    NCDeformation d = NCDeformation::trivial(g, line("t", 1), Mode::Twisted);
    d = apply_equivalence(d, testdata::random_step(rng, cover, d.base, Mode::Twisted));
    REQUIRE(check_validity(d).ok());
    SmallExtension e = small_extension(line("t", 2), line("t", 1));
    CandidateLift l = transform(lift_candidate(d, e), testdata::random_choice(rng, d, 1));

    std::map<Chain, JCochain> t;
    for (const Chain& c : cover.chains(3)) t[c] = testdata::random_j(rng, cover, 1, c[2], c[2], 0);
    CHECK_NOTHROW(change_twist(l, t));

    std::map<Chain, JCochain> s;
    for (const Chain& c : cover.chains(2)) s[c] = testdata::random_j(rng, cover, 1, c[1], c[1], 0);
    std::map<Chain, JCochain> closed;
    for (const Chain& c : cover.chains(3))
        closed[c] = {s.at({c[0], c[1]})[0] - s.at({c[0], c[2]})[0] + s.at({c[1], c[2]})[0]};
    CandidateLift moved = change_twist(l, closed);
    CHECK(moved.data.glue == l.data.glue);
    for (const Chain& c : cover.chains(4)) CHECK(defect_sigma(moved, c[0], c[1], c[2], c[3]) == defect_sigma(l, c[0], c[1], c[2], c[3]));

    auto back = twist_coboundary(*g, closed, 1);
    REQUIRE(back.has_value());
    for (const Chain& c : cover.chains(3))
        CHECK(back->at({c[0], c[1]})[0] - back->at({c[0], c[2]})[0] + back->at({c[1], c[2]})[0] == closed.at(c)[0]);
    CHECK_THROWS_AS(twist_coboundary(*g, t, 1), NotClosed);

    EquivalenceStep step;
    for (int i = 0; i < cover.size(); ++i) step.epsilon.push_back(constant_family(l.data.base, Cochain::identity(n)));
    for (const auto& [c, v] : s) step.rho.emplace(c, plus(constant_family(l.data.base, Cochain::one(n)), from_kernel(e, v, n, 0)));
    NCDeformation after = apply_equivalence(l.data, step);
    CHECK(after.glue == l.data.glue);
    CHECK(after.mult == l.data.mult);
    for (const Chain& c : cover.chains(3)) CHECK(after.twist.at(c) == plus(l.data.twist.at(c), from_kernel(e, closed.at(c), n, 0)));
}

TEST_CASE("hulls of small examples") {
    auto p1 = hull(geometry("proj(1)"), {Mode::Untwisted, 3, std::nullopt, true});
    CHECK(p1.base.dim() == 1);
    CHECK(p1.relations.empty());
    CHECK(p1.tangent.dim() == 0);

    auto a2 = hull(geometry("affine(2)"), {Mode::Untwisted, 3, 0, true});
    CHECK(a2.tangent.dim() == 1);
    CHECK(a2.base.nparams() == 1);
    CHECK(a2.base.dim() == 4);
    CHECK(a2.relations.empty());
    CHECK(a2.valid == std::vector<bool>{true, true, true});

    auto a3 = hull(geometry("affine(3)"), {Mode::Untwisted, 2, 0, true});
    CHECK(a3.tangent.dim() == 3);
    CHECK(a3.valid == std::vector<bool>{true, true});
}
