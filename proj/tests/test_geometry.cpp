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


#include "doctest.h"

#include "ncdef/cohomology.hpp"
#include "ncdef/errors.hpp"
#include "oracle_cech.hpp"

using namespace ncdef;

namespace {

int find_chart(const Cover& x, const std::string& label) {
    for (const Chart& ch : x.charts())
        if (ch.label == label) return ch.id;
    FAIL("no chart " << label);
    return -1;
}

}  // namespace

TEST_CASE("built-in varieties have the expected posets") {
    CHECK(builtin_variety("affine(2)").size() == 1);
    Cover p1 = builtin_variety("proj(1)");
    CHECK(p1.size() == 3);
    CHECK(builtin_variety("proj(2)").size() == 7);
    CHECK(builtin_variety("product(proj(1),proj(1))").size() == 9);
    CHECK(builtin_variety("chain(4)").chains(5).size() == 1);
    CHECK_THROWS_AS(builtin_variety("grassmannian(2,4)"), Unsupported);
    CHECK_THROWS_AS(builtin_variety("proj(0)"), Unsupported);

    const int u0 = find_chart(p1, "{0}"), u1 = find_chart(p1, "{1}"), u01 = find_chart(p1, "{0,1}");
    CHECK(p1.less(u0, u01));
    CHECK(p1.less(u1, u01));
    CHECK(p1.join(u0, u1) == u01);
}

TEST_CASE("joins are associative, commutative and idempotent; restriction is transitive") {
    for (const char* name : {"proj(1)", "proj(2)", "proj(3)", "product(proj(1),proj(1))", "chain(3)"}) {
        Cover x = builtin_variety(name);
        for (int i = 0; i < x.size(); ++i) {
            CHECK(x.join(i, i) == i);
            for (int j = 0; j < x.size(); ++j) {
                CHECK(x.join(i, j) == x.join(j, i));
                for (int k = 0; k < x.size(); ++k) CHECK(x.join(x.join(i, j), k) == x.join(i, x.join(j, k)));
            }
        }
        for (const Chain& c : x.chains(3))
            for (int b = 0; b < x.chart(c[0]).dim(); ++b) {
                QPoly gen = QPoly::variable(x.dim(), b);
                CHECK(x.restrict(x.restrict(gen, c[0], c[1]), c[1], c[2]) == x.restrict(gen, c[0], c[2]));
            }
    }
}

TEST_CASE("restriction of polyvector sections") {
    Cover p1 = builtin_variety("proj(1)");
    const int u0 = find_chart(p1, "{0}"), u1 = find_chart(p1, "{1}"), u01 = find_chart(p1, "{0,1}");
    const Chart& c1 = p1.chart(u1);

    PolyVector dv = PolyVector::from_chart_form(c1, 1, {{{0}, QPoly(1, Rational(1))}});
    PolyVectorSection s = restrict(p1, {u1, dv}, u01);
    CHECK(s.field.str(p1.chart(u01)) == "-x1_0^2*d(x1_0)");

    PolyVector du = PolyVector::from_chart_form(p1.chart(u0), 1, {{{0}, QPoly(1, Rational(1))}});
    CHECK(du.regular_on(c1));  // d/du is a global vector field
    PolyVector u3du = PolyVector::from_chart_form(p1.chart(u0), 1, {{{0}, parse_poly("x1_0^3", p1.chart(u0).vars)}});
    CHECK_FALSE(u3du.regular_on(c1));
    CHECK(restrict(p1, {u0, du}, u01).field == du);
    CHECK(restrict(p1, {u0, PolyVector(1, 1)}, u01).field.is_zero());
    CHECK_THROWS_AS(restrict(p1, {u0, du}, u1), NotComparable);
}

TEST_CASE("restriction composes along chains") {
    Cover p2 = builtin_variety("proj(2)");
    const int a = find_chart(p2, "{0}");
    // A polyvector with a pole along x1_0 = 0 is not a section; use a polynomial one.
    std::vector<std::string> v = p2.chart(a).vars;
    PolyVector w = PolyVector::from_chart_form(p2.chart(a), 2, {{{0, 1}, parse_poly("x1_0^2 - 3*x2_0 + 1", v)}});
    for (const Chain& c : p2.chains(3)) {
        if (c[0] != a) continue;
        PolyVectorSection s{a, w};
        CHECK(restrict(p2, restrict(p2, s, c[1]), c[2]).field == restrict(p2, s, c[2]).field);
    }
}

TEST_CASE("sheaf cohomology matches the worked examples") {
    Cover p1 = builtin_variety("proj(1)");
    CohomologyResult t = sheaf_cohomology(p1, 1);
    CHECK(t.h[0] == 3);
    CHECK(t.h[1] == 0);
    CHECK(t.witnesses[0].size() == 3);
    CHECK(sheaf_cohomology(p1, 2).h == std::vector<int>{0, 0, 0, 0});

    Cover p2 = builtin_variety("proj(2)");
    CHECK(sheaf_cohomology(p2, 2).h == std::vector<int>{10, 0, 0, 0});
    CHECK(sheaf_cohomology(p2, 1).h == std::vector<int>{8, 0, 0, 0});

    Cover q = builtin_variety("product(proj(1),proj(1))");
    CHECK(sheaf_cohomology(q, 2).h == std::vector<int>{9, 0, 0, 0});
    CHECK(sheaf_cohomology(q, 1).h == std::vector<int>{6, 0, 0, 0});
}

TEST_CASE("structure sheaf of projective space is acyclic with one section") {
    for (int n = 1; n <= 3; ++n) {
        CohomologyResult r = sheaf_cohomology(builtin_variety("proj(" + std::to_string(n) + ")"), 0);
        CHECK(r.h == std::vector<int>{1, 0, 0, 0});
    }
}

TEST_CASE("pipeline agrees with the standard-cover oracle") {
    struct Case {
        const char* name;
        oracle::Product x;
    };
    for (const Case& c : {Case{"proj(1)", {{1}}}, Case{"proj(2)", {{2}}}, Case{"product(proj(1),proj(1))", {{1, 1}}}}) {
        Cover cover = builtin_variety(c.name);
        for (int p = 0; p <= cover.dim(); ++p) {
            GradedCech engine(cover, p, 2);
            for (const Weight& w : character_box(cover.dim(), 3)) {
                CAPTURE(c.name);
                CAPTURE(p);
                CHECK(engine.dims(w) == oracle::graded_dims(c.x, p, w, 2));
            }
        }
    }
}

TEST_CASE("affine cohomology needs a slice") {
    Cover a2 = builtin_variety("affine(2)");
    CHECK_THROWS_AS(sheaf_cohomology(a2, 2), WindowTooSmall);
    CohomologyOptions opt;
    opt.window = 0;
    opt.slice = true;
    CHECK(sheaf_cohomology(a2, 2, opt).h[0] == 1);  // only d/dx ^ d/dy itself
}

TEST_CASE("Čech classes: witnesses are nonzero, coboundaries are detected") {
    Cover p1 = builtin_variety("proj(1)");
    GradedCech o(p1, 0, 2);
    // z^{-1} on the overlap: regular on {1} but not on {0}, and H^1(O) = 0, so it bounds.
    PolyVector f(1, 0);
    f.add_term({-1}, {}, Rational(1));
    PVCochain z;
    z[Chain{0, 2}] = f;
    CHECK(o.primitive(z, 1).has_value());
    CHECK(o.primitive(PVCochain{}, 1).has_value());

    PVCochain bad;
    bad[Chain{0}] = f;  // not a section over {0}
    CHECK_THROWS_AS(o.check_cocycle(bad, 0), IncompatibleData);

    GradedCech t(p1, 1, 2);
    const CohomologyResult r = sheaf_cohomology(p1, 1);
    for (const PVCochain& w : r.witnesses[0]) {
        CHECK_NOTHROW(t.check_cocycle(w, 0));
        CHECK_FALSE(t.primitive(w, 0).has_value());
        CHECK(t.class_coordinates(w, 0).size() == 1);
    }
}
