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

#include "ncdef/cochain.hpp"
#include "ncdef/errors.hpp"
#include "random_data.hpp"

using namespace ncdef;
using testdata::direct_evaluate;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

QPoly P(const std::string& s, const std::vector<std::string>& v = XY) { return parse_poly(s, v); }

Cochain op(int n, int arity, std::vector<SlotTerm> terms) { return Cochain::from_slots(n, arity, terms); }

Exponent dx(int k = 1) { return {k, 0}; }
Exponent dy(int k = 1) { return {0, k}; }

/// The defining formula of the coboundary, evaluated through c itself.
QPoly df_by_definition(const Cochain& c, const std::vector<QPoly>& a) {
    const int p = c.arity();
    QPoly out = a[0] * evaluate(c, std::vector<QPoly>(a.begin() + 1, a.end()));
    for (int i = 1; i <= p; ++i) {
        std::vector<QPoly> args;
        for (int s = 0; s <= p; ++s) {
            if (s == i - 1) args.push_back(a[static_cast<std::size_t>(s)] * a[static_cast<std::size_t>(s + 1)]);
            else if (s != i) args.push_back(a[static_cast<std::size_t>(s)]);
        }
        QPoly t = evaluate(c, args);
        if (i % 2) out -= t;
        else out += t;
    }
    QPoly last = evaluate(c, std::vector<QPoly>(a.begin(), a.begin() + p)) * a[static_cast<std::size_t>(p)];
    if ((p + 1) % 2) out -= last;
    else out += last;
    return out;
}

}  // namespace

TEST_CASE("evaluate: worked examples") {
    Cochain dxop = op(1, 1, {{QPoly(1, Rational(1)), {{1}}}});
    CHECK(evaluate(dxop, {parse_poly("x^2", {"x"})}) == parse_poly("2*x", {"x"}));
    CHECK(evaluate(Cochain(2, 2), {P("x"), P("y")}).is_zero());
    Cochain dxdy = op(2, 2, {{QPoly(2, Rational(1)), {dx(), dy()}}});
    CHECK(evaluate(dxdy, {P("x^2"), P("y^3")}) == P("6*x*y^2"));
    CHECK_THROWS_AS(evaluate(dxdy, {P("x")}), ArityMismatch);
}

TEST_CASE("slot form round trip and agreement with symbolic differentiation") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 2;
        const int p = trial % 4;
        auto terms = testdata::random_slot_terms(rng, n, p, 3, 3);
        Cochain c = Cochain::from_slots(n, p, terms);
        CHECK(Cochain::from_slots(n, p, c.to_slots()) == c);
        std::vector<QPoly> args;
        for (int s = 0; s < p; ++s) args.push_back(testdata::random_poly(rng, n, 4, 3));
        CHECK(evaluate(c, args) == direct_evaluate(n, terms, args));
    }
}

TEST_CASE("coboundary: worked examples") {
    Cochain m = Cochain::element(P("x^2 + 3*y"));
    CHECK(coboundary(m).is_zero());
    Cochain der = op(2, 1, {{QPoly(2, Rational(1)), {dx()}}});
    CHECK(coboundary(der).is_zero());
    Cochain mulx = op(2, 1, {{P("x"), {dx(0)}}});
    Cochain expect = op(2, 2, {{P("x"), {dx(0), dx(0)}}});
    CHECK(coboundary(mulx) == expect);
}

TEST_CASE("coboundary agrees with its defining formula and squares to zero") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = trial % 4;
        Cochain c = testdata::random_cochain(rng, 2, p, 2, 3);
        Cochain d = coboundary(c);
        CHECK(coboundary(d).is_zero());
        if (p >= 1) CHECK(hkr_class(d).is_zero());
        std::vector<QPoly> args;
        for (int s = 0; s <= p; ++s) args.push_back(testdata::random_poly(rng, 2, 3, 3, true));
        CHECK(evaluate(d, args) == df_by_definition(c, args));
    }
}

TEST_CASE("composition matches substitution of values") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        Cochain outer = testdata::random_cochain(rng, 2, 2, 2, 2);
        Cochain inner = testdata::random_cochain(rng, 2, 1 + trial % 2, 2, 2);
        const int slot = trial % 2;
        Cochain comp = compose(outer, slot, inner);
        std::vector<QPoly> a;
        for (int s = 0; s < comp.arity(); ++s) a.push_back(testdata::random_poly(rng, 2, 3, 2));
        std::vector<QPoly> inner_args(a.begin() + slot, a.begin() + slot + inner.arity());
        std::vector<QPoly> outer_args;
        for (int s = 0; s < slot; ++s) outer_args.push_back(a[static_cast<std::size_t>(s)]);
        outer_args.push_back(evaluate(inner, inner_args));
        for (int s = slot + inner.arity(); s < comp.arity(); ++s) outer_args.push_back(a[static_cast<std::size_t>(s)]);
        CHECK(evaluate(comp, a) == evaluate(outer, outer_args));
    }
    Cochain tau = Cochain::element(P("1 + x*y"));
    Cochain left = compose(Cochain::product(2), 0, tau);
    CHECK(evaluate(left, {P("y")}) == P("y + x*y^2"));
}

TEST_CASE("HKR class: worked examples") {
    Cochain moyal = op(2, 2, {{QPoly(2, Rational(1)), {dx(), dy()}}});
    PolyVector w = hkr_class(moyal);
    PolyVector expect(2, 2);
    expect.add_term({-1, -1}, {0, 1}, Rational(1));  // x^{-1} y^{-1} theta_x theta_y = d_x ^ d_y
    CHECK(w == expect);

    std::mt19937 rng(3);
    Cochain b = testdata::random_cochain(rng, 2, 1, 2, 2);
    CHECK(hkr_class(coboundary(b)).is_zero());

    Cochain sym = op(2, 2, {{QPoly(2, Rational(1)), {dx(), dx()}}});
    CHECK(hkr_class(sym).is_zero());

    Cochain notclosed = op(2, 2, {{P("x"), {dx(), dx(0)}}});
    CHECK_THROWS_AS(hkr_class(notclosed), NotACocycle);
}

TEST_CASE("HKR kills coboundaries and inverts the inverse map") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 2;
        const int p = 1 + trial % 3;
        Cochain b = testdata::random_cochain(rng, n, p - 1 + (p == 1 ? 1 : 0), 2, 3);
        if (b.arity() == p - 1) CHECK(hkr_class(coboundary(b)).is_zero());
        PolyVector w(n, p);
        for (int k = 0; k < 3; ++k) {
            Weight c(static_cast<std::size_t>(n));
            for (int& x : c) x = std::uniform_int_distribution<int>(-2, 2)(rng);
            const auto& subs = subsets(n, p);
            if (subs.empty()) continue;
            w.add_term(c, subs[rng() % subs.size()], Rational(std::uniform_int_distribution<int>(-3, 3)(rng)));
        }
        Cochain iw = hkr_inverse(w);
        CHECK(coboundary(iw).is_zero());
        CHECK(hkr_class(iw) == w);
    }
}

TEST_CASE("HKR symbol is chart independent on cocycles") {
    Cover p2 = builtin_variety("proj(2)");
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        PolyVector w(2, 2);
        w.add_term({trial % 3 - 1, 1 - trial % 2}, {0, 1}, Rational(trial + 1));
        Cochain c = hkr_inverse(w) + coboundary(testdata::random_cochain(rng, 2, 1, 2, 2));
        for (const Chart& ch : p2.charts()) CHECK(hkr_symbol(c, &ch) == w);
    }
}

TEST_CASE("chart validity") {
    Cover p1 = builtin_variety("proj(1)");
    // d/dv on the chart {1} (v = 1/u) stays regular on the overlap.
    Cochain dv = hkr_inverse(PolyVector::from_chart_form(p1.chart(1), 1, {{{0}, QPoly(1, Rational(1))}}));
    CHECK(chart_valid(p1, dv, 1, 1));
    CHECK(chart_valid(p1, dv, 1, 2));
    CHECK(chart_valid(p1, dv, 0, 0));
    Cochain u3du = Cochain::from_slots(1, 1, {{parse_poly("u^3", {"u"}), {{1}}}});
    CHECK(chart_valid(p1, u3du, 0, 0));
    CHECK_FALSE(chart_valid(p1, u3du, 1, 1));
    CHECK(chart_valid(p1, u3du, 1, 2));
    Cochain inv = Cochain::element(parse_poly("u^-1", {"u"}));
    CHECK_FALSE(chart_valid(p1, inv, 0, 0));
    CHECK(chart_valid(p1, inv, 1, 1));
}

TEST_CASE("solve_coboundary: worked examples") {
    Cover a2 = builtin_variety("affine(2)");
    CoboundarySolver solver(a2);
    Cochain b = op(2, 2, {{QPoly(2, Rational(1)), {dx(), dx()}}});
    Cochain c = coboundary(b);
    auto prim = solver.solve(c, 0, 0);
    REQUIRE(prim.has_value());
    CHECK(coboundary(*prim) == c);

    Cochain moyal = op(2, 2, {{QPoly(2, Rational(1)), {dx(), dy()}}});
    Cochain bivector = moyal - op(2, 2, {{QPoly(2, Rational(1)), {dy(), dx()}}});
    CHECK_FALSE(solver.solve(bivector, 0, 0).has_value());
    CHECK(solver.solve(Cochain(2, 3), 0, 0).value().is_zero());
    CHECK_THROWS_AS(solver.solve(op(2, 2, {{P("x"), {dx(), dx(0)}}}), 0, 0), NotACocycle);
    Cochain mult = op(2, 2, {{P("x"), {dx(0), dx(0)}}});
    auto mprim = solver.solve(mult, 0, 0);
    REQUIRE(mprim.has_value());
    CHECK(coboundary(*mprim) == mult);
    // Derivations are closed with nonzero class; no primitive.
    CHECK_FALSE(solver.solve(op(2, 1, {{P("y"), {dx()}}}), 0, 0).has_value());
}

TEST_CASE("solve_coboundary is a one-sided inverse of the coboundary") {
    std::mt19937 rng(31);
    Cover a2 = builtin_variety("affine(2)");
    CoboundarySolver solver(a2);
    for (int trial = 0; trial < 25; ++trial) {
        const int p = 1 + trial % 3;
        Cochain b = testdata::random_cochain(rng, 2, p, 2, 3, 1);
        Cochain f = coboundary(b);
        SolveStats stats;
        auto prim = solver.solve(f, 0, 0, 0, &stats);
        REQUIRE(prim.has_value());
        CHECK(coboundary(*prim) == f);
        CHECK(chart_valid(a2, *prim, 0, 0));
    }
}

TEST_CASE("primitives respect the charts of a projective cover") {
    Cover p1 = builtin_variety("proj(1)");
    CoboundarySolver solver(p1);
    // An operator on chart {1} pushed to the overlap.
    Cochain b = hkr_inverse(PolyVector::from_chart_form(p1.chart(1), 1, {{{0}, QPoly(1, Rational(1))}}));
    Cochain b2 = compose(compose(Cochain::product(1), 0, b), 1, b);
    REQUIRE(chart_valid(p1, b2, 1, 2));
    Cochain f = coboundary(b2);
    auto prim = solver.solve(f, 1, 2);
    REQUIRE(prim.has_value());
    CHECK(coboundary(*prim) == f);
    CHECK(chart_valid(p1, *prim, 1, 2));
}

TEST_CASE("normalised primitives") {
    std::mt19937 rng(41);
    Cover p1 = builtin_variety("proj(1)");
    CoboundarySolver plain(p1), normal(p1, true);
    Cochain mult = op(1, 2, {{parse_poly("u", {"u"}), {{0}, {0}}}});
    CHECK(plain.solve(mult, 0, 0).has_value());
    CHECK_THROWS_AS(normal.solve(mult, 0, 0), BoundsTooSmall);
    for (int trial = 0; trial < 10; ++trial) {
        Cochain b = testdata::random_cochain(rng, 1, 2, 2, 2, 1);
        b = Cochain::from_slots(1, 2, [&] {
            auto t = b.to_slots();
            std::vector<SlotTerm> keep;
            for (auto& s : t)
                if (s.slots[0][0] > 0 && s.slots[1][0] > 0) keep.push_back(s);
            return keep;
        }());
        REQUIRE(is_normalized(b));
        if (!chart_valid(p1, b, 0, 0)) continue;
        auto prim = normal.solve(coboundary(b), 0, 0);
        REQUIRE(prim.has_value());
        CHECK(is_normalized(*prim));
        CHECK(coboundary(*prim) == coboundary(b));
    }
}
