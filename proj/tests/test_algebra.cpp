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

#include "ncdef/artin.hpp"
#include "ncdef/errors.hpp"

using namespace ncdef;

namespace {

QPoly P(const std::string& s, const std::vector<std::string>& names) { return parse_poly(s, names); }

}  // namespace

TEST_CASE("rationals parse and reduce") {
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
}

TEST_CASE("prime field arithmetic") {
    PrimeField f(7);
    CHECK(f(3) * f(5) == f(1));
    CHECK(f(3).inverse() == f(5));
    CHECK(f(-1) == f(6));
    CHECK_THROWS_AS(PrimeField(1), InvalidField);
    CHECK_THROWS_AS(PrimeField(9), InvalidField);
}

TEST_CASE("polynomial round trip through text") {
    std::vector<std::string> n{"x", "y"};
    QPoly p = P("3/2*x^2*y - y + 1", n);
    CHECK(parse_poly(to_string(p, n), n) == p);
    CHECK(P("(x+y)^2", n) == P("x^2 + 2*x*y + y^2", n));
    CHECK_THROWS_AS(P("x + w", n), ParseError);
}

TEST_CASE("exact linear algebra") {
    RMat a(2, 3);
    a << 1, 2, 3, 2, 4, 6;
    CHECK(rank<Rational>(a) == 1);
    RMat k = nullspace<Rational>(a);
    CHECK(k.cols() == 2);
    CHECK((a * k).isZero());
    RVec b(2);
    b << 1, 2;
    auto x = solve<Rational>(a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);
    b << 1, 3;
    CHECK_FALSE(solve<Rational>(a, b).has_value());
}

TEST_CASE("artin algebras: bases") {
    ArtinAlgebra dual = artin_quotient({"t"}, {}, 1);
    CHECK(dual.dim() == 2);
    CHECK(dual.basis_name(1) == "t");

    ArtinAlgebra r = artin_quotient({"t"}, {P("t^3", {"t"})}, 5);
    CHECK(r.dim() == 3);
    CHECK(r.nilpotency_index() == 3);

    ArtinAlgebra two = artin_quotient({"t1", "t2"}, {P("t1*t2", {"t1", "t2"})}, 2);
    CHECK(two.dim() == 5);

    CHECK_THROWS_AS(artin_quotient({"t"}, {P("t + 1", {"t"})}, 2), InvalidIdeal);
    CHECK(artin_quotient({"t"}, {}, 0).dim() == 1);
}

TEST_CASE("artin algebras: non-monomial ideal and inverses") {
    std::vector<std::string> n{"s", "t"};
    ArtinAlgebra r = artin_quotient(n, {P("s^2 - t", n)}, 3);
    // s^2 reduces to t, so s^4 = t^2 is a monomial of degree 2 in disguise.
    RVec s = r.normal_form(P("s", n));
    RVec s4 = r.multiply(r.multiply(s, s), r.multiply(s, s));
    CHECK(s4 == r.normal_form(P("t^2", n)));
    RVec u = r.normal_form(P("1 + s + 3*t", n));
    CHECK(r.multiply(u, r.inverse(u)) == r.one());
}

TEST_CASE("small extensions") {
    ArtinAlgebra r3 = artin_quotient({"t"}, {P("t^3", {"t"})}, 5);
    ArtinAlgebra r2 = artin_quotient({"t"}, {P("t^2", {"t"})}, 5);
    SmallExtension e = small_extension(r3, r2);
    CHECK(e.kernel_dim() == 1);
    CHECK(e.kernel_element(0) == r3.normal_form(P("t^2", {"t"})));
    CHECK(e.surjection().apply(e.lift(r2.normal_form(P("1 + t", {"t"})))) == r2.normal_form(P("1 + t", {"t"})));

    ArtinAlgebra r4 = artin_quotient({"t"}, {P("t^4", {"t"})}, 5);
    CHECK_THROWS_AS(small_extension(r4, r2), NotSmall);
    CHECK_THROWS_AS(small_extension(artin_quotient({"t"}, {}, 1), artin_quotient({"s", "t"}, {}, 1)),
                    NotSurjective);

    ArtinAlgebra m3 = artin_quotient({"t1", "t2"}, {}, 2);
    ArtinAlgebra m2 = artin_quotient({"t1", "t2"}, {}, 1);
    CHECK(small_extension(m3, m2).kernel_dim() == 3);
}

TEST_CASE("algebra maps reject ill-defined data") {
    ArtinAlgebra r2 = artin_quotient({"t"}, {}, 1);
    ArtinAlgebra k = artin_quotient({"t"}, {}, 0);
    CHECK_THROWS_AS(AlgebraMap(r2, k, {P("1", {"t"})}), InvalidBaseChange);
    ArtinAlgebra r3 = artin_quotient({"t"}, {}, 2);
    // t -> t from k[t]/t^2 into k[t]/t^3 does not kill t^2.
    CHECK_THROWS_AS(AlgebraMap(r2, r3, {P("t", {"t"})}), InvalidBaseChange);
    CHECK_NOTHROW(AlgebraMap(r2, r3, {P("t^2", {"t"})}));
}

TEST_CASE("fiber products") {
    std::vector<std::string> t{"t"};
    ArtinAlgebra a = artin_quotient(t, {P("t^2", t)}, 4);
    ArtinAlgebra b = artin_quotient(t, {P("t^3", t)}, 4);
    FiberProduct fp = fiber_product(a, b);
    CHECK(fp.algebra.dim() == 3);
    CHECK(fp.base.dim() == 2);

    std::vector<std::string> st{"s", "t"};
    ArtinAlgebra s_only = artin_quotient(st, {P("t", st)}, 2);
    ArtinAlgebra t_only = artin_quotient(st, {P("s", st)}, 2);
    FiberProduct q = fiber_product(s_only, t_only);
    CHECK(q.algebra.dim() == 5);
    CHECK(q.base.dim() == 1);
    RMat pair(s_only.dim() + t_only.dim(), q.algebra.dim());
    pair << q.to_first.matrix(), q.to_second.matrix();
    CHECK(q.pair_to_algebra * pair == RMat::Identity(q.algebra.dim(), q.algebra.dim()));
}
