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


#include "ncdef/deform.hpp"

#include <sstream>

#include "ncdef/errors.hpp"
#include "deform_internal.hpp"

namespace ncdef {

Geometry::Geometry(Cover cover) : cover_(std::move(cover)), poset_(Poset::of(cover_)), solver_(cover_, true) {}

const GradedCech& Geometry::cech(int p) const {
    if (p < 0 || p > 3) throw Unsupported("polyvector degree outside 0..3");
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cech_[static_cast<std::size_t>(p)];
    if (!slot) slot = std::make_unique<GradedCech>(cover_, p, 3);
    return *slot;
}

std::string to_string(Mode m) { return m == Mode::Twisted ? "twisted" : "untwisted"; }

Mode parse_mode(const std::string& s) {
    if (s == "untwisted") return Mode::Untwisted;
    if (s == "twisted") return Mode::Twisted;
    throw ParseError("unknown mode '" + s + "' (expected untwisted or twisted)");
}

NCDeformation NCDeformation::trivial(std::shared_ptr<const Geometry> geometry, const ArtinAlgebra& base, Mode mode) {
    NCDeformation d;
    d.base = base;
    d.mode = mode;
    const Cover& cover = geometry->cover();
    const int n = cover.dim();
    d.mult.assign(static_cast<std::size_t>(cover.size()), constant_family(base, Cochain::product(n)));
    for (const Chain& c : cover.chains(2)) d.glue.emplace(c, constant_family(base, Cochain::identity(n)));
    if (mode == Mode::Twisted)
        for (const Chain& c : cover.chains(3)) d.twist.emplace(c, constant_family(base, Cochain::one(n)));
    d.geometry = std::move(geometry);
    return d;
}

namespace detail {

std::string chain_str(const Chain& c) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
    return s + ")";
}

const Family& lookup(const std::map<Chain, Family>& m, const Chain& key, const char* what) {
    auto it = m.find(key);
    if (it == m.end()) throw IncompatibleData(std::string("missing ") + what + " at " + chain_str(key));
    return it->second;
}

// tau^-1 * phi(x) * tau in the product of the target chart.
Family conjugate(const ArtinAlgebra& r, const Family& mult, const Family& tau, const Family& phi,
                 const std::vector<int>* targets) {
    Family left = compose_all(r, mult, {inverse(r, mult, tau), phi});
    return compose_all(r, mult, {left, tau}, targets);
}

Family trans_defect(const NCDeformation& d, int i, int j, int k, const std::vector<int>* tg) {
    const ArtinAlgebra& r = d.base;
    const Family& kj = lookup(d.glue, {j, k}, "gluing");
    const Family& ji = lookup(d.glue, {i, j}, "gluing");
    const Family& ki = lookup(d.glue, {i, k}, "gluing");
    Family lhs = compose(r, kj, 0, ji, tg);
    if (d.mode == Mode::Untwisted) return minus(lhs, ki);
    const Family& tau = lookup(d.twist, {i, j, k}, "twist");
    return minus(lhs, conjugate(r, d.mult[static_cast<std::size_t>(k)], tau, ki, tg));
}

Family twist_defect(const NCDeformation& d, int i, int j, int k, int l, const std::vector<int>* tg) {
    const ArtinAlgebra& r = d.base;
    const Family& ml = d.mult[static_cast<std::size_t>(l)];
    const Family& lji = lookup(d.twist, {i, j, l}, "twist");
    const Family& lkj = lookup(d.twist, {j, k, l}, "twist");
    const Family& lki = lookup(d.twist, {i, k, l}, "twist");
    const Family& kji = lookup(d.twist, {i, j, k}, "twist");
    const Family moved = compose(r, lookup(d.glue, {k, l}, "gluing"), 0, kji);
    return minus(compose_all(r, ml, {lji, lkj}, tg), compose_all(r, ml, {lki, moved}, tg));
}

}  // namespace detail

namespace {

using namespace detail;

Family assoc_defect(const ArtinAlgebra& r, const Family& m, const std::vector<int>* tg) {
    return minus(compose(r, m, 0, m, tg), compose(r, m, 1, m, tg));
}

Family mult_defect(const ArtinAlgebra& r, const Family& phi, const Family& mi, const Family& mj,
                   const std::vector<int>* tg) {
    return minus(compose(r, phi, 0, mi, tg), compose_all(r, mj, {phi, phi}, tg));
}

const std::vector<int>* filter(const CandidateLift& l, bool verify) {
    return verify ? nullptr : &l.extension.kernel_pivots();
}

}  // namespace

ValidityReport check_validity(const NCDeformation& d) {
    ValidityReport rep;
    auto fail = [&](const std::string& s) { rep.failures.push_back(s); };
    const Cover& cover = d.cover();
    const ArtinAlgebra& r = d.base;
    const int n = cover.dim();
    const auto dim = static_cast<std::size_t>(r.dim());

    if (d.mult.size() != static_cast<std::size_t>(cover.size())) {
        fail("wrong number of chart products");
        return rep;
    }
    auto shape_ok = [&](const Family& f, int arity) {
        if (f.size() != dim) return false;
        for (const Cochain& c : f)
            if (!c.is_zero() && (c.arity() != arity || c.nvars() != n)) return false;
        return true;
    };
    for (int i = 0; i < cover.size(); ++i) {
        const Family& m = d.mult[static_cast<std::size_t>(i)];
        if (!shape_ok(m, 2)) {
            fail("product of chart " + std::to_string(i) + " has the wrong shape");
            return rep;
        }
        if (m[0] != Cochain::product(n)) fail("product of chart " + std::to_string(i) + " does not reduce to the commutative product");
        for (std::size_t a = 1; a < dim; ++a) {
            if (!is_normalized(m[a])) fail("product of chart " + std::to_string(i) + " is not unital");
            if (!chart_valid(cover, m[a], i, i)) fail("product of chart " + std::to_string(i) + " leaves the chart ring");
        }
    }
    for (const Chain& c : cover.chains(2)) {
        auto it = d.glue.find(c);
        if (it == d.glue.end() || !shape_ok(it->second, 1)) {
            fail("gluing " + chain_str(c) + " missing or malformed");
            return rep;
        }
        if (it->second[0] != Cochain::identity(n)) fail("gluing " + chain_str(c) + " does not reduce to the restriction");
        for (std::size_t a = 1; a < dim; ++a) {
            if (!is_normalized(it->second[a])) fail("gluing " + chain_str(c) + " does not fix 1");
            if (!chart_valid(cover, it->second[a], c[0], c[1])) fail("gluing " + chain_str(c) + " leaves the chart ring");
        }
    }
    if (d.mode == Mode::Twisted) {
        for (const Chain& c : cover.chains(3)) {
            auto it = d.twist.find(c);
            if (it == d.twist.end() || !shape_ok(it->second, 0)) {
                fail("twist " + chain_str(c) + " missing or malformed");
                return rep;
            }
            if (it->second[0] != Cochain::one(n)) fail("twist " + chain_str(c) + " is not 1 modulo the maximal ideal");
            for (std::size_t a = 1; a < dim; ++a)
                if (!chart_valid(cover, it->second[a], c[2], c[2])) fail("twist " + chain_str(c) + " leaves the chart ring");
        }
    } else if (!d.twist.empty()) {
        fail("untwisted deformation carries twists");
    }
    if (!rep.ok()) return rep;

    for (int i = 0; i < cover.size(); ++i)
        if (!is_zero(assoc_defect(r, d.mult[static_cast<std::size_t>(i)], nullptr)))
            fail("product of chart " + std::to_string(i) + " is not associative");
    for (const Chain& c : cover.chains(2))
        if (!is_zero(mult_defect(r, d.glue.at(c), d.mult[static_cast<std::size_t>(c[0])], d.mult[static_cast<std::size_t>(c[1])], nullptr)))
            fail("gluing " + chain_str(c) + " is not multiplicative");
    for (const Chain& c : cover.chains(3))
        if (!is_zero(trans_defect(d, c[0], c[1], c[2], nullptr))) fail("gluings are not transitive on " + chain_str(c));
    if (d.mode == Mode::Twisted)
        for (const Chain& c : cover.chains(4))
            if (!is_zero(twist_defect(d, c[0], c[1], c[2], c[3], nullptr))) fail("twists are not compatible on " + chain_str(c));
    return rep;
}

void require_valid(const NCDeformation& d) {
    ValidityReport rep = check_validity(d);
    if (!rep.ok()) throw InvalidDeformation(rep.failures.front());
}

namespace detail {

NCDeformation transform_all(const NCDeformation& d, const RMat& m, const ArtinAlgebra& target) {
    NCDeformation out;
    out.geometry = d.geometry;
    out.base = target;
    out.mode = d.mode;
    for (const Family& f : d.mult) out.mult.push_back(transform_coefficients(m, f));
    for (const auto& [c, f] : d.glue) out.glue.emplace(c, transform_coefficients(m, f));
    for (const auto& [c, f] : d.twist) out.twist.emplace(c, transform_coefficients(m, f));
    return out;
}

}  // namespace detail

NCDeformation pushforward(const NCDeformation& d, const AlgebraMap& beta) {
    if (!(beta.source() == d.base)) throw InvalidBaseChange("base change does not start at the deformation's base ring");
    return transform_all(d, beta.matrix(), beta.target());
}

CandidateLift lift_candidate(const NCDeformation& d, const SmallExtension& e) {
    if (!(e.target() == d.base)) throw IncompatibleData("small extension does not end at the deformation's base ring");
    return {e, transform_all(d, e.section(), e.source())};
}

JCochain defect_f(const CandidateLift& l, int i, bool verify) {
    const NCDeformation& d = l.data;
    return kernel_part(l.extension, assoc_defect(d.base, d.mult.at(static_cast<std::size_t>(i)), filter(l, verify)), verify);
}

JCochain defect_g(const CandidateLift& l, int i, int j, bool verify) {
    const NCDeformation& d = l.data;
    Family g = mult_defect(d.base, lookup(d.glue, {i, j}, "gluing"), d.mult.at(static_cast<std::size_t>(i)),
                           d.mult.at(static_cast<std::size_t>(j)), filter(l, verify));
    return kernel_part(l.extension, g, verify);
}

JCochain defect_h(const CandidateLift& l, int i, int j, int k, bool verify) {
    return kernel_part(l.extension, trans_defect(l.data, i, j, k, filter(l, verify)), verify);
}

JCochain defect_sigma(const CandidateLift& l, int i, int j, int k, int m, bool verify) {
    if (l.data.mode != Mode::Twisted) throw Unsupported("sigma is only defined for twisted deformations");
    return kernel_part(l.extension, twist_defect(l.data, i, j, k, m, filter(l, verify)), verify);
}

Defects all_defects(const CandidateLift& l, bool verify) {
    Defects out;
    const Cover& cover = l.data.cover();
    for (int i = 0; i < cover.size(); ++i) out.f.emplace(i, defect_f(l, i, verify));
    for (const Chain& c : cover.chains(2)) out.g.emplace(c, defect_g(l, c[0], c[1], verify));
    for (const Chain& c : cover.chains(3)) out.h.emplace(c, defect_h(l, c[0], c[1], c[2], verify));
    if (l.data.mode == Mode::Twisted)
        for (const Chain& c : cover.chains(4)) out.sigma.emplace(c, defect_sigma(l, c[0], c[1], c[2], c[3], verify));
    return out;
}

CandidateLift transform(const CandidateLift& l, const ChoiceData& choice) {
    CandidateLift out = l;
    NCDeformation& d = out.data;
    const int n = d.nvars();
    for (const auto& [i, b] : choice.b) add_to(d.mult.at(static_cast<std::size_t>(i)), from_kernel(l.extension, b, n, 2));
    for (const auto& [c, v] : choice.c) {
        auto it = d.glue.find(c);
        if (it == d.glue.end()) throw IncompatibleData("gluing change on a non-chain " + chain_str(c));
        add_to(it->second, from_kernel(l.extension, v, n, 1));
    }
    if (!choice.t.empty() && d.mode != Mode::Twisted) throw Unsupported("twist changes need a twisted deformation");
    for (const auto& [c, v] : choice.t) {
        auto it = d.twist.find(c);
        if (it == d.twist.end()) throw IncompatibleData("twist change on a non-chain " + chain_str(c));
        add_to(it->second, from_kernel(l.extension, v, n, 0));
    }
    return out;
}

}  // namespace ncdef
