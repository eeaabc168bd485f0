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


#include "ncdef/family.hpp"

#include "ncdef/errors.hpp"
#include "ncdef/parallel.hpp"

namespace ncdef {

Family zero_family(const ArtinAlgebra& r, int nvars, int arity) {
    return Family(static_cast<std::size_t>(r.dim()), Cochain(nvars, arity));
}

Family constant_family(const ArtinAlgebra& r, const Cochain& c) {
    Family f = zero_family(r, c.nvars(), c.arity());
    f[0] = c;
    return f;
}

bool is_zero(const Family& f) {
    for (const Cochain& c : f)
        if (!c.is_zero()) return false;
    return true;
}

Family& add_to(Family& a, const Family& b) {
    if (a.size() != b.size()) throw IncompatibleData("families over different base rings");
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

Family& subtract_from(Family& a, const Family& b) {
    if (a.size() != b.size()) throw IncompatibleData("families over different base rings");
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

Family plus(Family a, const Family& b) { return add_to(a, b); }
Family minus(Family a, const Family& b) { return subtract_from(a, b); }

Family transform_coefficients(const RMat& m, const Family& f) {
    if (m.cols() != static_cast<Eigen::Index>(f.size())) throw IncompatibleData("coefficient map has the wrong size");
    const Cochain proto = f.empty() ? Cochain() : Cochain(f.front().nvars(), f.front().arity());
    Family out(static_cast<std::size_t>(m.rows()), proto);
    for (Eigen::Index a = 0; a < m.cols(); ++a) {
        const Cochain& src = f[static_cast<std::size_t>(a)];
        if (src.is_zero()) continue;
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (!m(r, a).is_zero()) out[static_cast<std::size_t>(r)] += m(r, a) * src;
    }
    return out;
}

Family compose(const ArtinAlgebra& r, const Family& outer, int slot, const Family& inner, const std::vector<int>* targets) {
    const int dim = r.dim();
    if (static_cast<int>(outer.size()) != dim || static_cast<int>(inner.size()) != dim)
        throw IncompatibleData("composing families over different base rings");
    std::vector<bool> wanted(static_cast<std::size_t>(dim), targets == nullptr);
    if (targets)
        for (int t : *targets) wanted[static_cast<std::size_t>(t)] = true;

    struct Job {
        int a, b;
    };
    std::vector<Job> jobs;
    for (int a = 0; a < dim; ++a) {
        if (outer[static_cast<std::size_t>(a)].is_zero()) continue;
        for (int b = 0; b < dim; ++b) {
            if (inner[static_cast<std::size_t>(b)].is_zero()) continue;
            bool any = false;
            for (const auto& [c, x] : r.product_terms(a, b))
                if (wanted[static_cast<std::size_t>(c)]) any = true;
            if (any) jobs.push_back({a, b});
        }
    }
    std::vector<Cochain> parts(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t k) {
        parts[k] = compose(outer[static_cast<std::size_t>(jobs[k].a)], slot, inner[static_cast<std::size_t>(jobs[k].b)]);
    });

    const int n = outer.front().nvars();
    const int arity = outer.front().arity() + inner.front().arity() - 1;
    Family out(static_cast<std::size_t>(dim), Cochain(n, arity));
    for (std::size_t k = 0; k < jobs.size(); ++k)
        for (const auto& [c, x] : r.product_terms(jobs[k].a, jobs[k].b))
            if (wanted[static_cast<std::size_t>(c)]) out[static_cast<std::size_t>(c)] += x * parts[k];
    return out;
}

Family compose_all(const ArtinAlgebra& r, const Family& outer, const std::vector<Family>& inner, const std::vector<int>* targets) {
    const int p = outer.front().arity();
    if (static_cast<int>(inner.size()) != p) throw ArityMismatch("compose_all needs one inner family per slot");
    // Intermediate compositions need every coefficient; only the last is filtered.
    Family out = outer;
    for (int s = p - 1; s >= 0; --s) out = compose(r, out, s, inner[static_cast<std::size_t>(s)], s == 0 ? targets : nullptr);
    return out;
}

Family multiply(const ArtinAlgebra& r, const Family& mult, const Family& x, const Family& y) {
    return compose_all(r, mult, {x, y});
}

Family inverse(const ArtinAlgebra& r, const Family& mult, const Family& unit) {
    const int n = unit.front().nvars();
    Family one = constant_family(r, Cochain::one(n));
    Family nil = minus(unit, one);
    if (!nil[0].is_zero()) throw IncompatibleData("element is not congruent to 1 modulo the maximal ideal");
    Family out = one;
    Family power = one;
    for (int k = 1; k <= r.dim(); ++k) {
        power = multiply(r, mult, power, nil);
        if (is_zero(power)) break;
        if (k % 2) subtract_from(out, power);
        else add_to(out, power);
    }
    return out;
}

std::vector<Cochain> kernel_part(const SmallExtension& e, const Family& f, bool verify) {
    const auto& piv = e.kernel_pivots();
    std::vector<Cochain> out;
    out.reserve(piv.size());
    for (int p : piv) out.push_back(f[static_cast<std::size_t>(p)]);
    if (verify && !f.empty()) {
        Family back = from_kernel(e, out, f.front().nvars(), f.front().arity());
        if (minus(back, f) != Family(f.size(), Cochain(f.front().nvars(), f.front().arity())))
            throw IdentityViolation("defect is not divisible by the kernel of the small extension");
    }
    return out;
}

Family from_kernel(const SmallExtension& e, const std::vector<Cochain>& v, int nvars, int arity) {
    const RMat& k = e.kernel();
    Family out(static_cast<std::size_t>(k.rows()), Cochain(nvars, arity));
    for (Eigen::Index col = 0; col < k.cols(); ++col) {
        const Cochain& c = v[static_cast<std::size_t>(col)];
        if (c.is_zero()) continue;
        for (Eigen::Index row = 0; row < k.rows(); ++row)
            if (!k(row, col).is_zero()) out[static_cast<std::size_t>(row)] += k(row, col) * c;
    }
    return out;
}

}  // namespace ncdef
