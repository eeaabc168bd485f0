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


#include <set>

#include "ncdef/deform.hpp"
#include "ncdef/errors.hpp"

namespace ncdef {

namespace {

const StageClass* failing_stage(const ObstructionReport& r) {
    for (const auto* s : {&r.xi30, &r.xi21, &r.xi03, &r.xi12})
        if (*s && !(*s)->is_zero()) return &**s;
    return nullptr;
}

// Relations killing every coordinate of the obstruction: for each class
// coordinate, the combination of kernel elements it multiplies.
std::vector<QPoly> obstruction_relations(const StageClass& s, const SmallExtension& e) {
    std::set<std::pair<Weight, Eigen::Index>> keys;
    for (const CechClass& c : s.components)
        for (const auto& [w, v] : c.coordinates)
            for (Eigen::Index x = 0; x < v.size(); ++x)
                if (!v(x).is_zero()) keys.insert({w, x});
    std::vector<QPoly> out;
    for (const auto& [w, x] : keys) {
        RVec acc = e.source().zero();
        for (std::size_t k = 0; k < s.components.size(); ++k) {
            auto it = s.components[k].coordinates.find(w);
            if (it == s.components[k].coordinates.end() || it->second(x).is_zero()) continue;
            acc += it->second(x) * e.kernel_element(static_cast<int>(k));
        }
        if (!acc.isZero()) out.push_back(e.source().to_poly(acc));
    }
    return out;
}

}  // namespace

HullResult hull(std::shared_ptr<const Geometry> g, const HullOptions& options) {
    if (options.order < 0) throw IncompatibleData("hull order must be nonnegative");
    HullResult res;
    res.tangent = t1_basis(*g, options.mode, options.max_degree);
    res.dims = tangent_obstruction_dims(*g, options.mode, options.max_degree);
    const int m = res.tangent.dim();

    std::vector<std::string> params;
    for (int a = 1; a <= m; ++a) params.push_back("t" + std::to_string(a));

    auto record = [&](const NCDeformation& d) {
        res.valid.push_back(!options.validate || check_validity(d).ok());
    };

    NCDeformation d = NCDeformation::trivial(g, artin_quotient(params, {}, 0), options.mode);
    if (m == 0 || options.order == 0) {
        res.base = d.base;
        res.family = d;
        for (int k = 1; k <= options.order; ++k) record(d);
        return res;
    }

    {
        const ArtinAlgebra r1 = artin_quotient(params, {}, 1);
        const SmallExtension e = small_extension(r1, d.base);
        T1Choice choice;
        for (int k = 0; k < e.kernel_dim(); ++k) {
            const Exponent& ex = r1.basis()[static_cast<std::size_t>(e.kernel_pivots()[static_cast<std::size_t>(k)])];
            std::vector<Rational> coords(static_cast<std::size_t>(m), Rational(0));
            for (int a = 0; a < m; ++a)
                if (ex[static_cast<std::size_t>(a)] == 1) coords[static_cast<std::size_t>(a)] = 1;
            choice.push_back(res.tangent.element(coords));
        }
        d = extend(d, e, choice);
        record(d);
    }

    for (int deg = 2; deg <= options.order; ++deg) {
        while (true) {
            const ArtinAlgebra next = artin_quotient(params, res.relations, deg);
            const SmallExtension e = small_extension(next, d.base);
            Analysis a = analyze(lift_candidate(d, e));
            if (a.report.extendible()) {
                d = std::move(a.repaired->data);
                break;
            }
            std::vector<QPoly> rel = obstruction_relations(*failing_stage(a.report), e);
            if (rel.empty()) throw IdentityViolation("nonzero obstruction produced no relation");
            res.relations.insert(res.relations.end(), rel.begin(), rel.end());
        }
        record(d);
    }
    res.base = d.base;
    res.family = d;
    return res;
}

}  // namespace ncdef
