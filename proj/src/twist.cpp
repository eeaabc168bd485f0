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


#include "deform_internal.hpp"
#include "ncdef/errors.hpp"

namespace ncdef {

void check_twist(const NCDeformation& d) {
    if (d.mode != Mode::Twisted) throw Unsupported("twist checks need a twisted deformation");
    const Cover& cover = d.cover();
    for (const Chain& c : cover.chains(3))
        if (!is_zero(detail::trans_defect(d, c[0], c[1], c[2], nullptr)))
            throw CompatibilityViolated("gluings are not transitive up to the twist on " + detail::chain_str(c));
    for (const Chain& c : cover.chains(4))
        if (!is_zero(detail::twist_defect(d, c[0], c[1], c[2], c[3], nullptr)))
            throw CompatibilityViolated("twists violate the tetrahedral identity on " + detail::chain_str(c));
}

CandidateLift change_twist(const CandidateLift& l, const std::map<Chain, JCochain>& t) {
    if (l.data.mode != Mode::Twisted) throw Unsupported("twist changes need a twisted deformation");
    const Cover& cover = l.data.cover();
    const int n = cover.dim();
    const int kdim = l.extension.kernel_dim();
    const ArtinAlgebra& r = l.data.base;

    ChoiceData choice;
    choice.t = t;
    CandidateLift out = transform(l, choice);

    auto t_at = [&](int a, int b, int c, std::size_t k) {
        auto it = t.find({a, b, c});
        return it == t.end() ? Cochain(n, 0) : it->second[k];
    };
    for (const Chain& c : cover.chains(4)) {
        JCochain before = defect_sigma(l, c[0], c[1], c[2], c[3]);
        JCochain after = defect_sigma(out, c[0], c[1], c[2], c[3]);
        for (int k = 0; k < kdim; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            const int i = c[0], j = c[1], m = c[2], q = c[3];
            Cochain want = -t_at(i, j, m, kk) + t_at(i, j, q, kk) - t_at(i, m, q, kk) + t_at(j, m, q, kk);
            if (after[kk] - before[kk] != want)
                throw IdentityViolation("twist change altered sigma by the wrong amount on " + detail::chain_str(c));
        }
    }
    // The algebra gluings and the conjugations they are compared with stay put.
    for (const Chain& c : cover.chains(3)) {
        const auto k = static_cast<std::size_t>(c[2]);
        const Family& phi = l.data.glue.at({c[0], c[2]});
        Family old_conj = detail::conjugate(r, l.data.mult[k], l.data.twist.at(c), phi);
        Family new_conj = detail::conjugate(r, out.data.mult[k], out.data.twist.at(c), phi);
        if (old_conj != new_conj) throw IdentityViolation("twist change altered a conjugated gluing on " + detail::chain_str(c));
    }
    if (out.data.glue != l.data.glue || out.data.mult != l.data.mult)
        throw IdentityViolation("twist change touched the algebra data");
    return out;
}

std::optional<std::map<Chain, JCochain>> twist_coboundary(const Geometry& g, const std::map<Chain, JCochain>& t,
                                                          int kernel_dim) {
    const Cover& cover = g.cover();
    const int n = cover.dim();
    std::map<Chain, JCochain> out;
    for (const Chain& c : cover.chains(2)) out[c].assign(static_cast<std::size_t>(kernel_dim), Cochain(n, 0));
    for (int k = 0; k < kernel_dim; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        OrderedCochain<PolyVector> z(2, PolyVector(n, 0));
        for (const auto& [c, v] : t) {
            if (c.size() != 3) throw ArityMismatch("twist changes live on 3-chains");
            if (v.size() != static_cast<std::size_t>(kernel_dim)) throw ArityMismatch("twist change has the wrong kernel length");
            z.add(c, hkr_class(v[kk]));
        }
        check_closed(g.poset(), z);
        auto s = is_coboundary(g.cech(0), z);
        if (!s) return std::nullopt;
        for (const auto& [c, v] : s->values) out[c][kk] = hkr_inverse(v);
    }
    return out;
}

}  // namespace ncdef
