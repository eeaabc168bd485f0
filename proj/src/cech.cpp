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


#include "ncdef/cech.hpp"

namespace ncdef {

Poset::Poset(int size, const std::vector<std::pair<int, int>>& relations) : n_(size) {
    if (size < 1) throw IncompatibleData("a poset needs at least one element");
    const auto at = [this](int a, int b) { return static_cast<std::size_t>(a * n_ + b); };
    leq_.assign(static_cast<std::size_t>(n_ * n_), false);
    for (int a = 0; a < n_; ++a) leq_[at(a, a)] = true;
    for (auto [a, b] : relations) {
        if (a < 0 || b < 0 || a >= n_ || b >= n_) throw IncompatibleData("poset relation out of range");
        if (a >= b) throw IncompatibleData("element numbering must extend the order");
        leq_[at(a, b)] = true;
    }
    // Relations only go upwards in the numbering, so one sweep closes them.
    for (int k = 0; k < n_; ++k)
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (leq(a, k) && leq(k, b)) leq_[at(a, b)] = true;

    join_.assign(static_cast<std::size_t>(n_ * n_), -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            int best = -1;
            for (int u = 0; u < n_; ++u) {
                if (!leq(a, u) || !leq(b, u)) continue;
                if (best < 0 || leq(u, best)) best = u;
            }
            for (int u = 0; u < n_ && best >= 0; ++u)
                if (leq(a, u) && leq(b, u) && !leq(best, u)) best = -1;
            if (best < 0)
                throw IncompatibleData("elements " + std::to_string(a) + " and " + std::to_string(b) + " have no join");
            join_[at(a, b)] = best;
        }

    chains_.assign(static_cast<std::size_t>(n_ + 1), {});
    for (int a = 0; a < n_; ++a) chains_[1].push_back({a});
    for (int len = 2; len <= n_; ++len)
        for (const Chain& c : chains_[static_cast<std::size_t>(len - 1)])
            for (int b = c.back() + 1; b < n_; ++b)
                if (less(c.back(), b)) {
                    Chain next = c;
                    next.push_back(b);
                    chains_[static_cast<std::size_t>(len)].push_back(std::move(next));
                }
}

Poset Poset::of(const Cover& cover) { return Poset(cover.size(), cover.relations()); }

int Poset::join(const Chain& tuple) const {
    if (tuple.empty()) throw ArityMismatch("join of an empty tuple");
    int j = tuple.front();
    for (int a : tuple) j = join(j, a);
    return j;
}

const std::vector<Chain>& Poset::chains(int len) const {
    static const std::vector<Chain> none;
    if (len < 0 || len >= static_cast<int>(chains_.size())) return none;
    return chains_[static_cast<std::size_t>(len)];
}

bool Poset::is_chain(const Chain& tuple) const {
    for (std::size_t k = 1; k < tuple.size(); ++k)
        if (!less(tuple[k - 1], tuple[k])) return false;
    return true;
}

OrderedCochain<PolyVector> polyvector_cochain(const Cover& cover, int p, int q) {
    return OrderedCochain<PolyVector>(q, PolyVector(cover.dim(), p));
}

PVCochain to_pv(const OrderedCochain<PolyVector>& c) {
    PVCochain out;
    for (const auto& [chain, v] : c.values)
        if (!v.is_zero()) out.emplace(chain, v);
    return out;
}

OrderedCochain<PolyVector> from_pv(const PVCochain& c, int n, int p, int q) {
    OrderedCochain<PolyVector> out(q, PolyVector(n, p));
    for (const auto& [chain, v] : c) out.add(chain, v);
    return out;
}

CechClass class_of(const GradedCech& complex, const OrderedCochain<PolyVector>& c) {
    CechClass out;
    out.p = complex.degree();
    out.q = c.degree;
    out.representative = c;
    out.coordinates = complex.class_coordinates(to_pv(c), c.degree);
    return out;
}

std::optional<OrderedCochain<PolyVector>> is_coboundary(const GradedCech& complex, const OrderedCochain<PolyVector>& c) {
    complex.check_cocycle(to_pv(c), c.degree);
    if (c.degree == 0) {
        if (c.is_zero()) return OrderedCochain<PolyVector>(-1, c.zero);
        return std::nullopt;
    }
    auto b = complex.primitive(to_pv(c), c.degree);
    if (!b) return std::nullopt;
    return from_pv(*b, complex.cover().dim(), complex.degree(), c.degree - 1);
}

}  // namespace ncdef
