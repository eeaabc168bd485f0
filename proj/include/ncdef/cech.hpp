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


#ifndef NCDEF_CECH_HPP
#define NCDEF_CECH_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/cohomology.hpp"
#include "ncdef/cover.hpp"
#include "ncdef/errors.hpp"

namespace ncdef {

/// Finite poset in which every pair of elements has a least upper bound.
/// Elements are 0..size-1 and the numbering must extend the order.
class Poset {
public:
    Poset() = default;
    /// Builds the transitive closure of the given relations (a, b), a < b.
    /// Throws IncompatibleData when a join is missing or the numbering
    /// contradicts the order.
    Poset(int size, const std::vector<std::pair<int, int>>& relations);
    static Poset of(const Cover& cover);

    int size() const { return n_; }
    bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a * n_ + b)]; }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    int join(int a, int b) const { return join_[static_cast<std::size_t>(a * n_ + b)]; }
    /// Join of a nonempty tuple.
    int join(const Chain& tuple) const;
    /// Strict chains a_0 < ... < a_{len-1}, lexicographic.
    const std::vector<Chain>& chains(int len) const;
    /// True when the tuple is strictly increasing in the order.
    bool is_chain(const Chain& tuple) const;

private:
    int n_ = 0;
    std::vector<bool> leq_;
    std::vector<int> join_;
    std::vector<std::vector<Chain>> chains_;
};

/// Čech cochain of degree q on the poset: values on strict chains
/// i_0 < ... < i_q, each read in the chart of i_q. Chains without an entry
/// carry zero. The value type E is an abelian group with +=, -=, unary minus
/// and ==; `zero` is its neutral element.
template <class E>
struct OrderedCochain {
    int degree = 0;
    E zero{};
    std::map<Chain, E> values;

    OrderedCochain() = default;
    OrderedCochain(int q, E z) : degree(q), zero(std::move(z)) {}

    const E& at(const Chain& chain) const {
        auto it = values.find(chain);
        return it == values.end() ? zero : it->second;
    }
    void add(const Chain& chain, const E& v) {
        auto [it, fresh] = values.emplace(chain, v);
        if (!fresh) it->second += v;
        if (it->second == zero) values.erase(it);
    }
    bool is_zero() const {
        for (const auto& [c, v] : values)
            if (!(v == zero)) return false;
        return true;
    }
    OrderedCochain& operator+=(const OrderedCochain& o) {
        for (const auto& [c, v] : o.values) add(c, v);
        return *this;
    }
    OrderedCochain& operator-=(const OrderedCochain& o) {
        for (const auto& [c, v] : o.values) add(c, -v);
        return *this;
    }
    friend OrderedCochain operator+(OrderedCochain a, const OrderedCochain& b) { return a += b; }
    friend OrderedCochain operator-(OrderedCochain a, const OrderedCochain& b) { return a -= b; }
    friend bool operator==(const OrderedCochain& a, const OrderedCochain& b) { return (a - b).is_zero(); }
};

/// Transport of a value from the chart of `from` to the chart of `to`
/// (from <= to). The default is the identity, which is what restriction is
/// for every toric cover since all chart rings sit inside the torus ring.
template <class E>
using Transport = std::function<E(const E&, int from, int to)>;

/// (dc)(i_0 < ... < i_{q+1}) = sum over positions of (-1)^{q+1-pos} c(face),
/// with the face that drops i_{q+1} transported up to i_{q+1}.
template <class E>
OrderedCochain<E> cech_d(const Poset& poset, const OrderedCochain<E>& c, const Transport<E>& transport = {}) {
    const int q = c.degree;
    OrderedCochain<E> out(q + 1, c.zero);
    for (const Chain& chain : poset.chains(q + 2)) {
        E acc = c.zero;
        for (int pos = 0; pos <= q + 1; ++pos) {
            Chain face;
            for (int t = 0; t <= q + 1; ++t)
                if (t != pos) face.push_back(chain[static_cast<std::size_t>(t)]);
            auto it = c.values.find(face);
            if (it == c.values.end()) continue;
            E v = it->second;
            if (pos == q + 1 && transport) v = transport(v, face.back(), chain.back());
            if ((q + 1 - pos) % 2) acc -= v;
            else acc += v;
        }
        if (!(acc == c.zero)) out.values.emplace(chain, std::move(acc));
    }
    return out;
}

/// Throws NotClosed (naming a failing chain) unless cech_d(c) = 0.
template <class E>
void check_closed(const Poset& poset, const OrderedCochain<E>& c, const Transport<E>& transport = {}) {
    auto d = cech_d(poset, c, transport);
    if (d.values.empty()) return;
    std::string where;
    for (int v : d.values.begin()->first) where += (where.empty() ? "" : ",") + std::to_string(v);
    throw NotClosed("Cech cochain is not closed at chain (" + where + ")");
}

/// Cochain defined on arbitrary index tuples (repeats and incomparable
/// indices allowed); the value at a tuple lives in the chart of its join.
template <class E>
class TotalCochain {
public:
    TotalCochain(int degree, E zero, std::function<E(const Chain&)> eval)
        : degree_(degree), zero_(std::move(zero)), eval_(std::move(eval)) {}
    int degree() const { return degree_; }
    const E& zero() const { return zero_; }
    E operator()(const Chain& tuple) const {
        if (static_cast<int>(tuple.size()) != degree_ + 1) throw ArityMismatch("tuple length does not match the cochain degree");
        return eval_(tuple);
    }

private:
    int degree_;
    E zero_;
    std::function<E(const Chain&)> eval_;
};

/// Alternating sum of the total cochain over the faces of a tuple with
/// degree+2 entries, every term transported to the join of the tuple.
template <class E>
E total_coboundary(const Poset& poset, const TotalCochain<E>& h, const Chain& tuple, const Transport<E>& transport = {}) {
    const int last = static_cast<int>(tuple.size()) - 1;
    const int top = poset.join(tuple);
    E acc = h.zero();
    for (int pos = 0; pos <= last; ++pos) {
        Chain face;
        for (int t = 0; t <= last; ++t)
            if (t != pos) face.push_back(tuple[static_cast<std::size_t>(t)]);
        E v = h(face);
        if (transport) v = transport(v, poset.join(face), top);
        if ((last - pos) % 2) acc -= v;
        else acc += v;
    }
    return acc;
}

/// Extension of an ordered cocycle to arbitrary tuples by
/// h~(a_0, ..., a_q) = sum over permutations s of sgn(s) h(j_0, ..., j_q),
/// j_k = join(a_{s(0)}, ..., a_{s(k)}); terms whose j has a repeat vanish.
/// On strict chains this returns h. Throws NotClosed for non-cocycles.
template <class E>
TotalCochain<E> extend_Sn(const Poset& poset, const OrderedCochain<E>& h, const Transport<E>& transport = {}) {
    check_closed(poset, h, transport);
    const Poset* ps = &poset;
    auto data = std::make_shared<const OrderedCochain<E>>(h);
    return TotalCochain<E>(h.degree, h.zero, [ps, data](const Chain& a) {
        const std::size_t n = a.size();
        std::vector<int> perm(n);
        for (std::size_t k = 0; k < n; ++k) perm[k] = static_cast<int>(k);
        E acc = data->zero;
        do {
            Chain j;
            int run = -1;
            bool repeat = false;
            for (std::size_t k = 0; k < n && !repeat; ++k) {
                int next = run < 0 ? a[static_cast<std::size_t>(perm[k])] : ps->join(run, a[static_cast<std::size_t>(perm[k])]);
                if (next == run) repeat = true;
                run = next;
                j.push_back(run);
            }
            if (repeat) continue;
            auto it = data->values.find(j);
            if (it == data->values.end()) continue;
            int inversions = 0;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = x + 1; y < n; ++y)
                    if (perm[x] > perm[y]) ++inversions;
            if (inversions % 2) acc -= it->second;
            else acc += it->second;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return acc;
    });
}

/// Extension of degree-1 data by the max rule v(a, b) = g(a, l) - g(b, l),
/// l = join(a, b), where g(l, l) = 0. Needs no cocycle condition.
template <class E>
TotalCochain<E> unorder_pairwise(const Poset& poset, const OrderedCochain<E>& g) {
    if (g.degree != 1) throw ArityMismatch("unorder_pairwise expects degree-1 data");
    const Poset* ps = &poset;
    auto data = std::make_shared<const OrderedCochain<E>>(g);
    return TotalCochain<E>(1, g.zero, [ps, data](const Chain& a) {
        const int l = ps->join(a[0], a[1]);
        E out = data->zero;
        if (a[0] != l) out += data->at({a[0], l});
        if (a[1] != l) out -= data->at({a[1], l});
        return out;
    });
}

/// Class of a polyvector-valued Čech cocycle in H^q(wedge^p T).
struct CechClass {
    int p = 0;
    int q = 0;
    OrderedCochain<PolyVector> representative;
    /// Coordinates against GradedCech::class_basis, per character; empty
    /// exactly for the zero class.
    std::map<Weight, RVec> coordinates;

    bool is_zero() const { return coordinates.empty(); }
};

OrderedCochain<PolyVector> polyvector_cochain(const Cover& cover, int p, int q);
PVCochain to_pv(const OrderedCochain<PolyVector>& c);
OrderedCochain<PolyVector> from_pv(const PVCochain& c, int n, int p, int q);

/// Throws NotClosed when c is not a cocycle.
CechClass class_of(const GradedCech& complex, const OrderedCochain<PolyVector>& c);
/// b with cech_d(b) = c, or nullopt when the class of c is nonzero.
std::optional<OrderedCochain<PolyVector>> is_coboundary(const GradedCech& complex, const OrderedCochain<PolyVector>& c);

}  // namespace ncdef

#endif  // NCDEF_CECH_HPP
