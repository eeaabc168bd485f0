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


#ifndef NCDEF_COCHAIN_HPP
#define NCDEF_COCHAIN_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ncdef/polyvector.hpp"

namespace ncdef {

/// One term of a polydifferential operator in torus coordinates:
/// coeff * d^{slots[0]} (.) ... d^{slots[p-1]} (.), with d = d/dz.
struct SlotTerm {
    QPoly coeff;
    std::vector<Exponent> slots;
};

/// Polydifferential Hochschild p-cochain on the torus Laurent ring.
///
/// Stored in the Euler-operator form: for each weight c a polynomial F_c in
/// the p*n variables m_{s,a} (index s*n + a) so that
///   z^{m_1} (x) ... (x) z^{m_p}  |->  F_c(m_1, ..., m_p) z^{c + m_1 + ... + m_p}.
/// Every chart ring is a subring of the Laurent ring, so a cochain between
/// charts is the same object plus a validity condition (chart_valid).
class Cochain {
public:
    Cochain() = default;
    Cochain(int nvars, int arity) : n_(nvars), p_(arity) {}

    int nvars() const { return n_; }
    int arity() const { return p_; }
    const std::map<Weight, QPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    QPoly coeff(const Weight& c) const;
    void add(const Weight& c, const QPoly& f);

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(const Rational& s);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator-(Cochain a) { return a *= Rational(-1); }
    friend Cochain operator*(const Rational& s, Cochain a) { return a *= s; }
    friend bool operator==(const Cochain& a, const Cochain& b) { return a.p_ == b.p_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Cochain& a, const Cochain& b) { return !(a == b); }

    /// Largest total degree of F_c in the variables of one slot, i.e. the
    /// differential order of the operator in that slot.
    int order() const;

    /// The commutative product (arity 2), the identity (arity 1), the unit
    /// element 1 (arity 0) and multiplication-free elements of the ring.
    static Cochain product(int n);
    static Cochain identity(int n);
    static Cochain one(int n);
    static Cochain element(const QPoly& f);

    static Cochain from_slots(int n, int arity, const std::vector<SlotTerm>& terms);
    /// Canonical slot form: one term per (weight, derivative pattern).
    std::vector<SlotTerm> to_slots() const;
    std::string str(const std::vector<std::string>& torus_vars) const;

private:
    int n_ = 0, p_ = 0;
    std::map<Weight, QPoly> terms_;
};

/// c(args[0], ..., args[p-1]) for Laurent polynomial arguments.
QPoly evaluate(const Cochain& c, const std::vector<QPoly>& args);

/// Hochschild coboundary with coefficients in the ring itself (acting on both sides).
Cochain coboundary(const Cochain& c);

/// outer(a_1, .., a_{slot-1}, inner(a_slot, ..), ..) with slot counted from 0.
Cochain compose(const Cochain& outer, int slot, const Cochain& inner);
/// Substitutes inner[s] into slot s of outer for every slot.
Cochain compose_all(const Cochain& outer, const std::vector<Cochain>& inner);
/// (a cup b)(x_1..x_p, y_1..y_q) = a(x) * b(y).
Cochain cup(const Cochain& a, const Cochain& b);

/// Antisymmetrised first-order symbol, computed on the coordinate functions
/// of the chart (torus coordinates when chart is null). Coordinate-independent
/// on cocycles.
PolyVector hkr_symbol(const Cochain& c, const Chart* chart = nullptr);
/// HKR class of a cocycle; throws NotACocycle otherwise.
PolyVector hkr_class(const Cochain& c);
/// Inverse map: (1/p!) sum over permutations of the tensor of log derivations.
Cochain hkr_inverse(const PolyVector& w);

/// True when c vanishes as soon as one argument is the constant 1.
bool is_normalized(const Cochain& c);

/// True when c maps A_i^{(x)p} into A_j.
bool chart_valid(const Cover& cover, const Cochain& c, int i, int j);

/// Polynomial in the p*n slot variables for the chart operator
/// d_x^{alpha_1} (x) ... (x) d_x^{alpha_p} (coefficient 1, weight -U sum alpha).
QPoly chart_operator_symbol(const Chart& chart, const std::vector<Exponent>& alphas);

struct SolveStats {
    int order_used = 0;
    int order_bound = 0;
    int weights = 0;
};

/// Finds primitives B with dB = f among chart-valid operators A_i -> A_j,
/// weight by weight, raising the differential order up to a bound. Caches
/// the per-weight linear systems, so one solver should be reused for many
/// right-hand sides over the same cover. Thread-safe.
class CoboundarySolver {
public:
    /// In normalised mode primitives vanish whenever an argument is 1; a
    /// normalised cocycle with zero class always has such a primitive.
    explicit CoboundarySolver(const Cover& cover, bool normalized = false) : cover_(cover), normalized_(normalized) {}
    const Cover& cover() const { return cover_; }
    bool normalized() const { return normalized_; }

    /// For each f (all of one arity): nullopt if hkr_class(f) != 0, otherwise
    /// a primitive normalised to have zero antisymmetric first-order symbol on
    /// chart i. Throws NotACocycle for non-closed input and BoundsTooSmall if
    /// no primitive exists up to max_order (0 means automatic).
    std::vector<std::optional<Cochain>> solve(const std::vector<Cochain>& fs, int i, int j, int max_order = 0,
                                              SolveStats* stats = nullptr) const;
    std::optional<Cochain> solve(const Cochain& f, int i, int j, int max_order = 0, SolveStats* stats = nullptr) const;

private:
    struct System;
    std::shared_ptr<const System> system(int i, int j, int arity, int order, const Weight& c) const;

    const Cover& cover_;
    bool normalized_ = false;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, int, int, Weight>, std::shared_ptr<const System>> cache_;
};

}  // namespace ncdef

#endif  // NCDEF_COCHAIN_HPP
