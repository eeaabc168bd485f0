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


#ifndef NCDEF_POLY_HPP
#define NCDEF_POLY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ncdef/errors.hpp"
#include "ncdef/scalar.hpp"

namespace ncdef {

using Exponent = std::vector<int>;

/// Sparse multivariate Laurent polynomial with a fixed number of variables.
/// Canonical: no zero coefficients are stored, so structural equality is
/// polynomial equality.
template <class S>
class Poly {
public:
    using Terms = std::map<Exponent, S>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}
    Poly(int nvars, const S& c) : nvars_(nvars) {
        if (!ncdef::is_zero(c)) terms_.emplace(Exponent(static_cast<std::size_t>(nvars), 0), c);
    }

    static Poly monomial(const Exponent& e, const S& c = S(1)) {
        Poly p(static_cast<int>(e.size()));
        if (!ncdef::is_zero(c)) p.terms_.emplace(e, c);
        return p;
    }
    static Poly variable(int nvars, int k) {
        Exponent e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(k)] = 1;
        return monomial(e);
    }

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    S coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? S(0) : it->second;
    }

    /// Adds c * x^e.
    void add_term(const Exponent& e, const S& c) {
        if (ncdef::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (ncdef::is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const S& s) {
        if (ncdef::is_zero(s)) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= S(-1); }
    friend Poly operator*(Poly a, const S& s) { return a *= s; }
    friend Poly operator*(const S& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out(a.nvars_ ? a.nvars_ : b.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e = ea;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int k) const {
        Poly acc(nvars_, S(1)), base = *this;
        while (k > 0) {
            if (k & 1) acc *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return acc;
    }

    /// Total degree (max over terms of the exponent sum); -1 for zero.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// Maximum exponent sum over the variable block [first, first+count).
    int block_degree(int first, int count) const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k = first; k < first + count; ++k) s += e[static_cast<std::size_t>(k)];
            d = std::max(d, s);
        }
        return d;
    }

    bool has_negative_exponent() const {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x < 0) return true;
        return false;
    }

    /// Value at an integer point (nonnegative exponents only unless the point
    /// coordinate is invertible).
    S evaluate(const std::vector<S>& point) const {
        S acc(0);
        for (const auto& [e, c] : terms_) {
            S t = c;
            for (std::size_t k = 0; k < e.size(); ++k) {
                int x = e[k];
                if (x == 0) continue;
                S base = x > 0 ? point[k] : inv(point[k]);
                for (int r = 0; r < (x > 0 ? x : -x); ++r) t *= base;
            }
            acc += t;
        }
        return acc;
    }

    /// Substitutes variable k -> images[k] (all images share one variable
    /// count). Negative exponents are not supported.
    Poly substitute(const std::vector<Poly>& images) const {
        const int out_vars = images.empty() ? 0 : images.front().nvars();
        Poly out(out_vars);
        std::vector<std::vector<Poly>> powers(images.size());
        auto power_of = [&](std::size_t k, int e) -> const Poly& {
            auto& cache = powers[k];
            if (cache.empty()) cache.push_back(Poly(out_vars, S(1)));
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[k]);
            return cache[static_cast<std::size_t>(e)];
        };
        for (const auto& [e, c] : terms_) {
            Poly t(out_vars, c);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] < 0) throw Unsupported("Poly::substitute: negative exponent");
                if (e[k] > 0) t *= power_of(k, e[k]);
            }
            out += t;
        }
        return out;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (const auto& [e, c] : terms_) fn(e, c);
    }

private:
    void adopt(const Poly& o) {
        if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    }
    int nvars_ = 0;
    Terms terms_;
};

using QPoly = Poly<Rational>;

/// Renders a polynomial as "3/2*x^2*y^-1 - z + 1" with the given names.
std::string to_string(const QPoly& p, const std::vector<std::string>& names);

/// Parses the format produced by to_string (also accepts '**' for powers and
/// implicit coefficient 1). Unknown names raise ParseError.
QPoly parse_poly(const std::string& text, const std::vector<std::string>& names);

std::string exponent_to_string(const Exponent& e, const std::vector<std::string>& names);

}  // namespace ncdef

#endif  // NCDEF_POLY_HPP
