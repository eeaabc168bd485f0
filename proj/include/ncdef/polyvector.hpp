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


#ifndef NCDEF_POLYVECTOR_HPP
#define NCDEF_POLYVECTOR_HPP

#include <map>
#include <string>
#include <vector>

#include "ncdef/cover.hpp"
#include "ncdef/linalg.hpp"

namespace ncdef {

using Subset = std::vector<int>;

long binomial(int n, int k);
/// Sorted k-subsets of {0..n-1} in lexicographic order.
const std::vector<Subset>& subsets(int n, int k);
int subset_index(int n, const Subset& s);

/// Polyvector field of degree p on the torus, written in the log-derivation
/// basis theta_a = z_a d/dz_a: sum over characters c of z^c * (vector in
/// wedge^p k^n indexed by subsets(n, p)). Zero vectors are never stored.
class PolyVector {
public:
    PolyVector() = default;
    PolyVector(int n, int p) : n_(n), p_(p) {}

    int nvars() const { return n_; }
    int degree() const { return p_; }
    int rank() const { return static_cast<int>(binomial(n_, p_)); }
    const std::map<Weight, RVec>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RVec coeff(const Weight& c) const;
    void add(const Weight& c, const RVec& v);
    void add_term(const Weight& c, const Subset& s, const Rational& x);

    PolyVector& operator+=(const PolyVector& o);
    PolyVector& operator-=(const PolyVector& o);
    PolyVector& operator*=(const Rational& s);
    friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
    friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
    friend PolyVector operator-(PolyVector a) { return a *= Rational(-1); }
    friend PolyVector operator*(const Rational& s, PolyVector a) { return a *= s; }
    friend bool operator==(const PolyVector& a, const PolyVector& b) {
        return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyVector& a, const PolyVector& b) { return !(a == b); }

    /// Every term is a section of wedge^p T over the chart.
    bool regular_on(const Chart& chart) const;

    /// Coefficients of d/dx_T (T a sorted subset of chart coordinates) as
    /// polynomials in the chart variables.
    std::map<Subset, QPoly> to_chart_form(const Chart& chart) const;
    static PolyVector from_chart_form(const Chart& chart, int p, const std::map<Subset, QPoly>& form);

    /// Human-readable chart form such as "-x1_0^2*d(x1_0)".
    std::string str(const Chart& chart) const;

private:
    int n_ = 0, p_ = 0;
    std::map<Weight, RVec> terms_;
};

/// A polyvector field together with the chart it lives on.
struct PolyVectorSection {
    int chart = 0;
    PolyVector field;
};

/// Restriction to a smaller open; throws NotComparable unless s.chart <= target.
PolyVectorSection restrict(const Cover& cover, const PolyVectorSection& s, int target);

/// theta_{x_T} in the torus basis: the wedge of the chart rays v_b, b in T.
RVec ray_wedge(const Chart& chart, const Subset& t);

/// Columns span the sections of wedge^p T of weight c over the chart.
RMat section_basis(const Chart& chart, int p, const Weight& c);

}  // namespace ncdef

#endif  // NCDEF_POLYVECTOR_HPP
