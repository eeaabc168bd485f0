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


#ifndef NCDEF_ARTIN_HPP
#define NCDEF_ARTIN_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncdef/linalg.hpp"
#include "ncdef/poly.hpp"

namespace ncdef {

/// R = k[t_1..t_n] / (I + m^{order+1}) with an explicit monomial basis.
///
/// Normal forms come from exact elimination of the ideal's span inside the
/// window of monomials of degree <= order (leading monomial = highest degree),
/// so two elements are equal iff their coordinate vectors are equal. Basis
/// index 0 is always the constant 1.
class ArtinAlgebra {
public:
    ArtinAlgebra() = default;
    ArtinAlgebra(std::vector<std::string> params, std::vector<QPoly> ideal, int order);

    const std::vector<std::string>& params() const { return params_; }
    const std::vector<QPoly>& ideal() const { return ideal_; }
    int order() const { return order_; }
    int nparams() const { return static_cast<int>(params_.size()); }
    int dim() const { return static_cast<int>(basis_.size()); }

    /// Standard monomials; index 0 is 1.
    const std::vector<Exponent>& basis() const { return basis_; }
    std::string basis_name(int k) const { return exponent_to_string(basis_[static_cast<std::size_t>(k)], params_); }

    RVec zero() const { return RVec::Zero(dim()); }
    RVec one() const { return unit(0); }
    RVec unit(int k) const {
        RVec v = zero();
        v(k) = 1;
        return v;
    }

    RVec normal_form(const QPoly& p) const;
    RVec monomial_nf(const Exponent& e) const;
    QPoly to_poly(const RVec& v) const;
    RVec multiply(const RVec& a, const RVec& b) const;

    /// Coordinates of basis(a)*basis(b).
    RVec product(int a, int b) const {
        RVec v = zero();
        for (const auto& [k, x] : product_terms(a, b)) v(k) = x;
        return v;
    }
    /// Nonzero structure constants of basis(a)*basis(b) as (index, coefficient).
    const std::vector<std::pair<int, Rational>>& product_terms(int a, int b) const {
        return (*sparse_table_)[static_cast<std::size_t>(a * dim() + b)];
    }

    /// Indices of the basis of the maximal ideal (everything except 1).
    std::vector<int> maximal_ideal_basis() const;
    bool is_in_maximal_ideal(const RVec& v) const { return v(0).is_zero(); }
    /// Smallest k with M^k = 0.
    int nilpotency_index() const;

    /// Inverse of a unit via the geometric series in the nilpotent part.
    RVec inverse(const RVec& u) const;

    friend bool operator==(const ArtinAlgebra& a, const ArtinAlgebra& b) {
        return a.params_ == b.params_ && a.basis_ == b.basis_ &&
               (a.sparse_table_ == b.sparse_table_ ||
                (a.sparse_table_ && b.sparse_table_ && *a.sparse_table_ == *b.sparse_table_));
    }
    std::string describe() const;

private:
    std::vector<std::string> params_;
    std::vector<QPoly> ideal_;
    int order_ = 0;
    std::vector<Exponent> basis_;
    // Shared between copies; algebras are immutable after construction.
    std::shared_ptr<const std::map<Exponent, RVec>> nf_;  // normal form of every window monomial
    std::shared_ptr<const std::vector<std::vector<std::pair<int, Rational>>>> sparse_table_;
};

/// k[t_1..t_n]/(gens + m^{order+1}). Throws InvalidIdeal for generators with a
/// nonzero constant term or negative exponents. order 0 gives the ground field.
ArtinAlgebra artin_quotient(const std::vector<std::string>& params, const std::vector<QPoly>& ideal_gens,
                            int order);

/// Local homomorphism of Artin algebras determined by images of parameters.
class AlgebraMap {
public:
    AlgebraMap() = default;
    /// images[a] is a polynomial in target's parameters. Throws
    /// InvalidBaseChange when the map is not local or not well defined.
    AlgebraMap(const ArtinAlgebra& source, const ArtinAlgebra& target, const std::vector<QPoly>& images);

    /// Map that sends each parameter to the parameter with the same name in
    /// target (or to 0 if target lacks it).
    static AlgebraMap by_names(const ArtinAlgebra& source, const ArtinAlgebra& target);

    const ArtinAlgebra& source() const { return source_; }
    const ArtinAlgebra& target() const { return target_; }
    const std::vector<QPoly>& images() const { return images_; }
    /// dim(target) x dim(source) matrix in the standard bases.
    const RMat& matrix() const { return matrix_; }
    RVec apply(const RVec& v) const { return matrix_ * v; }

private:
    ArtinAlgebra source_, target_;
    std::vector<QPoly> images_;
    RMat matrix_;
};

AlgebraMap compose(const AlgebraMap& second, const AlgebraMap& first);

/// 0 -> J -> R' -> R -> 0 with M'J = 0.
class SmallExtension {
public:
    const ArtinAlgebra& source() const { return map_.source(); }  // R'
    const ArtinAlgebra& target() const { return map_.target(); }  // R
    const AlgebraMap& surjection() const { return map_; }

    int kernel_dim() const { return static_cast<int>(kernel_.cols()); }
    /// Columns are the J basis in R' coordinates, reduced so that
    /// kernel_pivots()[k] is the unique nonzero position of column k among the pivots.
    const RMat& kernel() const { return kernel_; }
    const std::vector<int>& kernel_pivots() const { return kernel_pivots_; }

    /// Linear section R -> R' (dim R' x dim R) with section(1) = 1.
    const RMat& section() const { return section_; }
    RVec lift(const RVec& r) const { return section_ * r; }

    /// Coordinates in the J basis of an element of J (throws if v is not in J).
    RVec kernel_coordinates(const RVec& v) const;
    bool in_kernel(const RVec& v) const;
    RVec kernel_element(int k) const { return kernel_.col(k); }

    friend SmallExtension small_extension(const ArtinAlgebra& source, const ArtinAlgebra& target,
                                          const std::vector<QPoly>& images);

private:
    AlgebraMap map_;
    RMat kernel_;
    std::vector<int> kernel_pivots_;
    RMat section_;
};

/// Builds R' -> R from images of R' parameters (polynomials in R's
/// parameters). Throws NotSurjective or NotSmall.
SmallExtension small_extension(const ArtinAlgebra& source, const ArtinAlgebra& target,
                               const std::vector<QPoly>& images);
/// Same, with parameters identified by name.
SmallExtension small_extension(const ArtinAlgebra& source, const ArtinAlgebra& target);

/// P/(I1 ∩ I2) together with its projections and the base P/(I1 + I2).
struct FiberProduct {
    ArtinAlgebra algebra;  // R'
    ArtinAlgebra base;     // R0
    AlgebraMap to_first, to_second;
    AlgebraMap first_to_base, second_to_base;
    /// dim R' x (dim R1 + dim R2): left inverse of (to_first; to_second) on the fiber product.
    RMat pair_to_algebra;
};

/// Fiber product of two quotients of a common polynomial ring over their
/// common quotient. Both algebras must use the same parameter list.
FiberProduct fiber_product(const ArtinAlgebra& first, const ArtinAlgebra& second);

/// Re-presents R over a larger parameter list, killing the new parameters.
ArtinAlgebra embed(const ArtinAlgebra& r, const std::vector<std::string>& params);

/// R/M^{k+1}.
ArtinAlgebra truncate(const ArtinAlgebra& r, int k);

}  // namespace ncdef

#endif  // NCDEF_ARTIN_HPP
