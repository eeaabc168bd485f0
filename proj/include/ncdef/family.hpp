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


#ifndef NCDEF_FAMILY_HPP
#define NCDEF_FAMILY_HPP

#include <vector>

#include "ncdef/artin.hpp"
#include "ncdef/cochain.hpp"

namespace ncdef {

/// R-multilinear polydifferential operator on R (x) A written as
/// sum_a r_a (x) F[a], where r_a runs over the standard basis of R.
/// Operators are extended R-multilinearly, so composing two families
/// multiplies their coefficients through the structure constants of R.
using Family = std::vector<Cochain>;

Family zero_family(const ArtinAlgebra& r, int nvars, int arity);
/// 1 (x) c.
Family constant_family(const ArtinAlgebra& r, const Cochain& c);
bool is_zero(const Family& f);

Family& add_to(Family& a, const Family& b);
Family& subtract_from(Family& a, const Family& b);
Family plus(Family a, const Family& b);
Family minus(Family a, const Family& b);

/// out[r] = sum_a m(r, a) f[a]: the family pushed through a linear map on
/// the coefficient ring (dim out = m.rows()).
Family transform_coefficients(const RMat& m, const Family& f);

/// outer(.., inner(..), ..) with inner substituted at `slot`. When targets is
/// given only those coefficient indices are computed (the rest stay zero).
Family compose(const ArtinAlgebra& r, const Family& outer, int slot, const Family& inner,
               const std::vector<int>* targets = nullptr);
Family compose_all(const ArtinAlgebra& r, const Family& outer, const std::vector<Family>& inner,
                   const std::vector<int>* targets = nullptr);

/// Product of two arity-0 families (elements of R (x) A) under `mult`.
Family multiply(const ArtinAlgebra& r, const Family& mult, const Family& x, const Family& y);
/// Inverse of a unit 1 + m (m in M (x) A) under `mult`, by the geometric series.
Family inverse(const ArtinAlgebra& r, const Family& mult, const Family& unit);

/// Coordinates of a family with values in J (x) A along the kernel basis of
/// the small extension. With verify set, throws IdentityViolation when the
/// family is not J-valued.
std::vector<Cochain> kernel_part(const SmallExtension& e, const Family& f, bool verify = true);
/// sum_k j_k (x) v[k] as a family over the source ring of e.
Family from_kernel(const SmallExtension& e, const std::vector<Cochain>& v, int nvars, int arity);

}  // namespace ncdef

#endif  // NCDEF_FAMILY_HPP
