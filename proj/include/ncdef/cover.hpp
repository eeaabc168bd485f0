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


#ifndef NCDEF_COVER_HPP
#define NCDEF_COVER_HPP

#include <string>
#include <vector>

#include "ncdef/poly.hpp"

namespace ncdef {

/// Lattice point of the torus character group Z^n.
using Weight = std::vector<int>;
/// Strictly increasing index tuple i_0 < i_1 < ... in a poset.
using Chain = std::vector<int>;

/// A monomially presented affine chart U_i = Spec A_i inside the torus.
///
/// Coordinate b is x_b = z^{u_b}, where z_1..z_n are the torus coordinates
/// shared by every chart. Coordinates flagged as inverted are units of A_i.
/// The rays v_b are the rows of U^{-1}, so z^c = prod x_b^{<c, v_b>}.
struct Chart {
    int id = 0;
    std::string label;
    std::vector<std::string> vars;
    std::vector<Weight> coords;  // u_b
    std::vector<bool> inverted;
    std::vector<Weight> rays;    // v_b, filled in by Cover

    int dim() const { return static_cast<int>(coords.size()); }
    /// Exponent of z^c in the chart coordinates.
    Weight chart_exponent(const Weight& c) const;
    Weight torus_exponent(const Weight& w) const;
    /// z^c lies in A_i.
    bool regular(const Weight& c) const;
};

/// Charts indexed by a finite poset with joins; i < j means U_i contains U_j
/// and U_i ∩ U_j = U_{max(i,j)}.
class Cover {
public:
    Cover() = default;
    Cover(std::string name, std::vector<std::string> torus_vars, std::vector<Chart> charts,
          std::vector<std::pair<int, int>> relations);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(torus_vars_.size()); }
    int size() const { return static_cast<int>(charts_.size()); }
    const std::vector<std::string>& torus_vars() const { return torus_vars_; }
    const Chart& chart(int i) const { return charts_[static_cast<std::size_t>(i)]; }
    const std::vector<Chart>& charts() const { return charts_; }

    bool leq(int i, int j) const { return leq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    bool less(int i, int j) const { return i != j && leq(i, j); }
    bool comparable(int i, int j) const { return leq(i, j) || leq(j, i); }
    int join(int i, int j) const { return join_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /// Covering relations (i, j) with i < j given at construction, transitively closed.
    std::vector<std::pair<int, int>> relations() const;

    /// All chains with exactly len elements, in lexicographic order.
    const std::vector<Chain>& chains(int len) const;

    /// Chart polynomial (in chart i's variables) to a Laurent polynomial in torus variables.
    QPoly to_torus(int i, const QPoly& f) const;
    /// Torus Laurent polynomial to chart i's variables; throws IncompatibleData if not in A_i.
    QPoly to_chart(int i, const QPoly& f) const;
    bool in_chart(int i, const QPoly& f) const;
    /// phi0_ji on chart polynomials (i <= j); throws NotComparable otherwise.
    QPoly restrict(const QPoly& f, int i, int j) const;

    /// Re-checks the axioms: joins exist and are least upper bounds, charts are
    /// unimodular, rays of a smaller chart are among those of a larger one,
    /// and the intersection of charts is the chart of the join.
    void validate() const;

private:
    std::string name_;
    std::vector<std::string> torus_vars_;
    std::vector<Chart> charts_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<int>> join_;
    mutable std::vector<std::vector<Chain>> chains_;
};

/// affine(d), proj(n), product(proj(a),proj(b)) and chain(d) (affine d-space
/// covered by the localisations at x_1, x_1x_2, ..., totally ordered).
Cover builtin_variety(const std::string& name);

}  // namespace ncdef

#endif  // NCDEF_COVER_HPP
