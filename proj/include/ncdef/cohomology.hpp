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


#ifndef NCDEF_COHOMOLOGY_HPP
#define NCDEF_COHOMOLOGY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ncdef/polyvector.hpp"

namespace ncdef {

/// Čech cochain with polyvector values: chain i_0 < ... < i_q maps to a
/// section over the chart i_q. Missing chains carry zero.
using PVCochain = std::map<Chain, PolyVector>;

/// Per-character Čech complex of wedge^p T over the chart poset.
///
/// Restrictions are inclusions in the torus picture, so the complex splits
/// into finite-dimensional pieces, one per character c; each piece is built
/// lazily in coordinates relative to the section bases of the charts.
/// Thread-safe.
class GradedCech {
public:
    GradedCech(const Cover& cover, int p, int qmax = 3);

    const Cover& cover() const { return cover_; }
    int degree() const { return p_; }
    int qmax() const { return qmax_; }

    /// h^q of the weight-c piece for q = 0..qmax.
    std::vector<int> dims(const Weight& c) const;
    /// Cocycles whose classes form a basis of H^q in weight c.
    std::vector<PVCochain> class_basis(int q, const Weight& c) const;

    /// Throws NotClosed if z (a q-cochain) is not a cocycle.
    void check_cocycle(const PVCochain& z, int q) const;
    /// x with delta(x) = z, or nullopt when z is a nonzero class. For q = 0
    /// the only coboundary is 0.
    std::optional<PVCochain> primitive(const PVCochain& z, int q) const;
    /// Coordinates of the class of z relative to class_basis, per character.
    std::map<Weight, RVec> class_coordinates(const PVCochain& z, int q) const;

private:
    struct Piece {
        std::vector<RMat> sections;              // per chart, columns span Gamma_c
        std::vector<std::vector<int>> offsets;   // offsets[q][chain index]
        std::vector<int> total;                  // dimension of C^q_c
        std::vector<RMat> delta;                 // delta[q]: C^q -> C^{q+1}
        std::vector<int> rank;                   // rank of delta[q]
        bool constant = false;                   // all charts share Gamma_c
    };
    struct Face {
        int target, source, sign;
    };

    const Piece& piece(const Weight& c) const;
    std::shared_ptr<Piece> build(const Weight& c) const;
    RVec to_coordinates(const Piece& pc, const PVCochain& z, int q, const Weight& c) const;
    PVCochain from_coordinates(const Piece& pc, const RVec& x, int q, const Weight& c) const;
    std::vector<RVec> witnesses(const Piece& pc, int q, RMat* image_basis) const;

    const Cover& cover_;
    int p_, qmax_;
    std::vector<std::map<Chain, int>> chain_index_;  // per level
    std::vector<std::vector<Face>> faces_;          // faces_[q]: level q -> level q+1
    mutable std::mutex mu_;
    mutable std::map<Weight, std::shared_ptr<Piece>> cache_;
};

struct CohomologyOptions {
    int qmax = 3;
    /// Character box radius; chosen from the chart presentation when unset.
    std::optional<int> window;
    /// Report the box contents without the boundary-shell check (used for
    /// graded slices of infinite-dimensional cohomology on affine charts).
    bool slice = false;
    /// How many times the automatic window may be widened.
    int max_widen = 3;
};

struct CohomologyResult {
    int p = 0;
    int window = 0;
    bool slice = false;
    std::vector<int> h;                             // h[q], q = 0..qmax
    std::vector<std::vector<PVCochain>> witnesses;  // cocycle basis per q
    std::map<Weight, std::vector<int>> pieces;      // nonzero characters
};

/// Exact dimensions of H^q(X, wedge^p T_X) for q = 0..qmax with witnesses.
/// Throws WindowTooSmall (naming a character on the boundary shell) when the
/// window cannot be certified.
CohomologyResult sheaf_cohomology(const Cover& cover, int p, const CohomologyOptions& options = {});

/// Default window radius for the cover and degree.
int default_window(const Cover& cover, int p, int qmax);

/// All characters with max-norm <= radius, lexicographic.
std::vector<Weight> character_box(int n, int radius);

}  // namespace ncdef

#endif  // NCDEF_COHOMOLOGY_HPP
