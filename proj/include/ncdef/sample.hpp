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

#ifndef NCDEF_SAMPLE_HPP
#define NCDEF_SAMPLE_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ncdef/cech.hpp"
#include "ncdef/deform.hpp"

// Seeded random instances for the verification suites and the tests. Every
// generator draws from a std::mt19937 only, so a seed fixes the instance.
namespace ncdef::sample {

using Rng = std::mt19937;

/// Polynomial with at most max_terms terms of total degree <= max_degree;
/// with laurent set, single exponents may also be -1.
QPoly random_poly(Rng& rng, int n, int max_degree, int max_terms, bool laurent = false);

/// Slot-form operator with per-slot derivative order in [min_order, max_order].
std::vector<SlotTerm> random_slot_terms(Rng& rng, int n, int arity, int max_order, int max_degree, int max_terms = 3,
                                        int min_order = 0);
Cochain random_cochain(Rng& rng, int n, int arity, int max_order = 2, int max_degree = 3, int min_order = 0);

/// Random chart-valid operator A_i^{(x)p} -> A_j that kills constants when p > 0.
Cochain random_valid(Rng& rng, const Cover& cover, int i, int j, int arity, int max_order = 2, int max_degree = 2);
JCochain random_j(Rng& rng, const Cover& cover, int kdim, int i, int j, int arity);

/// Arbitrary J-valued changes of every piece of a candidate lift.
ChoiceData random_choice(Rng& rng, const NCDeformation& d, int kdim, bool with_twists = true);
/// Random equivalence over R, trivial modulo the maximal ideal.
EquivalenceStep random_step(Rng& rng, const Cover& cover, const ArtinAlgebra& r, Mode mode);
/// Random polynomial bivector written on the first chart.
PolyVector random_bivector(Rng& rng, const Cover& cover, int max_degree = 2);

/// k[name]/(name^{order+1}).
ArtinAlgebra line(const std::string& name, int order);

/// Valid deformation over k[t]/t^2: a random bivector on single-chart covers
/// of dimension >= 2, then a random gauge transformation.
NCDeformation random_first_order(Rng& rng, const std::shared_ptr<const Geometry>& g, Mode mode);
/// Candidate lift of random_first_order to k[t]/t^3, moved by random choice data.
CandidateLift random_lift(Rng& rng, const std::shared_ptr<const Geometry>& g, Mode mode);

/// Normal-ordered Moyal product sum_n t^n/n! d_x^n (x) d_y^n over a
/// one-parameter base on a cover of the plane.
NCDeformation moyal(std::shared_ptr<const Geometry> g, const ArtinAlgebra& r);

/// Join-closed family of subsets of {0..3} of at most max_size elements,
/// ordered by inclusion.
Poset random_poset(Rng& rng, int max_size);

}  // namespace ncdef::sample

#endif  // NCDEF_SAMPLE_HPP
