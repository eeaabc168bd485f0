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


#ifndef NCDEF_DEFORM_HPP
#define NCDEF_DEFORM_HPP

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ncdef/artin.hpp"
#include "ncdef/cech.hpp"
#include "ncdef/family.hpp"

namespace ncdef {

/// A cover together with the caches every deformation computation on it
/// shares: the chart poset, a normalised coboundary solver and the graded
/// Čech complexes of wedge^p T for p = 0..3. Not copyable; pass by pointer.
class Geometry {
public:
    explicit Geometry(Cover cover);
    Geometry(const Geometry&) = delete;
    Geometry& operator=(const Geometry&) = delete;
    static std::shared_ptr<const Geometry> make(Cover cover) { return std::make_shared<const Geometry>(std::move(cover)); }

    const Cover& cover() const { return cover_; }
    const Poset& poset() const { return poset_; }
    const CoboundarySolver& solver() const { return solver_; }
    const GradedCech& cech(int p) const;
    int nvars() const { return cover_.dim(); }

private:
    Cover cover_;
    Poset poset_;
    CoboundarySolver solver_;
    mutable std::mutex mu_;
    mutable std::array<std::unique_ptr<GradedCech>, 4> cech_;
};

enum class Mode { Untwisted, Twisted };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// Cochain with coefficients in the kernel J of a small extension, one
/// cochain per kernel basis element.
using JCochain = std::vector<Cochain>;

/// NC deformation of a toric cover over an Artin algebra R, stored on the
/// free module R (x) A_i chart by chart (so flatness holds by construction).
///
/// mult[i] is the product of chart i, glue[(i, j)] the gluing A_i -> A_j for
/// i < j, and twist[(i, j, k)] the element tau_kji of R (x) A_k. Coefficient 0
/// of every family is the undeformed datum (commutative product, inclusion, 1).
struct NCDeformation {
    std::shared_ptr<const Geometry> geometry;
    ArtinAlgebra base;
    Mode mode = Mode::Untwisted;
    std::vector<Family> mult;
    std::map<Chain, Family> glue;
    std::map<Chain, Family> twist;

    /// Commutative products, inclusions as gluings and trivial twists.
    static NCDeformation trivial(std::shared_ptr<const Geometry> geometry, const ArtinAlgebra& base, Mode mode);
    int nvars() const { return geometry->nvars(); }
    const Cover& cover() const { return geometry->cover(); }

    friend bool operator==(const NCDeformation& a, const NCDeformation& b) {
        return a.base == b.base && a.mode == b.mode && a.mult == b.mult && a.glue == b.glue && a.twist == b.twist;
    }
    friend bool operator!=(const NCDeformation& a, const NCDeformation& b) { return !(a == b); }
};

/// Failed validity conditions, each with a short location description.
struct ValidityReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks associativity, unitality, multiplicativity of the gluings,
/// (twisted) transitivity, twist compatibility, reduction to the
/// undeformed data and chart validity of every coefficient, exactly.
ValidityReport check_validity(const NCDeformation& d);
/// Throws InvalidDeformation with the first failure.
void require_valid(const NCDeformation& d);

/// Base change along a local homomorphism beta: R -> R1.
NCDeformation pushforward(const NCDeformation& d, const AlgebraMap& beta);

/// Module-level lift of a deformation over R to R' (not yet associative or
/// compatible), together with the small extension R' -> R.
struct CandidateLift {
    SmallExtension extension;
    NCDeformation data;
};

/// Lifts every correction coefficient verbatim through the section of R' -> R.
CandidateLift lift_candidate(const NCDeformation& d, const SmallExtension& e);

/// Associativity, multiplicativity, transitivity and twist-compatibility
/// defects, as J-valued cochains. With verify set, the full defect is
/// computed and checked to be J-valued; otherwise only J coordinates are.
JCochain defect_f(const CandidateLift& l, int i, bool verify = true);
JCochain defect_g(const CandidateLift& l, int i, int j, bool verify = true);
JCochain defect_h(const CandidateLift& l, int i, int j, int k, bool verify = true);
JCochain defect_sigma(const CandidateLift& l, int i, int j, int k, int m, bool verify = true);

struct Defects {
    std::map<int, JCochain> f;
    std::map<Chain, JCochain> g, h, sigma;
};
Defects all_defects(const CandidateLift& l, bool verify = true);

/// J-valued changes of a candidate lift: b_i added to the products, c_ji to
/// the gluings and t_kji to the twists.
struct ChoiceData {
    std::map<int, JCochain> b;
    std::map<Chain, JCochain> c;
    std::map<Chain, JCochain> t;
};
CandidateLift transform(const CandidateLift& l, const ChoiceData& choice);

/// Obstruction class of one stage, one Čech class per kernel basis element.
struct StageClass {
    int p = 0, q = 0;
    std::vector<CechClass> components;
    bool is_zero() const;
    /// Number of nonzero class coordinates over all components.
    int rank() const;
};

struct ObstructionReport {
    Mode mode = Mode::Untwisted;
    /// Name of the first nonvanishing stage ("xi(3,0)", ...) or empty.
    std::string stage;
    std::optional<StageClass> xi30, xi21, xi03, xi12;
    /// Defects of the lift as given, and the repairs that were consumed.
    Defects defects;
    ChoiceData repairs;
    int order_bound = 0;
    int order_used = 0;
    bool extendible() const { return stage.empty(); }
    std::string summary() const;
};

/// Raised by extend when an obstruction class is nonzero.
class Obstructed : public Error {
public:
    Obstructed(const std::string& what, ObstructionReport r) : Error(what), report(std::move(r)) {}
    const char* kind() const noexcept override { return "Obstructed"; }
    ObstructionReport report;
};

struct Analysis {
    ObstructionReport report;
    /// The lift after all repairs; present exactly when extendible.
    std::optional<CandidateLift> repaired;
};

/// Runs the staged obstruction computation, repairing each defect as soon
/// as its class vanishes, and asserts every defect identity on the way
/// (IdentityViolation on failure).
Analysis analyze(const CandidateLift& l);
ObstructionReport obstructions(const CandidateLift& l);

/// A tangent vector of the deformation functor at one kernel basis element:
/// a global bivector, a Čech 1-cocycle of vector fields and (twisted) a Čech
/// 2-cocycle of functions. Missing parts count as zero.
struct T1Element {
    std::optional<PolyVector> bivector;
    std::optional<OrderedCochain<PolyVector>> vector_cocycle;
    std::optional<OrderedCochain<PolyVector>> twist_cocycle;
};
using T1Choice = std::vector<T1Element>;

/// The repairs that realise a T^1 choice on a lift.
ChoiceData choice_data(const Geometry& g, Mode mode, const T1Choice& choice, int kernel_dim);

/// Extension of d along e: obstructions must vanish; the T^1 choice (one
/// element per kernel basis vector, default zero) is added to the repaired lift.
NCDeformation extend(const NCDeformation& d, const SmallExtension& e, const T1Choice& choice = {});

/// Basis of T^1 = H^0(wedge^2 T) + H^1(T) (+ H^2(O) twisted). For covers with
/// infinite-dimensional cohomology a max_degree bounds the coefficient degree
/// of the slice (measured in the first chart); otherwise InfiniteDimensional.
struct T1Basis {
    std::vector<PolyVector> bivectors;
    std::vector<OrderedCochain<PolyVector>> vector_classes;
    std::vector<OrderedCochain<PolyVector>> twist_classes;
    int dim() const {
        return static_cast<int>(bivectors.size() + vector_classes.size() + twist_classes.size());
    }
    T1Element element(const std::vector<Rational>& coords) const;
};
T1Basis t1_basis(const Geometry& g, Mode mode, std::optional<int> max_degree = std::nullopt);

/// Dimensions of the T^1 and T^2 summands, h^q(wedge^p T) keyed by (p, q).
std::map<std::pair<int, int>, int> tangent_obstruction_dims(const Geometry& g, Mode mode,
                                                             std::optional<int> max_degree = std::nullopt);

/// h^q(wedge^p T) for p = 0..min(3, dim) and q = 0..3, on the degree slice
/// when max_degree is set. window fixes the character box radius (no automatic
/// widening, so WindowTooSmall or InfiniteDimensional may follow).
std::map<std::pair<int, int>, int> cohomology_table(const Geometry& g, std::optional<int> max_degree = std::nullopt,
                                                     std::optional<int> window = std::nullopt);

/// One M-adic step of an equivalence: epsilon_i = id + (M^k-valued), and in
/// twisted mode rho_ji = 1 + (M^k-valued).
struct EquivalenceStep {
    std::vector<Family> epsilon;
    std::map<Chain, Family> rho;
};
struct Equivalence {
    std::vector<EquivalenceStep> steps;
};

/// Transports d along (epsilon, rho): products x *' y = eps(eps^-1 x * eps^-1 y),
/// gluings eps_j(rho^-1 phi(eps_i^-1 x) rho) and twists
/// eps_k(rho_ki^-1 tau_kji phi_kj(rho_ji) rho_kj).
NCDeformation apply_equivalence(const NCDeformation& d, const EquivalenceStep& s);
NCDeformation apply(const NCDeformation& d, const Equivalence& e);

/// An equivalence carrying d1 to d2, built order by order through R/M^{k+1},
/// or nullopt when some order has no solution.
std::optional<Equivalence> equivalent(const NCDeformation& d1, const NCDeformation& d2);

/// Glues d1 (over R1) and d2 (over R2) over the fiber product, after
/// transporting d2 by iso (which must carry d2's truncation to d1's over
/// R1 x_{R0} R2's base; NotGluable otherwise).
struct Glued {
    FiberProduct ring;
    NCDeformation deformation;
};
Glued glue(const NCDeformation& d1, const NCDeformation& d2, const Equivalence& iso = {});

/// Obstruction reports of lifting d along e and of lifting beta(d) along e1,
/// where beta' : R' -> R1' makes the square commute. Returns an empty string
/// when beta_J(xi) equals xi^(1) at every stage defined on both sides,
/// otherwise a description of the first mismatch.
std::string functoriality_check(const NCDeformation& d, const SmallExtension& e, const SmallExtension& e1,
                                const AlgebraMap& beta_prime);

/// Matrix of beta' restricted to the kernels, in kernel coordinates.
RMat kernel_map(const SmallExtension& e, const SmallExtension& e1, const AlgebraMap& beta_prime);

struct HullOptions {
    Mode mode = Mode::Untwisted;
    int order = 2;
    std::optional<int> max_degree;
    bool validate = true;
};

struct HullResult {
    ArtinAlgebra base;
    std::vector<QPoly> relations;
    NCDeformation family;
    T1Basis tangent;
    std::map<std::pair<int, int>, int> dims;
    /// valid[d-1] is the validity of the family truncated to order d.
    std::vector<bool> valid;
};

/// Truncated hull: universal first-order family over k[t]/m^2, lifted
/// degree by degree; nonzero obstruction coordinates become relations.
HullResult hull(std::shared_ptr<const Geometry> g, const HullOptions& options);

/// Throws CompatibilityViolated unless the twists satisfy the tetrahedral
/// compatibility and the gluings are transitive up to conjugation.
void check_twist(const NCDeformation& d);

/// Replaces tau'_kji by tau'_kji + t_kji on a lift, verifying that sigma
/// changes by -phi(t_kji) + t_lji - t_lki + t_lkj and that conjugation by
/// the twists is unchanged.
CandidateLift change_twist(const CandidateLift& l, const std::map<Chain, JCochain>& t);

/// s with t_kji = s_ji - s_ki + s_kj on every chain, or nullopt when t is
/// not a Čech coboundary. Throws NotClosed when t is not closed.
std::optional<std::map<Chain, JCochain>> twist_coboundary(const Geometry& g, const std::map<Chain, JCochain>& t,
                                                          int kernel_dim);

}  // namespace ncdef

#endif  // NCDEF_DEFORM_HPP
