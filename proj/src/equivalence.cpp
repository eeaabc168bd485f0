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


#include "deform_internal.hpp"
#include "ncdef/errors.hpp"

namespace ncdef {

using detail::chain_str;
using detail::lookup;

namespace {

// Compositional inverse of id + N by the alternating series in N.
Family compose_inverse(const ArtinAlgebra& r, const Family& eps) {
    const int n = eps.front().nvars();
    const Family id = constant_family(r, Cochain::identity(n));
    const Family nil = minus(eps, id);
    if (!nil[0].is_zero()) throw IncompatibleData("equivalence is not the identity modulo the maximal ideal");
    Family out = id;
    Family power = id;
    for (int k = 1; k <= r.dim(); ++k) {
        power = compose(r, nil, 0, power);
        if (is_zero(power)) break;
        if (k % 2) subtract_from(out, power);
        else add_to(out, power);
    }
    return out;
}

bool is_identity(const Family& f) {
    if (f.empty() || f[0] != Cochain::identity(f[0].nvars())) return false;
    for (std::size_t a = 1; a < f.size(); ++a)
        if (!f[a].is_zero()) return false;
    return true;
}

// Preimage matrix of a surjective local map: columns are chosen lifts of the basis.
RMat lift_matrix(const AlgebraMap& m) {
    const RMat& a = m.matrix();
    RMat s = RMat::Zero(a.cols(), a.rows());
    auto sols = solve_columns<Rational>(a, RMat::Identity(a.rows(), a.rows()));
    for (std::size_t k = 0; k < sols.size(); ++k) {
        if (!sols[k]) throw NotSurjective("ring map is not surjective");
        s.col(static_cast<Eigen::Index>(k)) = *sols[k];
    }
    return s;
}

// 1 + lift(x - 1) for units, id + lift(x - id) for automorphisms: the lift stays trivial mod M.
Family lift_near(const ArtinAlgebra& target, const RMat& s, const Family& f, const Cochain& base) {
    Family nil = f;
    nil[0] -= base;
    Family out = transform_coefficients(s, nil);
    out[0] += base;
    (void)target;
    return out;
}

EquivalenceStep lift_step(const EquivalenceStep& st, const ArtinAlgebra& target, const RMat& s, int n) {
    EquivalenceStep out;
    for (const Family& e : st.epsilon) out.epsilon.push_back(lift_near(target, s, e, Cochain::identity(n)));
    for (const auto& [c, r] : st.rho) out.rho.emplace(c, lift_near(target, s, r, Cochain::one(n)));
    return out;
}

}  // namespace

NCDeformation apply_equivalence(const NCDeformation& d, const EquivalenceStep& s) {
    const ArtinAlgebra& r = d.base;
    const Cover& cover = d.cover();
    const int n = cover.dim();
    if (s.epsilon.size() != static_cast<std::size_t>(cover.size()))
        throw ArityMismatch("equivalence needs one automorphism per chart");
    if (!s.rho.empty() && d.mode != Mode::Twisted)
        throw Unsupported("conjugating units are only part of twisted equivalences");

    std::vector<Family> inv;
    for (const Family& e : s.epsilon) {
        if (e.size() != static_cast<std::size_t>(r.dim())) throw IncompatibleData("equivalence over a different base ring");
        inv.push_back(compose_inverse(r, e));
    }
    const Family one = constant_family(r, Cochain::one(n));
    auto rho = [&](int i, int j) -> const Family& {
        auto it = s.rho.find({i, j});
        return it == s.rho.end() ? one : it->second;
    };

    NCDeformation out;
    out.geometry = d.geometry;
    out.base = r;
    out.mode = d.mode;
    for (int i = 0; i < cover.size(); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        out.mult.push_back(compose(r, s.epsilon[ii], 0, compose_all(r, d.mult[ii], {inv[ii], inv[ii]})));
    }
    for (const auto& [c, phi] : d.glue) {
        Family inner = compose(r, phi, 0, inv[static_cast<std::size_t>(c[0])]);
        const Family& rj = rho(c[0], c[1]);
        if (&rj != &one) inner = detail::conjugate(r, d.mult[static_cast<std::size_t>(c[1])], rj, inner);
        out.glue.emplace(c, compose(r, s.epsilon[static_cast<std::size_t>(c[1])], 0, inner));
    }
    for (const auto& [c, tau] : d.twist) {
        const int i = c[0], j = c[1], k = c[2];
        const Family& mk = d.mult[static_cast<std::size_t>(k)];
        Family x = multiply(r, mk, inverse(r, mk, rho(i, k)), tau);
        x = multiply(r, mk, x, compose(r, lookup(d.glue, {j, k}, "gluing"), 0, rho(i, j)));
        x = multiply(r, mk, x, rho(j, k));
        out.twist.emplace(c, compose(r, s.epsilon[static_cast<std::size_t>(k)], 0, x));
    }
    return out;
}

NCDeformation apply(const NCDeformation& d, const Equivalence& e) {
    NCDeformation out = d;
    for (const EquivalenceStep& s : e.steps) out = apply_equivalence(out, s);
    return out;
}

std::optional<Equivalence> equivalent(const NCDeformation& d1, const NCDeformation& d2) {
    if (!(d1.base == d2.base)) throw IncompatibleData("deformations over different base rings");
    if (d1.mode != d2.mode) throw IncompatibleData("cannot compare twisted and untwisted deformations");
    if (d1.geometry != d2.geometry && d1.cover().name() != d2.cover().name())
        throw IncompatibleData("deformations of different covers");
    const ArtinAlgebra& r = d1.base;
    const Geometry& geo = *d1.geometry;
    const Cover& cover = geo.cover();
    const int n = cover.dim();
    const bool twisted = d1.mode == Mode::Twisted;

    for (int i = 0; i < cover.size(); ++i)
        if (d1.mult[static_cast<std::size_t>(i)][0] != d2.mult[static_cast<std::size_t>(i)][0]) return std::nullopt;

    Equivalence eq;
    NCDeformation cur = d1;
    const int top = r.nilpotency_index();
    for (int k = 1; k < top; ++k) {
        const ArtinAlgebra rk = truncate(r, k);
        const SmallExtension e = small_extension(rk, truncate(r, k - 1));
        const int kdim = e.kernel_dim();
        if (kdim == 0) continue;
        const AlgebraMap pik = AlgebraMap::by_names(r, rk);
        const NCDeformation a = pushforward(cur, pik);
        const NCDeformation b = pushforward(d2, pik);

        // Products: e' with de' = -(b - a).
        std::vector<JCochain> eps(static_cast<std::size_t>(cover.size()));
        for (int i = 0; i < cover.size(); ++i) {
            const auto ii = static_cast<std::size_t>(i);
            JCochain rhs = kernel_part(e, minus(a.mult[ii], b.mult[ii]));
            auto sols = geo.solver().solve(rhs, i, i);
            for (auto& s : sols) {
                if (!s) return std::nullopt;
                eps[ii].push_back(*s);
            }
        }
        // Gluings: the residual must be a Čech coboundary of vector fields.
        std::vector<OrderedCochain<PolyVector>> resid(static_cast<std::size_t>(kdim), OrderedCochain<PolyVector>(1, PolyVector(n, 1)));
        for (const Chain& c : cover.chains(2)) {
            JCochain dc = kernel_part(e, minus(a.glue.at(c), b.glue.at(c)));
            for (int q = 0; q < kdim; ++q) {
                const auto qq = static_cast<std::size_t>(q);
                Cochain rho = dc[qq] + eps[static_cast<std::size_t>(c[1])][qq] - eps[static_cast<std::size_t>(c[0])][qq];
                if (!coboundary(rho).is_zero()) throw IdentityViolation("gluing residual is not a derivation on " + chain_str(c));
                resid[qq].add(c, hkr_class(rho));
            }
        }
        for (int q = 0; q < kdim; ++q) {
            const auto qq = static_cast<std::size_t>(q);
            if (resid[qq].is_zero()) continue;
            auto w = is_coboundary(geo.cech(1), resid[qq]);
            if (!w) return std::nullopt;
            for (int i = 0; i < cover.size(); ++i) eps[static_cast<std::size_t>(i)][qq] += hkr_inverse(w->at({i}));
        }
        // Twists: the difference must be a Čech coboundary of functions.
        std::map<Chain, JCochain> s;
        if (twisted) {
            for (int q = 0; q < kdim; ++q) {
                OrderedCochain<PolyVector> dt(2, PolyVector(n, 0));
                for (const Chain& c : cover.chains(3)) dt.add(c, hkr_class(kernel_part(e, minus(b.twist.at(c), a.twist.at(c)))[static_cast<std::size_t>(q)]));
                if (dt.is_zero()) continue;
                auto sol = is_coboundary(geo.cech(0), dt);
                if (!sol) return std::nullopt;
                for (const Chain& c : cover.chains(2)) {
                    auto& slot = s[c];
                    if (slot.empty()) slot.assign(static_cast<std::size_t>(kdim), Cochain(n, 0));
                    slot[static_cast<std::size_t>(q)] = hkr_inverse(sol->at(c));
                }
            }
        }

        // Lift the kernel basis of R_k into R and assemble the step over R.
        auto lifts = solve_columns<Rational>(pik.matrix(), e.kernel());
        RMat up(r.dim(), kdim);
        for (int q = 0; q < kdim; ++q) up.col(q) = *lifts[static_cast<std::size_t>(q)];
        auto assemble = [&](const JCochain& v, const Cochain& base) {
            Family f = constant_family(r, base);
            for (int q = 0; q < kdim; ++q)
                for (int x = 0; x < r.dim(); ++x)
                    if (!up(x, q).is_zero()) f[static_cast<std::size_t>(x)] += up(x, q) * v[static_cast<std::size_t>(q)];
            return f;
        };
        EquivalenceStep step;
        for (const JCochain& v : eps) step.epsilon.push_back(assemble(v, Cochain::identity(n)));
        for (const auto& [c, v] : s) step.rho.emplace(c, assemble(v, Cochain::one(n)));
        cur = apply_equivalence(cur, step);
        if (pushforward(cur, pik) != b) throw IdentityViolation("equivalence step did not match order " + std::to_string(k));
        eq.steps.push_back(std::move(step));
    }
    if (cur != d2) return std::nullopt;
    return eq;
}

Glued glue(const NCDeformation& d1, const NCDeformation& d2, const Equivalence& iso) {
    if (d1.mode != d2.mode) throw NotGluable("cannot glue twisted and untwisted deformations");
    if (d1.cover().name() != d2.cover().name()) throw NotGluable("deformations of different covers");
    Glued out{fiber_product(d1.base, d2.base), {}};
    const FiberProduct& fp = out.ring;
    const int n = d1.nvars();

    const RMat s = lift_matrix(fp.second_to_base);
    NCDeformation moved = d2;
    for (const EquivalenceStep& st : iso.steps) {
        if (!st.epsilon.empty() && st.epsilon.front().size() != static_cast<std::size_t>(fp.base.dim()))
            throw NotGluable("identification is not over the common quotient");
        moved = apply_equivalence(moved, lift_step(st, d2.base, s, n));
    }
    if (pushforward(moved, fp.second_to_base) != pushforward(d1, fp.first_to_base))
        throw NotGluable("the identification does not carry the second deformation to the first over the common quotient");

    auto combine = [&](const Family& a, const Family& b) {
        Family both = a;
        both.insert(both.end(), b.begin(), b.end());
        return transform_coefficients(fp.pair_to_algebra, both);
    };
    NCDeformation& d = out.deformation;
    d.geometry = d1.geometry;
    d.base = fp.algebra;
    d.mode = d1.mode;
    for (std::size_t i = 0; i < d1.mult.size(); ++i) d.mult.push_back(combine(d1.mult[i], moved.mult[i]));
    for (const auto& [c, f] : d1.glue) d.glue.emplace(c, combine(f, moved.glue.at(c)));
    for (const auto& [c, f] : d1.twist) d.twist.emplace(c, combine(f, moved.twist.at(c)));

    if (pushforward(d, fp.to_first) != d1 || pushforward(d, fp.to_second) != moved)
        throw IdentityViolation("glued deformation does not truncate to its inputs");
    require_valid(d);
    return out;
}

RMat kernel_map(const SmallExtension& e, const SmallExtension& e1, const AlgebraMap& beta_prime) {
    if (!(beta_prime.source() == e.source()) || !(beta_prime.target() == e1.source()))
        throw InvalidBaseChange("map does not connect the sources of the two extensions");
    RMat out(e1.kernel_dim(), e.kernel_dim());
    for (int k = 0; k < e.kernel_dim(); ++k) {
        RVec v = beta_prime.apply(e.kernel_element(k));
        if (!e1.in_kernel(v)) throw InvalidBaseChange("map does not send the kernel into the kernel");
        out.col(k) = e1.kernel_coordinates(v);
    }
    return out;
}

namespace {

// The bottom map beta: R -> R1 induced by beta' on the quotients.
AlgebraMap induced_map(const SmallExtension& e, const SmallExtension& e1, const AlgebraMap& beta_prime) {
    const ArtinAlgebra& r = e.target();
    const ArtinAlgebra& r1 = e1.target();
    const RMat m = e1.surjection().matrix() * beta_prime.matrix() * e.section();
    std::vector<QPoly> images;
    for (int a = 0; a < r.nparams(); ++a) {
        QPoly t(r.nparams());
        Exponent ex(static_cast<std::size_t>(r.nparams()), 0);
        ex[static_cast<std::size_t>(a)] = 1;
        t.add_term(ex, Rational(1));
        images.push_back(r1.to_poly(m * r.normal_form(t)));
    }
    AlgebraMap beta(r, r1, images);
    if (beta.matrix() * e.surjection().matrix() != e1.surjection().matrix() * beta_prime.matrix())
        throw InvalidBaseChange("the square of ring maps does not commute");
    return beta;
}

std::string compare_stage(const char* name, const std::optional<StageClass>& a, const std::optional<StageClass>& b,
                          const RMat& bj) {
    if (!a || !b) return "";
    for (Eigen::Index l = 0; l < bj.rows(); ++l) {
        std::map<Weight, RVec> want;
        for (Eigen::Index k = 0; k < bj.cols(); ++k) {
            if (bj(l, k).is_zero()) continue;
            for (const auto& [w, v] : a->components[static_cast<std::size_t>(k)].coordinates) {
                auto it = want.find(w);
                if (it == want.end()) want.emplace(w, bj(l, k) * v);
                else it->second += bj(l, k) * v;
            }
        }
        for (auto it = want.begin(); it != want.end();) {
            if (it->second.isZero()) it = want.erase(it);
            else ++it;
        }
        if (want != b->components[static_cast<std::size_t>(l)].coordinates)
            return std::string(name) + " differs at kernel coordinate " + std::to_string(l);
    }
    return "";
}

}  // namespace

std::string functoriality_check(const NCDeformation& d, const SmallExtension& e, const SmallExtension& e1,
                                const AlgebraMap& beta_prime) {
    const AlgebraMap beta = induced_map(e, e1, beta_prime);
    const RMat bj = kernel_map(e, e1, beta_prime);
    const CandidateLift l = lift_candidate(d, e);
    const CandidateLift l1{e1, pushforward(l.data, beta_prime)};
    if (pushforward(pushforward(l.data, e.surjection()), beta) != pushforward(d, beta))
        throw IdentityViolation("pushed lift does not reduce to the pushed deformation");
    const ObstructionReport a = obstructions(l);
    const ObstructionReport b = obstructions(l1);
    for (auto msg : {compare_stage("xi(3,0)", a.xi30, b.xi30, bj), compare_stage("xi(2,1)", a.xi21, b.xi21, bj),
                     compare_stage("xi(0,3)", a.xi03, b.xi03, bj), compare_stage("xi(1,2)", a.xi12, b.xi12, bj)})
        if (!msg.empty()) return msg;
    return "";
}

}  // namespace ncdef
