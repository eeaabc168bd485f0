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


#include "ncdef/artin.hpp"

#include <algorithm>
#include <numeric>

namespace ncdef {

namespace {

int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

void enumerate_monomials(int nvars, int max_degree, Exponent& cur, int pos, int budget,
                         std::vector<Exponent>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= budget; ++k) {
        cur[static_cast<std::size_t>(pos)] = k;
        enumerate_monomials(nvars, max_degree, cur, pos + 1, budget - k, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

/// All monomials of degree <= d, ordered by (degree, reverse lex) ascending.
std::vector<Exponent> window_monomials(int nvars, int d) {
    std::vector<Exponent> out;
    Exponent cur(static_cast<std::size_t>(nvars), 0);
    enumerate_monomials(nvars, d, cur, 0, d, out);
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return a > b;
    });
    return out;
}

}  // namespace

ArtinAlgebra::ArtinAlgebra(std::vector<std::string> params, std::vector<QPoly> ideal, int order)
    : params_(std::move(params)), ideal_(std::move(ideal)), order_(order) {
    const int n = nparams();
    if (order_ < 0) throw InvalidIdeal("truncation order must be >= 0");
    for (const QPoly& g : ideal_) {
        if (g.nvars() != n && !g.is_zero())
            throw InvalidIdeal("ideal generator has the wrong number of variables");
        if (g.has_negative_exponent()) throw InvalidIdeal("ideal generator has a negative exponent");
        if (!g.coeff(Exponent(static_cast<std::size_t>(n), 0)).is_zero())
            throw InvalidIdeal("ideal generator " + to_string(g, params_) + " has a nonzero constant term");
    }

    const std::vector<Exponent> window = window_monomials(n, order_);
    // Elimination columns run from the largest monomial down.
    const int w = static_cast<int>(window.size());
    std::map<Exponent, int> column;
    for (int k = 0; k < w; ++k) column[window[static_cast<std::size_t>(w - 1 - k)]] = k;

    std::vector<RVec> rows;
    for (const QPoly& g : ideal_) {
        if (g.is_zero()) continue;
        int low = std::numeric_limits<int>::max();
        g.for_each([&](const Exponent& e, const Rational&) { low = std::min(low, degree(e)); });
        for (const Exponent& a : window) {
            if (degree(a) + low > order_) continue;
            RVec row = RVec::Zero(w);
            g.for_each([&](const Exponent& e, const Rational& c) {
                Exponent s = e;
                for (std::size_t k = 0; k < s.size(); ++k) s[k] += a[k];
                if (degree(s) <= order_) row(column.at(s)) += c;
            });
            rows.push_back(std::move(row));
        }
    }
    RMat span(static_cast<Eigen::Index>(rows.size()), w);
    for (std::size_t r = 0; r < rows.size(); ++r) span.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    Echelon<Rational> ech = rref<Rational>(span);

    std::vector<bool> pivot(static_cast<std::size_t>(w), false);
    for (int p : ech.pivots) pivot[static_cast<std::size_t>(p)] = true;
    for (const Exponent& e : window)
        if (!pivot[static_cast<std::size_t>(column.at(e))]) basis_.push_back(e);
    if (basis_.empty() || degree(basis_.front()) != 0)
        throw InvalidIdeal("ideal contains a unit");

    const int d = dim();
    auto nf = std::make_shared<std::map<Exponent, RVec>>();
    std::map<Exponent, int> basis_index;
    for (int k = 0; k < d; ++k) basis_index[basis_[static_cast<std::size_t>(k)]] = k;
    for (const Exponent& e : window) {
        RVec v = RVec::Zero(d);
        auto it = basis_index.find(e);
        if (it != basis_index.end()) {
            v(it->second) = 1;
        } else {
            const int c = column.at(e);
            int r = 0;
            while (ech.pivots[static_cast<std::size_t>(r)] != c) ++r;
            for (int f = c + 1; f < w; ++f) {
                const Rational& x = ech.reduced(r, f);
                if (x.is_zero()) continue;
                v(basis_index.at(window[static_cast<std::size_t>(w - 1 - f)])) -= x;
            }
        }
        nf->emplace(e, std::move(v));
    }
    nf_ = nf;

    auto table = std::make_shared<std::vector<std::vector<std::pair<int, Rational>>>>();
    table->reserve(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Exponent s = basis_[static_cast<std::size_t>(a)];
            for (std::size_t k = 0; k < s.size(); ++k) s[k] += basis_[static_cast<std::size_t>(b)][k];
            RVec v = monomial_nf(s);
            std::vector<std::pair<int, Rational>> sp;
            for (int k = 0; k < d; ++k)
                if (!v(k).is_zero()) sp.emplace_back(k, v(k));
            table->push_back(std::move(sp));
        }
    sparse_table_ = table;
}

RVec ArtinAlgebra::monomial_nf(const Exponent& e) const {
    if (degree(e) > order_) return zero();
    auto it = nf_->find(e);
    if (it == nf_->end()) throw InvalidIdeal("monomial outside the truncation window");
    return it->second;
}

RVec ArtinAlgebra::normal_form(const QPoly& p) const {
    RVec v = zero();
    if (p.has_negative_exponent()) throw InvalidIdeal("negative exponent in an element of an Artin algebra");
    p.for_each([&](const Exponent& e, const Rational& c) { v += c * monomial_nf(e); });
    return v;
}

QPoly ArtinAlgebra::to_poly(const RVec& v) const {
    QPoly p(nparams());
    for (int k = 0; k < dim(); ++k) p.add_term(basis_[static_cast<std::size_t>(k)], v(k));
    return p;
}

RVec ArtinAlgebra::multiply(const RVec& a, const RVec& b) const {
    RVec out = zero();
    for (int i = 0; i < dim(); ++i) {
        if (a(i).is_zero()) continue;
        for (int j = 0; j < dim(); ++j) {
            if (b(j).is_zero()) continue;
            const Rational c = a(i) * b(j);
            for (const auto& [k, s] : product_terms(i, j)) out(k) += c * s;
        }
    }
    return out;
}

std::vector<int> ArtinAlgebra::maximal_ideal_basis() const {
    std::vector<int> out(static_cast<std::size_t>(dim() - 1));
    std::iota(out.begin(), out.end(), 1);
    return out;
}

int ArtinAlgebra::nilpotency_index() const {
    // M^k is spanned by the normal forms of monomials of degree k, since
    // every higher monomial is a multiple of one of them.
    for (int k = 1; k <= order_; ++k) {
        bool vanishes = true;
        for (const auto& [e, v] : *nf_)
            if (degree(e) == k && !v.isZero()) {
                vanishes = false;
                break;
            }
        if (vanishes) return k;
    }
    return order_ + 1;
}

RVec ArtinAlgebra::inverse(const RVec& u) const {
    if (u(0).is_zero()) throw std::domain_error("ArtinAlgebra::inverse: not a unit");
    const Rational u0inv = ncdef::inverse(u(0));
    RVec nil = u * u0inv;
    nil(0) -= 1;  // u = u0 (1 + nil)
    RVec term = one(), acc = one();
    for (int k = 1; k <= order_ + 1; ++k) {
        term = multiply(term, -nil);
        if (term.isZero()) break;
        acc += term;
    }
    return acc * u0inv;
}

std::string ArtinAlgebra::describe() const {
    std::string s = "k[";
    for (std::size_t k = 0; k < params_.size(); ++k) s += (k ? "," : "") + params_[k];
    s += "]/(";
    bool first = true;
    for (const QPoly& g : ideal_) {
        if (g.is_zero()) continue;
        s += (first ? "" : ", ") + to_string(g, params_);
        first = false;
    }
    s += (first ? "" : ", ") + std::string("m^") + std::to_string(order_ + 1) + ")";
    return s;
}

ArtinAlgebra artin_quotient(const std::vector<std::string>& params, const std::vector<QPoly>& ideal_gens,
                            int order) {
    return ArtinAlgebra(params, ideal_gens, order);
}

AlgebraMap::AlgebraMap(const ArtinAlgebra& source, const ArtinAlgebra& target, const std::vector<QPoly>& images)
    : source_(source), target_(target), images_(images) {
    if (static_cast<int>(images.size()) != source.nparams())
        throw InvalidBaseChange("algebra map needs one image per parameter");
    std::vector<RVec> param_images;
    for (const QPoly& p : images) {
        RVec v = target.normal_form(p.is_zero() ? QPoly(target.nparams()) : p);
        if (!v(0).is_zero()) throw InvalidBaseChange("algebra map is not local: parameter image has a constant term");
        param_images.push_back(std::move(v));
    }
    auto image_of = [&](const Exponent& e) {
        RVec acc = target.one();
        for (std::size_t a = 0; a < e.size(); ++a)
            for (int k = 0; k < e[a]; ++k) acc = target.multiply(acc, param_images[a]);
        return acc;
    };
    auto image_of_poly = [&](const QPoly& p) {
        RVec acc = target.zero();
        p.for_each([&](const Exponent& e, const Rational& c) { acc += c * image_of(e); });
        return acc;
    };
    for (const QPoly& g : source.ideal())
        if (!g.is_zero() && !image_of_poly(g).isZero())
            throw InvalidBaseChange("algebra map does not kill ideal generator " + to_string(g, source.params()));
    // m^{order+1} must die as well.
    std::vector<Exponent> top = window_monomials(source.nparams(), source.order() + 1);
    for (const Exponent& e : top)
        if (degree(e) == source.order() + 1 && !image_of(e).isZero())
            throw InvalidBaseChange("algebra map does not kill " + exponent_to_string(e, source.params()));
    matrix_ = RMat::Zero(target.dim(), source.dim());
    for (int k = 0; k < source.dim(); ++k) matrix_.col(k) = image_of(source.basis()[static_cast<std::size_t>(k)]);
}

AlgebraMap AlgebraMap::by_names(const ArtinAlgebra& source, const ArtinAlgebra& target) {
    std::vector<QPoly> images;
    for (const std::string& p : source.params()) {
        auto it = std::find(target.params().begin(), target.params().end(), p);
        if (it == target.params().end())
            images.push_back(QPoly(target.nparams()));
        else
            images.push_back(QPoly::variable(target.nparams(), static_cast<int>(it - target.params().begin())));
    }
    return AlgebraMap(source, target, images);
}

AlgebraMap compose(const AlgebraMap& second, const AlgebraMap& first) {
    if (!(first.target() == second.source())) throw IncompatibleData("compose: algebras do not match");
    std::vector<QPoly> images;
    const ArtinAlgebra& mid = first.target();
    for (const QPoly& p : first.images()) {
        RVec v = mid.normal_form(p.is_zero() ? QPoly(mid.nparams()) : p);
        images.push_back(second.target().to_poly(second.apply(v)));
    }
    return AlgebraMap(first.source(), second.target(), images);
}

SmallExtension small_extension(const ArtinAlgebra& source, const ArtinAlgebra& target,
                               const std::vector<QPoly>& images) {
    SmallExtension e;
    e.map_ = AlgebraMap(source, target, images);
    const RMat& pi = e.map_.matrix();
    if (rank<Rational>(pi) != target.dim()) throw NotSurjective("map " + source.describe() + " -> " + target.describe() + " is not surjective");

    RMat ker = nullspace<Rational>(pi);
    if (ker.cols() > 0) {
        Echelon<Rational> ech = rref<Rational>(RMat(ker.transpose()));
        e.kernel_ = ech.reduced.topRows(ech.rank()).transpose();
        e.kernel_pivots_ = ech.pivots;
    } else {
        e.kernel_ = RMat(source.dim(), 0);
    }
    for (int m : source.maximal_ideal_basis())
        for (Eigen::Index j = 0; j < e.kernel_.cols(); ++j)
            if (!source.multiply(source.unit(m), e.kernel_.col(j)).isZero())
                throw NotSmall("M'J != 0: " + source.basis_name(m) + " times a kernel element is nonzero in " +
                               source.describe());

    e.section_ = RMat::Zero(source.dim(), target.dim());
    auto sols = solve_columns<Rational>(pi, RMat::Identity(target.dim(), target.dim()));
    for (int b = 0; b < target.dim(); ++b) e.section_.col(b) = *sols[static_cast<std::size_t>(b)];
    e.section_.col(0) = source.one();
    return e;
}

SmallExtension small_extension(const ArtinAlgebra& source, const ArtinAlgebra& target) {
    AlgebraMap m = AlgebraMap::by_names(source, target);
    return small_extension(source, target, m.images());
}

RVec SmallExtension::kernel_coordinates(const RVec& v) const {
    RVec c(kernel_dim());
    for (int k = 0; k < kernel_dim(); ++k) c(k) = v(kernel_pivots_[static_cast<std::size_t>(k)]);
    if (kernel_ * c != v) throw IncompatibleData("element is not in the kernel of the small extension");
    return c;
}

bool SmallExtension::in_kernel(const RVec& v) const { return map_.apply(v).isZero(); }

FiberProduct fiber_product(const ArtinAlgebra& first, const ArtinAlgebra& second) {
    if (first.params() != second.params())
        throw IncompatibleData("fiber_product: algebras are not presented over the same polynomial ring");
    const int n = first.nparams();
    const int order = std::max(first.order(), second.order());
    const std::vector<Exponent> window = window_monomials(n, order);
    const Eigen::Index w = static_cast<Eigen::Index>(window.size());

    auto ideal_in_window = [&](const ArtinAlgebra& r) {
        RMat proj(r.dim(), w);
        for (Eigen::Index k = 0; k < w; ++k) proj.col(k) = r.monomial_nf(window[static_cast<std::size_t>(k)]);
        return nullspace<Rational>(proj);
    };
    RMat v1 = ideal_in_window(first), v2 = ideal_in_window(second);
    RMat stacked(w, v1.cols() + v2.cols());
    stacked << v1, -v2;
    RMat combos = nullspace<Rational>(stacked);
    std::vector<QPoly> gens;
    for (Eigen::Index c = 0; c < combos.cols(); ++c) {
        RVec vec = v1 * combos.col(c).head(v1.cols());
        QPoly g(n);
        for (Eigen::Index k = 0; k < w; ++k) g.add_term(window[static_cast<std::size_t>(k)], vec(k));
        if (!g.is_zero()) gens.push_back(std::move(g));
    }

    FiberProduct fp;
    fp.algebra = ArtinAlgebra(first.params(), gens, order);
    std::vector<QPoly> base_gens = first.ideal();
    base_gens.insert(base_gens.end(), second.ideal().begin(), second.ideal().end());
    fp.base = ArtinAlgebra(first.params(), base_gens, std::min(first.order(), second.order()));
    fp.to_first = AlgebraMap::by_names(fp.algebra, first);
    fp.to_second = AlgebraMap::by_names(fp.algebra, second);
    fp.first_to_base = AlgebraMap::by_names(first, fp.base);
    fp.second_to_base = AlgebraMap::by_names(second, fp.base);

    RMat pair(first.dim() + second.dim(), fp.algebra.dim());
    pair << fp.to_first.matrix(), fp.to_second.matrix();
    if (rank<Rational>(pair) != fp.algebra.dim())
        throw IncompatibleData("fiber_product: P/(I1 ∩ I2) does not inject into the pairs");
    if (fp.algebra.dim() != first.dim() + second.dim() - fp.base.dim())
        throw IncompatibleData("fiber_product: image is not the whole fiber product");
    auto sols = solve_columns<Rational>(RMat(pair.transpose()), RMat::Identity(fp.algebra.dim(), fp.algebra.dim()));
    fp.pair_to_algebra = RMat(first.dim() + second.dim(), fp.algebra.dim());
    for (int k = 0; k < fp.algebra.dim(); ++k) fp.pair_to_algebra.col(k) = *sols[static_cast<std::size_t>(k)];
    fp.pair_to_algebra.transposeInPlace();
    return fp;
}

ArtinAlgebra embed(const ArtinAlgebra& r, const std::vector<std::string>& params) {
    const int n = static_cast<int>(params.size());
    std::vector<int> where;
    for (const std::string& p : r.params()) {
        auto it = std::find(params.begin(), params.end(), p);
        if (it == params.end()) throw IncompatibleData("embed: parameter '" + p + "' missing from the new list");
        where.push_back(static_cast<int>(it - params.begin()));
    }
    std::vector<QPoly> gens;
    for (const QPoly& g : r.ideal()) {
        QPoly h(n);
        g.for_each([&](const Exponent& e, const Rational& c) {
            Exponent f(static_cast<std::size_t>(n), 0);
            for (std::size_t a = 0; a < e.size(); ++a) f[static_cast<std::size_t>(where[a])] = e[a];
            h.add_term(f, c);
        });
        gens.push_back(std::move(h));
    }
    for (int k = 0; k < n; ++k)
        if (std::find(where.begin(), where.end(), k) == where.end()) gens.push_back(QPoly::variable(n, k));
    return ArtinAlgebra(params, gens, r.order());
}

ArtinAlgebra truncate(const ArtinAlgebra& r, int k) {
    return ArtinAlgebra(r.params(), r.ideal(), std::min(k, r.order()));
}

}  // namespace ncdef
