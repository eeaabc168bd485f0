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


#include "ncdef/cohomology.hpp"

#include <cstdlib>
#include <set>

#include "ncdef/errors.hpp"
#include "ncdef/parallel.hpp"

namespace ncdef {

namespace {

std::string weight_str(const Weight& c) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
    return s + ")";
}

std::string chain_str(const Chain& c) {
    std::string s = "[";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "<" : "") + std::to_string(c[k]);
    return s + "]";
}

}  // namespace

GradedCech::GradedCech(const Cover& cover, int p, int qmax) : cover_(cover), p_(p), qmax_(qmax) {
    if (p < 0) throw IncompatibleData("polyvector degree out of range");
    for (int q = 0; q <= qmax + 1; ++q) {
        std::map<Chain, int> idx;
        const auto& ch = cover.chains(q + 1);
        for (std::size_t k = 0; k < ch.size(); ++k) idx.emplace(ch[k], static_cast<int>(k));
        chain_index_.push_back(std::move(idx));
    }
    for (int q = 0; q <= qmax; ++q) {
        std::vector<Face> faces;
        const auto& upper = cover.chains(q + 2);
        for (std::size_t t = 0; t < upper.size(); ++t)
            for (int pos = 0; pos <= q + 1; ++pos) {
                Chain face = upper[t];
                face.erase(face.begin() + pos);
                const int sign = ((q + 1 - pos) % 2 == 0) ? 1 : -1;
                faces.push_back({static_cast<int>(t), chain_index_[static_cast<std::size_t>(q)].at(face), sign});
            }
        faces_.push_back(std::move(faces));
    }
}

std::shared_ptr<GradedCech::Piece> GradedCech::build(const Weight& c) const {
    auto pc = std::make_shared<Piece>();
    const int m = cover_.size();
    for (int i = 0; i < m; ++i) pc->sections.push_back(section_basis(cover_.chart(i), p_, c));

    std::map<std::pair<int, int>, RMat> inclusion;
    auto inc = [&](int i, int j) -> const RMat& {
        auto it = inclusion.find({i, j});
        if (it != inclusion.end()) return it->second;
        const RMat& si = pc->sections[static_cast<std::size_t>(i)];
        const RMat& sj = pc->sections[static_cast<std::size_t>(j)];
        RMat out(sj.cols(), si.cols());
        auto cols = solve_columns<Rational>(sj, si);
        for (Eigen::Index k = 0; k < si.cols(); ++k) {
            if (!cols[static_cast<std::size_t>(k)])
                throw IdentityViolation("restriction of sections is not an inclusion at weight " + weight_str(c));
            out.col(k) = *cols[static_cast<std::size_t>(k)];
        }
        return inclusion.emplace(std::make_pair(i, j), std::move(out)).first->second;
    };

    for (int q = 0; q <= qmax_ + 1; ++q) {
        const auto& ch = cover_.chains(q + 1);
        std::vector<int> off;
        int total = 0;
        for (const Chain& g : ch) {
            off.push_back(total);
            total += static_cast<int>(pc->sections[static_cast<std::size_t>(g.back())].cols());
        }
        pc->offsets.push_back(std::move(off));
        pc->total.push_back(total);
    }
    for (int q = 0; q <= qmax_; ++q) {
        RMat d = RMat::Zero(pc->total[static_cast<std::size_t>(q + 1)], pc->total[static_cast<std::size_t>(q)]);
        const auto& lower = cover_.chains(q + 1);
        const auto& upper = cover_.chains(q + 2);
        for (const Face& f : faces_[static_cast<std::size_t>(q)]) {
            const int src_top = lower[static_cast<std::size_t>(f.source)].back();
            const int dst_top = upper[static_cast<std::size_t>(f.target)].back();
            const RMat& block = inc(src_top, dst_top);
            if (block.size() == 0) continue;
            d.block(pc->offsets[static_cast<std::size_t>(q + 1)][static_cast<std::size_t>(f.target)],
                    pc->offsets[static_cast<std::size_t>(q)][static_cast<std::size_t>(f.source)], block.rows(), block.cols()) +=
                Rational(f.sign) * block;
        }
        pc->rank.push_back(d.size() == 0 ? 0 : rank<Rational>(d));
        pc->delta.push_back(std::move(d));
    }
    return pc;
}

const GradedCech::Piece& GradedCech::piece(const Weight& c) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(c);
        if (it != cache_.end()) return *it->second;
    }
    std::shared_ptr<Piece> pc = build(c);
    std::lock_guard<std::mutex> lock(mu_);
    return *cache_.emplace(c, std::move(pc)).first->second;
}

std::vector<int> GradedCech::dims(const Weight& c) const {
    // Fast path: identical section spaces on all charts give the cohomology of
    // a poset with a top element, which is concentrated in degree 0.
    int top = 0, lowest = -1;
    bool constant = true;
    for (int i = 0; i < cover_.size(); ++i) {
        const int r = static_cast<int>(section_basis(cover_.chart(i), p_, c).cols());
        if (i == 0) lowest = r;
        if (r != lowest) constant = false;
        top = std::max(top, r);
    }
    std::vector<int> h(static_cast<std::size_t>(qmax_ + 1), 0);
    if (constant) {
        h[0] = top;
        return h;
    }
    bool cached;
    {
        std::lock_guard<std::mutex> lock(mu_);
        cached = cache_.count(c) > 0;
    }
    std::shared_ptr<Piece> local;
    const Piece* pc;
    if (cached) {
        pc = &piece(c);
    } else {
        local = build(c);
        pc = local.get();
    }
    for (int q = 0; q <= qmax_; ++q)
        h[static_cast<std::size_t>(q)] = pc->total[static_cast<std::size_t>(q)] - pc->rank[static_cast<std::size_t>(q)] -
                                         (q > 0 ? pc->rank[static_cast<std::size_t>(q - 1)] : 0);
    return h;
}

RVec GradedCech::to_coordinates(const Piece& pc, const PVCochain& z, int q, const Weight& c) const {
    RVec x = RVec::Zero(pc.total[static_cast<std::size_t>(q)]);
    const auto& index = chain_index_[static_cast<std::size_t>(q)];
    for (const auto& [chain, value] : z) {
        auto it = index.find(chain);
        if (it == index.end()) throw IncompatibleData("cochain entry " + chain_str(chain) + " is not a chain of length " + std::to_string(q + 1));
        RVec v = value.coeff(c);
        if (v.isZero()) continue;
        const RMat& basis = pc.sections[static_cast<std::size_t>(chain.back())];
        auto y = solve<Rational>(basis, v);
        if (!y) throw IncompatibleData("cochain value at " + chain_str(chain) + " is not a section over chart " + cover_.chart(chain.back()).label);
        x.segment(pc.offsets[static_cast<std::size_t>(q)][static_cast<std::size_t>(it->second)], y->size()) = *y;
    }
    return x;
}

PVCochain GradedCech::from_coordinates(const Piece& pc, const RVec& x, int q, const Weight& c) const {
    PVCochain out;
    const auto& ch = cover_.chains(q + 1);
    for (std::size_t k = 0; k < ch.size(); ++k) {
        const RMat& basis = pc.sections[static_cast<std::size_t>(ch[k].back())];
        if (basis.cols() == 0) continue;
        RVec y = x.segment(pc.offsets[static_cast<std::size_t>(q)][k], basis.cols());
        if (y.isZero()) continue;
        PolyVector v(cover_.dim(), p_);
        v.add(c, basis * y);
        out.emplace(ch[k], std::move(v));
    }
    return out;
}

std::vector<RVec> GradedCech::witnesses(const Piece& pc, int q, RMat* image_basis) const {
    const int n = pc.total[static_cast<std::size_t>(q)];
    RMat image = q > 0 ? pc.delta[static_cast<std::size_t>(q - 1)] : RMat(n, 0);
    RMat kernel = nullspace<Rational>(pc.delta[static_cast<std::size_t>(q)]);
    RMat both(n, image.cols() + kernel.cols());
    both << image, kernel;
    Echelon<Rational> e = rref<Rational>(both);
    std::vector<RVec> out;
    std::vector<int> image_cols;
    for (int p : e.pivots) {
        if (p < image.cols())
            image_cols.push_back(p);
        else
            out.push_back(kernel.col(p - image.cols()));
    }
    if (image_basis) {
        *image_basis = RMat(n, static_cast<Eigen::Index>(image_cols.size()));
        for (std::size_t k = 0; k < image_cols.size(); ++k) image_basis->col(static_cast<Eigen::Index>(k)) = image.col(image_cols[k]);
    }
    return out;
}

std::vector<PVCochain> GradedCech::class_basis(int q, const Weight& c) const {
    const Piece& pc = piece(c);
    std::vector<PVCochain> out;
    for (const RVec& w : witnesses(pc, q, nullptr)) out.push_back(from_coordinates(pc, w, q, c));
    return out;
}

namespace {

std::vector<Weight> support(const PVCochain& z) {
    std::set<Weight> s;
    for (const auto& [chain, v] : z)
        for (const auto& [c, coeffs] : v.terms()) s.insert(c);
    return {s.begin(), s.end()};
}

}  // namespace

void GradedCech::check_cocycle(const PVCochain& z, int q) const {
    if (q < 0 || q > qmax_) throw IncompatibleData("Čech degree out of range");
    for (const Weight& c : support(z)) {
        const Piece& pc = piece(c);
        RVec dz = pc.delta[static_cast<std::size_t>(q)] * to_coordinates(pc, z, q, c);
        if (!dz.isZero()) throw NotClosed("Čech cochain is not closed at weight " + weight_str(c));
    }
}

std::optional<PVCochain> GradedCech::primitive(const PVCochain& z, int q) const {
    check_cocycle(z, q);
    PVCochain out;
    for (const Weight& c : support(z)) {
        const Piece& pc = piece(c);
        RVec x = to_coordinates(pc, z, q, c);
        if (x.isZero()) continue;
        if (q == 0) return std::nullopt;
        auto y = solve<Rational>(pc.delta[static_cast<std::size_t>(q - 1)], x);
        if (!y) return std::nullopt;
        for (auto& [chain, v] : from_coordinates(pc, *y, q - 1, c)) {
            auto [it, fresh] = out.emplace(chain, v);
            if (!fresh) it->second += v;
        }
    }
    return out;
}

std::map<Weight, RVec> GradedCech::class_coordinates(const PVCochain& z, int q) const {
    check_cocycle(z, q);
    std::map<Weight, RVec> out;
    for (const Weight& c : support(z)) {
        const Piece& pc = piece(c);
        RMat image;
        std::vector<RVec> w = witnesses(pc, q, &image);
        if (w.empty()) continue;
        RMat a(image.rows(), image.cols() + static_cast<Eigen::Index>(w.size()));
        a.leftCols(image.cols()) = image;
        for (std::size_t k = 0; k < w.size(); ++k) a.col(image.cols() + static_cast<Eigen::Index>(k)) = w[k];
        auto x = solve<Rational>(a, to_coordinates(pc, z, q, c));
        if (!x) throw IdentityViolation("cocycle is not in the span of image and witnesses");
        RVec coords = x->tail(static_cast<Eigen::Index>(w.size()));
        if (!coords.isZero()) out.emplace(c, coords);
    }
    return out;
}

std::vector<Weight> character_box(int n, int radius) {
    std::vector<Weight> out;
    Weight c(static_cast<std::size_t>(n), -radius);
    while (true) {
        out.push_back(c);
        int k = n - 1;
        while (k >= 0 && c[static_cast<std::size_t>(k)] == radius) c[static_cast<std::size_t>(k--)] = -radius;
        if (k < 0) break;
        ++c[static_cast<std::size_t>(k)];
    }
    return out;
}

int default_window(const Cover& cover, int p, int qmax) {
    int hull = 0;
    for (const Chart& ch : cover.charts()) {
        for (const Weight& u : ch.coords)
            for (int x : u) hull = std::max(hull, std::abs(x));
        for (const Weight& v : ch.rays)
            for (int x : v) hull = std::max(hull, std::abs(x));
    }
    return hull + p + qmax + 2;
}

CohomologyResult sheaf_cohomology(const Cover& cover, int p, const CohomologyOptions& options) {
    GradedCech engine(cover, p, options.qmax);
    int radius = options.window ? *options.window : default_window(cover, p, options.qmax);
    for (int attempt = 0;; ++attempt) {
        const std::vector<Weight> box = character_box(cover.dim(), radius);
        std::vector<std::vector<int>> dims(box.size());
        parallel_for(box.size(), [&](std::size_t k) { dims[k] = engine.dims(box[k]); });

        std::optional<Weight> shell_violation;
        CohomologyResult res;
        res.p = p;
        res.window = radius;
        res.slice = options.slice;
        res.h.assign(static_cast<std::size_t>(options.qmax + 1), 0);
        res.witnesses.resize(static_cast<std::size_t>(options.qmax + 1));
        for (std::size_t k = 0; k < box.size(); ++k) {
            bool nonzero = false;
            for (int q = 0; q <= options.qmax; ++q) {
                res.h[static_cast<std::size_t>(q)] += dims[k][static_cast<std::size_t>(q)];
                nonzero = nonzero || dims[k][static_cast<std::size_t>(q)] != 0;
            }
            if (!nonzero) continue;
            res.pieces.emplace(box[k], dims[k]);
            int norm = 0;
            for (int x : box[k]) norm = std::max(norm, std::abs(x));
            if (norm == radius && !shell_violation) shell_violation = box[k];
        }
        if (shell_violation && !options.slice) {
            if (options.window || attempt >= options.max_widen)
                throw WindowTooSmall("character " + weight_str(*shell_violation) + " on the boundary of the window of radius " +
                                     std::to_string(radius) + " carries cohomology of wedge^" + std::to_string(p) + " T");
            radius += 2;
            continue;
        }
        for (const auto& [c, h] : res.pieces)
            for (int q = 0; q <= options.qmax; ++q)
                if (h[static_cast<std::size_t>(q)] > 0)
                    for (PVCochain& w : engine.class_basis(q, c)) res.witnesses[static_cast<std::size_t>(q)].push_back(std::move(w));
        return res;
    }
}

}  // namespace ncdef
