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

#include "ncdef/verify.hpp"

#include <array>
#include <functional>

#include "ncdef/errors.hpp"
#include "ncdef/sample.hpp"

namespace ncdef::verify {

using sample::Rng;

namespace {

constexpr std::size_t kKeptFailures = 5;

std::string clip(std::string s) {
    if (s.size() > 600) s = s.substr(0, 600) + " ...";
    return s;
}

std::string chain_str(const Chain& c) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
    return s + ")";
}

class Checker {
public:
    explicit Checker(SuiteResult& r) : r_(r) {}

    void expect(bool ok, const std::string& identity, const std::string& where,
                const std::function<std::string()>& detail = {}) {
        ++r_.checks;
        if (ok) return;
        ++r_.failed;
        if (r_.failures.size() < kKeptFailures) r_.failures.push_back({identity, where, detail ? clip(detail()) : ""});
    }

    void zero(const Cochain& c, const std::string& identity, const std::string& where, const std::vector<std::string>& vars) {
        expect(c.is_zero(), identity, where, [&] { return "value = " + c.str(vars); });
    }

    void equal(const Cochain& lhs, const Cochain& rhs, const std::string& identity, const std::string& where,
               const std::vector<std::string>& vars) {
        expect(lhs == rhs, identity, where, [&] { return "lhs = " + lhs.str(vars) + "; rhs = " + rhs.str(vars); });
    }

private:
    SuiteResult& r_;
};

int count(const Options& o, int fallback) { return o.instances > 0 ? o.instances : fallback; }

std::shared_ptr<const Geometry> geometry(const std::string& name) { return Geometry::make(builtin_variety(name)); }

// ---------------------------------------------------------------- hochschild

void hochschild_suite(const Options& o, SuiteResult& r) {
    Checker check(r);
    Rng rng(o.seed);
    const int n = 2;
    const std::vector<std::string> vars = {"z1", "z2"};
    const int squares = count(o, 200), classes = std::max(1, count(o, 200) / 2);
    for (int t = 0; t < squares; ++t) {
        const Cochain c = sample::random_cochain(rng, n, t % 4, 2, 3);
        const Cochain dd = coboundary(coboundary(c));
        check.expect(dd.is_zero(), "d(d c) = 0", "cochain #" + std::to_string(t) + " of arity " + std::to_string(c.arity()),
                     [&] { return "c = " + c.str(vars) + "; d(d c) = " + dd.str(vars); });
    }
    for (int t = 0; t < classes; ++t) {
        const Cochain c = sample::random_cochain(rng, n, t % 3, 2, 3);
        const std::string where = "cochain #" + std::to_string(t) + " of arity " + std::to_string(c.arity());
        try {
            const PolyVector w = hkr_class(coboundary(c));
            check.expect(w.is_zero(), "hkr_class(d c) = 0", where, [&] { return "c = " + c.str(vars); });
        } catch (const NotACocycle&) {
            check.expect(false, "d c is a cocycle", where, [&] { return "c = " + c.str(vars); });
        }
    }
    r.instances = squares + classes;
}

// ---------------------------------------------------------------- lemma-df

void defect_identities(Checker& check, const CandidateLift& l, const std::string& label, bool mutate, Rng& rng) {
    const Cover& cover = l.data.cover();
    const std::vector<std::string>& vars = cover.torus_vars();
    const int kdim = l.extension.kernel_dim();
    const bool twisted = l.data.mode == Mode::Twisted;
    const Defects d = all_defects(l);
    for (int k = 0; k < kdim; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const std::string at = label + ", kernel element " + std::to_string(k) + ", ";
        for (const auto& [i, f] : d.f)
            check.zero(coboundary(f[kk]), "d f_i = 0", at + "chart " + std::to_string(i), vars);
        for (const auto& [c, g] : d.g) {
            Cochain want = d.f.at(c[1])[kk] - d.f.at(c[0])[kk];
            if (mutate) want = -want;
            check.equal(coboundary(g[kk]), want, "d g_ji = f_j - f_i", at + "pair " + chain_str(c), vars);
        }
        for (const Chain& c : cover.chains(3)) {
            const Cochain want = d.g.at({c[0], c[2]})[kk] - d.g.at({c[1], c[2]})[kk] - d.g.at({c[0], c[1]})[kk];
            check.equal(coboundary(d.h.at(c)[kk]), want, "d h_kji = -g_kj + g_ki - g_ji", at + "triple " + chain_str(c), vars);
        }
        if (!twisted) {
            for (const Chain& c : cover.chains(4)) {
                const Cochain s = d.h.at({c[0], c[1], c[2]})[kk] - d.h.at({c[0], c[1], c[3]})[kk] +
                                  d.h.at({c[0], c[2], c[3]})[kk] - d.h.at({c[1], c[2], c[3]})[kk];
                check.zero(s, "h_kji - h_lji + h_lki - h_lkj = 0", at + "chain " + chain_str(c), vars);
            }
        } else {
            for (const Chain& c : cover.chains(5)) {
                auto sg = [&](int a, int b, int x, int y) {
                    const auto u = [&](int p) { return c[static_cast<std::size_t>(p)]; };
                    return d.sigma.at({u(a), u(b), u(x), u(y)})[kk];
                };
                const Cochain s = sg(0, 1, 2, 3) - sg(0, 1, 2, 4) + sg(0, 1, 3, 4) - sg(0, 2, 3, 4) + sg(1, 2, 3, 4);
                check.zero(s, "five-term identity for sigma", at + "chain " + chain_str(c), vars);
            }
        }
    }

    // Change of the defects under random choice data b, c.
    const ChoiceData ch = sample::random_choice(rng, l.data, kdim, false);
    const Defects e = all_defects(transform(l, ch));
    for (int k = 0; k < kdim; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const std::string at = label + " after choice data, kernel element " + std::to_string(k) + ", ";
        for (int i = 0; i < cover.size(); ++i)
            check.equal(e.f.at(i)[kk], d.f.at(i)[kk] - coboundary(ch.b.at(i)[kk]), "f' = f - d b", at + "chart " + std::to_string(i), vars);
        for (const Chain& c : cover.chains(2))
            check.equal(e.g.at(c)[kk], d.g.at(c)[kk] + ch.b.at(c[0])[kk] - ch.b.at(c[1])[kk] - coboundary(ch.c.at(c)[kk]),
                        "g' = g + b_i - b_j - d c_ji", at + "pair " + chain_str(c), vars);
        for (const Chain& c : cover.chains(3))
            check.equal(e.h.at(c)[kk],
                        d.h.at(c)[kk] + ch.c.at({c[0], c[1]})[kk] - ch.c.at({c[0], c[2]})[kk] + ch.c.at({c[1], c[2]})[kk],
                        "h' = h + c_ji - c_ki + c_kj", at + "triple " + chain_str(c), vars);
    }
}

void lemma_df_suite(const Options& o, SuiteResult& r) {
    Checker check(r);
    Rng rng(o.seed);
    const bool mutate = o.mutation == "sign";
    const int main = count(o, 50), extra = std::max(1, main / 5);
    const auto plane = geometry("affine(2)"), line = geometry("proj(1)"), chain3 = geometry("chain(3)"), chain4 = geometry("chain(4)");
    for (int t = 0; t < main; ++t) {
        const auto& g = t % 2 ? line : plane;
        defect_identities(check, sample::random_lift(rng, g, Mode::Untwisted), g->cover().name() + " lift #" + std::to_string(t),
                          mutate, rng);
    }
    for (int t = 0; t < extra; ++t)
        defect_identities(check, sample::random_lift(rng, chain3, Mode::Untwisted), "chain(3) lift #" + std::to_string(t), mutate, rng);
    for (int t = 0; t < extra; ++t)
        defect_identities(check, sample::random_lift(rng, chain4, Mode::Twisted), "twisted chain(4) lift #" + std::to_string(t),
                          mutate, rng);
    r.instances = main + 2 * extra;
}

// ---------------------------------------------------------------- sn-extension

struct Z5 {
    std::array<long, 5> v{};
    Z5& operator+=(const Z5& o) {
        for (std::size_t k = 0; k < 5; ++k) v[k] += o.v[k];
        return *this;
    }
    Z5& operator-=(const Z5& o) {
        for (std::size_t k = 0; k < 5; ++k) v[k] -= o.v[k];
        return *this;
    }
    friend Z5 operator-(Z5 a) {
        for (long& x : a.v) x = -x;
        return a;
    }
    friend bool operator==(const Z5& a, const Z5& b) { return a.v == b.v; }
    std::string str() const {
        std::string s = "(";
        for (std::size_t k = 0; k < 5; ++k) s += (k ? "," : "") + std::to_string(v[k]);
        return s + ")";
    }
};

Z5 random_z5(Rng& rng) {
    Z5 z;
    for (long& x : z.v) x = std::uniform_int_distribution<long>(-9, 9)(rng);
    return z;
}

// Degree q cocycle: a constant for q = 0, the coboundary of random data otherwise.
OrderedCochain<Z5> random_cocycle(Rng& rng, const Poset& poset, int q) {
    OrderedCochain<Z5> c(std::max(0, q - 1), Z5{});
    if (q == 0) {
        const Z5 v = random_z5(rng);
        for (int a = 0; a < poset.size(); ++a) c.add({a}, v);
        return c;
    }
    for (const Chain& ch : poset.chains(q))
        if (rng() % 3) c.add(ch, random_z5(rng));
    return cech_d(poset, c);
}

void for_tuples(int n, int len, const std::function<void(const Chain&)>& fn) {
    Chain t(static_cast<std::size_t>(len), 0);
    while (true) {
        fn(t);
        int k = len - 1;
        while (k >= 0 && t[static_cast<std::size_t>(k)] == n - 1) t[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) return;
        ++t[static_cast<std::size_t>(k)];
    }
}

void sn_suite(const Options& o, SuiteResult& r) {
    Checker check(r);
    Rng rng(o.seed);
    const bool mutate = o.mutation == "sign";
    const int posets = count(o, 50);
    for (int t = 0; t < posets; ++t) {
        const Poset poset = sample::random_poset(rng, 6);
        const std::string at = "poset #" + std::to_string(t) + " (" + std::to_string(poset.size()) + " elements)";
        for (int len = 1; len <= 3; ++len) {
            const OrderedCochain<Z5> h = random_cocycle(rng, poset, len - 1);
            const TotalCochain<Z5> ext = extend_Sn(poset, h);
            for (const Chain& c : poset.chains(len)) {
                const Z5 want = mutate ? -h.at(c) : h.at(c);
                const Z5 got = ext(c);
                check.expect(got == want, "extension restricts to h", at + ", chain " + chain_str(c),
                             [&] { return "extension " + got.str() + ", h " + want.str(); });
            }
            for_tuples(poset.size(), len + 1, [&](const Chain& tuple) {
                const Z5 v = total_coboundary(poset, ext, tuple);
                check.expect(v == Z5{}, "cocycle condition on every tuple", at + ", tuple " + chain_str(tuple),
                             [&] { return "coboundary " + v.str(); });
            });
        }
    }
    r.instances = posets;
}

// ---------------------------------------------------------------- twist

using TwistData = std::map<Chain, JCochain>;

Cochain value(const TwistData& t, const Chain& c, int n) {
    auto it = t.find(c);
    return it == t.end() ? Cochain(n, 0) : it->second[0];
}

// (delta s)_kji = s_ji - s_ki + s_kj.
TwistData delta(const Cover& cover, const TwistData& s) {
    TwistData out;
    const int n = cover.dim();
    for (const Chain& c : cover.chains(3))
        out[c] = {value(s, {c[0], c[1]}, n) - value(s, {c[0], c[2]}, n) + value(s, {c[1], c[2]}, n)};
    return out;
}

bool closed(const Cover& cover, const TwistData& t) {
    const int n = cover.dim();
    for (const Chain& c : cover.chains(4)) {
        const Cochain v = value(t, {c[0], c[1], c[2]}, n) - value(t, {c[0], c[1], c[3]}, n) +
                          value(t, {c[0], c[2], c[3]}, n) - value(t, {c[1], c[2], c[3]}, n);
        if (!v.is_zero()) return false;
    }
    return true;
}

void twist_suite(const Options& o, SuiteResult& r) {
    Checker check(r);
    Rng rng(o.seed);
    const bool mutate = o.mutation == "sign";
    const auto small = geometry("chain(3)"), large = geometry("chain(4)");
    const int configs = count(o, 50);
    const ArtinAlgebra r1 = sample::line("t", 1), r2 = sample::line("t", 2);
    const SmallExtension e = small_extension(r2, r1);
    for (int trial = 0; trial < configs; ++trial) {
        const auto& g = trial % 5 == 4 ? large : small;
        const Cover& cover = g->cover();
        const int n = cover.dim();
        const std::vector<std::string>& vars = cover.torus_vars();
        const std::string at = "configuration #" + std::to_string(trial) + " on " + cover.name();

        NCDeformation d = NCDeformation::trivial(g, r1, Mode::Twisted);
        d = apply_equivalence(d, sample::random_step(rng, cover, r1, Mode::Twisted));
        const CandidateLift l = transform(lift_candidate(d, e), sample::random_choice(rng, d, 1));

        TwistData t, s;
        for (const Chain& c : cover.chains(3)) t[c] = sample::random_j(rng, cover, 1, c[2], c[2], 0);
        for (const Chain& c : cover.chains(2)) s[c] = sample::random_j(rng, cover, 1, c[1], c[1], 0);

        // sigma changes by -t_kji + t_lji - t_lki + t_lkj.
        ChoiceData move;
        move.t = t;
        const CandidateLift moved = transform(l, move);
        for (const Chain& c : cover.chains(4)) {
            const Cochain diff = defect_sigma(moved, c[0], c[1], c[2], c[3])[0] - defect_sigma(l, c[0], c[1], c[2], c[3])[0];
            Cochain want = -value(t, {c[0], c[1], c[2]}, n) + value(t, {c[0], c[1], c[3]}, n) -
                           value(t, {c[0], c[2], c[3]}, n) + value(t, {c[1], c[2], c[3]}, n);
            if (mutate) want = -want;
            check.equal(diff, want, "change of twist formula for sigma", at + ", chain " + chain_str(c), vars);
        }
        try {
            change_twist(l, t);
            check.expect(true, "change_twist self-check", at);
        } catch (const IdentityViolation& ex) {
            check.expect(false, "change_twist self-check", at, [&] { return std::string(ex.what()); });
        }

        // A closed change t = delta s keeps the algebra data and sigma.
        const TwistData ds = delta(cover, s);
        move.t = ds;
        const CandidateLift shifted = transform(l, move);
        check.expect(shifted.data.glue == l.data.glue, "closed twist change keeps the gluings", at);
        check.expect(shifted.data.mult == l.data.mult, "closed twist change keeps the products", at);
        for (const Chain& c : cover.chains(4))
            check.equal(defect_sigma(shifted, c[0], c[1], c[2], c[3])[0], defect_sigma(l, c[0], c[1], c[2], c[3])[0],
                        "closed twist change keeps sigma", at + ", chain " + chain_str(c), vars);

        // twist_coboundary recovers a primitive of delta s.
        const auto back = twist_coboundary(*g, ds, 1);
        check.expect(back.has_value(), "closed twist change is a coboundary", at);
        if (back) {
            const TwistData again = delta(cover, *back);
            for (const Chain& c : cover.chains(3))
                check.equal(again.at(c)[0], ds.at(c)[0], "delta of the recovered primitive", at + ", triple " + chain_str(c), vars);
        }
        const bool t_closed = closed(cover, t);
        bool threw = false;
        try {
            twist_coboundary(*g, t, 1);
        } catch (const NotClosed&) {
            threw = true;
        }
        check.expect(threw != t_closed, "non-closed twist changes are rejected", at);

        // rho = 1 + s moves the twists by delta s and nothing else.
        EquivalenceStep step;
        for (int i = 0; i < cover.size(); ++i) step.epsilon.push_back(constant_family(l.data.base, Cochain::identity(n)));
        for (const auto& [c, v] : s)
            step.rho.emplace(c, plus(constant_family(l.data.base, Cochain::one(n)), from_kernel(e, v, n, 0)));
        const NCDeformation after = apply_equivalence(l.data, step);
        check.expect(after.glue == l.data.glue, "rho = 1 + s keeps the gluings", at);
        check.expect(after.mult == l.data.mult, "rho = 1 + s keeps the products", at);
        for (const Chain& c : cover.chains(3))
            check.expect(after.twist.at(c) == plus(l.data.twist.at(c), from_kernel(e, ds.at(c), n, 0)),
                         "rho = 1 + s moves the twist by delta s", at + ", triple " + chain_str(c));
    }
    r.instances = configs;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"hochschild", "lemma-df", "sn-extension", "twist"};
    return names;
}

SuiteResult run_suite(const std::string& name, const Options& options) {
    if (!options.mutation.empty()) {
        if (options.mutation != "sign") throw Unsupported("unknown mutation '" + options.mutation + "'");
        if (name == "hochschild") throw Unsupported("suite hochschild has no sign mutation");
    }
    SuiteResult r;
    r.suite = name;
    r.seed = options.seed;
    r.mutation = options.mutation;
    if (name == "hochschild") hochschild_suite(options, r);
    else if (name == "lemma-df") lemma_df_suite(options, r);
    else if (name == "sn-extension") sn_suite(options, r);
    else if (name == "twist") twist_suite(options, r);
    else throw Unsupported("unknown suite '" + name + "'");
    return r;
}

}  // namespace ncdef::verify
