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

#include "ncdef/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ncdef/errors.hpp"

namespace ncdef::io {

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError("malformed " + what + ": " + e.what());
    }
}

int index_of(const std::vector<std::string>& names, const std::string& name, const std::string& what) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("unknown " + what + " '" + name + "'");
    return static_cast<int>(it - names.begin());
}

json chain_json(const Chain& c) { return json(c); }

Chain chain_from(const json& j) { return j.get<Chain>(); }

json jcochain_json(const JCochain& v, const std::vector<std::string>& vars) {
    json out = json::array();
    for (const Cochain& c : v) out.push_back(to_json(c, vars));
    return out;
}

bool all_zero(const JCochain& v) {
    return std::all_of(v.begin(), v.end(), [](const Cochain& c) { return c.is_zero(); });
}

json indexed_block(const std::map<int, JCochain>& m, const std::vector<std::string>& vars) {
    json out = json::array();
    for (const auto& [i, v] : m)
        if (!all_zero(v)) out.push_back({{"chart", i}, {"values", jcochain_json(v, vars)}});
    return out;
}

json chain_block(const std::map<Chain, JCochain>& m, const std::vector<std::string>& vars) {
    json out = json::array();
    for (const auto& [c, v] : m)
        if (!all_zero(v)) out.push_back({{"chain", chain_json(c)}, {"values", jcochain_json(v, vars)}});
    return out;
}

json corrections(const ArtinAlgebra& r, const Family& f, const std::vector<std::string>& vars) {
    json out = json::object();
    for (std::size_t a = 1; a < f.size(); ++a)
        if (!f[a].is_zero()) out[r.basis_name(static_cast<int>(a))] = to_json(f[a], vars);
    return out;
}

void read_corrections(const json& j, const ArtinAlgebra& r, const std::vector<std::string>& vars, int arity, Family& f) {
    std::vector<std::string> names;
    for (int a = 0; a < r.dim(); ++a) names.push_back(r.basis_name(a));
    for (const auto& [key, value] : j.items()) {
        const int a = index_of(names, key, "basis monomial");
        if (a == 0) throw ParseError("the constant coefficient of a family is implicit");
        Cochain c = cochain_from_json(value, vars);
        if (c.arity() != arity) throw ArityMismatch("correction '" + key + "' has arity " + std::to_string(c.arity()));
        f[static_cast<std::size_t>(a)] = std::move(c);
    }
}

// Splits "a,b,(c,d)" at top-level commas.
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("rationals are written as \"p/q\" strings");
    return Rational::parse(j.get<std::string>());
}

json to_json(const ArtinAlgebra& r) {
    json ideal = json::array();
    for (const QPoly& g : r.ideal()) ideal.push_back(to_string(g, r.params()));
    return {{"params", r.params()}, {"ideal", ideal}, {"order", r.order()}};
}

ArtinAlgebra algebra_from_json(const json& j) {
    return guarded("algebra", [&] {
        const auto params = j.at("params").get<std::vector<std::string>>();
        std::vector<QPoly> ideal;
        for (const json& g : j.value("ideal", json::array())) ideal.push_back(parse_poly(g.get<std::string>(), params));
        return artin_quotient(params, ideal, j.at("order").get<int>());
    });
}

ArtinAlgebra parse_base(const std::string& text_in) {
    std::string text;
    for (char ch : text_in)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw ParseError("empty base ring");
    if (text[0] == '@') return algebra_from_json(read_file(text.substr(1)));
    if (text[0] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("base ring JSON: ") + e.what());
        }
        return algebra_from_json(j);
    }
    if (text == "k") return artin_quotient({}, {}, 0);
    if (text.rfind("k[", 0) != 0) throw ParseError("base ring must look like k[t]/(t^3): '" + text_in + "'");
    const auto close = text.find(']');
    if (close == std::string::npos) throw ParseError("missing ']' in base ring '" + text_in + "'");
    std::vector<std::string> params = split_top(text.substr(2, close - 2));
    if (params.empty()) throw ParseError("no parameters in base ring '" + text_in + "'");

    std::vector<QPoly> gens;
    int order = -1;
    std::string rest = text.substr(close + 1);
    while (!rest.empty()) {
        if (rest.rfind("/(", 0) == 0) {
            const auto end = rest.find(')', 2);
            int depth = 0;
            std::size_t pos = 1;
            for (; pos < rest.size(); ++pos) {
                if (rest[pos] == '(') ++depth;
                if (rest[pos] == ')' && --depth == 0) break;
            }
            if (end == std::string::npos || pos >= rest.size()) throw ParseError("unbalanced parentheses in '" + text_in + "'");
            for (const std::string& g : split_top(rest.substr(2, pos - 2))) gens.push_back(parse_poly(g, params));
            rest = rest.substr(pos + 1);
        } else if (rest.rfind("/m^", 0) == 0) {
            std::size_t used = 0;
            const int power = std::stoi(rest.substr(3), &used);
            if (power < 1) throw ParseError("power of m must be positive in '" + text_in + "'");
            order = power - 1;
            rest = rest.substr(3 + used);
        } else {
            throw ParseError("unexpected '" + rest + "' in base ring '" + text_in + "'");
        }
    }
    if (order < 0) {
        // Monomials of degree > sum (e_a - 1) lie in (t_1^{e_1}, ..., t_n^{e_n}).
        order = 0;
        for (std::size_t a = 0; a < params.size(); ++a) {
            int best = 0;
            for (const QPoly& g : gens) {
                if (g.size() != 1) continue;
                const Exponent& e = g.terms().begin()->first;
                bool pure = true;
                for (std::size_t b = 0; b < e.size(); ++b)
                    if (b != a && e[b] != 0) pure = false;
                if (pure && e[a] > 0 && (best == 0 || e[a] < best)) best = e[a];
            }
            if (best == 0) throw ParseError("parameter " + params[a] + " has no pure power in '" + text_in + "'; add /m^N");
            order += best - 1;
        }
    }
    return artin_quotient(params, gens, order);
}

json to_json(const Cover& cover) {
    json charts = json::array();
    for (const Chart& ch : cover.charts()) {
        json subst = json::object();
        json localized = json::array();
        for (int b = 0; b < ch.dim(); ++b) {
            const auto bb = static_cast<std::size_t>(b);
            subst[ch.vars[bb]] = exponent_to_string(ch.coords[bb], cover.torus_vars());
            if (ch.inverted[bb]) localized.push_back(ch.vars[bb]);
        }
        charts.push_back({{"label", ch.label}, {"vars", ch.vars}, {"substitution", subst}, {"localized", localized}});
    }
    json rel = json::array();
    for (const auto& [a, b] : cover.relations()) rel.push_back({a, b});
    return {{"name", cover.name()}, {"torus_vars", cover.torus_vars()}, {"charts", charts}, {"relations", rel}};
}

Cover cover_from_json(const json& j) {
    if (j.is_string()) return builtin_variety(j.get<std::string>());
    return guarded("cover", [&] {
        const auto torus = j.at("torus_vars").get<std::vector<std::string>>();
        std::vector<Chart> charts;
        for (const json& cj : j.at("charts")) {
            Chart ch;
            ch.id = static_cast<int>(charts.size());
            ch.label = cj.value("label", "U" + std::to_string(ch.id));
            ch.vars = cj.at("vars").get<std::vector<std::string>>();
            const auto localized = cj.value("localized", std::vector<std::string>{});
            for (const std::string& v : ch.vars) {
                const QPoly m = parse_poly(cj.at("substitution").at(v).get<std::string>(), torus);
                if (m.size() != 1 || !m.terms().begin()->second.is_one())
                    throw ParseError("substitution for " + v + " must be a torus monomial");
                ch.coords.push_back(m.terms().begin()->first);
                ch.inverted.push_back(std::find(localized.begin(), localized.end(), v) != localized.end());
            }
            for (const std::string& v : localized) index_of(ch.vars, v, "localized variable");
            charts.push_back(std::move(ch));
        }
        std::vector<std::pair<int, int>> rel;
        for (const json& r : j.value("relations", json::array())) rel.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
        Cover cover(j.value("name", "custom"), torus, std::move(charts), rel);
        cover.validate();
        return cover;
    });
}

json to_json(const Cochain& c, const std::vector<std::string>& vars) {
    json terms = json::array();
    for (const SlotTerm& t : c.to_slots()) {
        json slots = json::array();
        for (const Exponent& alpha : t.slots) {
            json names = json::array();
            for (std::size_t a = 0; a < alpha.size(); ++a)
                for (int k = 0; k < alpha[a]; ++k) names.push_back(vars[a]);
            slots.push_back(names);
        }
        terms.push_back({{"coeff", to_string(t.coeff, vars)}, {"slots", slots}});
    }
    return {{"arity", c.arity()}, {"terms", terms}};
}

Cochain cochain_from_json(const json& j, const std::vector<std::string>& vars) {
    return guarded("cochain", [&] {
        const int n = static_cast<int>(vars.size());
        const int arity = j.at("arity").get<int>();
        if (arity < 0) throw ParseError("negative cochain arity");
        std::vector<SlotTerm> terms;
        for (const json& t : j.value("terms", json::array())) {
            SlotTerm st{parse_poly(t.at("coeff").get<std::string>(), vars), {}};
            const json& slots = t.at("slots");
            if (static_cast<int>(slots.size()) != arity) throw ArityMismatch("term with the wrong number of slots");
            for (const json& s : slots) {
                Exponent alpha(static_cast<std::size_t>(n), 0);
                for (const json& name : s) alpha[static_cast<std::size_t>(index_of(vars, name.get<std::string>(), "variable"))] += 1;
                st.slots.push_back(alpha);
            }
            terms.push_back(std::move(st));
        }
        return Cochain::from_slots(n, arity, terms);
    });
}

json to_json(const PolyVector& v, const Cover& cover, int chart) {
    const Chart& ch = cover.chart(chart);
    json terms = json::array();
    for (const auto& [t, f] : v.to_chart_form(ch)) {
        json wedge = json::array();
        for (int b : t) wedge.push_back(ch.vars[static_cast<std::size_t>(b)]);
        terms.push_back({{"coeff", to_string(f, ch.vars)}, {"wedge", wedge}});
    }
    return {{"chart", chart}, {"degree", v.degree()}, {"terms", terms}};
}

PolyVectorSection polyvector_from_json(const json& j, const Cover& cover) {
    return guarded("polyvector", [&] {
        const int chart = j.value("chart", 0);
        if (chart < 0 || chart >= cover.size()) throw ParseError("chart index out of range");
        const Chart& ch = cover.chart(chart);
        const int p = j.at("degree").get<int>();
        std::map<Subset, QPoly> form;
        for (const json& t : j.value("terms", json::array())) {
            std::vector<int> idx;
            for (const json& name : t.at("wedge")) idx.push_back(index_of(ch.vars, name.get<std::string>(), "chart variable"));
            if (static_cast<int>(idx.size()) != p) throw ArityMismatch("wedge of the wrong length");
            // Sort the wedge, tracking the sign of the permutation.
            int sign = 1;
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a + 1; b < idx.size(); ++b) {
                    if (idx[a] == idx[b]) sign = 0;
                    if (idx[a] > idx[b]) sign = -sign;
                }
            if (sign == 0) continue;
            std::sort(idx.begin(), idx.end());
            QPoly f = parse_poly(t.at("coeff").get<std::string>(), ch.vars);
            if (sign < 0) f = -f;
            auto [it, fresh] = form.emplace(idx, f);
            if (!fresh) it->second += f;
        }
        return PolyVectorSection{chart, PolyVector::from_chart_form(ch, p, form)};
    });
}

json to_json(const OrderedCochain<PolyVector>& c, const Cover& cover) {
    json values = json::array();
    for (const auto& [chain, v] : c.values)
        if (!v.is_zero()) values.push_back({{"chain", chain_json(chain)}, {"field", to_json(v, cover, chain.back())}});
    return {{"degree", c.degree}, {"p", c.zero.degree()}, {"values", values}};
}

OrderedCochain<PolyVector> pv_cochain_from_json(const json& j, const Cover& cover) {
    return guarded("Čech cochain", [&] {
        const int q = j.at("degree").get<int>(), p = j.at("p").get<int>();
        OrderedCochain<PolyVector> out(q, PolyVector(cover.dim(), p));
        for (const json& v : j.value("values", json::array())) {
            const Chain chain = chain_from(v.at("chain"));
            if (static_cast<int>(chain.size()) != q + 1) throw ArityMismatch("chain of the wrong length");
            json field = v.at("field");
            if (!field.contains("chart")) field["chart"] = chain.back();
            PolyVectorSection s = polyvector_from_json(field, cover);
            if (s.chart != chain.back()) throw ParseError("Čech cochain values live on the last chart of their chain");
            if (s.field.degree() != p) throw ArityMismatch("field of the wrong degree");
            out.add(chain, s.field);
        }
        return out;
    });
}

json to_json(const NCDeformation& d) {
    const Cover& cover = d.cover();
    const auto& vars = cover.torus_vars();
    json products = json::array(), gluings = json::array(), twists = json::array();
    for (std::size_t i = 0; i < d.mult.size(); ++i)
        products.push_back({{"chart", i}, {"corrections", corrections(d.base, d.mult[i], vars)}});
    for (const auto& [c, f] : d.glue) gluings.push_back({{"chain", chain_json(c)}, {"corrections", corrections(d.base, f, vars)}});
    for (const auto& [c, f] : d.twist) twists.push_back({{"chain", chain_json(c)}, {"corrections", corrections(d.base, f, vars)}});
    return {{"format", "ncdef-deformation"}, {"cover", to_json(cover)}, {"mode", to_string(d.mode)},
            {"base", to_json(d.base)}, {"products", products}, {"gluings", gluings}, {"twists", twists}};
}

NCDeformation deformation_from_json(const json& j, std::shared_ptr<const Geometry> geometry) {
    return guarded("deformation", [&] {
        Cover cover = cover_from_json(j.at("cover"));
        if (!geometry) {
            geometry = Geometry::make(std::move(cover));
        } else if (to_json(cover) != to_json(geometry->cover())) {
            throw IncompatibleData("deformation file is over a different cover");
        }
        const ArtinAlgebra base = algebra_from_json(j.at("base"));
        NCDeformation d = NCDeformation::trivial(geometry, base, parse_mode(j.value("mode", "untwisted")));
        const auto& vars = geometry->cover().torus_vars();
        for (const json& p : j.value("products", json::array())) {
            const int i = p.at("chart").get<int>();
            if (i < 0 || i >= static_cast<int>(d.mult.size())) throw ParseError("product for an unknown chart");
            read_corrections(p.at("corrections"), base, vars, 2, d.mult[static_cast<std::size_t>(i)]);
        }
        for (const json& g : j.value("gluings", json::array())) {
            auto it = d.glue.find(chain_from(g.at("chain")));
            if (it == d.glue.end()) throw ParseError("gluing for a pair that is not a chain");
            read_corrections(g.at("corrections"), base, vars, 1, it->second);
        }
        for (const json& t : j.value("twists", json::array())) {
            auto it = d.twist.find(chain_from(t.at("chain")));
            if (it == d.twist.end()) throw ParseError("twist for a triple that is not a chain (or an untwisted deformation)");
            read_corrections(t.at("corrections"), base, vars, 0, it->second);
        }
        return d;
    });
}

json to_json(const StageClass& s, const Cover& cover) {
    json comps = json::array();
    for (std::size_t k = 0; k < s.components.size(); ++k) {
        const CechClass& c = s.components[k];
        json coords = json::array();
        for (const auto& [w, v] : c.coordinates) {
            json vals = json::array();
            for (Eigen::Index a = 0; a < v.size(); ++a) vals.push_back(to_json(v(a)));
            coords.push_back({{"weight", w}, {"values", vals}});
        }
        comps.push_back({{"kernel_element", k},
                         {"zero", c.is_zero()},
                         {"coordinates", coords},
                         {"representative", to_json(c.representative, cover)}});
    }
    return {{"p", s.p}, {"q", s.q}, {"zero", s.is_zero()}, {"rank", s.rank()}, {"components", comps}};
}

json to_json(const ObstructionReport& r, const Cover& cover) {
    const auto& vars = cover.torus_vars();
    json classes = json::object();
    auto put = [&](const char* name, const std::optional<StageClass>& s) {
        if (s) classes[name] = to_json(*s, cover);
    };
    put("xi(3,0)", r.xi30);
    put("xi(2,1)", r.xi21);
    put("xi(0,3)", r.xi03);
    put("xi(1,2)", r.xi12);
    json defects = {{"f", indexed_block(r.defects.f, vars)},
                    {"g", chain_block(r.defects.g, vars)},
                    {"h", chain_block(r.defects.h, vars)},
                    {"sigma", chain_block(r.defects.sigma, vars)}};
    json repairs = {{"b", indexed_block(r.repairs.b, vars)},
                    {"c", chain_block(r.repairs.c, vars)},
                    {"t", chain_block(r.repairs.t, vars)}};
    return {{"mode", to_string(r.mode)},
            {"extendible", r.extendible()},
            {"stage", r.stage},
            {"summary", r.summary()},
            {"classes", classes},
            {"defects", defects},
            {"repairs", repairs},
            {"order_bound", r.order_bound},
            {"order_used", r.order_used}};
}

json to_json(const T1Choice& c, const Cover& cover) {
    json elements = json::array();
    for (const T1Element& e : c) {
        json x = json::object();
        if (e.bivector) x["bivector"] = to_json(*e.bivector, cover, 0);
        if (e.vector_cocycle) x["vector_cocycle"] = to_json(*e.vector_cocycle, cover);
        if (e.twist_cocycle) x["twist_cocycle"] = to_json(*e.twist_cocycle, cover);
        elements.push_back(x);
    }
    return {{"elements", elements}};
}

T1Choice choice_from_json(const json& j, const Cover& cover) {
    return guarded("T^1 choice", [&] {
        T1Choice out;
        for (const json& x : j.at("elements")) {
            T1Element e;
            if (x.contains("bivector")) {
                PolyVectorSection s = polyvector_from_json(x.at("bivector"), cover);
                if (s.field.degree() != 2) throw ArityMismatch("the bivector part must have degree 2");
                e.bivector = s.field;
            }
            if (x.contains("vector_cocycle")) e.vector_cocycle = pv_cochain_from_json(x.at("vector_cocycle"), cover);
            if (x.contains("twist_cocycle")) e.twist_cocycle = pv_cochain_from_json(x.at("twist_cocycle"), cover);
            out.push_back(std::move(e));
        }
        return out;
    });
}

json to_json(const T1Basis& b, const Cover& cover) {
    json biv = json::array(), vec = json::array(), tw = json::array();
    for (const PolyVector& v : b.bivectors) biv.push_back(to_json(v, cover, 0));
    for (const auto& c : b.vector_classes) vec.push_back(to_json(c, cover));
    for (const auto& c : b.twist_classes) tw.push_back(to_json(c, cover));
    return {{"dim", b.dim()}, {"bivectors", biv}, {"vector_classes", vec}, {"twist_classes", tw}};
}

json to_json(const HullResult& h, bool with_family) {
    json rel = json::array();
    for (const QPoly& f : h.relations) rel.push_back(to_string(f, h.base.params()));
    json dims = json::array();
    for (const auto& [pq, v] : h.dims) dims.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", v}});
    json out = {{"base", to_json(h.base)},
                {"parameters", h.base.params()},
                {"relations", rel},
                {"dims", dims},
                {"tangent_dim", h.tangent.dim()},
                {"valid", h.valid}};
    if (with_family) {
        out["tangent"] = to_json(h.tangent, h.family.cover());
        out["family"] = to_json(h.family);
    }
    return out;
}

json to_json(const verify::SuiteResult& r) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back({{"identity", f.identity}, {"where", f.where}, {"detail", f.detail}});
    return {{"suite", r.suite},   {"seed", r.seed},     {"mutation", r.mutation}, {"instances", r.instances},
            {"checks", r.checks}, {"failed", r.failed}, {"passed", r.passed()},   {"failures", fails}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << dump(j);
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace ncdef::io
