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

// Command-line driver: cohomology tables, lifting, verification suites and
// truncated hulls. Tables go to stdout, JSON to --out (or stdout with "-").
//
// Exit codes: 0 success, 1 a checked identity or validity condition failed,
// 2 bad input or usage, 3 an obstruction class does not vanish.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncdef/deform.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/io.hpp"
#include "ncdef/verify.hpp"

using namespace ncdef;
using io::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kBadInput = 2, kObstructed = 3;

struct Job {
    std::string command;
    std::string variety;
    std::string mode = "untwisted";
    std::string base;
    int order = 2;
    std::optional<int> window;
    std::optional<int> max_degree;
    std::uint32_t seed = 1;
    std::string in, out, choices, report;
    std::vector<std::string> suites;
    std::string mutation;
    int instances = 0;
    bool skip_validation = false;

    json to_json() const {
        json j = {{"command", command}};
        if (!variety.empty()) j["variety"] = variety;
        if (command != "verify") j["mode"] = mode;
        if (!base.empty()) j["base"] = base;
        if (command == "hull") j["order"] = order;
        if (window) j["window"] = *window;
        if (max_degree) j["max_degree"] = *max_degree;
        if (command == "verify") {
            j["seed"] = seed;
            j["suites"] = suites;
            if (!mutation.empty()) j["mutation"] = mutation;
            if (instances > 0) j["instances"] = instances;
        }
        if (!in.empty()) j["in"] = in;
        if (!choices.empty()) j["choices"] = choices;
        return j;
    }
};

void emit(const Job& job, json result) {
    if (job.out.empty()) return;
    json doc = {{"job", job.to_json()}, {"result", std::move(result)}};
    if (job.out == "-") std::cout << io::dump(doc);
    else io::write_file(job.out, doc);
}

std::shared_ptr<const Geometry> geometry_for(const std::string& variety) {
    if (variety.empty()) throw ParseError("--variety is required");
    if (variety[0] == '@') return Geometry::make(io::cover_from_json(io::read_file(variety.substr(1))));
    return Geometry::make(builtin_variety(variety));
}

std::string wedge_name(int p) {
    switch (p) {
        case 0: return "O";
        case 1: return "T";
        default: return "wedge^" + std::to_string(p) + " T";
    }
}

// ------------------------------------------------------------------ cohomology

int cmd_cohomology(const Job& job) {
    auto g = geometry_for(job.variety);
    const Mode mode = parse_mode(job.mode);
    const auto table = cohomology_table(*g, job.max_degree, job.window);
    const int pmax = std::min(3, g->nvars());
    auto h = [&](int p, int q) {
        auto it = table.find({p, q});
        return it == table.end() ? 0 : it->second;
    };
    const bool twisted = mode == Mode::Twisted;
    const int t1 = h(2, 0) + h(1, 1) + (twisted ? h(0, 2) : 0);
    const int t2 = h(3, 0) + h(2, 1) + h(1, 2) + (twisted ? h(0, 3) : 0);

    std::cout << "cohomology of " << g->cover().name() << " (" << g->cover().size() << " charts)";
    if (job.max_degree) std::cout << ", degree slice <= " << *job.max_degree;
    std::cout << "\n  p  sheaf            h^0   h^1   h^2   h^3\n";
    json rows = json::array();
    for (int p = 0; p <= pmax; ++p) {
        std::cout << "  " << p << "  " << std::left << std::setw(14) << wedge_name(p) << std::right;
        std::vector<int> hs;
        for (int q = 0; q <= 3; ++q) {
            std::cout << std::setw(6) << h(p, q);
            hs.push_back(h(p, q));
        }
        std::cout << "\n";
        rows.push_back({{"p", p}, {"h", hs}});
    }
    std::cout << "T1 (" << to_string(mode) << ") = h0(wedge^2 T) + h1(T)" << (twisted ? " + h2(O)" : "") << " = " << t1 << "\n";
    std::cout << "T2 (" << to_string(mode) << ") = h0(wedge^3 T) + h1(wedge^2 T) + h2(T)" << (twisted ? " + h3(O)" : "")
              << " = " << t2 << "\n";
    emit(job, {{"variety", g->cover().name()}, {"mode", to_string(mode)}, {"table", rows}, {"T1", t1}, {"T2", t2}});
    return kOk;
}

// ------------------------------------------------------------------ lift

std::string describe_class(const StageClass& s, const Cover& cover) {
    std::ostringstream os;
    for (std::size_t k = 0; k < s.components.size(); ++k) {
        const CechClass& c = s.components[k];
        if (c.is_zero()) continue;
        os << "  kernel element " << k << ", representative:\n";
        for (const auto& [chain, v] : c.representative.values) {
            if (v.is_zero()) continue;
            os << "    (";
            for (std::size_t a = 0; a < chain.size(); ++a) os << (a ? "," : "") << chain[a];
            os << ") on " << cover.chart(chain.back()).label << ": " << v.str(cover.chart(chain.back())) << "\n";
        }
    }
    return os.str();
}

int cmd_lift(const Job& job) {
    NCDeformation d;
    if (!job.in.empty()) {
        d = io::deformation_from_json(io::read_file(job.in));
        if (!job.variety.empty()) throw ParseError("give either --in or --variety, not both");
    } else {
        auto g = geometry_for(job.variety);
        d = NCDeformation::trivial(g, artin_quotient({}, {}, 0), parse_mode(job.mode));
    }
    if (job.base.empty()) throw ParseError("--base is required");
    const ArtinAlgebra target = io::parse_base(job.base);
    const Cover& cover = d.cover();
    T1Choice choice;
    if (!job.choices.empty()) choice = io::choice_from_json(io::read_file(job.choices), cover);

    // Steps R'/m^{k+1} -> R'/m^k when d lives on a truncation of R',
    // otherwise one small extension with parameters matched by name.
    std::vector<SmallExtension> steps;
    if (d.base.dim() == 1 && d.base.params() != target.params())
        d = pushforward(d, AlgebraMap::by_names(d.base, truncate(target, 0)));
    if (d.base.params() == target.params() && truncate(target, d.base.order()) == d.base) {
        for (int k = d.base.order() + 1; k <= target.order(); ++k) {
            ArtinAlgebra upper = truncate(target, k), lower = truncate(target, k - 1);
            if (upper.dim() == lower.dim()) break;
            steps.push_back(small_extension(upper, lower));
        }
    } else {
        steps.push_back(small_extension(target, d.base));
    }
    if (steps.empty()) std::cout << "base ring already reached; nothing to lift\n";
    if (!choice.empty() && steps.size() > 1) std::cout << "note: the T1 choice is applied at the first step only\n";

    json reports = json::array();
    int status = kOk;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const SmallExtension& e = steps[s];
        std::cout << "step " << s + 1 << ": " << e.source().describe() << " -> " << e.target().describe() << " (kernel dimension "
                  << e.kernel_dim() << ")\n";
        Analysis a = analyze(lift_candidate(d, e));
        std::cout << a.report.summary() << "\n";
        reports.push_back(io::to_json(a.report, cover));
        if (!a.report.extendible()) {
            const StageClass* cls = nullptr;
            for (const auto* x : {&a.report.xi30, &a.report.xi21, &a.report.xi03, &a.report.xi12})
                if (*x && !(*x)->is_zero()) cls = &**x;
            std::cout << "Obstructed: class " << a.report.stage << " does not vanish\n";
            if (cls) std::cout << describe_class(*cls, cover);
            status = kObstructed;
            break;
        }
        d = transform(*a.repaired, choice_data(*d.geometry, d.mode, s == 0 ? choice : T1Choice{}, e.kernel_dim())).data;
    }

    json result = {{"steps", reports}, {"status", status == kOk ? "extended" : "obstructed"}};
    if (status == kOk) {
        if (!job.skip_validation) {
            ValidityReport v = check_validity(d);
            std::cout << "validity over " << d.base.describe() << ": " << (v.ok() ? "ok" : "FAILED: " + v.failures.front()) << "\n";
            result["valid"] = v.ok();
            result["validity_failures"] = v.failures;
            if (!v.ok()) status = kFailed;
        }
        result["deformation"] = io::to_json(d);
    }
    if (!job.report.empty()) io::write_file(job.report, {{"job", job.to_json()}, {"reports", reports}});
    if (!job.out.empty()) {
        if (status == kOk && job.out != "-") io::write_file(job.out, io::to_json(d));
        else emit(job, result);
    }
    return status;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const Job& job) {
    std::vector<std::string> names = job.suites;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) names = verify::suite_names();
    json results = json::array();
    bool ok = true;
    for (const std::string& name : names) {
        verify::Options o;
        o.seed = job.seed;
        o.instances = job.instances;
        o.mutation = job.mutation;
        verify::SuiteResult r = verify::run_suite(name, o);
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " seed=" << r.seed
                  << (r.mutation.empty() ? "" : " mutation=" + r.mutation) << ": " << r.instances << " instances, "
                  << r.checks << " checks, " << r.failed << " failed\n";
        for (const auto& f : r.failures) {
            std::cout << "  violated: " << f.identity << "\n    at " << f.where << "\n";
            if (!f.detail.empty()) std::cout << "    " << f.detail << "\n";
        }
        ok = ok && r.passed();
        results.push_back(io::to_json(r));
    }
    emit(job, {{"suites", results}, {"passed", ok}});
    return ok ? kOk : kFailed;
}

// ------------------------------------------------------------------ hull

int cmd_hull(const Job& job) {
    auto g = geometry_for(job.variety);
    HullOptions opts;
    opts.mode = parse_mode(job.mode);
    opts.order = job.order;
    opts.max_degree = job.max_degree;
    opts.validate = !job.skip_validation;
    HullResult h = hull(g, opts);

    const auto& params = h.base.params();
    std::cout << "hull of " << g->cover().name() << " (" << to_string(opts.mode) << ") to order " << opts.order << "\n";
    std::cout << "tangent dimension " << h.tangent.dim() << ": " << h.tangent.bivectors.size() << " from h0(wedge^2 T), "
              << h.tangent.vector_classes.size() << " from h1(T)";
    if (opts.mode == Mode::Twisted) std::cout << ", " << h.tangent.twist_classes.size() << " from h2(O)";
    std::cout << "\nbase: ";
    if (params.empty()) std::cout << "k\n";
    else std::cout << "k[[" << params.front() << (params.size() > 1 ? ".." + params.back() : "") << "]] modulo m^" << opts.order + 1 << "\n";
    if (h.relations.empty()) std::cout << "relations: none\n";
    for (const QPoly& f : h.relations) std::cout << "relation: " << to_string(f, params) << "\n";
    bool ok = true;
    if (opts.validate) {
        std::cout << "validity:";
        for (std::size_t k = 0; k < h.valid.size(); ++k) {
            std::cout << " order " << k + 1 << (h.valid[k] ? " ok" : " FAILED") << (k + 1 < h.valid.size() ? "," : "");
            ok = ok && h.valid[k];
        }
        std::cout << "\n";
    }
    emit(job, io::to_json(h, true));
    return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-commutative deformations of toric covers: cohomology, lifting, verification, hulls.\n"
                 "NCDEF_THREADS caps the number of worker threads."};
    app.require_subcommand(1);
    Job job;
    const std::vector<std::string> modes = {"untwisted", "twisted"};

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", job.out, "write JSON here (\"-\" for stdout)");
    };

    CLI::App* coh = app.add_subcommand("cohomology", "table of h^q(wedge^p T) with dim T1 and T2");
    coh->add_option("--variety", job.variety, "built-in variety or @cover.json")->required();
    coh->add_option("--mode", job.mode, "untwisted or twisted")->check(CLI::IsMember(modes));
    coh->add_option("--window", job.window, "character box radius");
    coh->add_option("--max-degree", job.max_degree, "degree slice for covers with infinite-dimensional cohomology");
    add_common(coh);

    CLI::App* lift = app.add_subcommand("lift", "extend a deformation to a larger base ring");
    lift->add_option("--in", job.in, "deformation file (default: trivial deformation over k)");
    lift->add_option("--variety", job.variety, "start from the trivial deformation of this variety");
    lift->add_option("--mode", job.mode, "untwisted or twisted (with --variety)")->check(CLI::IsMember(modes));
    lift->add_option("--base", job.base, "target base ring, e.g. k[t]/(t^4)")->required();
    lift->add_option("--choices", job.choices, "T1 choice file for the first step");
    lift->add_option("--report", job.report, "write the obstruction reports here");
    lift->add_flag("--skip-validation", job.skip_validation, "do not re-check the result");
    add_common(lift);

    CLI::App* ver = app.add_subcommand("verify", "run identity-verification suites on seeded random instances");
    ver->add_option("--suite", job.suites, "hochschild, lemma-df, sn-extension, twist or all (repeatable)");
    ver->add_option("--seed", job.seed, "random seed");
    ver->add_option("--instances", job.instances, "number of random instances (default per suite)");
    ver->add_option("--mutate", job.mutation, "inject a deliberate error into the checker")->check(CLI::IsMember({"sign"}));
    add_common(ver);

    CLI::App* hul = app.add_subcommand("hull", "truncated semi-universal deformation");
    hul->add_option("--variety", job.variety, "built-in variety or @cover.json")->required();
    hul->add_option("--mode", job.mode, "untwisted or twisted")->check(CLI::IsMember(modes));
    hul->add_option("--order", job.order, "truncation order")->check(CLI::Range(1, 16));
    hul->add_option("--max-degree", job.max_degree, "degree slice of T1 for affine covers");
    hul->add_flag("--skip-validation", job.skip_validation, "do not check the family at each order");
    add_common(hul);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (coh->parsed()) job.command = "cohomology";
        if (lift->parsed()) job.command = "lift";
        if (ver->parsed()) job.command = "verify";
        if (hul->parsed()) job.command = "hull";
        if (job.command == "cohomology") return cmd_cohomology(job);
        if (job.command == "lift") return cmd_lift(job);
        if (job.command == "verify") return cmd_verify(job);
        return cmd_hull(job);
    } catch (const IdentityViolation& e) {
        std::cerr << "identity violated: " << e.what() << "\n";
        return kFailed;
    } catch (const Obstructed& e) {
        std::cerr << "Obstructed: " << e.what() << "\n";
        return kObstructed;
    } catch (const Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}
