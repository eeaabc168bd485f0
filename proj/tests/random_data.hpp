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


// Direct symbolic evaluator for polydifferential operators given in slot
// form (coefficient times partial derivatives), plus the seeded generators.

#ifndef NCDEF_TESTS_RANDOM_DATA_HPP
#define NCDEF_TESTS_RANDOM_DATA_HPP

#include <random>

#include "ncdef/cochain.hpp"
#include "ncdef/sample.hpp"

namespace testdata {

using namespace ncdef;

inline QPoly derivative(const QPoly& f, int a) {
    QPoly out(f.nvars());
    f.for_each([&](const Exponent& e, const Rational& c) {
        if (e[static_cast<std::size_t>(a)] == 0) return;
        Exponent g = e;
        g[static_cast<std::size_t>(a)] -= 1;
        out.add_term(g, c * Rational(e[static_cast<std::size_t>(a)]));
    });
    return out;
}

inline QPoly apply_derivatives(QPoly f, const Exponent& alpha) {
    for (std::size_t a = 0; a < alpha.size(); ++a)
        for (int k = 0; k < alpha[a]; ++k) f = derivative(f, static_cast<int>(a));
    return f;
}

/// sum over terms of coeff * prod_s d^{alpha_s}(args_s), computed by differentiation.
inline QPoly direct_evaluate(int n, const std::vector<SlotTerm>& terms, const std::vector<QPoly>& args) {
    QPoly out(n);
    for (const SlotTerm& t : terms) {
        QPoly prod = t.coeff;
        for (std::size_t s = 0; s < args.size(); ++s) prod *= apply_derivatives(args[s], t.slots[s]);
        out += prod;
    }
    return out;
}

using namespace ncdef::sample;

}  // namespace testdata

#endif  // NCDEF_TESTS_RANDOM_DATA_HPP
