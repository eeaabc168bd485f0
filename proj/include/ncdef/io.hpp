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

#ifndef NCDEF_IO_HPP
#define NCDEF_IO_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdef/deform.hpp"
#include "ncdef/verify.hpp"

// JSON forms of the library objects. Rationals are "p/q" strings and
// polynomials are strings in the variable names of their ring. Cochains are
// written in the torus coordinates of their cover as a list of terms
// coefficient * d^{slot 1} (.) ... d^{slot p} (.), each slot a list of
// variable names (repeated for higher derivatives). Polyvector fields are
// written on a chart as coefficients of wedges of d/dx. Objects are emitted
// with sorted keys, so equal values serialise to identical bytes.
namespace ncdef::io {

using json = nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// {"params": [...], "ideal": [...], "order": N}
json to_json(const ArtinAlgebra& r);
ArtinAlgebra algebra_from_json(const json& j);

/// Base ring from a command-line string: "k", "k[t]/(t^3)", "k[s,t]/(s^2,t^2)",
/// "k[t1,t2]/m^3" (m the maximal ideal), a combination such as
/// "k[s,t]/(s*t)/m^3", inline JSON or "@file". Without a power of m every
/// parameter needs a pure power among the generators.
ArtinAlgebra parse_base(const std::string& text);

/// {"name", "torus_vars", "charts": [{"label", "vars", "substitution",
/// "localized"}], "relations": [[i, j], ...]}. A plain string names a
/// built-in variety.
json to_json(const Cover& cover);
Cover cover_from_json(const json& j);

/// {"arity": p, "terms": [{"coeff": "...", "slots": [["x", "x"], ["y"]]}]}
json to_json(const Cochain& c, const std::vector<std::string>& torus_vars);
Cochain cochain_from_json(const json& j, const std::vector<std::string>& torus_vars);

/// {"chart": i, "degree": p, "terms": [{"coeff": "...", "wedge": ["x", "y"]}]}
json to_json(const PolyVector& v, const Cover& cover, int chart);
PolyVectorSection polyvector_from_json(const json& j, const Cover& cover);

/// {"degree": q, "p": p, "values": [{"chain": [...], "field": polyvector}]},
/// each value written on the chart of the last chain element.
json to_json(const OrderedCochain<PolyVector>& c, const Cover& cover);
OrderedCochain<PolyVector> pv_cochain_from_json(const json& j, const Cover& cover);

/// {"format": "ncdef-deformation", "cover", "mode", "base", "products",
/// "gluings", "twists"}: coefficient 0 of each family is the undeformed
/// datum and is implicit; the others are keyed by basis monomial.
json to_json(const NCDeformation& d);
/// Builds a fresh Geometry for the cover unless one is supplied (its cover
/// must then agree with the file).
NCDeformation deformation_from_json(const json& j, std::shared_ptr<const Geometry> geometry = nullptr);

json to_json(const StageClass& s, const Cover& cover);
json to_json(const ObstructionReport& r, const Cover& cover);

/// {"elements": [{"bivector", "vector_cocycle", "twist_cocycle"}]}, one
/// element per kernel basis vector; absent parts are zero.
json to_json(const T1Choice& c, const Cover& cover);
T1Choice choice_from_json(const json& j, const Cover& cover);

json to_json(const T1Basis& b, const Cover& cover);
json to_json(const HullResult& h, bool with_family = true);
json to_json(const verify::SuiteResult& r);

/// Pretty printing with two-space indentation and a final newline.
std::string dump(const json& j);
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace ncdef::io

#endif  // NCDEF_IO_HPP
