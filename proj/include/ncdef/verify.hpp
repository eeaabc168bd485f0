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

#ifndef NCDEF_VERIFY_HPP
#define NCDEF_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ncdef::verify {

/// Suites run on seeded random instances. `instances` scales the instance
/// counts (0 keeps the defaults). The only mutation is "sign", which
/// deliberately breaks one expected value so the checker can be seen to fail.
struct Options {
    std::uint32_t seed = 1;
    int instances = 0;
    std::string mutation;
};

/// One violated identity with the tuple it failed on and both sides.
struct Failure {
    std::string identity;
    std::string where;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::uint32_t seed = 0;
    std::string mutation;
    int instances = 0;
    long checks = 0;
    std::vector<Failure> failures;  // the first few, in the order found
    long failed = 0;                // total number of failed checks
    bool passed() const { return failed == 0; }
};

/// hochschild: d o d = 0 and hkr_class o d = 0 on random polydifferential cochains.
/// lemma-df: defect identities and their change under choice data, untwisted
///   on affine(2), proj(1) and chain(3), twisted on chain(4).
/// sn-extension: the S_n extension of random integer cocycles on random posets.
/// twist: change of twist, twist coboundaries and rho = 1 + s equivalences.
const std::vector<std::string>& suite_names();

/// Throws Unsupported for an unknown suite or an unsupported mutation.
SuiteResult run_suite(const std::string& name, const Options& options = {});

}  // namespace ncdef::verify

#endif  // NCDEF_VERIFY_HPP
