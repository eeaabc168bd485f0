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


// Helpers shared by the deformation sources. Not installed.

#ifndef NCDEF_SRC_DEFORM_INTERNAL_HPP
#define NCDEF_SRC_DEFORM_INTERNAL_HPP

#include <string>
#include <vector>

#include "ncdef/deform.hpp"

namespace ncdef::detail {

std::string chain_str(const Chain& c);
const Family& lookup(const std::map<Chain, Family>& m, const Chain& key, const char* what);
Family conjugate(const ArtinAlgebra& r, const Family& mult, const Family& tau, const Family& phi,
                 const std::vector<int>* targets = nullptr);
Family trans_defect(const NCDeformation& d, int i, int j, int k, const std::vector<int>* tg);
Family twist_defect(const NCDeformation& d, int i, int j, int k, int l, const std::vector<int>* tg);
NCDeformation transform_all(const NCDeformation& d, const RMat& m, const ArtinAlgebra& target);

}  // namespace ncdef::detail

#endif  // NCDEF_SRC_DEFORM_INTERNAL_HPP
