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


#ifndef NCDEF_ERRORS_HPP
#define NCDEF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncdef {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define NCDEF_DEFINE_ERROR(Name)                                         \
    class Name : public Error {                                          \
    public:                                                              \
        using Error::Error;                                              \
        const char* kind() const noexcept override { return #Name; }     \
    };

NCDEF_DEFINE_ERROR(ParseError)
NCDEF_DEFINE_ERROR(InvalidField)
NCDEF_DEFINE_ERROR(InvalidIdeal)
NCDEF_DEFINE_ERROR(NotSurjective)
NCDEF_DEFINE_ERROR(NotSmall)
NCDEF_DEFINE_ERROR(IncompatibleData)
NCDEF_DEFINE_ERROR(Unsupported)
NCDEF_DEFINE_ERROR(NotComparable)
NCDEF_DEFINE_ERROR(WindowTooSmall)
NCDEF_DEFINE_ERROR(ArityMismatch)
NCDEF_DEFINE_ERROR(NotACocycle)
NCDEF_DEFINE_ERROR(BoundsTooSmall)
NCDEF_DEFINE_ERROR(NotClosed)
NCDEF_DEFINE_ERROR(IdentityViolation)
NCDEF_DEFINE_ERROR(InvalidBaseChange)
NCDEF_DEFINE_ERROR(NotGluable)
NCDEF_DEFINE_ERROR(CompatibilityViolated)
NCDEF_DEFINE_ERROR(InfiniteDimensional)
NCDEF_DEFINE_ERROR(InvalidDeformation)

#undef NCDEF_DEFINE_ERROR

}  // namespace ncdef

#endif  // NCDEF_ERRORS_HPP
