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

#ifndef NCDEF_SCALAR_HPP
#define NCDEF_SCALAR_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

namespace ncdef {

/// Exact rational number. Thin value wrapper over mpq_class whose operators
/// return concrete values (no gmpxx expression templates), so it can be used
/// as an Eigen scalar.
class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}
    Rational(long v) : v_(v) {}
    Rational(long long v) : v_(static_cast<long>(v)) {}
    Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    /// Parses "p", "-p" or "p/q".
    static Rational parse(const std::string& s);

    const mpq_class& get() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline Rational inverse(const Rational& r) { return Rational(1) / r; }
// Found by ADL from Eigen's isZero()/isApprox(); with zero precision they are exact tests.
inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline Rational abs2(const Rational& r) { return r * r; }

/// Element of the prime field F_p. The modulus travels with the value and is
/// checked on every binary operation; a default-constructed element (modulus
/// 0) adopts the modulus of the other operand so Eigen's zero-initialisation works.
class ModP {
public:
    ModP() = default;
    ModP(int v) : raw_(v) {}
    ModP(int64_t v, uint64_t p);

    uint64_t value() const { return v_; }
    uint64_t modulus() const { return p_; }
    bool is_zero() const { return p_ == 0 ? raw_ == 0 : v_ == 0; }
    bool is_one() const { return p_ == 0 ? raw_ == 1 : v_ == 1; }

    ModP& operator+=(const ModP& o);
    ModP& operator-=(const ModP& o);
    ModP& operator*=(const ModP& o);
    ModP& operator/=(const ModP& o);
    ModP inverse() const;

    friend ModP operator+(ModP a, const ModP& b) { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
    friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
    friend ModP operator-(const ModP& a) { return ModP() - a; }
    friend bool operator==(const ModP& a, const ModP& b);
    friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const ModP& r) {
        return r.p_ == 0 ? os << r.raw_ : os << r.v_;
    }

private:
    // Unbound literals (modulus 0) hold a plain integer until they meet a bound value.
    void bind(uint64_t p);
    int64_t raw_ = 0;  // value while unbound
    uint64_t v_ = 0;
    uint64_t p_ = 0;
};

bool is_prime(uint64_t n);

/// Factory for elements of F_p. Rejects p <= 1 and composite p.
class PrimeField {
public:
    explicit PrimeField(uint64_t p);
    uint64_t characteristic() const { return p_; }
    ModP operator()(int64_t v) const { return ModP(v, p_); }

private:
    uint64_t p_;
};

/// Uniform helpers used by templated code.
template <class S> bool is_zero(const S& s) { return s.is_zero(); }
template <class S> S inv(const S& s);
template <> inline Rational inv<Rational>(const Rational& s) { return inverse(s); }
template <> inline ModP inv<ModP>(const ModP& s) { return s.inverse(); }

}  // namespace ncdef

namespace Eigen {

template <> struct NumTraits<ncdef::Rational> : GenericNumTraits<ncdef::Rational> {
    using Real = ncdef::Rational;
    using NonInteger = ncdef::Rational;
    using Nested = ncdef::Rational;
    using Literal = ncdef::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 32,
        MulCost = 32
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <> struct NumTraits<ncdef::ModP> : GenericNumTraits<ncdef::ModP> {
    using Real = ncdef::ModP;
    using NonInteger = ncdef::ModP;
    using Nested = ncdef::ModP;
    using Literal = ncdef::ModP;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // NCDEF_SCALAR_HPP
