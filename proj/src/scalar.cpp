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

#include "ncdef/scalar.hpp"

#include "ncdef/errors.hpp"

namespace ncdef {

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("not a rational number: '" + s + "'");
    if (s.find('/') != std::string::npos && q.get_den() == 0)
        throw ParseError("zero denominator: '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(uint64_t p) : p_(p) {
    if (p <= 1) throw InvalidField("prime-field modulus must be > 1, got " + std::to_string(p));
    if (!is_prime(p)) throw InvalidField("prime-field modulus is composite: " + std::to_string(p));
    if (p >= (uint64_t{1} << 32)) throw InvalidField("prime-field modulus must be < 2^32");
}

ModP::ModP(int64_t v, uint64_t p) : p_(p) {
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += static_cast<int64_t>(p);
    v_ = static_cast<uint64_t>(r);
}

void ModP::bind(uint64_t p) {
    if (p_ == p) return;
    if (p_ != 0) throw InvalidField("ModP: mixing moduli " + std::to_string(p_) + " and " + std::to_string(p));
    *this = ModP(raw_, p);
}

ModP& ModP::operator+=(const ModP& o) {
    if (p_ == 0 && o.p_ == 0) { raw_ += o.raw_; return *this; }
    ModP b = o;
    bind(o.p_ ? o.p_ : p_);
    b.bind(p_);
    v_ = (v_ + b.v_) % p_;
    return *this;
}

ModP& ModP::operator-=(const ModP& o) {
    if (p_ == 0 && o.p_ == 0) { raw_ -= o.raw_; return *this; }
    ModP b = o;
    bind(o.p_ ? o.p_ : p_);
    b.bind(p_);
    v_ = (v_ + p_ - b.v_) % p_;
    return *this;
}

ModP& ModP::operator*=(const ModP& o) {
    if (p_ == 0 && o.p_ == 0) { raw_ *= o.raw_; return *this; }
    ModP b = o;
    bind(o.p_ ? o.p_ : p_);
    b.bind(p_);
    v_ = (v_ * b.v_) % p_;
    return *this;
}

ModP ModP::inverse() const {
    if (is_zero()) throw std::domain_error("ModP: inverse of zero");
    if (p_ == 0) {
        if (raw_ == 1 || raw_ == -1) return *this;
        throw InvalidField("ModP: inverse of an element with no modulus");
    }
    // Fermat: a^(p-2)
    uint64_t base = v_, e = p_ - 2, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return ModP(static_cast<int64_t>(acc), p_);
}

ModP& ModP::operator/=(const ModP& o) {
    ModP b = o;
    if (b.p_ == 0 && p_ != 0) b.bind(p_);
    return *this *= b.inverse();
}

bool operator==(const ModP& a, const ModP& b) {
    if (a.p_ == 0 && b.p_ == 0) return a.raw_ == b.raw_;
    ModP x = a, y = b;
    uint64_t p = a.p_ ? a.p_ : b.p_;
    x.bind(p);
    y.bind(p);
    return x.v_ == y.v_;
}

}  // namespace ncdef
