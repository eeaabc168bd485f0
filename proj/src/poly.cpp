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


#include "ncdef/poly.hpp"

#include <cctype>
#include <sstream>

namespace ncdef {

std::string exponent_to_string(const Exponent& e, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += names.at(k);
        if (e[k] != 1) out += "^" + std::to_string(e[k]);
    }
    return out.empty() ? "1" : out;
}

std::string to_string(const QPoly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    // Highest exponents first reads more naturally.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (out.empty()) {
            if (a.sign() < 0) { out += "-"; a = -a; }
        } else {
            out += a.sign() < 0 ? " - " : " + ";
            if (a.sign() < 0) a = -a;
        }
        const bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        if (constant) {
            out += a.str();
        } else {
            if (!a.is_one()) out += a.str() + "*";
            out += exponent_to_string(e, names);
        }
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& names) : s_(text), names_(names) {}

    QPoly parse() {
        QPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("polynomial '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    int nvars() const { return static_cast<int>(names_.size()); }

    QPoly expr() {
        QPoly acc(nvars());
        bool first = true;
        for (;;) {
            skip();
            bool neg = false;
            if (eat('+')) {
            } else if (eat('-')) {
                neg = true;
            } else if (!first) {
                break;
            }
            QPoly t = term();
            acc += neg ? -t : t;
            first = false;
        }
        return acc;
    }

    QPoly term() {
        QPoly acc = power();
        for (;;) {
            skip();
            if (pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') break;
            if (!eat('*')) break;
            acc *= power();
        }
        return acc;
    }

    int integer() {
        skip();
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        int v = std::stoi(s_.substr(start, pos_ - start));
        return neg ? -v : v;
    }

    QPoly power() {
        QPoly base = atom();
        skip();
        bool caret = eat('^');
        if (!caret && pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') {
            pos_ += 2;
            caret = true;
        }
        if (!caret) return base;
        int e = integer();
        if (e >= 0) return base.pow(e);
        // Negative powers only of a single monomial with unit coefficient.
        if (base.size() != 1 || !base.terms().begin()->second.is_one()) fail("negative power of a non-monomial");
        Exponent ex = base.terms().begin()->first;
        for (int& x : ex) x *= e;
        return QPoly::monomial(ex);
    }

    QPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            QPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::size_t dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (dstart == pos_) fail("expected denominator");
            }
            return QPoly(nvars(), Rational::parse(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            for (int k = 0; k < nvars(); ++k)
                if (names_[static_cast<std::size_t>(k)] == name) return QPoly::variable(nvars(), k);
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string s_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_poly(const std::string& text, const std::vector<std::string>& names) {
    return Parser(text, names).parse();
}

}  // namespace ncdef
