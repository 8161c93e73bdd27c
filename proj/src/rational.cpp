#include "curveavg/rational.hpp"

#include "curveavg/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace curveavg {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// cpp_int reads a leading 0 as an octal prefix; decimal literals never mean that
BigInt decimal_bigint(std::string s) {
    while (s.size() > 1 && s.front() == '0') s.erase(0, 1);
    return BigInt(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty rational literal");

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw ConfigError("bad rational literal '" + text + "'");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ConfigError("bad rational literal '" + text + "'");
        Rational q{decimal_bigint(num), decimal_bigint(den)};
        return neg ? Rational(-q) : q;
    }

    // decimal with optional exponent: D[.D][e±D]
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::strtol(s.c_str() + epos + 1, nullptr, 10);
        s.erase(epos);
    }
    std::string digits = s;
    auto dot = digits.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(digits.size() - dot - 1);
        digits.erase(dot, 1);
    }
    if (!all_digits(digits)) throw ConfigError("bad rational literal '" + text + "'");

    Rational q{decimal_bigint(digits)};
    BigInt p10 = pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        q *= Rational(p10);
    else
        q /= Rational(p10);
    return neg ? Rational(-q) : q;
}

std::string rational_str(const Rational& q) { return q.str(); }

}  // namespace curveavg
