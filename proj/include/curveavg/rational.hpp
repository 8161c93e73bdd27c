#ifndef CURVEAVG_RATIONAL_HPP
#define CURVEAVG_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace curveavg {

// Exact arithmetic backbone. All coefficient-level algebra (torsion
// determinants, minors, Sturm chains) runs over Rational; doubles enter only
// at evaluation time.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Doubles are dyadic rationals, so this is exact.
inline Rational exact(double x) { return Rational(x); }

inline int sign(const Rational& q) { return q.sign(); }

inline Rational rational_pow(Rational base, unsigned k) {
    Rational r(1);
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Parses "7", "-3/4", "0.25", "1.5e-3" as an exact rational. Decimal strings
// are read digit-exactly, never through floating point.
Rational parse_rational(const std::string& text);

std::string rational_str(const Rational& q);

}  // namespace curveavg

#endif
