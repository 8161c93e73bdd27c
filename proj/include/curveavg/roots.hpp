#ifndef CURVEAVG_ROOTS_HPP
#define CURVEAVG_ROOTS_HPP

#include "curveavg/polynomial.hpp"

#include <vector>

namespace curveavg {

struct RootEntry {
    double value = 0.0;        // refined approximation (bracket midpoint)
    unsigned multiplicity = 1;
    double radius = 0.0;       // isolation radius: the exact root lies in [value-radius, value+radius]
    Rational lo, hi;           // exact dyadic bracket; lo == hi when the root is hit exactly
};

/// Real roots sorted increasingly, each with an isolating interval containing
/// exactly one distinct root. Multiplicities come from the squarefree
/// decomposition, so the sum of multiplicities never exceeds the degree.
struct RootList {
    std::vector<RootEntry> entries;

    bool empty() const { return entries.size() == 0; }
    size_t size() const { return entries.size(); }
    std::vector<double> values() const;
};

/// Sturm-isolation of all real roots of p, brackets refined by exact dyadic
/// bisection (with a guarded Newton polish once the bracket is small) down to
/// the requested width. Throws ZeroPolynomialError for p == 0.
RootList real_roots(const Polynomial& p, double refine_width = 1e-12);

/// Exact sign of p between consecutive roots is constant; this evaluates it at
/// a dyadic point strictly inside (a, b) avoiding the listed roots.
int sign_between(const Polynomial& p, const Rational& a, const Rational& b);

}  // namespace curveavg

#endif
