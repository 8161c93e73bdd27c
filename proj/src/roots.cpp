#include "curveavg/roots.hpp"

#include "curveavg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace curveavg {

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& q) {
    std::vector<Polynomial> chain;
    chain.push_back(q);
    chain.push_back(q.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        Polynomial r = chain[chain.size() - 2].divrem(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
    int vars = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.is_zero() ? 0 : sign(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

// Smallest power of two >= the Cauchy root bound 1 + max|c_i| / |c_n|.
Rational dyadic_root_bound(const Polynomial& p) {
    Rational m(0);
    for (const auto& c : p.coeffs()) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (a > m) m = a;
    }
    Rational lead = p.leading();
    if (lead < 0) lead = -lead;
    Rational bound = Rational(1) + m / lead;
    Rational b(2);
    while (b < bound) b *= 2;
    return b;
}

struct Isolator {
    std::vector<Polynomial> chain;
    const Polynomial& q;
    double refine_width;
    std::vector<RootEntry> out;

    Isolator(const Polynomial& q_, double w) : chain(sturm_chain(q_)), q(q_), refine_width(w) {}

    int count(const Rational& a, const Rational& b) {
        return sign_variations(chain, a) - sign_variations(chain, b);
    }

    void emit_exact(const Rational& r) {
        RootEntry e;
        e.value = to_double(r);
        e.radius = 0.0;
        e.lo = e.hi = r;
        out.push_back(e);
    }

    // Bracket with q(lo), q(hi) of opposite sign and exactly one root inside.
    void refine(Rational lo, Rational hi) {
        int slo = sign(q.eval(lo));
        Rational width = hi - lo;
        while (to_double(width) > refine_width) {
            // Newton polish once the bracket is already small; fall back to
            // plain bisection whenever the candidate fails to bracket.
            if (to_double(width) < 1e-4) {
                double x = 0.5 * (to_double(lo) + to_double(hi));
                double d = q.derivative().eval(x);
                if (d != 0.0) {
                    double xn = x - q.eval(x) / d;
                    Rational w16 = width / 16;
                    Rational nlo = exact(xn) - w16, nhi = exact(xn) + w16;
                    if (nlo > lo && nhi < hi) {
                        int sa = sign(q.eval(nlo)), sb = sign(q.eval(nhi));
                        if (sa == 0) { emit_exact(nlo); return; }
                        if (sb == 0) { emit_exact(nhi); return; }
                        if (sa != sb) {
                            lo = nlo; hi = nhi; slo = sa;
                            width = hi - lo;
                            continue;
                        }
                    }
                }
            }
            Rational mid = (lo + hi) / 2;
            int sm = sign(q.eval(mid));
            if (sm == 0) { emit_exact(mid); return; }
            if (sm == slo) lo = mid; else hi = mid;
            width = hi - lo;
        }
        RootEntry e;
        e.lo = lo;
        e.hi = hi;
        e.value = 0.5 * (to_double(lo) + to_double(hi));
        e.radius = 0.5 * to_double(hi - lo);
        out.push_back(e);
    }

    // Sturm counts are over half-open intervals (lo, hi]; an exact root at hi
    // is peeled off before splitting, and a root landing on lo (possible after
    // peeling) is stepped over.
    void isolate(const Rational& lo, const Rational& hi, int n) {
        if (n == 0) return;
        if (sign(q.eval(hi)) == 0) {
            emit_exact(hi);
            if (n == 1) return;
            Rational w = (hi - lo) / 4;
            while (count(lo, hi - w) != n - 1) w /= 2;
            isolate(lo, hi - w, n - 1);
            return;
        }
        if (sign(q.eval(lo)) == 0) {
            Rational w = (hi - lo) / 4;
            while (count(lo + w, hi) != n) w /= 2;
            isolate(lo + w, hi, n);
            return;
        }
        if (n == 1) {
            refine(lo, hi);  // simple root strictly inside: endpoint signs differ
            return;
        }
        Rational mid = (lo + hi) / 2;
        int nl = count(lo, mid);
        isolate(lo, mid, nl);
        isolate(mid, hi, n - nl);
    }
};

}  // namespace

std::vector<double> RootList::values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.value);
    return v;
}

RootList real_roots(const Polynomial& p, double refine_width) {
    if (p.is_zero()) throw ZeroPolynomialError();
    RootList result;
    if (p.degree() == 0) return result;

    auto parts = p.squarefree_decomposition();
    for (size_t i = 0; i < parts.size(); ++i) {
        const Polynomial& g = parts[i];
        if (g.degree() < 1) continue;
        Isolator iso(g, refine_width);
        Rational bound = dyadic_root_bound(g);
        iso.isolate(-bound, bound, iso.count(-bound, bound));
        for (auto& e : iso.out) {
            e.multiplicity = static_cast<unsigned>(i + 1);
            result.entries.push_back(std::move(e));
        }
    }
    std::sort(result.entries.begin(), result.entries.end(),
              [](const RootEntry& a, const RootEntry& b) { return a.lo < b.lo; });
    return result;
}

int sign_between(const Polynomial& p, const Rational& a, const Rational& b) {
    Rational x = (a + b) / 2;
    int s = sign(p.eval(x));
    Rational step = (b - a) / 4;
    // p may vanish at the midpoint; nudge by shrinking dyadic steps.
    while (s == 0) {
        x += step;
        step /= 2;
        if (x >= b) x = (a + b) / 2 - step;
        s = sign(p.eval(x));
    }
    return s;
}

}  // namespace curveavg
