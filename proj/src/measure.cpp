#include "curveavg/measure.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/parallel.hpp"
#include "curveavg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curveavg {

namespace {

// int_a^b |t - b0|^e dt for [a,b] on one side of b0.
double power_piece(double b0, double e, double a, double b) {
    double u1 = a - b0, u2 = b - b0;
    double ep1 = e + 1.0;
    if (u1 >= 0.0 && u2 >= 0.0) return (std::pow(u2, ep1) - std::pow(u1, ep1)) / ep1;
    if (u1 <= 0.0 && u2 <= 0.0) return (std::pow(-u1, ep1) - std::pow(-u2, ep1)) / ep1;
    throw OutOfIntervalError("integration piece straddles the centre b");
}

}  // namespace

double power_weight_mass(double b, double e, const IntervalUnion& S) {
    double acc = 0.0;
    for (const auto& p : S.pieces()) acc += power_piece(b, e, p.first, p.second);
    return acc;
}

double mu_measure(const CenteredInterval& ci, const IntervalUnion& S, double e) {
    if (!S.is_empty()) {
        const double slack = 1e-9 * std::max(1.0, ci.hi - ci.lo);
        if (S.lo() < ci.lo - slack || S.hi() > ci.hi + slack)
            throw OutOfIntervalError("set escapes the certified interval");
    }
    return power_weight_mass(ci.b, e, S.clip(ci.lo, ci.hi));
}

double mu_inverse_from(double b, double e, double start, double mass) {
    double ep1 = e + 1.0;
    if (start >= b) {
        double base = std::pow(start - b, ep1);
        return b + std::pow(base + ep1 * mass, 1.0 / ep1);
    }
    // left branch, moving right toward b
    double base = std::pow(b - start, ep1);
    double rem = base - ep1 * mass;
    if (rem >= 0.0) return b - std::pow(rem, 1.0 / ep1);
    // crossed the centre; continue on the right branch
    return b + std::pow(-rem, 1.0 / ep1);
}

double nu_mass(const CurvePoly& P, const IntervalUnion& S) {
    if (S.is_empty()) return 0.0;
    Polynomial L = torsion_det(P);
    if (L.is_zero()) return 0.0;  // degenerate curves carry zero affine arclength
    const double expo = P.affine_exponent();
    std::vector<double> root_vals = real_roots(L).values();
    double acc = 0.0;
    for (const auto& piece : S.pieces()) {
        std::vector<double> brk{piece.first, piece.second};
        for (double r : root_vals)
            if (piece.first < r && r < piece.second) brk.push_back(r);
        std::sort(brk.begin(), brk.end());
        acc += adaptive_quadrature_pieces(
            [&](double t) { return std::pow(std::abs(L.eval(t)), expo); }, brk, 1e-9, 1e-14);
    }
    return acc;
}

IntervalUnion sublevel_set(const Polynomial& g, double I_lo, double I_hi) {
    if (g.is_zero()) return IntervalUnion(I_lo, I_hi);
    if (g.degree() == 0) return sign(g.coeff(0)) <= 0 ? IntervalUnion(I_lo, I_hi) : IntervalUnion();

    RootList roots = real_roots(g);
    std::vector<std::pair<double, double>> neg;
    const auto& es = roots.entries;
    if (es.empty()) {
        // no real roots: constant sign, decided exactly anywhere
        int s = sign(g.eval(exact(0.5 * (I_lo + I_hi))));
        return s <= 0 ? IntervalUnion(I_lo, I_hi) : IntervalUnion();
    }
    // gap signs determined exactly at dyadic points between isolating brackets
    auto gap_sign = [&](size_t i) {  // sign on gap i: (-inf, r0), (r0, r1), ..., (rn, inf)
        Rational probe;
        if (i == 0)
            probe = es.front().lo - 1;
        else if (i == es.size())
            probe = es.back().hi + 1;
        else
            probe = (es[i - 1].hi + es[i].lo) / 2;
        return sign(g.eval(probe));
    };
    double prev = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i <= es.size(); ++i) {
        double next = i < es.size() ? es[i].value : std::numeric_limits<double>::infinity();
        if (gap_sign(i) <= 0) {
            double a = std::max(prev, I_lo), b = std::min(next, I_hi);
            if (a < b) neg.emplace_back(a, b);
        }
        prev = next;
    }
    return IntervalUnion(std::move(neg));
}

IntervalUnion pullback_set(const CurvePoly& P, const Box& E, const std::vector<double>& x,
                           double I_lo, double I_hi) {
    IntervalUnion result(I_lo, I_hi);
    for (int j = 0; j < P.dim() && !result.is_empty(); ++j) {
        // x_j - hi_j <= P_j(t) <= x_j - lo_j
        Polynomial upper = P.component(j) - Polynomial::constant(exact(x[j] - E.lo[j]));
        Polynomial lower = -P.component(j) + Polynomial::constant(exact(x[j] - E.hi[j]));
        result = result.intersect(sublevel_set(upper, I_lo, I_hi));
        if (result.is_empty()) break;
        result = result.intersect(sublevel_set(lower, I_lo, I_hi));
    }
    return result;
}

IntervalUnion pullback_set(const CurvePoly& P, const std::vector<Box>& E_union,
                           const std::vector<double>& x, double I_lo, double I_hi) {
    IntervalUnion acc;
    for (const auto& box : E_union) acc = acc.unite(pullback_set(P, box, x, I_lo, I_hi));
    return acc;
}

double apply_operator(const CurvePoly& P, double I_lo, double I_hi, const Box& E,
                      const std::vector<double>& x) {
    return nu_mass(P, pullback_set(P, E, x, I_lo, I_hi));
}

namespace {

// Nodes per unit t for the grid path: >= 8 nodes per cell-crossing, estimated
// from the derivative magnitude of each component against the cell widths.
int grid_path_nodes(const CurvePoly& P, const GridFunction& f, double I_lo, double I_hi) {
    double crossings = 0.0;
    const int probes = 64;
    for (int j = 0; j < P.dim(); ++j) {
        Polynomial dp = P.component(j).derivative();
        double tv = 0.0;
        for (int i = 0; i < probes; ++i) {
            double t = I_lo + (I_hi - I_lo) * (i + 0.5) / probes;
            tv += std::abs(dp.eval(t));
        }
        tv *= (I_hi - I_lo) / probes;  // approximate total variation of P_j
        double cell = (f.box.hi[j] - f.box.lo[j]) / f.resolution[j];
        crossings += tv / cell;
    }
    return std::max(64, static_cast<int>(std::ceil(8.0 * crossings)));
}

}  // namespace

double apply_operator(const CurvePoly& P, double I_lo, double I_hi, const GridFunction& f,
                      const std::vector<double>& x) {
    Polynomial L = torsion_det(P);
    if (L.is_zero()) return 0.0;
    const double expo = P.affine_exponent();
    std::vector<double> brk{I_lo, I_hi};
    for (double r : real_roots(L).values())
        if (I_lo < r && r < I_hi) brk.push_back(r);
    std::sort(brk.begin(), brk.end());

    const int nodes = grid_path_nodes(P, f, I_lo, I_hi);
    double acc = 0.0;
    std::vector<double> y(P.dim());
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        double a = brk[i], b = brk[i + 1];
        int n = std::max(8, static_cast<int>(nodes * (b - a) / (I_hi - I_lo)));
        double h = (b - a) / n;
        for (int m = 0; m < n; ++m) {
            double t = a + (m + 0.5) * h;
            for (int j = 0; j < P.dim(); ++j) y[j] = x[j] - P.component(j).eval(t);
            double fv = f.value_at(y);
            if (fv != 0.0) acc += fv * std::pow(std::abs(L.eval(t)), expo) * h;
        }
    }
    return acc;
}

GridFunction apply_operator_field(const CurvePoly& P, double I_lo, double I_hi, const Box& E,
                                  const Box& out_box, const std::vector<int>& resolution) {
    GridFunction out = GridFunction::zeros(out_box, resolution);
    parallel_for(out.values.size(), [&](size_t i) {
        out.values[i] = apply_operator(P, I_lo, I_hi, E, out.cell_center(i));
    });
    return out;
}

GridFunction apply_operator_field(const CurvePoly& P, double I_lo, double I_hi,
                                  const GridFunction& f, const Box& out_box,
                                  const std::vector<int>& resolution) {
    GridFunction out = GridFunction::zeros(out_box, resolution);
    parallel_for(out.values.size(), [&](size_t i) {
        out.values[i] = apply_operator(P, I_lo, I_hi, f, out.cell_center(i));
    });
    return out;
}

double operator_pairing(const CurvePoly& P, double I_lo, double I_hi, const Box& E, const Box& F,
                        double rel_tol) {
    Polynomial L = torsion_det(P);
    if (L.is_zero()) return 0.0;
    const double expo = P.affine_exponent();
    const int d = P.dim();

    std::vector<double> brk{I_lo, I_hi};
    auto add_roots_of = [&](const Polynomial& g) {
        if (g.is_zero() || g.degree() < 1) return;
        for (double r : real_roots(g).values())
            if (I_lo < r && r < I_hi) brk.push_back(r);
    };
    add_roots_of(L);
    for (int j = 0; j < d; ++j) {
        // overlap kinks: P_j(t) equal to each face alignment offset
        for (double c : {F.hi[j] - E.hi[j], F.lo[j] - E.lo[j], F.hi[j] - E.lo[j],
                         F.lo[j] - E.hi[j]})
            add_roots_of(P.component(j) - Polynomial::constant(exact(c)));
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    auto overlap = [&](double t) {
        double vol = 1.0;
        for (int j = 0; j < d; ++j) {
            double pj = P.component(j).eval(t);
            double lo = std::max(E.lo[j], F.lo[j] - pj);
            double hi = std::min(E.hi[j], F.hi[j] - pj);
            if (hi <= lo) return 0.0;
            vol *= hi - lo;
        }
        return vol;
    };
    return adaptive_quadrature_pieces(
        [&](double t) {
            double v = overlap(t);
            return v == 0.0 ? 0.0 : v * std::pow(std::abs(L.eval(t)), expo);
        },
        brk, rel_tol, 1e-14);
}

double adjoint_operator_value(const CurvePoly& P, double I_lo, double I_hi, const Box& F,
                              const std::vector<double>& y) {
    // A* g(y) = int g(y + P(t)) dnu(t) = (A with P -> -P) g(y); the weight is
    // unchanged since |L_{-P}| = |L_P|.
    return apply_operator(negate_curve(P), I_lo, I_hi, F, y);
}

}  // namespace curveavg
