#include "curveavg/geom.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/parallel.hpp"
#include "curveavg/quadrature.hpp"
#include "curveavg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace curveavg {

void require_certified(const CurvePoly& P, const CenteredInterval& ci, int probes) {
    std::vector<Polynomial> checks{torsion_det(P)};
    for (int j = 1; j < P.dim(); ++j) checks.push_back(leading_minor(P, j));
    for (const auto& g : checks) {
        if (g.is_zero()) throw DegenerateCurveError();
        int seen = 0;
        for (int i = 0; i < probes; ++i) {
            Rational t = exact(ci.lo) + (exact(ci.hi) - exact(ci.lo)) * Rational(2 * i + 1, 2 * probes);
            int s = sign(g.eval(t));
            if (s == 0) continue;
            if (seen == 0) seen = s;
            if (s != seen)
                throw ConfigError("interval is not certified: sign change inside (crosses a cut)");
        }
    }
}

GeomReport geom_constant_estimate(const CurvePoly& P, const CenteredInterval& ci, long budget,
                                  uint64_t seed, const GeomConfig& cfg) {
    require_certified(P, ci);
    GeomRatioEvaluator ev(P);
    const int d = P.dim();
    const double lo = ci.lo, hi = ci.hi, len = hi - lo;
    const double min_gap = cfg.min_gap_factor * len;

    auto admissible = [&](const std::vector<double>& t) {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (std::abs(t[i] - t[j]) < min_gap) return false;
        return true;
    };

    GeomReport rep;
    rep.samples = 0;
    rep.c_hat = std::numeric_limits<double>::infinity();
    rep.argmin.assign(d, lo);

    // stage 1: Latin hypercube scan, evaluated in parallel, merged by index
    Rng rng(seed);
    auto lhs = latin_hypercube(rng, d, static_cast<int>(budget));
    std::vector<double> vals(lhs.size(), std::numeric_limits<double>::infinity());
    parallel_for(lhs.size(), [&](size_t i) {
        std::vector<double> t(d);
        for (int a = 0; a < d; ++a) t[a] = lo + len * lhs[i][a];
        if (!admissible(t)) return;
        try {
            vals[i] = ev.ratio(t);
        } catch (const DegeneratePointError&) {
        }
    });
    std::vector<size_t> order(vals.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    for (size_t i = 0; i < vals.size(); ++i) {
        if (!std::isfinite(vals[i])) continue;
        ++rep.samples;
        if (vals[i] < cfg.ratio_floor) ++rep.violations;
        if (vals[i] < rep.c_hat) {
            rep.c_hat = vals[i];
            for (int a = 0; a < d; ++a) rep.argmin[a] = lo + len * lhs[i][a];
        }
    }

    // stage 2: compass coordinate descent from the best starts
    int starts = std::min<size_t>(cfg.descent_starts, order.size());
    for (int si = 0; si < starts; ++si) {
        if (!std::isfinite(vals[order[si]])) break;
        std::vector<double> t(d);
        for (int a = 0; a < d; ++a) t[a] = lo + len * lhs[order[si]][a];
        double cur = vals[order[si]];
        double step = len / 8.0;
        for (int it = 0; it < cfg.descent_iters && step > 1e-10 * len; ++it) {
            bool improved = false;
            for (int a = 0; a < d; ++a) {
                for (double dir : {-1.0, 1.0}) {
                    std::vector<double> cand = t;
                    cand[a] = std::clamp(cand[a] + dir * step, lo, hi);
                    if (!admissible(cand)) continue;
                    try {
                        double v = ev.ratio(cand);
                        ++rep.samples;
                        if (v < cfg.ratio_floor) ++rep.violations;
                        if (v < cur) {
                            cur = v;
                            t = cand;
                            improved = true;
                        }
                    } catch (const DegeneratePointError&) {
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (cur < rep.c_hat) {
            rep.c_hat = cur;
            rep.argmin = t;
        }
    }
    if (!std::isfinite(rep.c_hat)) rep.c_hat = 0.0;
    return rep;
}

InjectivityReport injectivity_probe(const CurvePoly& P, const CenteredInterval& ci, long budget,
                                    double tol_domain, double tol_image, uint64_t seed) {
    require_certified(P, ci);
    const int d = P.dim();
    const double lo = ci.lo, len = ci.hi - ci.lo;

    Rng rng(seed);
    std::vector<std::vector<double>> tuples;
    tuples.reserve(budget);
    for (long i = 0; i < budget; ++i) {
        std::vector<double> t(d);
        for (int a = 0; a < d; ++a) t[a] = lo + len * rng.uniform();
        std::sort(t.begin(), t.end());
        bool distinct = true;
        for (int a = 0; a + 1 < d; ++a)
            if (t[a + 1] - t[a] <= 0.0) distinct = false;
        if (distinct) tuples.push_back(std::move(t));
    }

    struct ImagePoint {
        std::vector<double> x;
        size_t tuple_index;
    };
    std::vector<ImagePoint> images(tuples.size());
    parallel_for(tuples.size(), [&](size_t i) {
        images[i] = {alternating_sum(P, tuples[i]), i};
    });
    std::sort(images.begin(), images.end(),
              [](const ImagePoint& a, const ImagePoint& b) { return a.x[0] < b.x[0]; });

    auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(acc);
    };

    InjectivityReport rep;
    rep.samples = static_cast<long>(tuples.size());
    rep.min_image_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < images.size(); ++i) {
        for (size_t j = i + 1; j < images.size(); ++j) {
            if (images[j].x[0] - images[i].x[0] > tol_image) break;
            double dx = dist(images[i].x, images[j].x);
            double dt = dist(tuples[images[i].tuple_index], tuples[images[j].tuple_index]);
            if (dt > tol_domain) {
                rep.min_image_gap = std::min(rep.min_image_gap, dx);
                if (dx < tol_image)
                    rep.collision_pairs.emplace_back(images[i].tuple_index, images[j].tuple_index);
            }
        }
    }
    if (!std::isfinite(rep.min_image_gap)) rep.min_image_gap = 0.0;
    return rep;
}

double d2_jacobian_identity_residual(const CurvePoly& P, double piece_lo, double piece_hi,
                                     double s, double t) {
    if (P.dim() != 2) throw ConfigError("the integral identity is the d = 2 formula");
    if (s < piece_lo || s > piece_hi || t < piece_lo || t > piece_hi)
        throw OutOfIntervalError("sample points must lie in the stage-1 interval");
    if (s == t) return 0.0;

    Polynomial L = torsion_det(P);
    Polynomial p1d = P.component(0).derivative();
    double lhs = std::abs(jacobian_det(P, {s, t}));
    double a = std::min(s, t), b = std::max(s, t);
    // analytic integrand on the piece: drive the panels to machine precision
    double integral = adaptive_quadrature(
        [&](double w) {
            double dw = p1d.eval(w);
            return L.eval(w) / (dw * dw);
        },
        a, b, 3e-14, 1e-16, 2000);
    double rhs = std::abs(p1d.eval(s) * p1d.eval(t) * integral);
    return std::abs(lhs - rhs);
}

}  // namespace curveavg
