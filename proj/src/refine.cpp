#include "curveavg/refine.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/parallel.hpp"
#include "curveavg/quadrature.hpp"
#include "curveavg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curveavg {

// ---------------------------------------------------------------------------
// exact discrete model
// ---------------------------------------------------------------------------

DiscreteOperator::DiscreteOperator(std::vector<Rational> e_mass, std::vector<Rational> f_mass,
                                   std::vector<Rational> kernel_rowmajor)
    : e_mass_(std::move(e_mass)), f_mass_(std::move(f_mass)), kernel_(std::move(kernel_rowmajor)) {
    if (kernel_.size() != e_mass_.size() * f_mass_.size())
        throw ConfigError("kernel size mismatch");
    for (const auto& v : kernel_)
        if (v < 0) throw ConfigError("kernel entries must be nonnegative");
    for (const auto& v : e_mass_)
        if (v <= 0) throw ConfigError("cell masses must be positive");
    for (const auto& v : f_mass_)
        if (v <= 0) throw ConfigError("cell masses must be positive");
}

Rational DiscreteOperator::apply(const std::vector<char>& e_subset, size_t x) const {
    Rational acc(0);
    const size_t ne = e_mass_.size();
    for (size_t y = 0; y < ne; ++y)
        if (e_subset[y]) acc += kernel_[x * ne + y] * e_mass_[y];
    return acc;
}

Rational DiscreteOperator::adjoint(const std::vector<char>& f_subset, size_t y) const {
    Rational acc(0);
    const size_t ne = e_mass_.size();
    for (size_t x = 0; x < f_mass_.size(); ++x)
        if (f_subset[x]) acc += kernel_[x * ne + y] * f_mass_[x];
    return acc;
}

Rational DiscreteOperator::pairing(const std::vector<char>& e_subset,
                                   const std::vector<char>& f_subset) const {
    Rational acc(0);
    for (size_t x = 0; x < f_mass_.size(); ++x)
        if (f_subset[x]) acc += apply(e_subset, x) * f_mass_[x];
    return acc;
}

Rational DiscreteOperator::subset_mass(const std::vector<char>& subset, bool e_side) const {
    const auto& mass = e_side ? e_mass_ : f_mass_;
    Rational acc(0);
    for (size_t i = 0; i < mass.size(); ++i)
        if (subset[i]) acc += mass[i];
    return acc;
}

RefinementTrace refine(const DiscreteOperator& op, const std::vector<char>& E,
                       const std::vector<char>& F, int depth) {
    RefinementTrace tr;
    tr.K = op.pairing(E, F);
    if (tr.K == 0) throw EmptyPairingError();
    tr.E_total = op.subset_mass(E, true);
    tr.F_total = op.subset_mass(F, false);
    tr.alpha = tr.K / tr.F_total;
    tr.beta = tr.K / tr.E_total;

    std::vector<char> curE = E, curF = F;
    Rational pow2(1);
    tr.invariants_ok = true;
    for (int n = 1; n <= depth; ++n) {
        RefineLevel lvl;
        lvl.f_threshold = tr.alpha / rational_pow(Rational(2), 2 * n - 1);
        lvl.e_threshold = tr.beta / rational_pow(Rational(2), 2 * n);

        std::vector<char> nextF(curF.size(), 0);
        for (size_t x = 0; x < curF.size(); ++x)
            if (curF[x] && op.apply(curE, x) >= lvl.f_threshold) nextF[x] = 1;
        std::vector<char> nextE(curE.size(), 0);
        for (size_t y = 0; y < curE.size(); ++y)
            if (curE[y] && op.adjoint(nextF, y) >= lvl.e_threshold) nextE[y] = 1;

        curF = std::move(nextF);
        curE = std::move(nextE);
        lvl.F_cells = curF;
        lvl.E_cells = curE;
        lvl.pairing = op.pairing(curE, curF);

        Rational floor_n = tr.K / rational_pow(Rational(2), 2 * n);
        bool nonempty_F = std::any_of(curF.begin(), curF.end(), [](char c) { return c != 0; });
        bool nonempty_E = std::any_of(curE.begin(), curE.end(), [](char c) { return c != 0; });
        if (!nonempty_F || !nonempty_E || lvl.pairing < floor_n) tr.invariants_ok = false;
        tr.levels.push_back(std::move(lvl));
    }
    return tr;
}

// ---------------------------------------------------------------------------
// discretisation of the localized operator
// ---------------------------------------------------------------------------

namespace {

Box cell_box(const GridFunction& g, size_t flat) {
    auto c = g.cell_center(flat);
    std::vector<double> lo(g.dim), hi(g.dim);
    for (int a = 0; a < g.dim; ++a) {
        double h = (g.box.hi[a] - g.box.lo[a]) / g.resolution[a];
        lo[a] = c[a] - 0.5 * h;
        hi[a] = c[a] + 0.5 * h;
    }
    return Box(lo, hi);
}

}  // namespace

std::vector<Box> DiscretizedOperator::cells_as_boxes(const std::vector<char>& subset,
                                                     bool e_side) const {
    const GridFunction& g = e_side ? e_grid : f_grid;
    std::vector<Box> out;
    for (size_t i = 0; i < subset.size(); ++i)
        if (subset[i]) out.push_back(cell_box(g, i));
    return out;
}

DiscretizedOperator discretize_operator(const CurvePoly& P, const CenteredInterval& ci,
                                        double mu_exponent, const Box& E_box,
                                        const std::vector<int>& e_res, const Box& F_box,
                                        const std::vector<int>& f_res) {
    GridFunction e_grid = GridFunction::zeros(E_box, e_res);
    GridFunction f_grid = GridFunction::zeros(F_box, f_res);
    const size_t ne = e_grid.cell_count(), nf = f_grid.cell_count();
    const Rational e_vol = exact(e_grid.cell_volume());
    const Rational f_vol = exact(f_grid.cell_volume());

    std::vector<Rational> kernel(ne * nf, Rational(0));
    parallel_for(nf, [&](size_t x) {
        auto centre = f_grid.cell_center(x);
        for (size_t y = 0; y < ne; ++y) {
            IntervalUnion pb = pullback_set(P, cell_box(e_grid, y), centre, ci.lo, ci.hi);
            double mass = power_weight_mass(ci.b, mu_exponent, pb);
            if (mass > 0.0) kernel[x * ne + y] = exact(mass) / e_vol;
        }
    });
    DiscreteOperator op(std::vector<Rational>(ne, e_vol), std::vector<Rational>(nf, f_vol),
                        std::move(kernel));
    return DiscretizedOperator{std::move(op), P, ci, mu_exponent, std::move(e_grid),
                               std::move(f_grid)};
}

// ---------------------------------------------------------------------------
// structured parameter sets
// ---------------------------------------------------------------------------

namespace {

// Golden-ratio quantile positions in (0,1): quasi-random, deterministic,
// avoids clustering at the set boundary.
std::vector<double> golden_positions(int n) {
    std::vector<double> u(n);
    const double phi = 0.6180339887498949;
    double x = 0.5;
    for (int i = 0; i < n; ++i) {
        x += phi;
        x -= std::floor(x);
        u[i] = x;
    }
    std::sort(u.begin(), u.end());
    return u;
}

// Point at the given mu-quantile of S (weight |t-b|^e).
double mu_quantile(const IntervalUnion& S, double b, double e, double frac) {
    double total = power_weight_mass(b, e, S);
    double target = frac * total;
    for (const auto& p : S.pieces()) {
        double m = power_weight_mass(b, e, IntervalUnion(p.first, p.second));
        if (target <= m) return mu_inverse_from(b, e, p.first, target);
        target -= m;
    }
    return S.pieces().back().second;
}

}  // namespace

StructuredSets structured_params(const DiscretizedOperator& dop, int d,
                                 const StructuredParamsConfig& cfg) {
    const CenteredInterval& ci = dop.ci;
    const double e = dop.mu_exponent;
    const double b = ci.b;
    const CurvePoly& P = dop.curve;
    CurvePoly negP = negate_curve(P);

    std::vector<char> allE(dop.op.e_cells(), 1), allF(dop.op.f_cells(), 1);
    int depth = std::max(cfg.depth, d == 3 ? 2 : 1);
    RefinementTrace tr = refine(dop.op, allE, allF, depth);
    if (!tr.invariants_ok) throw FloorViolationError("refinement trace invariants failed");

    const double alpha = to_double(tr.alpha), beta = to_double(tr.beta);
    StructuredSets out;
    const double slack = 1.0 - 1e-9;

    auto verify_floor = [&](double value, double floor, const char* what) {
        if (value < floor * slack)
            throw FloorViolationError(std::string(what) + " mu-floor violated: " +
                                      std::to_string(value) + " < " + std::to_string(floor));
    };

    if (d == 3) {
        const auto& F2 = tr.levels.at(1).F_cells;
        const auto& E1 = tr.levels.at(0).E_cells;
        // base point: F2 cell centre with the largest forward average
        Rational best(-1);
        size_t best_x = 0;
        for (size_t x = 0; x < F2.size(); ++x) {
            if (!F2[x]) continue;
            Rational v = dop.op.apply(E1, x);
            if (v > best) {
                best = v;
                best_x = x;
            }
        }
        if (best < 0) throw FloorViolationError("deepest refined set is empty");
        out.x0 = dop.f_cell_center(best_x);

        auto E1_boxes = dop.cells_as_boxes(E1, true);
        auto F1_boxes = dop.cells_as_boxes(tr.levels.at(0).F_cells, false);
        auto E_boxes = dop.cells_as_boxes(allE, true);

        out.S = pullback_set(P, E1_boxes, out.x0, ci.lo, ci.hi);
        out.floor_S = alpha / 8.0;
        out.mu_S = power_weight_mass(b, e, out.S);
        verify_floor(out.mu_S, out.floor_S, "S");

        auto su = golden_positions(cfg.s_samples);
        for (double frac : su) {
            double s = mu_quantile(out.S, b, e, frac);
            out.s_samples.push_back(s);
            std::vector<double> c(3), ps = P.point(s);
            for (int i = 0; i < 3; ++i) c[i] = out.x0[i] - ps[i];
            IntervalUnion Ts = pullback_set(negP, F1_boxes, c, ci.lo, ci.hi);
            double mu_t = power_weight_mass(b, e, Ts);
            out.floor_T = beta / 4.0;
            verify_floor(mu_t, out.floor_T, "T_s");
            out.mu_T.push_back(mu_t);

            std::vector<double> ts;
            std::vector<IntervalUnion> us;
            std::vector<double> mus;
            for (double tf : golden_positions(cfg.t_samples)) {
                double t = mu_quantile(Ts, b, e, tf);
                ts.push_back(t);
                std::vector<double> xp(3), pt = P.point(t);
                for (int i = 0; i < 3; ++i) xp[i] = c[i] + pt[i];
                IntervalUnion Ust = pullback_set(P, E_boxes, xp, ci.lo, ci.hi);
                double mu_u = power_weight_mass(b, e, Ust);
                out.floor_U = alpha / 2.0;
                verify_floor(mu_u, out.floor_U, "U_{s,t}");
                us.push_back(std::move(Ust));
                mus.push_back(mu_u);
            }
            out.T.push_back(std::move(Ts));
            out.t_samples.push_back(std::move(ts));
            out.U.push_back(std::move(us));
            out.mu_U.push_back(std::move(mus));
        }
    } else {
        const auto& E1 = tr.levels.at(0).E_cells;
        const auto& F1 = tr.levels.at(0).F_cells;
        Rational best(-1);
        size_t best_y = 0;
        for (size_t y = 0; y < E1.size(); ++y) {
            if (!E1[y]) continue;
            Rational v = dop.op.adjoint(F1, y);
            if (v > best) {
                best = v;
                best_y = y;
            }
        }
        if (best < 0) throw FloorViolationError("deepest refined set is empty");
        out.x0 = dop.e_grid.cell_center(best_y);

        auto F1_boxes = dop.cells_as_boxes(F1, false);
        auto E_boxes = dop.cells_as_boxes(allE, true);

        out.S = pullback_set(negP, F1_boxes, out.x0, ci.lo, ci.hi);
        out.floor_S = beta / 4.0;
        out.mu_S = power_weight_mass(b, e, out.S);
        verify_floor(out.mu_S, out.floor_S, "S");

        for (double frac : golden_positions(cfg.s_samples)) {
            double s = mu_quantile(out.S, b, e, frac);
            out.s_samples.push_back(s);
            std::vector<double> xp(2), ps = P.point(s);
            for (int i = 0; i < 2; ++i) xp[i] = out.x0[i] + ps[i];
            IntervalUnion Ts = pullback_set(P, E_boxes, xp, ci.lo, ci.hi);
            double mu_t = power_weight_mass(b, e, Ts);
            out.floor_T = alpha / 2.0;
            verify_floor(mu_t, out.floor_T, "T_s");
            out.mu_T.push_back(mu_t);
            out.T.push_back(std::move(Ts));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// excision
// ---------------------------------------------------------------------------

ExcisionResult excise(const IntervalUnion& W, const ExcisionSpec& spec,
                      const CenteredInterval& ci) {
    if (!W.is_empty() && !W.subset_of(ci.lo - 1e-9, ci.hi + 1e-9))
        throw OutOfIntervalError("excision set W escapes the interval");
    const double e = spec.k * (spec.d == 3 ? 1.0 / 6.0 : 1.0 / 3.0);
    const double exponent = spec.d == 3 ? 6.0 / (spec.k + 6.0) : 3.0 / (spec.k + 3.0);

    ExcisionResult res;
    res.mu_before = power_weight_mass(spec.b, e, W);
    res.c0 = spec.level > 0 ? res.mu_before / spec.level : 0.0;
    double target = 0.5 * res.mu_before;

    double delta = spec.delta;
    while (delta >= 1e-12) {
        double radius = 0.0, centre = 0.0;
        switch (spec.kind) {
            case ExcisionKind::BAlpha:
            case ExcisionKind::BBeta:
                centre = spec.b;
                radius = delta * std::pow(spec.level, exponent);
                break;
            case ExcisionKind::BTAlpha:
            case ExcisionKind::BSAlpha:
            case ExcisionKind::BSBeta:
                centre = spec.anchor;
                radius = delta * spec.level * std::pow(std::abs(spec.anchor - spec.b), -e);
                break;
        }
        IntervalUnion B(centre - radius, centre + radius);
        IntervalUnion rem = W.subtract(B.clip(ci.lo, ci.hi));
        double after = power_weight_mass(spec.b, e, rem);
        if (after >= target) {
            res.remainder = rem;
            res.removed = B.clip(ci.lo, ci.hi);
            res.delta_used = delta;
            res.mu_after = after;
            res.ok = true;
            return res;
        }
        delta *= 0.5;
    }
    res.remainder = W;
    res.mu_after = res.mu_before;
    res.delta_used = delta;
    res.ok = false;  // delta underflow: contract unreachable, reported not thrown
    return res;
}

// ---------------------------------------------------------------------------
// iterated lower bounds
// ---------------------------------------------------------------------------

namespace {

// int over [a,c] (one side of b) of |t-b|^e dt
double side_power(double b, double e, double a, double c) {
    return power_weight_mass(b, e, IntervalUnion(a, c));
}

}  // namespace

double weighted_single_integral(const IntervalUnion& T, double b, double e, double s) {
    double acc = 0.0;
    for (const auto& piece : T.pieces()) {
        std::vector<double> cuts{piece.first, piece.second};
        if (piece.first < s && s < piece.second) cuts.insert(cuts.begin() + 1, s);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], c = cuts[i + 1];
            if (!(a < c)) continue;
            double mid = 0.5 * (a + c);
            double sigma = mid > s ? 1.0 : -1.0;          // sign of (t - s)
            double tau = mid > b ? 1.0 : -1.0;            // sign of (t - b)
            // |s-t| = sigma * ((t-b) - (s-b)); (t-b) = tau |t-b|
            acc += sigma * tau * side_power(b, e + 1.0, a, c) -
                   sigma * (s - b) * side_power(b, e, a, c);
        }
    }
    return acc;
}

double weighted_pair_integral(const IntervalUnion& U, double b, double e, double s, double t) {
    double acc = 0.0;
    for (const auto& piece : U.pieces()) {
        std::vector<double> cuts{piece.first, piece.second};
        for (double v : {std::min(s, t), std::max(s, t)})
            if (piece.first < v && v < piece.second) cuts.push_back(v);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], c = cuts[i + 1];
            if (!(a < c)) continue;
            double mid = 0.5 * (a + c);
            double sigma = (mid - s) * (mid - t) > 0 ? 1.0 : -1.0;  // sign of (u-s)(u-t)
            double tau = mid > b ? 1.0 : -1.0;                      // sign of (u - b)
            double sb = s - b, tb = t - b;
            // (u-s)(u-t) = (u-b)^2 - (sb+tb)(u-b) + sb*tb
            acc += sigma * (side_power(b, e + 2.0, a, c) -
                            (sb + tb) * tau * side_power(b, e + 1.0, a, c) +
                            sb * tb * side_power(b, e, a, c));
        }
    }
    return acc;
}

namespace {

std::vector<double> split_points(const IntervalUnion& S, const std::vector<double>& extra,
                                 double a, double c) {
    std::vector<double> cuts{a, c};
    for (const auto& p : S.pieces()) {
        if (a < p.first && p.first < c) cuts.push_back(p.first);
        if (a < p.second && p.second < c) cuts.push_back(p.second);
    }
    for (double v : extra)
        if (a < v && v < c) cuts.push_back(v);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

BoundCheckResult iterated_bound_check(const IteratedBoundInput& in) {
    const double b = in.ci.b;
    const int k = in.ci.k;
    BoundCheckResult res;

    if (in.d == 2) {
        const double ew = k / 2.0;    // integrand weight exponent
        const double emu = k / 3.0;   // measure weight exponent
        res.rhs = in.alpha * in.alpha * in.beta;
        if (in.sampled) {
            const StructuredSets& ss = *in.sampled;
            const int n = static_cast<int>(ss.s_samples.size());
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double s = ss.s_samples[i];
                acc += std::pow(std::abs(s - b), ew - emu) *
                       weighted_single_integral(ss.T[i], b, ew, s);
            }
            res.lhs = acc * ss.mu_S / n;
        } else {
            const IntervalUnion& T = *in.T_common;
            double acc = 0.0;
            std::vector<double> t_ends;
            for (const auto& p : T.pieces()) {
                t_ends.push_back(p.first);
                t_ends.push_back(p.second);
            }
            for (const auto& piece : in.S.pieces()) {
                auto cuts = split_points(T, t_ends, piece.first, piece.second);
                acc += adaptive_quadrature_pieces(
                    [&](double s) {
                        return std::pow(std::abs(s - b), ew) *
                               weighted_single_integral(T, b, ew, s);
                    },
                    cuts, 1e-8, 1e-14);
            }
            res.lhs = acc;
        }
    } else {
        const double ew = k / 3.0;
        const double emu = k / 6.0;
        res.rhs = std::pow(in.alpha, 4) * in.beta * in.beta;
        if (in.sampled) {
            const StructuredSets& ss = *in.sampled;
            const int n = static_cast<int>(ss.s_samples.size());
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double s = ss.s_samples[i];
                const int nt = static_cast<int>(ss.t_samples[i].size());
                double mid = 0.0;
                for (int j = 0; j < nt; ++j) {
                    double t = ss.t_samples[i][j];
                    mid += std::pow(std::abs(t - b), ew - emu) * std::abs(s - t) *
                           weighted_pair_integral(ss.U[i][j], b, ew, s, t);
                }
                mid *= ss.mu_T[i] / nt;
                acc += std::pow(std::abs(s - b), ew - emu) * mid;
            }
            res.lhs = acc * ss.mu_S / n;
        } else {
            const IntervalUnion& T = *in.T_common;
            const IntervalUnion& U = *in.U_common;
            std::vector<double> structural;
            for (const auto& p : T.pieces()) {
                structural.push_back(p.first);
                structural.push_back(p.second);
            }
            for (const auto& p : U.pieces()) {
                structural.push_back(p.first);
                structural.push_back(p.second);
            }
            auto middle = [&](double s) {
                double acc_t = 0.0;
                std::vector<double> extra = structural;
                extra.push_back(s);
                for (const auto& tp : T.pieces()) {
                    auto cuts = split_points(U, extra, tp.first, tp.second);
                    acc_t += adaptive_quadrature_pieces(
                        [&](double t) {
                            return std::pow(std::abs(t - b), ew) * std::abs(s - t) *
                                   weighted_pair_integral(U, b, ew, s, t);
                        },
                        cuts, 1e-7, 1e-14);
                }
                return acc_t;
            };
            double acc = 0.0;
            for (const auto& sp : in.S.pieces()) {
                auto cuts = split_points(T, structural, sp.first, sp.second);
                acc += adaptive_quadrature_pieces(
                    [&](double s) { return std::pow(std::abs(s - b), ew) * middle(s); }, cuts,
                    1e-6, 1e-14);
            }
            res.lhs = acc;
        }
    }
    res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
    return res;
}

// ---------------------------------------------------------------------------
// randomized configurations and adversarial search
// ---------------------------------------------------------------------------

namespace {

// Union of `pieces` intervals of prescribed total mu-mass, placed by walking
// gap/mass allocations from the left edge. Masses are met exactly by the
// power-rule inverse.
IntervalUnion random_union_with_mass(const CenteredInterval& ci, double e, double mass, int pieces,
                                     Rng& rng) {
    double total = power_weight_mass(ci.b, e, IntervalUnion(ci.lo, ci.hi));
    double free_mass = total - mass;
    if (free_mass < 0) throw ConfigError("requested mass exceeds the interval's measure");

    std::vector<double> mass_frac(pieces), gap_frac(pieces + 1);
    double ms = 0.0, gs = 0.0;
    for (auto& m : mass_frac) ms += (m = rng.uniform() + 1e-3);
    for (auto& g : gap_frac) gs += (g = rng.uniform());
    std::vector<std::pair<double, double>> out;
    double cur = ci.lo;
    for (int i = 0; i < pieces; ++i) {
        cur = mu_inverse_from(ci.b, e, cur, free_mass * gap_frac[i] / gs);
        double right = mu_inverse_from(ci.b, e, cur, mass * mass_frac[i] / ms);
        out.emplace_back(cur, std::min(right, ci.hi));
        cur = right;
    }
    return IntervalUnion(std::move(out));
}

// Interval of mu-mass `mass` centred (in mass) at `centre`, clipped into the
// certified interval with the missing mass shifted to the other side.
IntervalUnion centered_mass_interval(const CenteredInterval& ci, double e, double centre,
                                     double mass) {
    double left_avail = power_weight_mass(ci.b, e, IntervalUnion(ci.lo, centre));
    double right_avail = power_weight_mass(ci.b, e, IntervalUnion(centre, ci.hi));
    double want_left = std::min(mass / 2, left_avail);
    double want_right = std::min(mass - want_left, right_avail);
    want_left = std::min(mass - want_right, left_avail);
    // invert leftwards: solve on the reflected side
    double lo = centre, hi = centre;
    if (want_left > 0) {
        // find lo with mass(lo..centre) = want_left by bisection on the closed form
        double a = ci.lo, c = centre;
        for (int it = 0; it < 80; ++it) {
            double m = 0.5 * (a + c);
            if (power_weight_mass(ci.b, e, IntervalUnion(m, centre)) > want_left)
                a = m;
            else
                c = m;
        }
        lo = 0.5 * (a + c);
    }
    if (want_right > 0) hi = mu_inverse_from(ci.b, e, centre, want_right);
    return IntervalUnion(lo, std::min(hi, ci.hi));
}

}  // namespace

RandomConfig random_structured_config(const CenteredInterval& ci, int d, double alpha, double beta,
                                      uint64_t seed, int max_pieces) {
    Rng rng(seed);
    const double e = ci.k * (d == 3 ? 1.0 / 6.0 : 1.0 / 3.0);
    RandomConfig cfg;
    cfg.input.ci = ci;
    cfg.input.d = d;
    cfg.input.alpha = alpha;
    cfg.input.beta = beta;
    if (d == 3) {
        cfg.mu_S_floor = alpha / 8.0;
        cfg.mu_T_floor = beta / 4.0;
        cfg.mu_U_floor = alpha / 2.0;
    } else {
        cfg.mu_S_floor = beta / 4.0;
        cfg.mu_T_floor = alpha / 2.0;
    }
    int np = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_pieces)));
    cfg.input.S = random_union_with_mass(ci, e, cfg.mu_S_floor, np, rng);
    np = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_pieces)));
    cfg.input.T_common = random_union_with_mass(ci, e, cfg.mu_T_floor, np, rng);
    if (d == 3) {
        np = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_pieces)));
        cfg.input.U_common = random_union_with_mass(ci, e, cfg.mu_U_floor, np, rng);
    }
    return cfg;
}

AdversarialResult adversarial_min_ratio(const CenteredInterval& ci, int d, double alpha,
                                        double beta, uint64_t seed, long proposals) {
    Rng rng(seed);
    const double e = ci.k * (d == 3 ? 1.0 / 6.0 : 1.0 / 3.0);
    const double sf = d == 3 ? alpha / 8.0 : beta / 4.0;
    const double tf = d == 3 ? beta / 4.0 : alpha / 2.0;
    const double uf = alpha / 2.0;

    // State: common unions for S/T/U plus a mode that adapts T (and U) fibres
    // around the running variable, which is where the |s-t| factors die.
    struct State {
        IntervalUnion S, T, U;
        bool adapted = false;
    };
    auto evaluate = [&](const State& st) {
        if (!st.adapted) {
            IteratedBoundInput in;
            in.ci = ci;
            in.d = d;
            in.alpha = alpha;
            in.beta = beta;
            in.S = st.S;
            in.T_common = st.T;
            if (d == 3) in.U_common = st.U;
            return iterated_bound_check(in).ratio;
        }
        // adapted fibres: T_s centred at s (and U_{s,t} centred at t)
        const double ew = d == 3 ? ci.k / 3.0 : ci.k / 2.0;
        const int ns = 24, nt = 12;
        double mu_s = power_weight_mass(ci.b, e, st.S);
        double acc = 0.0;
        for (int i = 0; i < ns; ++i) {
            double s = mu_quantile(st.S, ci.b, e, (i + 0.5) / ns);
            IntervalUnion Ts = centered_mass_interval(ci, e, s, tf);
            if (d == 2) {
                acc += std::pow(std::abs(s - ci.b), ew - e) *
                       weighted_single_integral(Ts, ci.b, ew, s);
            } else {
                double mid = 0.0;
                for (int j = 0; j < nt; ++j) {
                    double t = mu_quantile(Ts, ci.b, e, (j + 0.5) / nt);
                    IntervalUnion Ust = centered_mass_interval(ci, e, t, uf);
                    mid += std::pow(std::abs(t - ci.b), ew - e) * std::abs(s - t) *
                           weighted_pair_integral(Ust, ci.b, ew, s, t);
                }
                mid *= tf / nt;
                acc += std::pow(std::abs(s - ci.b), ew - e) * mid;
            }
        }
        double lhs = acc * mu_s / ns;
        double rhs = d == 3 ? std::pow(alpha, 4) * beta * beta : alpha * alpha * beta;
        return lhs / rhs;
    };

    auto draw = [&](bool adapted) {
        State st;
        st.adapted = adapted;
        st.S = random_union_with_mass(ci, e, sf, 1 + static_cast<int>(rng.below(2)), rng);
        st.T = random_union_with_mass(ci, e, tf, 1 + static_cast<int>(rng.below(2)), rng);
        if (d == 3) st.U = random_union_with_mass(ci, e, uf, 1 + static_cast<int>(rng.below(2)), rng);
        return st;
    };

    State cur = draw(false);
    double cur_v = evaluate(cur);
    AdversarialResult best;
    best.best_ratio = cur_v;
    best.proposals = proposals;
    double temp = std::max(cur_v, 1e-3);
    for (long i = 0; i < proposals; ++i) {
        State cand = draw(rng.uniform() < 0.5);
        double v = evaluate(cand);
        if (v < best.best_ratio) {
            best.best_ratio = v;
            best.used_adapted_fibres = cand.adapted;
        }
        if (v < cur_v || rng.uniform() < std::exp(-(v - cur_v) / temp)) {
            cur = std::move(cand);
            cur_v = v;
        }
        temp *= 0.998;
    }
    return best;
}

// ---------------------------------------------------------------------------
// case diagnostics
// ---------------------------------------------------------------------------

std::pair<Rational, Rational> d2_case_exponents(int k) {
    return {Rational(3 * (k + 4), 2 * (k + 3)), Rational(3 * (k + 2), 2 * (k + 3))};
}

std::pair<Rational, Rational> d3_lemma_exponents(int k) {
    return {Rational(2 * k + 6, k + 6), Rational(2 * k + 18, k + 6)};
}

CaseTable case_diagnostics(const IteratedBoundInput& in) {
    const double b = in.ci.b;
    const int k = in.ci.k;
    const double e = k * (in.d == 3 ? 1.0 / 6.0 : 1.0 / 3.0);
    const double ew = in.d == 3 ? k / 3.0 : k / 2.0;
    const double c1 = in.d == 3 ? 0.125 : 0.5;
    const double c2 = 2.0;

    CaseTable table;
    table.exponent_pair = in.d == 2 ? d2_case_exponents(k) : d3_lemma_exponents(k);
    table.t_cases.assign(3, CaseRow{});
    table.u_cases.assign(3, CaseRow{});
    for (int i = 0; i < 3; ++i) {
        table.t_cases[i].case_index = i + 1;
        table.u_cases[i].case_index = i + 1;
    }

    const int ns = 16;
    auto T_of = [&](int i, double /*s*/) -> IntervalUnion {
        if (in.sampled) return in.sampled->T[i];
        return *in.T_common;
    };
    double lo = in.ci.lo, hi = in.ci.hi;
    auto band = [&](double r_lo, double r_hi) {
        IntervalUnion outer(b - r_hi, b + r_hi);
        if (r_lo <= 0.0) return outer.clip(lo, hi);
        return outer.subtract(IntervalUnion(b - r_lo, b + r_lo)).clip(lo, hi);
    };

    int n = in.sampled ? static_cast<int>(in.sampled->s_samples.size()) : ns;
    double mu_S = in.sampled ? in.sampled->mu_S : power_weight_mass(b, e, in.S);
    for (int i = 0; i < n; ++i) {
        double s = in.sampled ? in.sampled->s_samples[i]
                              : mu_quantile(in.S, b, e, (i + 0.5) / ns);
        IntervalUnion Ts = T_of(i, s);
        double rs = std::abs(s - b);
        IntervalUnion t_pieces[3] = {Ts.intersect(band(0.0, c1 * rs)),
                                     Ts.intersect(band(c1 * rs, c2 * rs)),
                                     Ts.subtract(band(0.0, c2 * rs))};
        double w_outer = std::pow(rs, ew - e) * mu_S / n;
        double mu_sum = 0.0;
        int largest = 0;
        double largest_mu = -1.0;
        for (int c = 0; c < 3; ++c) {
            double mu_piece = power_weight_mass(b, e, t_pieces[c]);
            mu_sum += mu_piece;
            table.t_cases[c].mu_total += mu_piece;
            if (mu_piece > largest_mu) {
                largest_mu = mu_piece;
                largest = c;
            }
            double contrib;
            if (in.d == 2) {
                contrib = w_outer * weighted_single_integral(t_pieces[c], b, ew, s);
            } else {
                // inner U split handled against the midpoint fibre
                contrib = 0.0;
                const int nt = 8;
                for (int j = 0; j < nt; ++j) {
                    if (power_weight_mass(b, e, t_pieces[c]) <= 0.0) break;
                    double t = mu_quantile(t_pieces[c], b, e, (j + 0.5) / nt);
                    IntervalUnion U = in.sampled ? in.sampled->U[i][j % in.sampled->U[i].size()]
                                                 : *in.U_common;
                    double rt = std::abs(t - b);
                    IntervalUnion u_pieces[3] = {U.intersect(band(0.0, 0.25 * rt)),
                                                 U.intersect(band(0.25 * rt, 4.0 * rt)),
                                                 U.subtract(band(0.0, 4.0 * rt))};
                    for (int uc = 0; uc < 3; ++uc) {
                        double mu_u = power_weight_mass(b, e, u_pieces[uc]);
                        table.u_cases[uc].mu_total += mu_u;
                        double inner = weighted_pair_integral(u_pieces[uc], b, ew, s, t);
                        table.u_cases[uc].contribution +=
                            w_outer * std::pow(rt, ew - e) * std::abs(s - t) * inner *
                            power_weight_mass(b, e, t_pieces[c]) / nt;
                    }
                    contrib += std::pow(rt, ew - e) * std::abs(s - t) *
                               weighted_pair_integral(U, b, ew, s, t) *
                               power_weight_mass(b, e, t_pieces[c]) / nt;
                }
                contrib *= w_outer;
            }
            table.t_cases[c].contribution += contrib;
        }
        table.t_cases[largest].times_largest += 1;
        double mu_ts = power_weight_mass(b, e, Ts);
        table.mu_partition_defect =
            std::max(table.mu_partition_defect, std::abs(mu_sum - mu_ts));
    }
    return table;
}

}  // namespace curveavg
