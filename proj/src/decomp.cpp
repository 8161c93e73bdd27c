#include "curveavg/decomp.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/json_io.hpp"
#include "curveavg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curveavg {

namespace {

// Certification data shared across one decompose run.
struct PieceContext {
    const CurvePoly& P;
    Polynomial L;
    RootList L_roots;
    double window_lo, window_hi;
    const DecomposeConfig& cfg;
    GeomRatioEvaluator evaluator;
    int budget = 0;  // remaining candidate nodes for the current piece
};

struct Candidate {
    double A = 0.0;
    double kappa = 0.0;
};

// Geometric net clustering toward both endpoints; the innermost offset is
// 1e-9 of the interval length, where the monomial ratio has stabilised
// whenever b sits at an endpoint.
std::vector<double> certification_net(double lo, double hi, int n) {
    std::vector<double> pts;
    pts.reserve(n);
    const double len = hi - lo;
    const int half = n / 2;
    for (int i = 0; i < half; ++i) {
        double f = 0.5 * std::pow(2e-9, static_cast<double>(i) / (half - 1));
        pts.push_back(lo + len * f);
        pts.push_back(hi - len * f);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

// |L(t)| / |t-b|^k evaluated exactly and only then rounded; near high-order
// roots both factors underflow in double while their quotient is O(A).
double monomial_ratio(const Polynomial& L, double t, double b, int k) {
    Rational num = rational_abs(L.eval(exact(t)));
    Rational den(1);
    if (k > 0) den = rational_pow(rational_abs(exact(t) - exact(b)), static_cast<unsigned>(k));
    return to_double(num / den);
}

Candidate certify(const PieceContext& ctx, double lo, double hi, double b, int k) {
    auto net = certification_net(lo, hi, std::max(8, ctx.cfg.net_points));
    double sum_log = 0.0;
    std::vector<double> logs;
    logs.reserve(net.size());
    for (double t : net) {
        double r = monomial_ratio(ctx.L, t, b, k);
        double lr = std::log(r);
        logs.push_back(lr);
        sum_log += lr;
    }
    Candidate c;
    double mean = sum_log / static_cast<double>(logs.size());
    c.A = std::exp(mean);
    double worst = 0.0;
    for (double lr : logs) worst = std::max(worst, std::abs(lr - mean));
    c.kappa = std::exp(worst);
    return c;
}

uint64_t interval_seed(double lo, double hi) {
    std::string key(reinterpret_cast<const char*>(&lo), sizeof lo);
    key.append(reinterpret_cast<const char*>(&hi), sizeof hi);
    return fnv1a64(key);
}

// Cheap deterministic floor estimate for the geometric inequality on
// [lo,hi]^d; the thorough estimator lives in the verification module.
double sampled_ratio_floor(const GeomRatioEvaluator& ev, double lo, double hi, int budget) {
    Rng rng(interval_seed(lo, hi));
    const int d = ev.dim();
    const double min_gap = 1e-7 * (hi - lo);
    double best = std::numeric_limits<double>::infinity();
    auto pts = latin_hypercube(rng, d, budget);
    std::vector<double> tuple(d);
    for (const auto& u : pts) {
        for (int i = 0; i < d; ++i) tuple[i] = lo + (hi - lo) * u[i];
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) gap = std::min(gap, std::abs(tuple[i] - tuple[j]));
        if (gap < min_gap) continue;
        try {
            best = std::min(best, ev.ratio(tuple));
        } catch (const DegeneratePointError&) {
        }
    }
    return std::isfinite(best) ? best : 0.0;
}

void emit_certified(PieceContext& ctx, double lo, double hi, double b, int k,
                    std::vector<CenteredInterval>& out, bool enforce_floor) {
    if (--ctx.budget < 0)
        throw SplitBudgetExceededError("monomialization split budget exhausted on piece");
    Candidate c = certify(ctx, lo, hi, b, k);
    bool ok = c.kappa <= ctx.cfg.kappa_target;
    double floor_est = 0.0;
    if (ok && enforce_floor) {
        floor_est = sampled_ratio_floor(ctx.evaluator, lo, hi, ctx.cfg.c_floor_budget);
        // Never split below resolution scale on the floor criterion alone.
        if (floor_est < ctx.cfg.merge_c_floor && (hi - lo) > 1e-6 * (ctx.window_hi - ctx.window_lo))
            ok = false;
    }
    if (ok) {
        CenteredInterval ci;
        ci.lo = lo;
        ci.hi = hi;
        ci.b = b;
        ci.k = k;
        ci.A = c.A;
        ci.kappa = c.kappa;
        ci.c_estimate = floor_est;
        out.push_back(ci);
        return;
    }
    double mid = 0.5 * (lo + hi);  // midpoint in the |t-b| coordinate: b is outside [lo,hi]
    emit_certified(ctx, lo, mid, b, k, out, enforce_floor);
    emit_certified(ctx, mid, hi, b, k, out, enforce_floor);
}

// Centre selection for one stage-1 piece. Returns pairs (subpiece, b, k); two
// entries when both endpoints are roots of L_P.
struct CentrePlan {
    double lo, hi, b;
    int k;
};

std::vector<CentrePlan> plan_centres(const PieceContext& ctx, double lo, double hi) {
    const RootEntry* at_lo = nullptr;
    const RootEntry* at_hi = nullptr;
    const double tol = 0.0;  // cut points are root values verbatim
    for (const auto& e : ctx.L_roots.entries) {
        if (std::abs(e.value - lo) <= tol) at_lo = &e;
        if (std::abs(e.value - hi) <= tol) at_hi = &e;
    }
    std::vector<CentrePlan> plans;
    if (at_lo && at_hi) {
        double mid = 0.5 * (lo + hi);
        plans.push_back({lo, mid, lo, static_cast<int>(at_lo->multiplicity)});
        plans.push_back({mid, hi, hi, static_cast<int>(at_hi->multiplicity)});
        return plans;
    }
    if (at_lo) {
        plans.push_back({lo, hi, lo, static_cast<int>(at_lo->multiplicity)});
        return plans;
    }
    if (at_hi) {
        plans.push_back({lo, hi, hi, static_cast<int>(at_hi->multiplicity)});
        return plans;
    }
    if (!ctx.L_roots.empty()) {
        // nearest root outside the piece
        const RootEntry* best = nullptr;
        double best_dist = std::numeric_limits<double>::infinity();
        for (const auto& e : ctx.L_roots.entries) {
            double dist = e.value < lo ? lo - e.value : e.value - hi;
            if (dist < best_dist) {
                best_dist = dist;
                best = &e;
            }
        }
        plans.push_back({lo, hi, best->value, static_cast<int>(best->multiplicity)});
        return plans;
    }
    plans.push_back({lo, hi, ctx.window_lo - 1.0, 0});
    return plans;
}

}  // namespace

const CenteredInterval& Decomposition::interval_containing(double t) const {
    for (const auto& ci : intervals)
        if (ci.contains(t)) return ci;
    throw OutOfIntervalError("no decomposition interval contains the requested point");
}

Stage1Result stage1_split(const CurvePoly& P, double window_lo, double window_hi) {
    Polynomial L = torsion_det(P);
    if (L.is_zero()) throw DegenerateCurveError();
    std::vector<double> cuts;
    auto add_roots = [&](const Polynomial& p) {
        if (p.is_zero() || p.degree() < 1) return;  // constant minors cut nothing
        for (const auto& e : real_roots(p).entries)
            if (window_lo < e.value && e.value < window_hi) cuts.push_back(e.value);
    };
    add_roots(L);
    for (int j = 1; j < P.dim(); ++j) add_roots(leading_minor(P, j));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Stage1Result result;
    result.cuts = cuts;
    double prev = window_lo;
    for (double c : cuts) {
        if (prev < c) result.pieces.emplace_back(prev, c);
        prev = c;
    }
    if (prev < window_hi) result.pieces.emplace_back(prev, window_hi);
    return result;
}

std::vector<CenteredInterval> monomialize(const CurvePoly& P, double piece_lo, double piece_hi,
                                          double kappa_target, const DecomposeConfig& cfg) {
    DecomposeConfig local = cfg;
    local.kappa_target = kappa_target;
    Polynomial L = torsion_det(P);
    if (L.is_zero()) throw DegenerateCurveError();
    PieceContext ctx{P, L, real_roots(L), piece_lo, piece_hi, local, GeomRatioEvaluator(P), 0};
    ctx.budget = local.split_budget_factor * (L.degree() + 1);
    std::vector<CenteredInterval> out;
    for (const auto& plan : plan_centres(ctx, piece_lo, piece_hi))
        emit_certified(ctx, plan.lo, plan.hi, plan.b, plan.k, out, /*enforce_floor=*/false);
    return out;
}

Decomposition decompose(const CurvePoly& P, double window_lo, double window_hi,
                        const DecomposeConfig& cfg) {
    if (!(window_lo < window_hi) || !std::isfinite(window_lo) || !std::isfinite(window_hi))
        throw ConfigError("decompose requires a finite working window");
    Polynomial L = torsion_det(P);
    if (L.is_zero()) throw DegenerateCurveError();

    Stage1Result s1 = stage1_split(P, window_lo, window_hi);
    PieceContext ctx{P, L, real_roots(L), window_lo, window_hi, cfg, GeomRatioEvaluator(P), 0};

    Decomposition d{P, {window_lo, window_hi}, cfg.kappa_target, s1.cuts, {}};
    for (const auto& piece : s1.pieces) {
        ctx.budget = cfg.split_budget_factor * (L.degree() + 1);
        for (const auto& plan : plan_centres(ctx, piece.first, piece.second))
            emit_certified(ctx, plan.lo, plan.hi, plan.b, plan.k, d.intervals, cfg.enforce_c_floor);
    }
    std::sort(d.intervals.begin(), d.intervals.end(),
              [](const CenteredInterval& a, const CenteredInterval& b) { return a.lo < b.lo; });
    return d;
}

double default_window_radius(const CurvePoly& P) {
    Polynomial L = torsion_det(P);
    if (L.is_zero()) throw DegenerateCurveError();
    double mag = 0.0;
    auto scan = [&](const Polynomial& p) {
        if (p.is_zero() || p.degree() < 1) return;
        for (const auto& e : real_roots(p).entries) mag = std::max(mag, std::abs(e.value));
    };
    scan(L);
    for (int j = 1; j < P.dim(); ++j) scan(leading_minor(P, j));
    return 1.0 + 2.0 * mag;
}

std::string decomposition_to_json(const Decomposition& d, const std::string& config_hash) {
    Json j;
    j["curve"] = curve_to_json(d.curve);
    j["window"] = {d.window.first, d.window.second};
    j["kappa_target"] = d.kappa_target;
    j["cuts"] = d.cuts;
    Json arr = Json::array();
    for (const auto& ci : d.intervals) {
        Json ji;
        ji["lo"] = ci.lo;
        ji["hi"] = ci.hi;
        ji["b"] = ci.b;
        ji["k"] = ci.k;
        ji["A"] = ci.A;
        ji["kappa"] = ci.kappa;
        ji["C_estimate"] = ci.c_estimate;
        arr.push_back(ji);
    }
    j["intervals"] = arr;
    std::string body = j.dump(2);
    if (config_hash.empty()) return body + "\n";
    return "// config_hash=" + config_hash + "\n" + body + "\n";
}

Decomposition decomposition_from_json(const std::string& text) {
    Json j = parse_json(text);
    CurvePoly curve = curve_from_json(j["curve"]);
    Decomposition d{curve,
                    {j["window"][0].get<double>(), j["window"][1].get<double>()},
                    j["kappa_target"].get<double>(),
                    j["cuts"].get<std::vector<double>>(),
                    {}};
    for (const auto& ji : j["intervals"]) {
        CenteredInterval ci;
        ci.lo = ji["lo"].get<double>();
        ci.hi = ji["hi"].get<double>();
        ci.b = ji["b"].get<double>();
        ci.k = ji["k"].get<int>();
        ci.A = ji["A"].get<double>();
        ci.kappa = ji["kappa"].get<double>();
        ci.c_estimate = ji["C_estimate"].get<double>();
        d.intervals.push_back(ci);
    }
    return d;
}

}  // namespace curveavg
