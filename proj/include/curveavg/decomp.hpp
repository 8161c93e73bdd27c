#ifndef CURVEAVG_DECOMP_HPP
#define CURVEAVG_DECOMP_HPP

#include "curveavg/curve.hpp"
#include "curveavg/roots.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curveavg {

/// Interval on which |L_P(t)| is certified comparable to A |t - b|^k, with the
/// centre b outside the open interval and kappa the comparability factor
/// actually achieved on the certification net.
struct CenteredInterval {
    double lo = 0.0;
    double hi = 0.0;
    double b = 0.0;
    int k = 0;
    double A = 1.0;
    double kappa = 1.0;
    double c_estimate = 0.0;  // sampled floor of the geometric-inequality ratio

    double length() const { return hi - lo; }
    bool contains(double t) const { return lo < t && t < hi; }
};

struct Stage1Result {
    std::vector<double> cuts;  // roots of L_P and the leading minors inside the window
    std::vector<std::pair<double, double>> pieces;  // complementary open intervals
};

struct DecomposeConfig {
    double kappa_target = 4.0;
    int net_points = 512;          // certification samples per candidate interval
    int split_budget_factor = 64;  // budget = factor * (deg L_P + 1) candidate nodes
    bool enforce_c_floor = true;   // keep emitted intervals above the ratio floor
    double merge_c_floor = 1e-6;
    int c_floor_budget = 128;
};

struct Decomposition {
    CurvePoly curve;
    std::pair<double, double> window{0.0, 0.0};
    double kappa_target = 4.0;
    std::vector<double> cuts;
    std::vector<CenteredInterval> intervals;  // ordered by lower endpoint

    const CenteredInterval& interval_containing(double t) const;
};

/// Stage 1: cut the window at the real roots of L_P and of the leading
/// principal minors D_j (j = 1..d-1) of the derivative matrix, leaving open
/// intervals on which all of them are single-signed.
/// Throws DegenerateCurveError when L_P == 0.
Stage1Result stage1_split(const CurvePoly& P, double window_lo, double window_hi);

/// Stage 2 on one zero-free piece: pick the centre b (endpoint root of L_P if
/// present, else nearest root, else a point outside the window with k = 0) and
/// split dyadically in the |t - b| coordinate until every piece certifies
/// |L_P| ~ A |t-b|^k within kappa_target on a geometric sample net.
/// Throws SplitBudgetExceededError past 64 * (deg L_P + 1) candidate nodes.
std::vector<CenteredInterval> monomialize(const CurvePoly& P, double piece_lo, double piece_hi,
                                          double kappa_target,
                                          const DecomposeConfig& cfg = DecomposeConfig{});

/// Full pipeline: stage 1, stage 2 per piece, then maximal certified nodes
/// (adjacent pieces re-join whenever the union still certifies and its sampled
/// geometric-ratio floor holds). Deterministic; tighter kappa targets produce
/// intervals nested inside those of looser runs.
Decomposition decompose(const CurvePoly& P, double window_lo, double window_hi,
                        const DecomposeConfig& cfg = DecomposeConfig{});

/// Default working window radius: 1 + 2 * (largest root magnitude over L_P
/// and the designated minors), or 1 when none of them has real roots.
double default_window_radius(const CurvePoly& P);

// JSON round trip; the serialized document reloads bit-identically.
std::string decomposition_to_json(const Decomposition& d, const std::string& config_hash = "");
Decomposition decomposition_from_json(const std::string& text);

}  // namespace curveavg

#endif
