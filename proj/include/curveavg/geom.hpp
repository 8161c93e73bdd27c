#ifndef CURVEAVG_GEOM_HPP
#define CURVEAVG_GEOM_HPP

#include "curveavg/curve.hpp"
#include "curveavg/decomp.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace curveavg {

struct GeomConfig {
    double ratio_floor = 1e-12;    // ratios below this count as violations
    double min_gap_factor = 1e-7;  // exclude tuples with pairwise gap below factor*length
    int descent_starts = 16;
    int descent_iters = 200;
};

/// Sampled infimum of the geometric-inequality ratio over I^d.
struct GeomReport {
    int interval_id = 0;
    long samples = 0;
    double c_hat = 0.0;
    std::vector<double> argmin;
    long violations = 0;

    bool pass() const { return violations == 0 && c_hat > 0.0; }
};

struct InjectivityReport {
    int interval_id = 0;
    long samples = 0;
    double min_image_gap = 0.0;  // over tested pairs that are far apart in domain
    std::vector<std::pair<size_t, size_t>> collision_pairs;

    bool pass() const { return collision_pairs.empty(); }
};

/// Throws unless L_P and the designated minors are single-signed on (lo, hi);
/// geometric probes only run on certified intervals.
void require_certified(const CurvePoly& P, const CenteredInterval& ci, int probes = 128);

/// Latin-hypercube seeding plus coordinate-descent refinement of the minimum
/// ratio over I^d. Deterministic given the seed; workers merge by exact min.
GeomReport geom_constant_estimate(const CurvePoly& P, const CenteredInterval& ci, long budget,
                                  uint64_t seed, const GeomConfig& cfg = GeomConfig{});

/// Samples sorted tuples in {t_1 < ... < t_d}, maps them through the
/// alternating-sum point map and flags near-coincident images of far-apart
/// tuples via a sorted sweep.
InjectivityReport injectivity_probe(const CurvePoly& P, const CenteredInterval& ci, long budget,
                                    double tol_domain, double tol_image, uint64_t seed);

/// | |J(s,t)| - |P_1'(s) P_1'(t) int_s^t L_P / (P_1')^2 dw| | for d = 2 on a
/// stage-1 interval where P_1' is zero-free; quadrature target 1e-10.
double d2_jacobian_identity_residual(const CurvePoly& P, double piece_lo, double piece_hi,
                                     double s, double t);

}  // namespace curveavg

#endif
