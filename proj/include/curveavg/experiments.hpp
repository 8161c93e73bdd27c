#ifndef CURVEAVG_EXPERIMENTS_HPP
#define CURVEAVG_EXPERIMENTS_HPP

#include "curveavg/curve.hpp"
#include "curveavg/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace curveavg {

struct SweepRow {
    double parameter = 0.0;  // delta, N, ...
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct SweepReport {
    std::string name;
    std::vector<SweepRow> rows;
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
    bool slope_valid = false;  // fit requires >= 4 points
    std::vector<std::pair<std::string, std::string>> notes;
    bool pass = true;
};

/// Least-squares slope of log(ratio) against log(parameter).
void fit_loglog_slope(SweepReport& rep);

// ---- necessary-condition geometry ----

struct HullVertices {
    std::pair<Rational, Rational> A, B;  // (1/p, 1/q) pairs
};

/// A_d = (2/(d+1), (2d-2)/(d^2+d)), B_d = ((d^2-d+2)/(d^2+d), (d-1)/(d+1)).
HullVertices hull_vertices(int d);

/// Membership in hull{(0,0), (1,1), A_d, B_d}, exact half-plane tests.
bool hull_contains(int d, const Rational& inv_p, const Rational& inv_q);

/// Duality swap (1/p, 1/q) -> (1 - 1/q, 1 - 1/p).
std::pair<Rational, Rational> dual_exponent(const std::pair<Rational, Rational>& pt);

// ---- scaling-line extremizers ----

/// ||A chi_{D_delta}||_3 for the model curve in dimension d over the global
/// window: computed by expanding the cube of the operator into a triple
/// t-integral of shifted-box intersection volumes (closed-form integrand).
double model_operator_q3_norm(int d, double delta, double t_window = 10.0);

/// Rows: (delta, ||A chi_{D_delta}||_q, ||chi_{D_delta}||_p, ratio). On the
/// scaling line 1/q = 1/p - 2/(d(d+1)) the fitted slope vanishes; moving 1/p
/// off the line tilts it with the sign forced by delta-power counting.
/// q is pinned to 3 (the integer on the scaling line for both d).
SweepReport scaling_extremizer_sweep(int d, double p, const std::vector<double>& deltas);

// ---- flat-curve obstruction, polynomial surrogate ----

/// Arithmetic reproduction of the D_delta mass counting for the curve with a
/// k-th order flat tangency: emits the constraint 1/q >= 1/p - (k-1)/(3(k+1))
/// and the per-delta power-law rows; nothing transcendental is integrated.
SweepReport sin_obstruction_probe(int k, const std::vector<double>& deltas);
Rational sin_obstruction_gap(int k);  // (k-1)/(3(k+1))

// ---- Lorentz sharpness counterexample ----

struct SharpnessReport {
    SweepReport f_norm;            // ||f_N||_{(d+1)/2} vs N
    SweepReport lower_norm;        // lower-bound Lorentz norm vs N
    double expected_f_slope = 0.0;      // 2/(d+1) - d
    double expected_lower_slope = 0.0;  // -d + 1/r
    double fit_r_min = 0.0;             // from the fitted slopes (diagnostic)
    Rational constraint_r_min;          // boundedness constraint from the analytic exponents
    bool disjoint_verified = false;
};

/// Truncated stacked-cube profile f_N = sum_{k=N}^{K_max} chi_k(x - K) with
/// K = (k, ..., k^d); norms from the disjoint-support closed forms, and the
/// lower bound through the term-wise Lorentz form of the displayed chain.
/// Throws OverlapDetectedError if supports fail the exact disjointness check.
SharpnessReport sharpness_counterexample(int d, const std::vector<int>& N_list, double r,
                                         int k_max = 200000);

// ---- uniformity over bounded-degree families ----

struct UniformSweepResult {
    SweepReport report;  // one row per curve: (index, sup ratio, baseline, ratio/baseline)
    double baseline = 0.0;
    double max_ratio = 0.0;
    int skipped_degenerate = 0;
};

/// Samples integer-coefficient curves (coefficients in [-5, 5], degree bound),
/// decomposes each, and evaluates the restricted weak-type ratio
/// <A chi_E, chi_F> / (|E|^{1/p} |F|^{1/q'}) at the endpoint exponents over a
/// deterministic family of box pairs. Curve #0 is the model curve baseline.
UniformSweepResult uniform_family_sweep(int d, int degree_bound, int num_curves, uint64_t seed);

}  // namespace curveavg

#endif
