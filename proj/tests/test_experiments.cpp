#include "curveavg/experiments.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/measure.hpp"
#include "curveavg/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>

using namespace curveavg;

TEST_CASE("hull vertices") {
    HullVertices v2 = hull_vertices(2);
    CHECK(v2.A.first == Rational(2, 3));
    CHECK(v2.A.second == Rational(1, 3));
    CHECK(v2.B == v2.A);  // d = 2 has a single lower vertex

    HullVertices v3 = hull_vertices(3);
    CHECK(v3.A.first == Rational(1, 2));
    CHECK(v3.A.second == Rational(1, 3));
    CHECK(v3.B.first == Rational(2, 3));
    CHECK(v3.B.second == Rational(1, 2));
}

TEST_CASE("hull membership") {
    for (int d : {2, 3}) {
        HullVertices v = hull_vertices(d);
        CHECK(hull_contains(d, Rational(0), Rational(0)));
        CHECK(hull_contains(d, Rational(1), Rational(1)));
        CHECK(hull_contains(d, v.A.first, v.A.second));
        CHECK(hull_contains(d, v.B.first, v.B.second));
        CHECK(hull_contains(d, v.A.first / 2, v.A.second / 2));
        CHECK(hull_contains(d, (v.A.first + 1) / 2, (v.A.second + 1) / 2));
        CHECK_FALSE(hull_contains(d, v.A.first, v.A.second - Rational(1, 100)));
        CHECK_FALSE(hull_contains(d, Rational(1, 2), Rational(3, 4)));
    }
}

TEST_CASE("hull self-duality") {
    for (int d : {2, 3}) {
        HullVertices v = hull_vertices(d);
        CHECK(dual_exponent(v.A) == v.B);
        CHECK(dual_exponent(v.B) == v.A);
        for (int i = 0; i <= 8; ++i) {
            for (int j = 0; j <= 8; ++j) {
                Rational x(i, 8), y(j, 8);
                auto dual = dual_exponent({x, y});
                CHECK(hull_contains(d, x, y) == hull_contains(d, dual.first, dual.second));
            }
        }
    }
}

TEST_CASE("flat-tangency obstruction arithmetic") {
    CHECK(sin_obstruction_gap(2) == Rational(1, 9));
    CHECK(sin_obstruction_gap(3) == Rational(1, 6));
    // the k -> infinity limit recovers the nondegenerate gap 1/3
    CHECK(sin_obstruction_gap(1000000) < Rational(1, 3));
    CHECK(Rational(1, 3) - sin_obstruction_gap(1000000) < Rational(1, 1000000));

    std::vector<double> deltas{0.5, 0.25, 0.125, 0.0625, 0.03125};
    SweepReport rep = sin_obstruction_probe(2, deltas);
    CHECK(rep.pass);
    CHECK(rep.slope_valid);
    CHECK(rep.r_squared >= 0.99);
}

TEST_CASE("sharpness counterexample slopes") {
    std::vector<int> Ns{8, 16, 32, 64};
    for (int d : {2, 3}) {
        for (double r : {(d + 1) / 2.0, d + 1.0, std::numeric_limits<double>::infinity()}) {
            SharpnessReport rep = sharpness_counterexample(d, Ns, r);
            CHECK(rep.disjoint_verified);
            CHECK(rep.f_norm.slope_valid);
            CHECK(rep.f_norm.r_squared >= 0.99);
            CHECK(rep.lower_norm.r_squared >= 0.99);
            CHECK(std::abs(rep.f_norm.slope - rep.expected_f_slope) <=
                  0.05 * std::abs(rep.expected_f_slope));
            CHECK(std::abs(rep.lower_norm.slope - rep.expected_lower_slope) <=
                  0.05 * std::abs(rep.expected_lower_slope));
        }
        SharpnessReport rep = sharpness_counterexample(d, Ns, (d + 1) / 2.0);
        CHECK(rep.constraint_r_min == Rational(d + 1, 2));
        CHECK(rep.fit_r_min == doctest::Approx((d + 1) / 2.0).epsilon(0.15));
    }
    SUBCASE("spot check: the short t-interval lands inside the shrunk cell") {
        // for |t| <= 1/(10k) and x in the (2k)-cell at K, x - (t,...,t^d) - K
        // stays within the k-cell
        int k = 10, d = 3;
        double t = 1.0 / (10.0 * k);
        for (int j = 1; j <= d; ++j) {
            double half_2k = 0.5 / std::pow(2.0 * k, j);
            double half_k = 0.5 / std::pow(static_cast<double>(k), j);
            CHECK(half_2k + std::pow(t, j) <= half_k);
        }
    }
}

TEST_CASE("triple-integral norm agrees with an x-space brute force, d = 2") {
    // independent route: Riemann sum of (w * pullback length)^3 over the
    // support tube, with the parabola pullback in closed form
    auto pullback_len = [](double x1, double x2, double delta, double T) {
        IntervalUnion strip(std::max(x1 - delta, -T), std::min(x1 + delta, T));
        double hi2 = x2 + delta * delta, lo2 = x2 - delta * delta;
        if (hi2 < 0.0) return 0.0;
        double r_hi = std::sqrt(hi2), r_lo = std::sqrt(std::max(0.0, lo2));
        IntervalUnion sq(std::vector<std::pair<double, double>>{{-r_hi, -r_lo}, {r_lo, r_hi}});
        return strip.intersect(sq).length();
    };
    const double w = std::cbrt(2.0);
    for (double delta : {0.5, 0.25}) {
        double fast = model_operator_q3_norm(2, delta, 6.0);
        const int nx = 1600, ny = 400;
        double x_max = 6.0 + 2 * delta, acc = 0.0;
        for (int i = 0; i < nx; ++i) {
            double x1 = -x_max + 2 * x_max * (i + 0.5) / nx;
            double y_lo = x1 * x1 - 3 * delta * delta - 0.1;
            double y_hi = x1 * x1 + 3 * delta * delta + 0.1;
            for (int j = 0; j < ny; ++j) {
                double x2 = y_lo + (y_hi - y_lo) * (j + 0.5) / ny;
                double v = w * pullback_len(x1, x2, delta, 6.0);
                acc += v * v * v * (2 * x_max / nx) * ((y_hi - y_lo) / ny);
            }
        }
        double brute = std::cbrt(acc);
        CHECK(fast == doctest::Approx(brute).epsilon(0.03));
    }
}

TEST_CASE("scaling sweep sits flat on the line and tilts off it") {
    std::vector<double> deltas;
    for (int i = 1; i <= 6; ++i) deltas.push_back(std::pow(2.0, -i));
    SUBCASE("d = 2 on-line") {
        SweepReport rep = scaling_extremizer_sweep(2, 1.5, deltas);
        REQUIRE(rep.slope_valid);
        CHECK(std::abs(rep.slope) <= 0.02);
        double rmin = 1e300, rmax = 0.0;
        for (const auto& row : rep.rows) {
            rmin = std::min(rmin, row.ratio);
            rmax = std::max(rmax, row.ratio);
        }
        CHECK(rmax / rmin <= 1.1);
    }
    SUBCASE("d = 2 off-line tilts negative") {
        SweepReport rep = scaling_extremizer_sweep(2, 1.2, deltas);  // 1/p above the line
        REQUIRE(rep.slope_valid);
        CHECK(rep.slope <= -0.05);
    }
}

TEST_CASE("uniformity sweep smoke") {
    UniformSweepResult res = uniform_family_sweep(2, 3, 3, 12345);
    CHECK(res.baseline > 0.0);
    CHECK(res.max_ratio >= res.baseline * 0.999);
    CHECK(res.report.rows.size() >= 3);
    for (const auto& row : res.report.rows) CHECK(std::isfinite(row.lhs));
}
