#include "curveavg/decomp.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/rng.hpp"

#include "doctest.h"

#include <cmath>

using namespace curveavg;

namespace {

CurvePoly cubic2() { return CurvePoly(2, {Polynomial{0, 1}, Polynomial{0, 0, 0, 1}}); }

CurvePoly random_curve(Rng& rng, int d, int max_deg) {
    while (true) {
        std::vector<Polynomial> comps;
        for (int i = 0; i < d; ++i) {
            std::vector<Rational> coeffs;
            int deg = 1 + static_cast<int>(rng.below(max_deg));
            for (int j = 0; j <= deg; ++j) coeffs.emplace_back(rng.integer(-5, 5));
            comps.emplace_back(std::move(coeffs));
        }
        int maxdeg = -1;
        for (const auto& c : comps) maxdeg = std::max(maxdeg, c.degree());
        if (maxdeg < 1) continue;
        CurvePoly P(d, comps);
        if (!torsion_det(P).is_zero()) return P;
    }
}

}  // namespace

TEST_CASE("stage 1 cut points") {
    SUBCASE("parabola has none") {
        Stage1Result s = stage1_split(model_curve(2), -1.0, 1.0);
        CHECK(s.cuts.empty());
        REQUIRE(s.pieces.size() == 1);
        CHECK(s.pieces[0] == std::pair{-1.0, 1.0});
    }
    SUBCASE("(t, t^3) cuts at the torsion root") {
        Stage1Result s = stage1_split(cubic2(), -1.0, 1.0);
        REQUIRE(s.cuts.size() == 1);
        CHECK(s.cuts[0] == doctest::Approx(0.0));
        CHECK(s.pieces.size() == 2);
    }
    SUBCASE("(t, t^2 + t^3) cuts at -1/3") {
        CurvePoly P(2, {Polynomial{0, 1}, Polynomial{0, 0, 1, 1}});
        Stage1Result s = stage1_split(P, -1.0, 1.0);
        REQUIRE(s.cuts.size() == 1);
        CHECK(s.cuts[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
    }
    SUBCASE("degenerate curve rejected") {
        CurvePoly P(2, {Polynomial{0, 1}, Polynomial{0, 1}});
        CHECK_THROWS_AS(stage1_split(P, -1.0, 1.0), DegenerateCurveError);
    }
    SUBCASE("minor roots cut too") {
        // P_1' = 2t vanishes at 0 while L = -2 is root-free
        CurvePoly P(2, {Polynomial{0, 0, 1}, Polynomial{0, 1}});
        Stage1Result s = stage1_split(P, -1.0, 1.0);
        REQUIRE(s.cuts.size() == 1);
        CHECK(s.cuts[0] == doctest::Approx(0.0));
    }
}

TEST_CASE("monomialize on exactly monomial torsion") {
    SUBCASE("constant torsion: single interval, k = 0") {
        auto out = monomialize(model_curve(2), -1.0, 1.0, 4.0);
        REQUIRE(out.size() == 1);
        CHECK(out[0].k == 0);
        CHECK(out[0].A == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(out[0].kappa <= 1.0 + 1e-9);
    }
    SUBCASE("L = 6t on (0,1): k = 1, b = 0, A = 6") {
        auto out = monomialize(cubic2(), 0.0, 1.0, 4.0);
        REQUIRE(out.size() == 1);
        CHECK(out[0].k == 1);
        CHECK(out[0].b == 0.0);
        CHECK(out[0].A == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(out[0].kappa <= 1.0 + 1e-9);
    }
    SUBCASE("L = 6t + 12t^2 splits against its centre") {
        // behaves like 6t near 0 but picks up the quadratic term far out
        CurvePoly P(2, {Polynomial{0, 1}, Polynomial{0, 0, 0, 1, 1}});
        const double kappa_target = 4.0;
        auto out = monomialize(P, 0.0, 16.0, kappa_target);
        REQUIRE(out.size() >= 2);
        Polynomial L = torsion_det(P);
        for (const auto& ci : out) {
            CHECK(ci.b == 0.0);
            CHECK(ci.k == 1);
            CHECK(ci.kappa <= kappa_target * (1 + 1e-12));
            // brute-force certification against the exact torsion values
            for (int i = 0; i <= 200; ++i) {
                double t = ci.lo + (ci.hi - ci.lo) * (i + 0.5) / 201.0;
                double ratio = std::abs(L.eval(t)) / (ci.A * std::abs(t - ci.b));
                CHECK(ratio <= kappa_target * (1 + 1e-6));
                CHECK(ratio >= 1.0 / kappa_target * (1 - 1e-6));
            }
        }
        // the innermost interval hugs the root; at tight kappa its amplitude
        // approaches the linear coefficient 6
        CHECK(out.front().lo == doctest::Approx(0.0));
        auto tight = monomialize(P, 0.0, 16.0, 1.1);
        CHECK(tight.size() > out.size());
        CHECK(tight.front().A == doctest::Approx(6.0).epsilon(0.25));
    }
}

TEST_CASE("decompose end-to-end") {
    SUBCASE("model d = 3: one interval, constant amplitude 12") {
        Decomposition dec = decompose(model_curve(3), -1.0, 1.0);
        REQUIRE(dec.intervals.size() == 1);
        CHECK(dec.intervals[0].k == 0);
        CHECK(dec.intervals[0].A == doctest::Approx(12.0).epsilon(1e-12));
    }
    SUBCASE("(t, t^3): two intervals about zero") {
        Decomposition dec = decompose(cubic2(), -1.0, 1.0);
        REQUIRE(dec.intervals.size() == 2);
        for (const auto& ci : dec.intervals) {
            CHECK(ci.b == 0.0);
            CHECK(ci.k == 1);
            CHECK(ci.A == doctest::Approx(6.0).epsilon(1e-12));
            CHECK(ci.kappa <= 1.0 + 1e-9);
        }
        CHECK(dec.intervals[0].hi == doctest::Approx(0.0));
        CHECK(dec.intervals[1].lo == doctest::Approx(0.0));
    }
    SUBCASE("degenerate curve") {
        CurvePoly P(2, {Polynomial{0, 1}, Polynomial{0, 1}});
        CHECK_THROWS_AS(decompose(P, -1.0, 1.0), DegenerateCurveError);
    }
}

TEST_CASE("stage-1 sign constancy on decomposed intervals") {
    Rng rng(5150);
    for (int it = 0; it < 8; ++it) {
        int d = it % 2 == 0 ? 2 : 3;
        CurvePoly P = random_curve(rng, d, 4);
        double R = default_window_radius(P);
        Decomposition dec = decompose(P, -R, R);
        std::vector<Polynomial> checks{torsion_det(P)};
        for (int j = 1; j < d; ++j) checks.push_back(leading_minor(P, j));
        for (const auto& ci : dec.intervals) {
            for (const auto& g : checks) {
                if (g.degree() < 1) continue;
                int seen = 0;
                for (int i = 0; i < 128; ++i) {
                    double t = ci.lo + (ci.hi - ci.lo) * rng.uniform();
                    double v = g.eval(t);
                    if (v == 0.0) continue;
                    int s = v > 0 ? 1 : -1;
                    if (seen == 0) seen = s;
                    CHECK(seen == s);
                }
            }
        }
    }
}

TEST_CASE("interval count stays linear in the degree") {
    Rng rng(777);
    for (int it = 0; it < 6; ++it) {
        int d = it % 2 == 0 ? 2 : 3;
        int n = 2 + static_cast<int>(rng.below(7));  // component degrees <= 8
        CurvePoly P = random_curve(rng, d, n);
        double R = default_window_radius(P);
        Decomposition dec = decompose(P, -R, R);
        CHECK(static_cast<int>(dec.intervals.size()) <= 64 * std::max(n, P.max_degree()));
    }
}

TEST_CASE("P2 certification holds on a fresh net") {
    Rng rng(31337);
    CurvePoly P = random_curve(rng, 2, 5);
    double R = default_window_radius(P);
    DecomposeConfig cfg;
    Decomposition dec = decompose(P, -R, R, cfg);
    Polynomial L = torsion_det(P);
    for (const auto& ci : dec.intervals) {
        for (int i = 0; i < 64; ++i) {
            double t = ci.lo + (ci.hi - ci.lo) * rng.uniform();
            double lt = std::abs(L.eval(t));
            if (lt == 0.0) continue;
            double ratio = lt / (ci.A * std::pow(std::abs(t - ci.b), ci.k));
            // random interior points may fall between net samples; allow the
            // net-certified kappa plus a whisker
            CHECK(std::abs(std::log(ratio)) <= std::log(cfg.kappa_target) + 0.3);
        }
    }
}

TEST_CASE("tighter kappa refines the looser decomposition") {
    Rng rng(2718);
    for (int it = 0; it < 4; ++it) {
        CurvePoly P = random_curve(rng, 2, 5);
        double R = default_window_radius(P);
        DecomposeConfig loose, tight;
        loose.kappa_target = 8.0;
        tight.kappa_target = 2.0;
        Decomposition dl = decompose(P, -R, R, loose);
        Decomposition dt = decompose(P, -R, R, tight);
        for (const auto& inner : dt.intervals) {
            bool nested = false;
            for (const auto& outer : dl.intervals)
                if (outer.lo <= inner.lo + 1e-12 && inner.hi <= outer.hi + 1e-12) nested = true;
            CHECK(nested);
        }
    }
}

TEST_CASE("decomposition JSON round trip is bit identical") {
    Decomposition dec = decompose(cubic2(), -1.0, 1.0);
    std::string once = decomposition_to_json(dec, "deadbeef00000000");
    Decomposition reloaded = decomposition_from_json(once);
    std::string twice = decomposition_to_json(reloaded, "deadbeef00000000");
    CHECK(once == twice);
    REQUIRE(reloaded.intervals.size() == dec.intervals.size());
    CHECK(reloaded.intervals[0].A == dec.intervals[0].A);
    CHECK(reloaded.window == dec.window);
}

TEST_CASE("split budget exhaustion reports rather than spins") {
    DecomposeConfig cfg;
    cfg.split_budget_factor = 0;  // no budget at all
    CHECK_THROWS_AS(monomialize(cubic2(), 0.0, 1.0, 1.0 + 1e-9, cfg), SplitBudgetExceededError);
}
