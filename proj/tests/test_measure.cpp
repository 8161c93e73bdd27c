#include "curveavg/measure.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

using namespace curveavg;

namespace {

CenteredInterval make_ci(double lo, double hi, double b, int k) {
    CenteredInterval ci;
    ci.lo = lo;
    ci.hi = hi;
    ci.b = b;
    ci.k = k;
    ci.A = 1.0;
    return ci;
}

}  // namespace

TEST_CASE("mu measure closed forms") {
    CenteredInterval ci = make_ci(0.0, 4.0, 0.0, 1);
    CHECK(mu_measure(ci, IntervalUnion(1.0, 2.0), 1.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(mu_measure(ci, IntervalUnion(1.0, 3.5), 0.0) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(mu_measure(ci, IntervalUnion(0.0, 1.0), 0.5) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    SUBCASE("additive over disjoint unions") {
        IntervalUnion a(0.5, 1.0), b(2.0, 3.0);
        CHECK(mu_measure(ci, a.unite(b), 1.5) ==
              doctest::Approx(mu_measure(ci, a, 1.5) + mu_measure(ci, b, 1.5)).epsilon(1e-14));
    }
    SUBCASE("escaping set rejected") {
        CHECK_THROWS_AS(mu_measure(ci, IntervalUnion(3.0, 5.0), 1.0), OutOfIntervalError);
    }
    SUBCASE("left-of-centre branch") {
        CenteredInterval left = make_ci(-4.0, 0.0, 0.0, 1);
        CHECK(mu_measure(left, IntervalUnion(-2.0, -1.0), 1.0) ==
              doctest::Approx(1.5).epsilon(1e-14));
    }
}

TEST_CASE("mu inverse is the inverse of the mass") {
    Rng rng(8);
    for (int it = 0; it < 100; ++it) {
        double b = rng.uniform(-2.0, 0.0);
        double e = rng.uniform(0.0, 2.0);
        double start = rng.uniform(0.5, 2.0);
        double mass = rng.uniform(0.0, 3.0);
        double x = mu_inverse_from(b, e, start, mass);
        CHECK(power_weight_mass(b, e, IntervalUnion(start, x)) ==
              doctest::Approx(mass).epsilon(1e-10));
    }
}

TEST_CASE("affine arclength masses of the model curves") {
    CHECK(nu_mass(model_curve(2), IntervalUnion(0.0, 1.0)) ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-9));
    CHECK(nu_mass(model_curve(3), IntervalUnion(0.0, 1.0)) ==
          doctest::Approx(std::pow(12.0, 1.0 / 6.0)).epsilon(1e-9));
    CHECK(nu_mass(model_curve(2), IntervalUnion()) == 0.0);
    SUBCASE("integrable singularity at a torsion root") {
        CurvePoly P(2, {Polynomial{0, 1}, Polynomial{0, 0, 0, 1}});  // L = 6t
        double expected = std::pow(6.0, 1.0 / 3.0) * 3.0 / 4.0;      // int_0^1 (6t)^{1/3}
        CHECK(nu_mass(P, IntervalUnion(0.0, 1.0)) == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("pullback sets") {
    SUBCASE("parabola through a centred box") {
        Box E = Box::cube(2, 1.0);
        IntervalUnion pb = pullback_set(model_curve(2), E, {0.0, 0.0}, -2.0, 2.0);
        REQUIRE(pb.size() == 1);
        CHECK(pb.lo() == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(pb.hi() == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("unit box at (1,1)") {
        Box E(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0});
        IntervalUnion pb = pullback_set(model_curve(2), E, {1.0, 1.0}, -2.0, 2.0);
        REQUIRE(pb.size() == 1);
        CHECK(pb.lo() == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(pb.hi() == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("disjoint box pulls back to nothing") {
        Box E(std::vector<double>{10.0, 10.0}, std::vector<double>{11.0, 11.0});
        CHECK(pullback_set(model_curve(2), E, {0.0, 0.0}, -2.0, 2.0).is_empty());
    }
    SUBCASE("two branches through an even component") {
        // x - t^2 in [-1/4, 1/4] at x = 1: |t| in [sqrt(3)/2, sqrt(5)/2]
        CurvePoly P(2, {Polynomial{0, 0, 1}, Polynomial{0, 1}});
        Box E(std::vector<double>{-0.25, -10.0}, std::vector<double>{0.25, 10.0});
        IntervalUnion pb = pullback_set(P, E, {1.0, 0.0}, -2.0, 2.0);
        REQUIRE(pb.size() == 2);
        CHECK(pb.pieces()[0].first == doctest::Approx(-std::sqrt(1.25)).epsilon(1e-9));
        CHECK(pb.pieces()[1].second == doctest::Approx(std::sqrt(1.25)).epsilon(1e-9));
    }
}

TEST_CASE("operator on box indicators") {
    SUBCASE("zero function") {
        GridFunction f = GridFunction::zeros(Box::cube(2, 1.0), {8, 8});
        CHECK(apply_operator(model_curve(2), -1.0, 1.0, f, {0.0, 0.0}) == 0.0);
    }
    SUBCASE("model value: weight times pullback length") {
        Box E = Box::cube(2, 0.5);
        double v = apply_operator(model_curve(2), -1.0, 1.0, E, {0.0, 0.0});
        CHECK(v == doctest::Approx(std::pow(2.0, 1.0 / 3.0) * 1.0).epsilon(1e-9));
    }
    SUBCASE("box and grid paths agree to boundary smearing") {
        Rng rng(99);
        CurvePoly P = model_curve(2);
        for (int it = 0; it < 10; ++it) {
            double half = 0.3 + 0.4 * rng.uniform();
            Box E = Box::cube(2, half);
            GridFunction grid = GridFunction::zeros(Box::cube(2, 1.5), {192, 192});
            grid.fill_indicator(E);
            std::vector<double> x{rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)};
            double box_v = apply_operator(P, -1.5, 1.5, E, x);
            double grid_v = apply_operator(P, -1.5, 1.5, grid, x);
            double cell = 3.0 / 192.0;
            CHECK(std::abs(box_v - grid_v) <= std::pow(2.0, 1.0 / 3.0) * 8.0 * cell + 1e-9);
        }
    }
    SUBCASE("positivity and monotonicity") {
        Box small = Box::cube(2, 0.25), big = Box::cube(2, 0.5);
        std::vector<double> x{0.1, 0.05};
        double vs = apply_operator(model_curve(2), -1.0, 1.0, small, x);
        double vb = apply_operator(model_curve(2), -1.0, 1.0, big, x);
        CHECK(vs >= 0.0);
        CHECK(vb >= vs);
    }
}

TEST_CASE("duality pairing symmetry") {
    CurvePoly P = model_curve(2);
    Box E = Box::cube(2, 0.5);
    Box F(std::vector<double>{-0.25, -0.3}, std::vector<double>{0.75, 0.6});
    double lhs = operator_pairing(P, -2.0, 2.0, E, F);
    double rhs = operator_pairing(negate_curve(P), -2.0, 2.0, F, E);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    SUBCASE("pairing against a quadrature of the pointwise operator") {
        GridFunction field = apply_operator_field(P, -2.0, 2.0, E, F, {64, 64});
        double acc = 0.0;
        for (double v : field.values) acc += v;
        acc *= field.cell_volume();
        CHECK(acc == doctest::Approx(lhs).epsilon(0.02));
    }
}

TEST_CASE("lp norms on grids") {
    GridFunction f = GridFunction::zeros(Box::cube(2, 1.0), {16, 16});
    double vol = f.cell_volume();
    f.values[37] = 1.0;
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::pow(vol, 0.5)).epsilon(1e-13));
    SUBCASE("homogeneity") {
        Rng rng(3);
        for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
        double base = lp_norm(f, 3.0);
        for (auto& v : f.values) v *= -2.5;
        CHECK(lp_norm(f, 3.0) == doctest::Approx(2.5 * base).epsilon(1e-12));
    }
    SUBCASE("nonisotropic box volume") {
        double delta = 0.25;
        Box D = Box::nonisotropic(2, delta);
        GridFunction g = GridFunction::zeros(Box::cube(2, 0.5), {256, 256});
        g.fill_indicator(D);
        double exact_norm = std::pow(4.0 * std::pow(delta, 3.0), 1.0 / 1.5);
        CHECK(lp_norm(g, 1.5) == doctest::Approx(exact_norm).epsilon(0.02));
    }
    SUBCASE("rearrangement invariance") {
        Rng rng(17);
        for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
        double direct = lp_norm(f, 2.7);
        std::sort(f.values.begin(), f.values.end());
        CHECK(lp_norm(f, 2.7) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("lorentz norms") {
    SUBCASE("indicator closed form") {
        GridFunction f = GridFunction::zeros(Box::cube(2, 1.0), {32, 32});
        int cells = 100;
        for (int i = 0; i < cells; ++i) f.values[i] = 1.0;
        double m = cells * f.cell_volume();
        for (double p : {1.5, 2.0, 3.0}) {
            for (double r : {1.0, 2.0, 2.5}) {
                CHECK(lorentz_norm(f, p, r) ==
                      doctest::Approx(lorentz_norm_indicator(1.0, m, p, r)).epsilon(1e-12));
            }
            double inf = std::numeric_limits<double>::infinity();
            CHECK(lorentz_norm(f, p, inf) ==
                  doctest::Approx(std::pow(m, 1.0 / p)).epsilon(1e-12));
        }
    }
    SUBCASE("p = r collapses to the lp norm") {
        Rng rng(23);
        for (int it = 0; it < 20; ++it) {
            GridFunction f = GridFunction::zeros(Box::cube(2, 1.0), {24, 24});
            for (auto& v : f.values) v = rng.uniform(-2.0, 2.0);
            double p = 1.0 + 2.5 * rng.uniform();
            CHECK(lorentz_norm(f, p, p) == doctest::Approx(lp_norm(f, p)).epsilon(1e-12));
        }
    }
    SUBCASE("two-level weak norm") {
        GridFunction f = GridFunction::zeros(
            Box(std::vector<double>{0.0}, std::vector<double>{4.0}), {4});
        f.values = {2.0, 1.0, 1.0, 1.0};
        CHECK(lorentz_norm(f, 2.0, std::numeric_limits<double>::infinity()) ==
              doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("nesting sanity on indicators") {
        // the r1/r2 norm ratio on indicators is (p/r1)^{1/r1} / (p/r2)^{1/r2},
        // independent of the support measure
        for (double p : {1.5, 2.0}) {
            for (auto [r1, r2] : {std::pair{1.0, 2.0}, std::pair{1.5, 3.0}}) {
                double c = std::pow(p / r1, 1.0 / r1) / std::pow(p / r2, 1.0 / r2);
                CHECK(c > 0.0);
                for (double m : {0.37, 1.9}) {
                    double n1 = lorentz_norm_indicator(1.0, m, p, r1);
                    double n2 = lorentz_norm_indicator(1.0, m, p, r2);
                    CHECK(n1 == doctest::Approx(n2 * c).epsilon(1e-12));
                    CHECK(n1 >= n2 * std::min(1.0, c));
                }
            }
        }
    }
}

TEST_CASE("grid binary round trip") {
    GridFunction f = GridFunction::zeros(Box::nonisotropic(2, 0.5), {8, 12});
    Rng rng(5);
    for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
    auto path = std::filesystem::temp_directory_path() / "curveavg_grid_test.bin";
    write_grid(f, path.string());
    GridFunction g = read_grid(path.string());
    CHECK(g.dim == f.dim);
    CHECK(g.resolution == f.resolution);
    CHECK(g.values == f.values);  // payload is bit-exact
    CHECK(g.box.lo == f.box.lo);
    std::filesystem::remove(path);
}
