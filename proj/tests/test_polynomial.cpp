#include "curveavg/curve.hpp"
#include "curveavg/errors.hpp"
#include "curveavg/polynomial.hpp"
#include "curveavg/rng.hpp"
#include "curveavg/roots.hpp"

#include "doctest.h"

#include <cmath>

using namespace curveavg;

namespace {

Polynomial random_poly(Rng& rng, int max_deg) {
    std::vector<Rational> coeffs;
    int deg = static_cast<int>(rng.below(max_deg + 1));
    for (int i = 0; i <= deg; ++i) coeffs.emplace_back(rng.integer(-9, 9));
    return Polynomial(std::move(coeffs));
}

}  // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
    CHECK(parse_rational("-2.5e2") == Rational(-250));
    CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
}

TEST_CASE("derivative basics") {
    Polynomial t2{0, 0, 1};
    CHECK(t2.derivative() == Polynomial{0, 2});
    CHECK(t2.derivative(3).is_zero());  // order above the degree
    Polynomial t3{0, 0, 0, 1};
    CHECK(t3.derivative(2) == Polynomial{0, 6});
    CHECK(t3.derivative(0) == t3);
}

TEST_CASE("derivative is linear") {
    Rng rng(42);
    for (int it = 0; it < 50; ++it) {
        Polynomial p = random_poly(rng, 8), q = random_poly(rng, 8);
        Rational a(rng.integer(-5, 5)), b(rng.integer(-5, 5));
        CHECK((p * a + q * b).derivative() == p.derivative() * a + q.derivative() * b);
    }
}

TEST_CASE("evaluation") {
    CHECK(Polynomial().eval(Rational(17)) == 0);
    Polynomial p{-1, 0, 1};  // t^2 - 1
    CHECK(p.eval(Rational(2)) == 3);
    Polynomial q{2, 6};  // 2 + 6t
    CHECK(q.eval(Rational(-1, 3)) == 0);
    CHECK(q.eval(-1.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("torsion determinants of the model curves") {
    CHECK(torsion_det(model_curve(2)) == Polynomial{2});
    CHECK(torsion_det(model_curve(3)) == Polynomial{12});
    CurvePoly cubic(2, {Polynomial{0, 1}, Polynomial{0, 0, 0, 1}});
    CHECK(torsion_det(cubic) == Polynomial{0, 6});
}

TEST_CASE("torsion equivariance under linear maps") {
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        int d = it % 2 == 0 ? 2 : 3;
        std::vector<Polynomial> comps;
        for (int i = 0; i < d; ++i) {
            Polynomial p = random_poly(rng, 5);
            if (p.degree() < 1) p = p + Polynomial{0, 1 + static_cast<long>(rng.below(3))};
            comps.push_back(p);
        }
        CurvePoly P(d, comps);
        std::vector<Rational> M(d * d);
        for (auto& m : M) m = Rational(rng.integer(-4, 4));
        Rational detM = d == 2 ? Rational(M[0] * M[3] - M[1] * M[2])
                               : Rational(M[0] * (M[4] * M[8] - M[5] * M[7]) -
                                          M[1] * (M[3] * M[8] - M[5] * M[6]) +
                                          M[2] * (M[3] * M[7] - M[4] * M[6]));
        if (detM == 0) continue;
        CHECK(torsion_det(apply_matrix(P, M)) == torsion_det(P) * detM);
    }
}

TEST_CASE("jacobian determinant on the model curves") {
    // |det| at (0,1,2) equals |6(s-t)(t-u)(s-u)| = 12
    CHECK(std::abs(jacobian_det(model_curve(3), {0.0, 1.0, 2.0})) == doctest::Approx(12.0));
    CHECK(std::abs(jacobian_det(model_curve(2), {0.0, 1.0})) == doctest::Approx(2.0));
    // repeated points give zero
    CurvePoly cubic(2, {Polynomial{0, 1}, Polynomial{0, 0, 0, 1}});
    CHECK(jacobian_det(cubic, {0.7, 0.7}) == doctest::Approx(0.0));
}

TEST_CASE("jacobian antisymmetry under point transposition") {
    Rng rng(99);
    CurvePoly P(3, {Polynomial{1, 2, -1}, Polynomial{0, 1, 0, 2}, Polynomial{0, 0, 3, 0, 1}});
    for (int it = 0; it < 30; ++it) {
        std::vector<double> pts{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double before = jacobian_det(P, pts);
        std::swap(pts[0], pts[2]);
        CHECK(jacobian_det(P, pts) == doctest::Approx(-before).epsilon(1e-12));
    }
}

TEST_CASE("real root isolation") {
    SUBCASE("simple roots") {
        RootList r = real_roots(Polynomial{0, 6});  // 6t
        REQUIRE(r.size() == 1);
        CHECK(r.entries[0].value == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.entries[0].multiplicity == 1);

        RootList r2 = real_roots(Polynomial{-1, 0, 1});  // t^2 - 1
        REQUIRE(r2.size() == 2);
        CHECK(r2.entries[0].value == doctest::Approx(-1.0));
        CHECK(r2.entries[1].value == doctest::Approx(1.0));
    }
    SUBCASE("double root") {
        RootList r = real_roots(Polynomial{1, -2, 1});  // (t-1)^2
        REQUIRE(r.size() == 1);
        CHECK(r.entries[0].value == doctest::Approx(1.0));
        CHECK(r.entries[0].multiplicity == 2);
    }
    SUBCASE("zero polynomial rejected") {
        CHECK_THROWS_AS(real_roots(Polynomial()), ZeroPolynomialError);
    }
    SUBCASE("no real roots") { CHECK(real_roots(Polynomial{1, 0, 1}).empty()); }
}

TEST_CASE("random root property: residual and sign constancy between roots") {
    Rng rng(2024);
    int tested = 0;
    for (int it = 0; it < 60; ++it) {
        Polynomial p = random_poly(rng, 8);
        if (p.degree() < 1) continue;
        ++tested;
        RootList roots = real_roots(p);
        double mult_sum = 0;
        for (const auto& e : roots.entries) {
            mult_sum += e.multiplicity;
            // first-order residual cap: |p| <= sup|p'| * radius near the root
            double ar = std::abs(e.value) + 1.0;
            double dbound = 0.0, scale = 0.0;
            const auto& cs = p.coeffs();
            for (size_t i = 0; i < cs.size(); ++i) {
                double c = std::abs(to_double(cs[i]));
                scale += c * std::pow(ar, static_cast<double>(i));
                if (i >= 1) dbound += c * i * std::pow(ar, static_cast<double>(i - 1));
            }
            CHECK(std::abs(p.eval(e.value)) <= dbound * 2.0 * 1e-12 + 1e-14 * scale);
            CHECK(e.radius <= 1e-12);
        }
        CHECK(mult_sum <= p.degree());
        // sign constancy strictly between consecutive roots, checked exactly
        for (size_t i = 0; i + 1 < roots.entries.size(); ++i) {
            const auto& a = roots.entries[i];
            const auto& b = roots.entries[i + 1];
            int s = sign_between(p, a.hi, b.lo);
            Rational probe1 = a.hi + (b.lo - a.hi) / 7;
            Rational probe2 = a.hi + (b.lo - a.hi) * Rational(6, 7);
            if (sign(p.eval(probe1)) != 0) CHECK(sign(p.eval(probe1)) == s);
            if (sign(p.eval(probe2)) != 0) CHECK(sign(p.eval(probe2)) == s);
        }
    }
    CHECK(tested >= 30);
}

TEST_CASE("curve construction guards") {
    CHECK_THROWS_AS(CurvePoly(2, {Polynomial{1}, Polynomial{2}}), ConfigError);  // constant curve
    CHECK_THROWS_AS(CurvePoly(4, {}), ConfigError);
    std::vector<Rational> big(18, Rational(1));
    CHECK_THROWS_AS(CurvePoly(2, {Polynomial(big), Polynomial{0, 1}}), ConfigError);  // degree cap
}

TEST_CASE("geometric ratio closed forms") {
    CHECK(geom_ratio(model_curve(2), {0.2, 0.7}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geom_ratio(model_curve(3), {-0.3, 0.1, 0.8}) == doctest::Approx(0.5).epsilon(1e-12));
    CurvePoly cubic(2, {Polynomial{0, 1}, Polynomial{0, 0, 0, 1}});
    CHECK(geom_ratio(cubic, {1.0, 2.0}) == doctest::Approx(9.0 / std::sqrt(72.0)).epsilon(1e-12));
    CHECK_THROWS_AS(geom_ratio(cubic, {0.5, 0.5}), DegeneratePointError);
    CHECK_THROWS_AS(geom_ratio(cubic, {0.0, 1.0}), DegeneratePointError);  // L(0) = 0
}

TEST_CASE("alternating sum sign pattern") {
    // d = 2: P(t1) - P(t2); d = 3: -P(t1) + P(t2) - P(t3)
    auto x2 = alternating_sum(model_curve(2), {1.0, 2.0});
    CHECK(x2[0] == doctest::Approx(-1.0));
    CHECK(x2[1] == doctest::Approx(-3.0));
    auto x3 = alternating_sum(model_curve(3), {1.0, 2.0, 3.0});
    CHECK(x3[0] == doctest::Approx(-1.0 + 2.0 - 3.0));
    CHECK(x3[2] == doctest::Approx(-1.0 + 8.0 - 27.0));
}
