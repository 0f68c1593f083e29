#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "support.hpp"
#include "wlab/catalog.hpp"
#include "wlab/density.hpp"
#include "wlab/monotonicity.hpp"
#include "wlab/quadrature.hpp"

using namespace wlab;
using wtest::kPi;
using wtest::origin3;
using wtest::v3;

namespace {

// Closed-form area of the unit-neck catenoid inside B_r(0): the parameter
// band |v| <= V with cosh^2 V + V^2 = r^2, area 2 pi (V + sinh V cosh V).
double catenoid_ball_area_oracle(double r) {
    double lo = 0, hi = std::acosh(r);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::cosh(mid) * std::cosh(mid) + mid * mid < r * r ? lo : hi) = mid;
    }
    const double V = 0.5 * (lo + hi);
    return 2 * kPi * (V + std::sinh(V) * std::cosh(V));
}

// Scale a chart by lambda about the origin.
SurfaceChart scaled(const SurfaceChart& c, double lambda) {
    SurfaceChart out = c;
    auto base = std::make_shared<SurfaceChart>(c);
    out.eval = [base, lambda](double u, double v) {
        return Vec(lambda * base->eval(u, v));
    };
    out.d1 = [base, lambda](double u, double v, Vec& fu, Vec& fv) {
        base->d1(u, v, fu, fv);
        fu *= lambda;
        fv *= lambda;
    };
    out.d2 = [base, lambda](double u, double v, Vec& a, Vec& b, Vec& cc) {
        base->d2(u, v, a, b, cc);
        a *= lambda;
        b *= lambda;
        cc *= lambda;
    };
    return out;
}

} // namespace

TEST_CASE("integrate_over_ball") {
    SUBCASE("unit disk on a plane") {
        auto s = make_surface("plane", 3);
        const QuadratureResult q = ball_area(s.charts, {origin3(), 1});
        CHECK(q.scalar() == doctest::Approx(kPi).epsilon(1e-6));
        CHECK(std::abs(q.scalar() - kPi) <= 3 * q.err() + 1e-9);
    }
    SUBCASE("catenoid in B_10 matches the surface-of-revolution oracle") {
        auto s = make_surface("catenoid", 15);
        const QuadratureResult q = ball_area(s.charts, {origin3(), 10});
        const double oracle = catenoid_ball_area_oracle(10);
        CHECK(q.scalar() == doctest::Approx(oracle).epsilon(1e-5));
        CHECK(q.scalar() > kPi * 100);
        CHECK(q.scalar() < 2.2 * kPi * 100);
    }
    SUBCASE("sphere Willmore energy inside an enclosing ball") {
        auto s = make_surface("sphere", 0);
        const QuadratureResult q = willmore_energy(s.charts);
        CHECK(q.scalar() == doctest::Approx(16 * kPi).epsilon(1e-3));
    }
    SUBCASE("truncation is rejected without an opt-in") {
        auto s = make_surface("catenoid", 5);
        CHECK_THROWS_AS(ball_area(s.charts, {origin3(), 1000}), TruncationUnsound);
        QuadOptions opts;
        opts.allow_truncation = true;
        const QuadratureResult q = ball_area(s.charts, {origin3(), 1000}, opts);
        CHECK(q.truncated);
    }
    SUBCASE("refining does not inflate the error estimate") {
        auto s = make_surface("catenoid", 15);
        QuadOptions coarse, fine;
        coarse.rel_tol = 1e-5;
        fine.rel_tol = 1e-7;
        const double e0 = ball_area(s.charts, {origin3(), 8}, coarse).err();
        const double e1 = ball_area(s.charts, {origin3(), 8}, fine).err();
        CHECK(e1 <= 1.1 * e0);
    }
}

TEST_CASE("density ratios") {
    SUBCASE("plane through the center: exactly 1 at every radius") {
        auto s = make_surface("plane", 30);
        for (double r : {0.5, 2.0, 10.0, 25.0})
            CHECK(density_ratio(s.charts, origin3(), r) ==
                  doctest::Approx(1).epsilon(1e-6));
    }
    SUBCASE("offset center: chord geometry") {
        auto s = make_surface("plane", 5);
        // distance 1 from the plane, r = 2: disk of radius sqrt(3)
        CHECK(density_ratio(s.charts, v3(0, 0, 1), 2) ==
              doctest::Approx(0.75).epsilon(1e-6));
    }
    SUBCASE("catenoid at r = 100") {
        auto s = make_surface("catenoid", 110);
        CHECK(density_ratio(s.charts, origin3(), 100) ==
              doctest::Approx(2).epsilon(0.01));
    }
    SUBCASE("scaling invariance") {
        auto s = make_surface("catenoid", 15);
        const Vec x = v3(0.3, 0.1, 0.2);
        const double base = density_ratio(s.charts, x, 5);
        for (double lam : {0.5, 3.0}) {
            std::vector<SurfaceChart> scharts = {scaled(s.charts[0], lam)};
            const double th = density_ratio(scharts, Vec(lam * x), lam * 5);
            CHECK(th == doctest::Approx(base).epsilon(1e-5));
        }
    }
}

TEST_CASE("density at infinity") {
    DensityOptions opts;
    opts.quad.rel_tol = 1e-6;
    SUBCASE("plane") {
        auto s = make_surface("plane", 120);
        auto prof = density_at_infinity(s.charts, origin3(),
                                        geometric_radii(1, 100, 8), opts);
        CHECK(prof.theta_infinity == doctest::Approx(1).epsilon(1e-6));
        CHECK(prof.base_point_independent);
        CHECK(prof.theta_star_lower <= prof.theta_star_upper);
    }
    SUBCASE("catenoid to r = 1000") {
        auto s = make_surface("catenoid", 1100);
        auto prof = density_at_infinity(s.charts, origin3(),
                                        geometric_radii(5, 1000, 10), opts);
        CHECK(prof.theta_infinity == doctest::Approx(2).epsilon(0.01));
        CHECK(prof.base_point_independent);
    }
    SUBCASE("enneper to r = 2500") {
        auto s = make_surface("enneper", 3000);
        auto prof = density_at_infinity(s.charts, origin3(),
                                        geometric_radii(10, 2500, 10), opts);
        CHECK(prof.theta_infinity == doctest::Approx(3).epsilon(0.02));
    }
    SUBCASE("pre-condition on the radii schedule") {
        auto s = make_surface("plane", 30);
        CHECK_THROWS_AS(density_at_infinity(s.charts, origin3(),
                                            geometric_radii(1, 20, 8), opts),
                        InputError);
    }
}

TEST_CASE("monotonicity in r for minimal catalog surfaces") {
    auto s = make_surface("catenoid", 40);
    double prev = 0;
    for (double r : geometric_radii(0.5, 30, 8)) {
        const double th = density_ratio(s.charts, origin3(), r);
        CHECK(th >= prev - 1e-5);
        prev = th;
    }
}

TEST_CASE("small-radius density of smooth points is 1") {
    std::mt19937_64 rng(23);
    for (const char* name : {"catenoid", "sphere", "graph"}) {
        auto s = make_surface(name, 5);
        auto [u, v] = wtest::random_interior(s.charts[0], rng);
        const Vec x = s.charts[0].eval(u, v);
        const PointDensity pd = density_at_point(s.charts, x, 0.05);
        CHECK(pd.theta == doctest::Approx(1).epsilon(0.01));
    }
}

TEST_CASE("willmore energy") {
    SUBCASE("minimal surfaces have zero energy") {
        for (const char* name : {"catenoid", "enneper"}) {
            auto s = make_surface(name, 10);
            CHECK(std::abs(willmore_energy(s.charts).scalar()) < 1e-9);
        }
    }
    SUBCASE("spheres give 16 pi independent of radius") {
        for (double R : {1.0, 2.0}) {
            SurfaceParams p;
            p.radius = R;
            auto s = make_surface("sphere", 0, p);
            CHECK(willmore_energy(s.charts).scalar() ==
                  doctest::Approx(16 * kPi).epsilon(1e-3));
        }
    }
    SUBCASE("saddle graph against a dense fixed-grid oracle") {
        SurfaceParams p;
        p.graph_kind = "saddle";
        auto s = make_surface("graph", 1, p);
        BallRegion ball{origin3(), 1};
        const QuadratureResult q = willmore_energy(s.charts, &ball);
        CHECK(q.scalar() > 0);

        // Midpoint rule on a 3000^2 grid, |H| from the explicit graph formula.
        const int N = 3000;
        const double L = s.charts[0].u1, h = 2 * L / N;
        double oracle = 0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const double u = -L + (i + 0.5) * h, v = -L + (j + 0.5) * h;
                const double z = 0.1 * (u * u - v * v);
                if (u * u + v * v + z * z > 1) continue;
                const double pu = 0.2 * u, pv = -0.2 * v;
                const double w2 = 1 + pu * pu + pv * pv;
                const double puu = 0.2, pvv = -0.2, puv = 0;
                const double Hs = ((1 + pv * pv) * puu - 2 * pu * pv * puv +
                                   (1 + pu * pu) * pvv) /
                                  std::pow(w2, 1.5);
                oracle += Hs * Hs * std::sqrt(w2) * h * h;
            }
        CHECK(q.scalar() == doctest::Approx(oracle).epsilon(0.005));
    }
}

TEST_CASE("monotonicity identity") {
    SUBCASE("plane through the center closes exactly") {
        auto s = make_surface("plane", 10);
        const MonotonicityLedger led =
            monotonicity_check(s.charts, origin3(), 1, 4);
        CHECK(led.lhs == doctest::Approx(kPi).epsilon(1e-7));
        CHECK(std::abs(led.term_willmore) < 1e-12);
        CHECK(std::abs(led.term_deviation) < 1e-12);
        CHECK(std::abs(led.residual) < 1e-8);
    }
    SUBCASE("catenoid, sigma=2 rho=20") {
        auto s = make_surface("catenoid", 25);
        const MonotonicityLedger led =
            monotonicity_check(s.charts, origin3(), 2, 20);
        CHECK(std::abs(led.residual) <= 3 * led.combined_error + 1e-10);
    }
    SUBCASE("sphere swallowed by the outer ball, center on the surface") {
        auto s = make_surface("sphere", 0);
        const Vec north = v3(0, 0, 1);
        const MonotonicityLedger led = monotonicity_check(s.charts, north, 0.5, 1.5);
        CHECK(std::abs(led.residual) <= 3 * led.combined_error + 1e-10);
        for (const auto& iq : led.inequality)
            CHECK(iq.slack >= -iq.error - 1e-10);
    }
    SUBCASE("inequality slack is reported for delta in {0.1, 0.5, 1}") {
        auto s = make_surface("catenoid", 10);
        const MonotonicityLedger led = monotonicity_check(s.charts, origin3(), 1, 6);
        REQUIRE(led.inequality.size() == 3);
        for (const auto& iq : led.inequality) CHECK(iq.slack >= -iq.error - 1e-10);
    }
}

TEST_CASE("radial deviation energy and the every-radius bound") {
    SUBCASE("plane through the center") {
        auto s = make_surface("plane", 30);
        const auto rep = radial_deviation_energy(s.charts, origin3(), 5, 1.0);
        CHECK(std::abs(rep.integral) < 1e-9);
        CHECK(rep.slack == doctest::Approx(8).epsilon(1e-5));
    }
    SUBCASE("catenoid out to its cutoff") {
        auto s = make_surface("catenoid", 1000);
        QuadOptions opts;
        opts.rel_tol = 1e-5;
        auto prof_quad = opts;
        const auto rep =
            radial_deviation_energy(s.charts, origin3(), 50, 2.0, prof_quad);
        CHECK(std::isfinite(rep.integral));
        // For a minimal surface the deviation integral is pi * Theta(inf).
        CHECK(rep.integral == doctest::Approx(2 * kPi).epsilon(0.02));
        CHECK(rep.slack >= -rep.combined_err);
    }
    SUBCASE("sphere viewed from an outside point") {
        auto s = make_surface("sphere", 0);
        const auto rep = radial_deviation_energy(s.charts, v3(3, 0, 0), 5, 0.0);
        CHECK(std::isfinite(rep.integral));
        CHECK(rep.slack >= -rep.combined_err);
    }
}
