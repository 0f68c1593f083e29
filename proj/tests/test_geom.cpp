#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "wlab/catalog.hpp"
#include "wlab/chart.hpp"

using namespace wlab;
using wtest::kPi;

TEST_CASE("first fundamental form on catalog charts") {
    SUBCASE("flat chart is the identity") {
        auto s = make_surface("plane", 10);
        Mat2 g = first_fundamental_form(s.charts[0], 0.3, -0.7);
        CHECK(g(0, 0) == doctest::Approx(1));
        CHECK(g(1, 1) == doctest::Approx(1));
        CHECK(g(0, 1) == doctest::Approx(0));
    }
    SUBCASE("catenoid at the neck center") {
        auto s = make_surface("catenoid", 10);
        Mat2 g = first_fundamental_form(s.charts[0], 0, 0);
        CHECK(g(0, 0) == doctest::Approx(1).epsilon(1e-12));
        CHECK(g(1, 1) == doctest::Approx(1).epsilon(1e-12));
        CHECK(std::abs(g(0, 1)) < 1e-14);
    }
    SUBCASE("sphere(2) at the equator") {
        SurfaceParams p;
        p.radius = 2;
        auto s = make_surface("sphere", 0, p);
        Mat2 g = first_fundamental_form(s.charts[0], kPi / 2, 1.0);
        CHECK(g(0, 0) == doctest::Approx(4));
        CHECK(g(1, 1) == doctest::Approx(4));
        CHECK(std::abs(g(0, 1)) < 1e-12);
    }
}

TEST_CASE("mean curvature vector") {
    std::mt19937_64 rng(7);
    SUBCASE("catenoid is minimal") {
        auto s = make_surface("catenoid", 20);
        for (int i = 0; i < 25; ++i) {
            auto [u, v] = wtest::random_interior(s.charts[0], rng);
            CHECK(mean_curvature_vector(s.charts[0], u, v).norm() < 1e-10);
        }
    }
    SUBCASE("sphere has |H| = 2/R pointing inward") {
        SurfaceParams p;
        p.radius = 1.5;
        auto s = make_surface("sphere", 0, p);
        for (int i = 0; i < 25; ++i) {
            auto [u, v] = wtest::random_interior(s.charts[0], rng);
            const Vec H = mean_curvature_vector(s.charts[0], u, v);
            CHECK(H.norm() == doctest::Approx(2 / 1.5).epsilon(1e-9));
            const Vec pos = s.charts[0].eval(u, v);
            CHECK(H.dot(pos) < 0); // toward the center
        }
    }
    SUBCASE("flat graph has H = 0") {
        SurfaceParams p;
        p.graph_kind = "flat";
        auto s = make_surface("graph", 3, p);
        CHECK(mean_curvature_vector(s.charts[0], 0.2, 0.4).norm() < 1e-13);
    }
    SUBCASE("orthogonality to the tangent frame") {
        for (const char* name : {"catenoid", "sphere", "enneper", "scherk",
                                 "graph", "torus"}) {
            auto s = make_surface(name, 5);
            for (const auto& chart : s.charts) {
                for (int i = 0; i < 100; ++i) {
                    auto [u, v] = wtest::random_interior(chart, rng);
                    const ChartFrame fr = chart_frame(chart, u, v, true);
                    const Vec t = fr.tangent.transpose() * fr.mean_curvature;
                    CHECK(t.norm() < 1e-8 * (1 + fr.mean_curvature.norm()));
                }
            }
        }
    }
}

TEST_CASE("second fundamental form norm") {
    SUBCASE("plane") {
        auto s = make_surface("plane", 5);
        CHECK(second_fundamental_form_norm2(s.charts[0], 1, 2) < 1e-20);
    }
    SUBCASE("sphere: 2/R^2") {
        SurfaceParams p;
        p.radius = 2;
        auto s = make_surface("sphere", 0, p);
        CHECK(second_fundamental_form_norm2(s.charts[0], 1.1, 0.3) ==
              doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("catenoid neck: principal curvatures +-1") {
        auto s = make_surface("catenoid", 10);
        CHECK(second_fundamental_form_norm2(s.charts[0], 0.5, 0) ==
              doctest::Approx(2).epsilon(1e-10));
    }
    SUBCASE("|H|^2 <= 2|A|^2 everywhere") {
        std::mt19937_64 rng(11);
        for (const char* name : {"catenoid", "sphere", "enneper", "graph",
                                 "torus", "scherk"}) {
            auto s = make_surface(name, 4);
            for (const auto& chart : s.charts)
                for (int i = 0; i < 40; ++i) {
                    auto [u, v] = wtest::random_interior(chart, rng);
                    const ChartFrame fr = chart_frame(chart, u, v, true);
                    CHECK(fr.mean_curvature.squaredNorm() <=
                          2 * fr.norm2_A + 1e-10);
                }
        }
    }
}

TEST_CASE("catalog invariants") {
    SUBCASE("catenoid implicit equation to 1e-12 relative") {
        auto s = make_surface("catenoid", 50);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 200; ++i) {
            auto [u, v] = wtest::random_interior(s.charts[0], rng);
            const Vec p = s.charts[0].eval(u, v);
            const double lhs = p[0] * p[0] + p[1] * p[1];
            const double rhs = std::cosh(p[2]) * std::cosh(p[2]);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
        }
    }
    SUBCASE("scherk satisfies its implicit equation and is minimal") {
        auto s = make_surface("scherk", 8);
        std::mt19937_64 rng(5);
        for (const auto& chart : s.charts)
            for (int i = 0; i < 60; ++i) {
                auto [u, v] = wtest::random_interior(chart, rng);
                const Vec p = chart.eval(u, v);
                const double lhs = std::sinh(p[0]) * std::sinh(p[1]);
                CHECK(lhs == doctest::Approx(std::sin(p[2])).epsilon(1e-9));
                CHECK(mean_curvature_vector(chart, u, v).norm() < 1e-7);
            }
    }
    SUBCASE("enneper is minimal with |A|^2 = 8/(1+u^2+v^2)^2 at center") {
        auto s = make_surface("enneper", 5);
        CHECK(mean_curvature_vector(s.charts[0], 0.4, -0.2).norm() < 1e-11);
        CHECK(second_fundamental_form_norm2(s.charts[0], 0, 0) ==
              doctest::Approx(8).epsilon(1e-9));
    }
}

TEST_CASE("finite difference fallback") {
    // Drop the analytic derivatives and compare against them.
    auto s = make_surface("catenoid", 5);
    SurfaceChart fd = s.charts[0];
    fd.d1 = nullptr;
    fd.d2 = nullptr;
    fd.derivative_order = 0;

    const double u = 1.1, v = 0.6;
    const ChartFrame exact = chart_frame(s.charts[0], u, v, true);

    SUBCASE("agreement at the default step") {
        const ChartFrame approx = chart_frame(fd, u, v, true);
        CHECK((approx.g - exact.g).norm() < 1e-7);
        CHECK((approx.mean_curvature - exact.mean_curvature).norm() < 1e-4);
        CHECK(approx.norm2_A == doctest::Approx(exact.norm2_A).epsilon(1e-4));
    }
    SUBCASE("halving the step reduces the H error by about 4x") {
        fd.fd_step = 1e-3;
        const double e1 =
            (chart_frame(fd, u, v, true).mean_curvature - exact.mean_curvature)
                .norm();
        fd.fd_step = 5e-4;
        const double e2 =
            (chart_frame(fd, u, v, true).mean_curvature - exact.mean_curvature)
                .norm();
        CHECK(e1 / e2 == doctest::Approx(4).epsilon(0.25));
    }
}

TEST_CASE("degenerate immersion is rejected") {
    SurfaceChart bad;
    bad.u0 = -1; bad.u1 = 1; bad.v0 = -1; bad.v1 = 1;
    bad.derivative_order = 2;
    bad.eval = [](double u, double v) { return wtest::v3(u, u, v * 0); };
    CHECK_THROWS_AS(first_fundamental_form(bad, 0.1, 0.1), DegenerateImmersion);
}
