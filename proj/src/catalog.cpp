#include "wlab/catalog.hpp"

#include <cmath>
#include <numbers>

namespace wlab {

namespace {

constexpr double kPi = std::numbers::pi;

Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

SurfaceChart plane_chart(double L, double offset) {
    SurfaceChart c;
    c.u0 = -L; c.u1 = L; c.v0 = -L; c.v1 = L;
    c.ambient_dim = 3;
    c.derivative_order = 2;
    c.label = "plane";
    c.eval = [offset](double u, double v) { return v3(u, v, offset); };
    c.d1 = [](double, double, Vec& fu, Vec& fv) {
        fu = v3(1, 0, 0);
        fv = v3(0, 1, 0);
    };
    c.d2 = [](double, double, Vec& fuu, Vec& fuv, Vec& fvv) {
        fuu = v3(0, 0, 0);
        fuv = v3(0, 0, 0);
        fvv = v3(0, 0, 0);
    };
    return c;
}

SurfaceChart sphere_chart(double R) {
    SurfaceChart c;
    c.u0 = 0; c.u1 = kPi;      // polar angle
    c.v0 = 0; c.v1 = 2 * kPi;  // azimuth
    c.ambient_dim = 3;
    c.derivative_order = 2;
    c.label = "sphere";
    c.sides = {SideKind::Collapsed, SideKind::Collapsed, SideKind::Periodic,
               SideKind::Periodic};
    c.eval = [R](double t, double p) {
        return v3(R * std::sin(t) * std::cos(p), R * std::sin(t) * std::sin(p),
                  R * std::cos(t));
    };
    c.d1 = [R](double t, double p, Vec& fu, Vec& fv) {
        fu = v3(R * std::cos(t) * std::cos(p), R * std::cos(t) * std::sin(p),
                -R * std::sin(t));
        fv = v3(-R * std::sin(t) * std::sin(p), R * std::sin(t) * std::cos(p), 0);
    };
    c.d2 = [R](double t, double p, Vec& fuu, Vec& fuv, Vec& fvv) {
        fuu = v3(-R * std::sin(t) * std::cos(p), -R * std::sin(t) * std::sin(p),
                 -R * std::cos(t));
        fuv = v3(-R * std::cos(t) * std::sin(p), R * std::cos(t) * std::cos(p), 0);
        fvv = v3(-R * std::sin(t) * std::cos(p), -R * std::sin(t) * std::sin(p), 0);
    };
    return c;
}

// x1^2 + x2^2 = a^2 cosh^2(x3/a); neck radius a.
SurfaceChart catenoid_chart(double a, double V) {
    SurfaceChart c;
    c.u0 = 0; c.u1 = 2 * kPi;
    c.v0 = -V; c.v1 = V;
    c.ambient_dim = 3;
    c.derivative_order = 2;
    c.label = "catenoid";
    c.sides = {SideKind::Periodic, SideKind::Periodic, SideKind::Cutoff,
               SideKind::Cutoff};
    c.eval = [a](double u, double v) {
        return v3(a * std::cosh(v) * std::cos(u), a * std::cosh(v) * std::sin(u),
                  a * v);
    };
    c.d1 = [a](double u, double v, Vec& fu, Vec& fv) {
        fu = v3(-a * std::cosh(v) * std::sin(u), a * std::cosh(v) * std::cos(u), 0);
        fv = v3(a * std::sinh(v) * std::cos(u), a * std::sinh(v) * std::sin(u), a);
    };
    c.d2 = [a](double u, double v, Vec& fuu, Vec& fuv, Vec& fvv) {
        fuu = v3(-a * std::cosh(v) * std::cos(u), -a * std::cosh(v) * std::sin(u), 0);
        fuv = v3(-a * std::sinh(v) * std::sin(u), a * std::sinh(v) * std::cos(u), 0);
        fvv = v3(a * std::cosh(v) * std::cos(u), a * std::cosh(v) * std::sin(u), 0);
    };
    return c;
}

SurfaceChart enneper_chart(double L) {
    SurfaceChart c;
    c.u0 = -L; c.u1 = L; c.v0 = -L; c.v1 = L;
    c.ambient_dim = 3;
    c.derivative_order = 2;
    c.label = "enneper";
    c.eval = [](double u, double v) {
        return v3(u - u * u * u / 3 + u * v * v, -v + v * v * v / 3 - u * u * v,
                  u * u - v * v);
    };
    c.d1 = [](double u, double v, Vec& fu, Vec& fv) {
        fu = v3(1 - u * u + v * v, -2 * u * v, 2 * u);
        fv = v3(2 * u * v, -1 + v * v - u * u, -2 * v);
    };
    c.d2 = [](double u, double v, Vec& fuu, Vec& fuv, Vec& fvv) {
        fuu = v3(-2 * u, -2 * v, 2);
        fuv = v3(2 * v, -2 * u, 0);
        fvv = v3(2 * u, 2 * v, -2);
    };
    return c;
}

// One half (sign = +-1) of Scherk's singly periodic surface
// sin(x3) = sinh(x1) sinh(x2), written as the graph
//   x2 = asinh(sin z / sinh x),   x = sign * exp(-t),
// so that the wings hugging the plane {x1 = 0} get uniform parameter
// resolution. Domain: t in [-ln(X), T], z in [-Z, Z].
SurfaceChart scherk_half_chart(int sign, double X, double T, double Z) {
    SurfaceChart c;
    c.u0 = -std::log(X); c.u1 = T;
    c.v0 = -Z; c.v1 = Z;
    c.ambient_dim = 3;
    c.derivative_order = 2;
    c.label = sign > 0 ? "scherk+" : "scherk-";

    auto ev = [sign](double t, double z) {
        const double x = sign * std::exp(-t);
        const double s = std::sin(z) / std::sinh(x);
        return v3(x, std::asinh(s), z);
    };
    c.eval = ev;

    // s(t,z) = sin z / sinh(x(t)),  x_t = -x, y = asinh(s).
    struct Locals {
        double x, s, st, sz, stt, stz, szz;
    };
    auto locals = [sign](double t, double z) {
        Locals L;
        L.x = sign * std::exp(-t);
        const double w = std::sin(z), cz = std::cos(z);
        const double csch = 1.0 / std::sinh(L.x);
        const double coth = std::cosh(L.x) * csch;
        L.s = w * csch;
        const double sx = -L.s * coth;
        L.st = -L.x * sx; // = x * s * coth
        L.sz = cz * csch;
        L.stz = L.x * cz * csch * coth;
        // d/dt (x s coth) = -x d/dx (x s coth)
        //   d/dx (x s coth) = s coth + x (sx coth - s csch^2)
        L.stt = -L.x * (L.s * coth + L.x * (sx * coth - L.s * csch * csch));
        L.szz = -L.s;
        return L;
    };

    c.d1 = [locals](double t, double z, Vec& fu, Vec& fv) {
        const Locals L = locals(t, z);
        const double w = std::sqrt(1 + L.s * L.s);
        fu = v3(-L.x, L.st / w, 0);
        fv = v3(0, L.sz / w, 1);
    };
    c.d2 = [locals](double t, double z, Vec& fuu, Vec& fuv, Vec& fvv) {
        const Locals L = locals(t, z);
        const double q = 1 + L.s * L.s, w = std::sqrt(q);
        auto ypp = [&](double sab, double sa, double sb) {
            return sab / w - L.s * sa * sb / (q * w);
        };
        fuu = v3(L.x, ypp(L.stt, L.st, L.st), 0);
        fuv = v3(0, ypp(L.stz, L.st, L.sz), 0);
        fvv = v3(0, ypp(L.szz, L.sz, L.sz), 0);
    };
    c.sides = {SideKind::Cutoff, SideKind::Cutoff, SideKind::Cutoff,
               SideKind::Cutoff};
    return c;
}

SurfaceChart torus4_chart(double R, double r) {
    SurfaceChart c;
    c.u0 = 0; c.u1 = 2 * kPi; c.v0 = 0; c.v1 = 2 * kPi;
    c.ambient_dim = 4;
    c.derivative_order = 2;
    c.label = "torus";
    c.sides = {SideKind::Periodic, SideKind::Periodic, SideKind::Periodic,
               SideKind::Periodic};
    auto v4 = [](double a, double b, double cc, double d) {
        Vec v(4);
        v << a, b, cc, d;
        return v;
    };
    c.eval = [=](double u, double v) {
        return v4(R * std::cos(u), R * std::sin(u), r * std::cos(v), r * std::sin(v));
    };
    c.d1 = [=](double u, double v, Vec& fu, Vec& fv) {
        fu = v4(-R * std::sin(u), R * std::cos(u), 0, 0);
        fv = v4(0, 0, -r * std::sin(v), r * std::cos(v));
    };
    c.d2 = [=](double u, double v, Vec& fuu, Vec& fuv, Vec& fvv) {
        fuu = v4(-R * std::cos(u), -R * std::sin(u), 0, 0);
        fuv = v4(0, 0, 0, 0);
        fvv = v4(0, 0, -r * std::cos(v), -r * std::sin(v));
    };
    return c;
}

} // namespace

SurfaceChart make_graph_chart(
    double L, std::function<double(double, double)> phi,
    std::function<void(double, double, double&, double&)> dphi,
    std::function<void(double, double, double&, double&, double&)> d2phi) {
    SurfaceChart c;
    c.u0 = -L; c.u1 = L; c.v0 = -L; c.v1 = L;
    c.ambient_dim = 3;
    c.derivative_order = 2;
    c.label = "graph";
    c.eval = [phi](double u, double v) { return v3(u, v, phi(u, v)); };
    c.d1 = [dphi](double u, double v, Vec& fu, Vec& fv) {
        double pu, pv;
        dphi(u, v, pu, pv);
        fu = v3(1, 0, pu);
        fv = v3(0, 1, pv);
    };
    c.d2 = [d2phi](double u, double v, Vec& fuu, Vec& fuv, Vec& fvv) {
        double puu, puv, pvv;
        d2phi(u, v, puu, puv, pvv);
        fuu = v3(0, 0, puu);
        fuv = v3(0, 0, puv);
        fvv = v3(0, 0, pvv);
    };
    return c;
}

std::vector<std::string> catalog_names() {
    return {"plane", "sphere", "catenoid", "enneper", "scherk", "graph", "torus"};
}

CatalogSurface make_surface(const std::string& name, double extent,
                            const SurfaceParams& p) {
    CatalogSurface s;
    s.name = name;
    if (name == "plane") {
        const double L = 1.3 * extent + 2;
        s.charts.push_back(plane_chart(L, p.plane_offset));
        s.reach = L;
        s.known_values = {{"theta_infinity", 1}, {"ends", 1}, {"willmore", 0},
                          {"total_curvature", 0}};
        const double d = p.plane_offset;
        s.implicit = [d](const Vec& x) { return x[2] - d; };
    } else if (name == "sphere") {
        s.charts.push_back(sphere_chart(p.radius));
        s.reach = p.radius;
        const double R = p.radius;
        s.known_values = {{"willmore", 16 * kPi}, {"area", 4 * kPi * R * R},
                          {"total_curvature", 8 * kPi}, {"ends", 0}};
        s.implicit = [R](const Vec& x) { return x.norm() - R; };
    } else if (name == "catenoid") {
        const double a = p.neck;
        const double V = std::acosh(std::max(1.3 * extent / a, 2.0)) + 0.5;
        s.charts.push_back(catenoid_chart(a, V));
        s.reach = a * std::cosh(V);
        s.known_values = {{"theta_infinity", 2}, {"ends", 2}, {"willmore", 0},
                          {"total_curvature", 8 * kPi}};
        s.implicit = [a](const Vec& x) {
            return std::hypot(x[0], x[1]) - a * std::cosh(x[2] / a);
        };
    } else if (name == "enneper") {
        const double L = std::cbrt(3.5 * extent) + 1.5;
        s.charts.push_back(enneper_chart(L));
        s.reach = L * L * L / 3;
        s.known_values = {{"theta_infinity", 3}, {"ends", 1}, {"willmore", 0},
                          {"total_curvature", 8 * kPi}};
    } else if (name == "scherk") {
        if (std::abs(p.theta - kPi / 2) > 1e-12)
            throw InputError("scherk: only the classical orthogonal tower "
                             "(theta = pi/2) is parametrized");
        const double B = 1.3 * extent + 5;
        s.charts.push_back(scherk_half_chart(+1, B, B, B));
        s.charts.push_back(scherk_half_chart(-1, B, B, B));
        s.reach = B;
        s.known_values = {{"theta_infinity", 2}, {"ends", 1}, {"willmore", 0}};
        s.implicit = [](const Vec& x) {
            // not distance-like, but sign-correct; used for box meshing only
            return std::sinh(x[0]) * std::sinh(x[1]) - std::sin(x[2]);
        };
    } else if (name == "graph") {
        const double L = std::max(1.0, 1.3 * extent + 1);
        if (p.graph_kind == "flat") {
            s.charts.push_back(make_graph_chart(
                L, [](double, double) { return 0.0; },
                [](double, double, double& a, double& b) { a = b = 0; },
                [](double, double, double& a, double& b, double& c) { a = b = c = 0; }));
        } else if (p.graph_kind == "saddle") {
            s.charts.push_back(make_graph_chart(
                L, [](double u, double v) { return 0.1 * (u * u - v * v); },
                [](double u, double v, double& a, double& b) {
                    a = 0.2 * u;
                    b = -0.2 * v;
                },
                [](double, double, double& a, double& b, double& c) {
                    a = 0.2;
                    b = 0;
                    c = -0.2;
                }));
        } else if (p.graph_kind == "cone") {
            // smoothed cone 0.2*(sqrt(rho^2 + eps^2) - eps), through 0
            const double eps = 0.05;
            auto sfn = [eps](double u, double v) {
                return std::sqrt(u * u + v * v + eps * eps);
            };
            s.charts.push_back(make_graph_chart(
                L,
                [=](double u, double v) { return 0.2 * (sfn(u, v) - eps); },
                [=](double u, double v, double& a, double& b) {
                    const double sq = sfn(u, v);
                    a = 0.2 * u / sq;
                    b = 0.2 * v / sq;
                },
                [=](double u, double v, double& a, double& b, double& c) {
                    const double sq = sfn(u, v), s3 = sq * sq * sq;
                    a = 0.2 * (1 / sq - u * u / s3);
                    b = -0.2 * u * v / s3;
                    c = 0.2 * (1 / sq - v * v / s3);
                }));
        } else {
            throw InputError("unknown graph kind: " + p.graph_kind);
        }
        s.reach = L;
        s.known_values = {{"theta_infinity", 1}, {"ends", 1}};
    } else if (name == "torus") {
        s.charts.push_back(torus4_chart(p.torus_R, p.torus_r));
        s.reach = std::hypot(p.torus_R, p.torus_r);
        const double R = p.torus_R, r = p.torus_r;
        const double area = 4 * kPi * kPi * R * r;
        s.known_values = {{"area", area},
                          {"willmore", (1 / (R * R) + 1 / (r * r)) * area},
                          {"ends", 0}};
    } else {
        throw InputError("unknown catalog surface: " + name);
    }
    return s;
}

} // namespace wlab
