#include "wlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace wlab {

namespace {

constexpr double kGaussNode = 0.5773502691896257; // 1/sqrt(3)

struct Rect {
    double u0, u1, v0, v1;
    double uc() const { return 0.5 * (u0 + u1); }
    double vc() const { return 0.5 * (v0 + v1); }
    double area() const { return (u1 - u0) * (v1 - v0); }
};

struct Probe {
    Vec pos[5]; // 4 corners + center
    double diam = 0;
};

struct Engine {
    const SurfaceChart& chart;
    const Region& region;
    const IntegrandSet& set;
    QuadOptions opts;
    int chart_index;

    Vec value, error, budget;
    long cells = 0;
    double max_spacing = 0;
    std::vector<double> tmp;

    Engine(const SurfaceChart& c, const Region& r, const IntegrandSet& s,
           const QuadOptions& o, int ci)
        : chart(c), region(r), set(s), opts(o), chart_index(ci),
          value(Vec::Zero(s.n_outputs)), error(Vec::Zero(s.n_outputs)),
          budget(Vec::Zero(s.n_outputs)), tmp(s.n_outputs) {}

    // Contribution of one quadrature node at (u,v) with parameter weight w.
    void node(double u, double v, double w, Vec& acc, double* max_density) {
        const ChartFrame frame = chart_frame(chart, u, v, set.need_curvature);
        const SurfPoint sp{frame, u, v, chart_index};
        set.fn(sp, tmp.data());
        const double dmu = w * std::sqrt(frame.det_g);
        for (int i = 0; i < set.n_outputs; ++i) {
            acc[i] += dmu * tmp[i];
            if (max_density)
                max_density[i] = std::max(max_density[i],
                                          std::abs(tmp[i]) * std::sqrt(frame.det_g));
        }
        if (opts.collect) opts.collect(sp, dmu);
    }

    Vec gauss(const Rect& r, bool collect_ok, double* max_density = nullptr) {
        Vec acc = Vec::Zero(set.n_outputs);
        const double hu = 0.5 * (r.u1 - r.u0), hv = 0.5 * (r.v1 - r.v0);
        const double w = hu * hv; // each of the 4 nodes has reference weight 1
        // Trial evaluations (parent estimates) must not emit sample points.
        auto saved = opts.collect;
        if (!collect_ok) opts.collect = nullptr;
        for (int a = -1; a <= 1; a += 2)
            for (int b = -1; b <= 1; b += 2)
                node(r.uc() + a * kGaussNode * hu, r.vc() + b * kGaussNode * hv, w,
                     acc, max_density);
        if (!collect_ok) opts.collect = saved;
        return acc;
    }

    Probe probe(const Rect& r) {
        Probe p;
        p.pos[0] = chart.eval(r.u0, r.v0);
        p.pos[1] = chart.eval(r.u1, r.v0);
        p.pos[2] = chart.eval(r.u0, r.v1);
        p.pos[3] = chart.eval(r.u1, r.v1);
        p.pos[4] = chart.eval(r.uc(), r.vc());
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                p.diam = std::max(p.diam, (p.pos[i] - p.pos[j]).norm());
        return p;
    }

    // -1 outside, +1 inside, 0 straddling. Also reports the finest scale
    // among cuts whose boundary may pass through the cell.
    int classify(const Probe& p, double& straddle_scale) {
        int state = 1;
        straddle_scale = region.scale;
        for (const auto& cut : region.cuts) {
            double lo = 1e300, hi = -1e300;
            for (int i = 0; i < 5; ++i) {
                const double f = cut(p.pos[i]);
                lo = std::min(lo, f);
                hi = std::max(hi, f);
            }
            if (lo > 1.2 * p.diam) return -1;
            if (hi >= -1.0 * p.diam) state = 0;
        }
        return state;
    }

    // Affine least-squares fit of cut values at the 5 probes in normalized
    // cell coordinates (corners at (+-1,+-1), center at 0).
    struct AffineCut {
        double a, b, c, residual;
    };
    AffineCut fit_cut(const Probe& p,
                      const std::function<double(const Vec&)>& cut) {
        static const double xi[5] = {-1, 1, -1, 1, 0};
        static const double eta[5] = {-1, -1, 1, 1, 0};
        double f[5];
        for (int i = 0; i < 5; ++i) f[i] = cut(p.pos[i]);
        AffineCut ac{};
        for (int i = 0; i < 5; ++i) {
            ac.a += f[i] / 5;
            ac.b += f[i] * xi[i] / 4;
            ac.c += f[i] * eta[i] / 4;
        }
        for (int i = 0; i < 5; ++i)
            ac.residual = std::max(
                ac.residual, std::abs(f[i] - ac.a - ac.b * xi[i] - ac.c * eta[i]));
        return ac;
    }

    void clip(std::vector<std::array<double, 2>>& poly, const AffineCut& ac) {
        std::vector<std::array<double, 2>> out;
        const size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) {
            const auto& P = poly[i];
            const auto& Q = poly[(i + 1) % n];
            const double fp = ac.a + ac.b * P[0] + ac.c * P[1];
            const double fq = ac.a + ac.b * Q[0] + ac.c * Q[1];
            if (fp <= 0) out.push_back(P);
            if ((fp <= 0) != (fq <= 0)) {
                const double t = fp / (fp - fq);
                out.push_back({P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])});
            }
        }
        poly.swap(out);
    }

    void cut_cell(const Rect& r, const Probe& p) {
        ++cells;
        std::vector<std::array<double, 2>> poly = {
            {-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
        double err_param_area = 0; // in normalized units (full cell = 4)
        for (const auto& cut : region.cuts) {
            double hi = -1e300;
            for (int i = 0; i < 5; ++i) hi = std::max(hi, cut(p.pos[i]));
            if (hi < -0.5 * p.diam) continue; // boundary well clear of the cell
            AffineCut ac = fit_cut(p, cut);
            const double grad = std::max(std::hypot(ac.b, ac.c), 1e-14);
            // band of uncertainty around the fitted line, clipped chord <= 2*sqrt2
            err_param_area += 2.83 * ac.residual / grad;
            clip(poly, ac);
            if (poly.empty()) break;
        }
        const double hu = 0.5 * (r.u1 - r.u0), hv = 0.5 * (r.v1 - r.v0);
        const double cell_scale = hu * hv; // normalized area 4 -> param area 4*hu*hv
        std::vector<double> max_density(set.n_outputs, 0);
        if (!poly.empty() && poly.size() >= 3) {
            // fan triangulation about the polygon mean, degree-2 midpoint rule
            std::array<double, 2> c{0, 0};
            for (auto& q : poly) { c[0] += q[0]; c[1] += q[1]; }
            c[0] /= double(poly.size());
            c[1] /= double(poly.size());
            Vec acc = Vec::Zero(set.n_outputs);
            for (size_t i = 0; i < poly.size(); ++i) {
                const auto& A = poly[i];
                const auto& B = poly[(i + 1) % poly.size()];
                const double tri2 = (A[0] - c[0]) * (B[1] - c[1]) -
                                    (B[0] - c[0]) * (A[1] - c[1]);
                const double tri_area = 0.5 * std::abs(tri2) * cell_scale;
                if (tri_area <= 0) continue;
                const std::array<double, 2> m01{0.5 * (A[0] + c[0]), 0.5 * (A[1] + c[1])};
                const std::array<double, 2> m02{0.5 * (B[0] + c[0]), 0.5 * (B[1] + c[1])};
                const std::array<double, 2> m12{0.5 * (A[0] + B[0]), 0.5 * (A[1] + B[1])};
                for (const auto& m : {m01, m02, m12})
                    node(r.uc() + m[0] * hu, r.vc() + m[1] * hv, tri_area / 3, acc,
                         max_density.data());
            }
            value += acc;
        } else if (!region.cuts.empty()) {
            // fitted region missed the cell entirely; keep the uncertainty band
            try {
                const ChartFrame frame =
                    chart_frame(chart, r.uc(), r.vc(), set.need_curvature);
                const SurfPoint sp{frame, r.uc(), r.vc(), chart_index};
                set.fn(sp, tmp.data());
                for (int i = 0; i < set.n_outputs; ++i)
                    max_density[i] = std::abs(tmp[i]) * std::sqrt(frame.det_g);
            } catch (const DegenerateImmersion&) {
            }
        }
        for (int i = 0; i < set.n_outputs; ++i)
            error[i] += err_param_area * cell_scale * max_density[i];
        if (p.diam > 0) max_spacing = std::max(max_spacing, p.diam);
    }

    // parent_est: the 2x2 Gauss estimate for this rect, already computed by
    // the caller (empty at the root).
    void process(const Rect& r, int depth, const Vec* parent_est) {
        const Probe p = probe(r);
        double straddle_scale = 0;
        const int cls = classify(p, straddle_scale);
        if (cls < 0) return;

        const bool straddling = cls == 0 && !region.cuts.empty();
        if (straddling) {
            double stop = opts.edge_tol * straddle_scale;
            if (opts.target_spacing > 0) stop = std::min(stop, opts.target_spacing);
            if (p.diam > stop && depth < opts.max_depth) {
                split(r, depth);
            } else {
                cut_cell(r, p);
            }
            return;
        }

        ++cells;
        Vec est = parent_est ? *parent_est : gauss(r, false);
        const Rect q[4] = {{r.u0, r.uc(), r.v0, r.vc()},
                           {r.uc(), r.u1, r.v0, r.vc()},
                           {r.u0, r.uc(), r.vc(), r.v1},
                           {r.uc(), r.u1, r.vc(), r.v1}};
        Vec fine = Vec::Zero(set.n_outputs);
        Vec child[4];
        for (int i = 0; i < 4; ++i) {
            child[i] = gauss(q[i], false);
            fine += child[i];
        }
        const double frac =
            r.area() / (chart.du() * chart.dv());
        bool ok = depth >= opts.max_depth;
        if (!ok) {
            ok = true;
            for (int i = 0; i < set.n_outputs; ++i)
                if (std::abs(est[i] - fine[i]) > budget[i] * frac) ok = false;
            if (opts.target_spacing > 0 && p.diam > opts.target_spacing) ok = false;
        }
        if (ok) {
            const double relax = depth >= opts.max_depth ? 1.0 : 1.0 / 15.0;
            for (int i = 0; i < set.n_outputs; ++i)
                error[i] += std::abs(est[i] - fine[i]) * relax;
            if (opts.collect) {
                for (int i = 0; i < 4; ++i) gauss(q[i], true);
            }
            value += fine;
            max_spacing = std::max(max_spacing, p.diam);
            return;
        }
        for (int i = 0; i < 4; ++i) process(q[i], depth + 1, &child[i]);
    }

    void split(const Rect& r, int depth) {
        const Rect q[4] = {{r.u0, r.uc(), r.v0, r.vc()},
                           {r.uc(), r.u1, r.v0, r.vc()},
                           {r.u0, r.uc(), r.vc(), r.v1},
                           {r.uc(), r.u1, r.vc(), r.v1}};
        for (int i = 0; i < 4; ++i) process(q[i], depth + 1, nullptr);
    }

    // Rough magnitude pass over the root grid to set per-component budgets.
    void run() {
        const double aspect = chart.du() / chart.dv();
        int nu = opts.initial_grid, nv = opts.initial_grid;
        if (aspect > 1)
            nv = std::max(2, int(std::lround(nu / aspect)));
        else
            nu = std::max(2, int(std::lround(nv * aspect)));
        std::vector<Rect> roots;
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j)
                roots.push_back({chart.u0 + chart.du() * i / nu,
                                 chart.u0 + chart.du() * (i + 1) / nu,
                                 chart.v0 + chart.dv() * j / nv,
                                 chart.v0 + chart.dv() * (j + 1) / nv});

        Vec rough = Vec::Zero(set.n_outputs);
        for (const auto& r : roots) {
            const Probe p = probe(r);
            double s;
            if (classify(p, s) >= 0) rough += gauss(r, false).cwiseAbs();
        }
        const double common = rough.cwiseAbs().maxCoeff();
        for (int i = 0; i < set.n_outputs; ++i)
            budget[i] = std::max({opts.rel_tol * std::abs(rough[i]),
                                  1e-3 * opts.rel_tol * common, opts.abs_tol});
        for (const auto& r : roots) process(r, 0, nullptr);
    }
};

} // namespace

Region Region::ball(const BallRegion& b) {
    Region r;
    const Vec c = b.center;
    const double rad = b.radius;
    r.cuts.push_back([c, rad](const Vec& p) { return (p - c).norm() - rad; });
    r.scale = rad;
    return r;
}

Region Region::annulus(const Vec& center, double r_inner, double r_outer) {
    Region r = ball({center, r_outer});
    const Vec c = center;
    r.cuts.push_back([c, r_inner](const Vec& p) { return r_inner - (p - c).norm(); });
    r.scale = r_inner > 0 ? std::min(r_outer, r_inner) : r_outer;
    return r;
}

Region Region::band(const Vec& y, const Mat& normals, double half_width) {
    Region r;
    const Vec yy = y;
    const Mat N = normals;
    r.cuts.push_back([yy, N, half_width](const Vec& p) {
        return (N * (p - yy)).norm() - half_width;
    });
    r.scale = half_width;
    return r;
}

Region Region::intersect(const Region& other) const {
    Region r = *this;
    for (const auto& c : other.cuts) r.cuts.push_back(c);
    if (r.scale == 0 || (other.scale > 0 && other.scale < r.scale))
        r.scale = other.scale;
    return r;
}

QuadratureResult integrate_over_region(const std::vector<SurfaceChart>& charts,
                                       const Region& region,
                                       const IntegrandSet& set,
                                       const QuadOptions& opts) {
    QuadratureResult out;
    out.value = Vec::Zero(set.n_outputs);
    out.error_estimate = Vec::Zero(set.n_outputs);
    out.boundary_clearance = 1e300;

    // Cutoff soundness: a cutoff side whose image enters the region means the
    // surface leaves the region through the truncation.
    for (const auto& chart : charts) {
        for (int side = 0; side < 4; ++side) {
            if (chart.sides[side] != SideKind::Cutoff) continue;
            for (int i = 0; i <= 64; ++i) {
                const double t = double(i) / 64;
                double u, v;
                switch (side) {
                    case UMin: u = chart.u0; v = chart.v0 + t * chart.dv(); break;
                    case UMax: u = chart.u1; v = chart.v0 + t * chart.dv(); break;
                    case VMin: u = chart.u0 + t * chart.du(); v = chart.v0; break;
                    default:   u = chart.u0 + t * chart.du(); v = chart.v1; break;
                }
                const Vec p = chart.eval(u, v);
                double worst = -1e300;
                for (const auto& cut : region.cuts)
                    worst = std::max(worst, cut(p));
                if (region.cuts.empty()) worst = -1e300; // whole-surface region
                if (worst < 0) out.truncated = true;
                out.boundary_clearance = std::min(out.boundary_clearance, worst);
            }
        }
    }
    if (out.truncated && !opts.allow_truncation)
        throw TruncationUnsound(
            "chart cutoff boundary intersects the integration region; pass "
            "allow_truncation to accept the truncation error");

    for (size_t ci = 0; ci < charts.size(); ++ci) {
        Engine eng(charts[ci], region, set, opts, int(ci));
        eng.run();
        out.value += eng.value;
        out.error_estimate += eng.error;
        out.cells_used += eng.cells;
        out.max_spacing = std::max(out.max_spacing, eng.max_spacing);
    }
    return out;
}

QuadratureResult integrate_over_ball(const std::vector<SurfaceChart>& charts,
                                     const BallRegion& ball,
                                     const IntegrandSet& set,
                                     const QuadOptions& opts) {
    return integrate_over_region(charts, Region::ball(ball), set, opts);
}

QuadratureResult ball_area(const std::vector<SurfaceChart>& charts,
                           const BallRegion& ball, const QuadOptions& opts) {
    IntegrandSet one{1, false, [](const SurfPoint&, double* out) { out[0] = 1; }};
    return integrate_over_ball(charts, ball, one, opts);
}

QuadratureResult willmore_energy(const std::vector<SurfaceChart>& charts,
                                 const BallRegion* ball, const QuadOptions& opts) {
    IntegrandSet set{1, true, [](const SurfPoint& sp, double* out) {
                         out[0] = sp.frame.mean_curvature.squaredNorm();
                     }};
    if (ball) return integrate_over_ball(charts, *ball, set, opts);
    // A whole-cutoff energy is a truncated statement by nature; the result
    // carries the truncated flag.
    QuadOptions o = opts;
    o.allow_truncation = true;
    return integrate_over_region(charts, Region::everything(), set, o);
}

QuadratureResult total_curvature(const std::vector<SurfaceChart>& charts,
                                 const BallRegion* ball, const QuadOptions& opts) {
    IntegrandSet set{1, true, [](const SurfPoint& sp, double* out) {
                         out[0] = sp.frame.norm2_A;
                     }};
    if (ball) return integrate_over_ball(charts, *ball, set, opts);
    QuadOptions o = opts;
    o.allow_truncation = true;
    return integrate_over_region(charts, Region::everything(), set, o);
}

} // namespace wlab
