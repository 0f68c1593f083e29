#include "wlab/inversion.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

namespace wlab {

namespace {
constexpr double kPi = std::numbers::pi;

double min_base_distance(const SurfaceChart& c, const Vec& x0, int grid = 48) {
    double best = 1e300;
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid; ++j) {
            const double u = c.u0 + c.du() * i / grid;
            const double v = c.v0 + c.dv() * j / grid;
            best = std::min(best, (c.eval(u, v) - x0).norm());
        }
    return best;
}

} // namespace

SurfaceChart invert_chart(const SurfaceChart& source, const Vec& x0,
                          bool puncture_declared) {
    if (!puncture_declared && min_base_distance(source, x0) < 1e-9)
        throw BasePointOnSurface(
            "inversion base point lies on the surface; declare a puncture to "
            "proceed");

    SurfaceChart c;
    c.u0 = source.u0; c.u1 = source.u1;
    c.v0 = source.v0; c.v1 = source.v1;
    c.ambient_dim = source.ambient_dim;
    c.derivative_order = source.derivative_order;
    c.fd_step = source.fd_step;
    c.sides = source.sides;
    c.label = "inv(" + source.label + ")";

    // Save a copy of the source; the closures must own it.
    auto src = std::make_shared<SurfaceChart>(source);
    const Vec base = x0;

    c.eval = [src, base](double u, double v) -> Vec {
        const Vec F = src->eval(u, v) - base;
        return F / F.squaredNorm() + base;
    };
    c.d1 = [src, base](double u, double v, Vec& hu, Vec& hv) {
        const Jet j = jet(*src, u, v, 1);
        const Vec F = j.f - base;
        const double s = F.squaredNorm();
        hu = j.fu / s - 2 * F * F.dot(j.fu) / (s * s);
        hv = j.fv / s - 2 * F * F.dot(j.fv) / (s * s);
    };
    c.d2 = [src, base](double u, double v, Vec& huu, Vec& huv, Vec& hvv) {
        const Jet j = jet(*src, u, v, 2);
        const Vec F = j.f - base;
        const double s = F.squaredNorm(), s2 = s * s, s3 = s2 * s;
        auto second = [&](const Vec& Fi, const Vec& Fj, const Vec& Fij) -> Vec {
            return Fij / s -
                   2 * (Fi * F.dot(Fj) + Fj * F.dot(Fi) + F * Fi.dot(Fj) +
                        F * F.dot(Fij)) / s2 +
                   8 * F * F.dot(Fi) * F.dot(Fj) / s3;
        };
        huu = second(j.fu, j.fu, j.fuu);
        huv = second(j.fu, j.fv, j.fuv);
        hvv = second(j.fv, j.fv, j.fvv);
    };
    return c;
}

std::vector<SurfaceChart> invert(const std::vector<SurfaceChart>& sources,
                                 const Vec& x0, bool puncture_declared) {
    std::vector<SurfaceChart> out;
    out.reserve(sources.size());
    for (const auto& s : sources) out.push_back(invert_chart(s, x0, puncture_declared));
    return out;
}

Vec inverted_mean_curvature(const ChartFrame& fr, const Vec& x0) {
    const Vec F = fr.position - x0;
    const double s = F.squaredNorm();
    const Vec Fperp = normal_part(fr.tangent, F);
    const Vec& H = fr.mean_curvature;
    return s * H - 2 * H.dot(F) * F + 4 * Fperp - 8 * (Fperp.squaredNorm() / s) * F;
}

InversionPointData inversion_point(const SurfaceChart& source, const Vec& x0,
                                   double u, double v) {
    InversionPointData d;
    d.source = chart_frame(source, u, v, true);
    const SurfaceChart inv = invert_chart(source, x0, true);
    d.tilde = chart_frame(inv, u, v, true);
    d.F = d.source.position - x0;
    d.h_rel = d.tilde.position - x0;
    d.F_perp = normal_part(d.source.tangent, d.F);
    d.h_perp = normal_part(d.tilde.tangent, d.h_rel);
    d.H_tilde_closed = inverted_mean_curvature(d.source, x0);

    const double r = d.F.norm(), rt = d.h_rel.norm();
    const Vec pr = d.F_perp / r;          // grad^perp r
    const Vec prt = d.h_perp / rt;        // grad~^perp r~
    const Vec& H = d.source.mean_curvature;
    const Vec& Ht = d.tilde.mean_curvature;
    d.lhs_density = (Ht.squaredNorm() / 16 - (Ht / 4 + prt / rt).squaredNorm()) *
                    std::sqrt(d.tilde.det_g);
    d.rhs_density = -(H.squaredNorm() / 16 - (H / 4 + pr / r).squaredNorm()) *
                    std::sqrt(d.source.det_g);
    return d;
}

AntisymmetryLedger antisymmetry_check(const std::vector<SurfaceChart>& sources,
                                      const Vec& x0, int n_samples,
                                      unsigned long seed) {
    AntisymmetryLedger led;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.02, 0.98);
    for (size_t ci = 0; ci < sources.size(); ++ci) {
        const SurfaceChart& c = sources[ci];
        if (min_base_distance(c, x0) < 1e-9)
            throw BasePointOnSurface("antisymmetry_check: x0 on the surface");
        for (int i = 0; i < n_samples; ++i) {
            const double u = c.u0 + c.du() * uni(rng);
            const double v = c.v0 + c.dv() * uni(rng);
            const InversionPointData d = inversion_point(c, x0, u, v);
            AntisymmetryLedger::Row row;
            row.chart = int(ci);
            row.u = u;
            row.v = v;
            row.lhs = d.lhs_density;
            row.rhs = d.rhs_density;
            row.residual = d.lhs_density - d.rhs_density;
            const double scale =
                std::max({std::abs(d.lhs_density), std::abs(d.rhs_density),
                          1e-12 * std::sqrt(d.source.det_g)});
            row.rel_residual = std::abs(row.residual) / scale;
            led.max_rel_residual = std::max(led.max_rel_residual, row.rel_residual);
            led.mean_rel_residual += row.rel_residual;
            led.rows.push_back(row);
        }
    }
    if (!led.rows.empty()) led.mean_rel_residual /= double(led.rows.size());
    return led;
}

namespace {

// Integral over the inverted surface of the tilde-side density expression
// and of |H~|^2, with everything evaluated through the inverted chart.
QuadratureResult tilde_side_integrals(const std::vector<SurfaceChart>& tilde,
                                      const Vec& x0, const QuadOptions& opts) {
    IntegrandSet set{2, true, [x0](const SurfPoint& sp, double* out) {
                         const Vec rel = sp.frame.position - x0;
                         const double rt = rel.norm();
                         const Vec prt = perp_radial(sp.frame, x0);
                         const Vec& Ht = sp.frame.mean_curvature;
                         out[0] = Ht.squaredNorm() / 16 -
                                  (Ht / 4 + prt / rt).squaredNorm();
                         out[1] = Ht.squaredNorm();
                     }};
    QuadOptions o = opts;
    o.allow_truncation = true;
    return integrate_over_region(tilde, Region::everything(), set, o);
}

} // namespace

DensityFormulaReport density_formula_check(const ChartFactory& factory,
                                           double extent, const Vec& x0,
                                           const DensityOptions& opts) {
    DensityFormulaReport rep;
    const std::vector<SurfaceChart> charts = factory(extent);
    const std::vector<SurfaceChart> charts_half = factory(extent / 2);

    double min_dist = 1e300;
    for (const auto& c : charts) min_dist = std::min(min_dist, min_base_distance(c, x0));
    rep.source_through_base = min_dist < 1e-6;

    const auto tilde = invert(charts, x0, rep.source_through_base);
    const auto tilde_half = invert(charts_half, x0, rep.source_through_base);

    const QuadratureResult full = tilde_side_integrals(tilde, x0, opts.quad);
    const QuadratureResult half = tilde_side_integrals(tilde_half, x0, opts.quad);

    rep.lhs = full.value[0];
    rep.lhs_err = full.error_estimate[0] + std::abs(full.value[0] - half.value[0]);
    rep.willmore_tilde = full.value[1];
    rep.willmore_tilde_err =
        full.error_estimate[1] + std::abs(full.value[1] - half.value[1]);

    DensityOptions dopts = opts;
    const double r_max = extent / 1.4;
    DensityProfile prof = density_at_infinity(
        charts, x0, geometric_radii(r_max / 150, r_max, 12), dopts);
    rep.theta_infinity = prof.theta_infinity;
    rep.rhs = kPi * prof.theta_infinity;
    rep.rhs_err = kPi * prof.theta_infinity_uncertainty;
    if (rep.source_through_base) {
        const PointDensity pd =
            density_at_point(charts, x0, 0.02 * extent, opts.quad);
        rep.theta_at_base = pd.theta;
        rep.rhs -= kPi * pd.theta;
        rep.rhs_err += kPi * pd.uncertainty;
    }
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

DensityIdentityReport density_identity_check(
    const std::vector<SurfaceChart>& sources, const Vec& x0,
    const DensityOptions& opts) {
    DensityIdentityReport rep;
    bool has_cutoff = false;
    for (const auto& c : sources)
        for (const auto s : c.sides)
            if (s == SideKind::Cutoff) has_cutoff = true;
    if (!has_cutoff) {
        // compact surface: Theta(inf) = 0 and the >= 1 claim has no content
        rep.compact_source = true;
        return rep;
    }

    // Source reach bounds the usable radii on both sides.
    double reach = 0;
    for (const auto& c : sources)
        for (int i = 0; i <= 32; ++i) {
            reach = std::max(
                reach, (c.eval(c.u0 + c.du() * i / 32, c.v0) - x0).norm());
            reach = std::max(
                reach, (c.eval(c.u0 + c.du() * i / 32, c.v1) - x0).norm());
        }

    const double r_max = reach / 1.4;
    DensityProfile prof = density_at_infinity(
        sources, x0, geometric_radii(r_max / 150, r_max, 12), opts);
    rep.theta_infinity = prof.theta_infinity;
    rep.theta_infinity_uncertainty = prof.theta_infinity_uncertainty;

    const auto tilde = invert(sources, x0, false);
    const double sigma0 = 4 / reach; // stays inside the inverted cutoff
    const PointDensity pd = density_at_point(tilde, x0, sigma0, opts.quad);
    rep.theta_tilde_at_base = pd.theta;
    rep.theta_tilde_uncertainty = pd.uncertainty;
    rep.residual = rep.theta_tilde_at_base - rep.theta_infinity;
    rep.at_least_one =
        rep.theta_tilde_at_base >=
        1 - 0.02 - pd.uncertainty; // multiplicity-one floor, 2% tolerance
    return rep;
}

PuncturedIdentityReport punctured_density_identity_check(
    const std::vector<SurfaceChart>& sources, const DensityOptions& opts) {
    PuncturedIdentityReport rep;
    const Vec origin = Vec::Zero(sources.front().ambient_dim);

    // How close the charts approach the puncture bounds the radii usable on
    // the inverted side.
    double dmin = 1e300;
    for (const auto& c : sources) dmin = std::min(dmin, min_base_distance(c, origin, 96));
    if (dmin <= 0) dmin = 1e-12;

    const double sigma0 = std::max(8 * dmin, 1e-4);
    const PointDensity pd = density_at_point(sources, origin, sigma0, opts.quad);
    rep.theta_source_at_puncture = pd.theta;
    rep.theta_source_uncertainty = pd.uncertainty;

    const auto tilde = invert(sources, origin, true);
    const double r_max = 1 / (2 * sigma0) * 4; // 2/sigma0, inside 1/dmin
    DensityOptions dopts = opts;
    DensityProfile prof = density_at_infinity(
        tilde, origin, geometric_radii(r_max / 150, r_max, 12), dopts);
    rep.theta_tilde_infinity = prof.theta_infinity;
    rep.theta_tilde_uncertainty = prof.theta_infinity_uncertainty;
    rep.residual = rep.theta_source_at_puncture - rep.theta_tilde_infinity;
    return rep;
}

WillmoreBoundReport inverted_willmore_bound_check(
    const std::vector<SurfaceChart>& sources, const Vec& x0,
    const QuadOptions& opts) {
    WillmoreBoundReport rep;
    QuadOptions o = opts;
    o.allow_truncation = true;

    IntegrandSet src_set{2, true, [x0](const SurfPoint& sp, double* out) {
                             const Vec pr = perp_radial(sp.frame, x0);
                             const double r = (sp.frame.position - x0).norm();
                             out[0] = sp.frame.mean_curvature.squaredNorm();
                             out[1] = r > 0 ? pr.squaredNorm() / (r * r) : 0;
                         }};
    const QuadratureResult src =
        integrate_over_region(sources, Region::everything(), src_set, o);

    const auto tilde = invert(sources, x0, false);
    const QuadratureResult til = willmore_energy(tilde, nullptr, o);

    rep.lhs = til.scalar();
    rep.rhs = 320 * (src.value[0] + src.value[1]);
    rep.slack = rep.rhs - rep.lhs;
    rep.combined_err =
        til.err() + 320 * (src.error_estimate[0] + src.error_estimate[1]);
    return rep;
}

} // namespace wlab
