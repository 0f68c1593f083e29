#include "wlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wlab/parallel.hpp"

namespace wlab {

namespace {
constexpr double kPi = std::numbers::pi;

struct Fit {
    double limit = 0;
    double rms = 0;
};

// Least squares over the given basis columns; returns the constant term and
// the RMS residual.
Fit fit_limit(const std::vector<double>& r, const std::vector<double>& th,
              bool with_log) {
    const int n = int(r.size());
    const int m = with_log ? 3 : 2;
    Mat A(n, m);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1;
        A(i, 1) = 1 / r[i];
        if (with_log) A(i, 2) = std::log(r[i]) / (r[i] * r[i]);
        b[i] = th[i];
    }
    Vec sol = A.colPivHouseholderQr().solve(b);
    Fit f;
    f.limit = sol[0];
    f.rms = std::sqrt((A * sol - b).squaredNorm() / n);
    return f;
}

} // namespace

double density_ratio(const std::vector<SurfaceChart>& charts, const Vec& x,
                     double r, const QuadOptions& opts) {
    return ball_area(charts, {x, r}, opts).scalar() / (kPi * r * r);
}

std::vector<double> geometric_radii(double r_min, double r_max, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = r_min * std::pow(r_max / r_min, double(i) / (n - 1));
    return out;
}

DensityProfile density_at_infinity(const std::vector<SurfaceChart>& charts,
                                   const Vec& x, std::vector<double> radii,
                                   const DensityOptions& opts) {
    std::sort(radii.begin(), radii.end());
    if (radii.size() < 6 || radii.back() < 100 * radii.front())
        throw InputError("density_at_infinity needs >= 6 radii spanning >= 2 decades");

    DensityProfile prof;
    prof.center = x;
    prof.radii = radii;
    prof.theta.resize(radii.size());
    prof.theta_err.resize(radii.size());

    std::vector<QuadratureResult> results(radii.size());
    parallel_for(int(radii.size()), opts.threads, [&](int i) {
        results[i] = ball_area(charts, {x, radii[i]}, opts.quad);
    });
    for (size_t i = 0; i < radii.size(); ++i) {
        const double denom = kPi * radii[i] * radii[i];
        prof.theta[i] = results[i].scalar() / denom;
        prof.theta_err[i] = results[i].err() / denom;
        prof.truncated |= results[i].truncated;
    }
    prof.cutoff_clearance = results.back().boundary_clearance;

    // Fit both extrapolation models over the largest decade of radii.
    std::vector<double> rd, td;
    for (size_t i = 0; i < radii.size(); ++i)
        if (radii[i] >= radii.back() / 10) {
            rd.push_back(radii[i]);
            td.push_back(prof.theta[i]);
        }
    if (rd.size() < 4) throw InputError("largest decade holds fewer than 4 radii");
    const Fit fa = fit_limit(rd, td, false);
    const Fit fb = fit_limit(rd, td, true);
    prof.fit_limit_inverse = fa.limit;
    prof.fit_limit_log = fb.limit;
    prof.theta_infinity = fb.limit;
    const double gap = std::abs(fa.limit - fb.limit);
    prof.theta_infinity_uncertainty = std::max({fa.rms, fb.rms, gap});
    const double floor = std::max({fa.rms, fb.rms, 1e-7 * std::abs(fb.limit), 1e-12});
    if (gap > 5 * floor)
        throw NonConvergent("density extrapolation models disagree: " +
                            std::to_string(fa.limit) + " vs " +
                            std::to_string(fb.limit));

    prof.theta_star_lower = *std::min_element(td.begin(), td.end());
    prof.theta_star_upper = *std::max_element(td.begin(), td.end());

    if (opts.check_base_independence) {
        // The limit cannot depend on the base point; probe with a second one.
        Vec x2 = x;
        const double d = 0.02 * radii.back();
        x2[0] += d;
        const double r = radii.back();
        const double th2 = density_ratio(charts, x2, r, opts.quad);
        prof.base_point_delta = std::abs(th2 - prof.theta.back());
        const double allowance =
            6 * (d / r) * std::max(1.0, prof.theta.back()) + 10 * prof.theta_err.back();
        prof.base_point_independent = prof.base_point_delta <= allowance;
    }
    return prof;
}

PointDensity density_at_point(const std::vector<SurfaceChart>& charts,
                              const Vec& x, double sigma0,
                              const QuadOptions& opts) {
    PointDensity pd;
    pd.sigmas = {sigma0, sigma0 / 2, sigma0 / 4};
    pd.values.resize(3);
    for (int i = 0; i < 3; ++i)
        pd.values[i] = density_ratio(charts, x, pd.sigmas[i], opts);
    // linear model theta(sigma) = a + b sigma
    Mat A(3, 2);
    Vec b(3);
    for (int i = 0; i < 3; ++i) {
        A(i, 0) = 1;
        A(i, 1) = pd.sigmas[i];
        b[i] = pd.values[i];
    }
    Vec sol = A.colPivHouseholderQr().solve(b);
    pd.theta = sol[0];
    pd.uncertainty = std::max((A * sol - b).cwiseAbs().maxCoeff(),
                              std::abs(pd.values[2] - pd.theta));
    return pd;
}

RadialDeviationReport radial_deviation_energy(
    const std::vector<SurfaceChart>& charts, const Vec& x, double rho,
    double theta_star_lower, const QuadOptions& opts) {
    RadialDeviationReport rep;
    rep.theta_star = theta_star_lower;

    IntegrandSet set{2, true, [&x](const SurfPoint& sp, double* out) {
                         const Vec pr = perp_radial(sp.frame, x);
                         const double r = (sp.frame.position - x).norm();
                         out[0] = r > 0 ? pr.squaredNorm() / (r * r) : 0;
                         out[1] = sp.frame.mean_curvature.squaredNorm();
                     }};
    QuadOptions full = opts;
    full.allow_truncation = true;
    const QuadratureResult whole =
        integrate_over_region(charts, Region::everything(), set, full);
    rep.integral = whole.value[0];
    rep.integral_err = whole.error_estimate[0];
    rep.willmore = whole.value[1];
    rep.truncated = whole.truncated;

    const QuadratureResult ball = ball_area(charts, {x, rho}, opts);
    rep.density_at_rho = ball.scalar() / (kPi * rho * rho);
    rep.slack = 9 * theta_star_lower + 59.0 / (16 * kPi) * rep.willmore -
                rep.density_at_rho;
    rep.combined_err = ball.err() / (kPi * rho * rho) +
                       59.0 / (16 * kPi) * whole.error_estimate[1];
    return rep;
}

} // namespace wlab
