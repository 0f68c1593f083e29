#pragma once

#include <vector>

#include "wlab/quadrature.hpp"

namespace wlab {

// Table of density ratios Theta(x, r) with the extrapolated density at
// infinity. theta_star_lower/upper are the running inf/sup over the largest
// sampled decade of radii: cutoff surrogates for liminf/limsup.
struct DensityProfile {
    Vec center;
    std::vector<double> radii;
    std::vector<double> theta;
    std::vector<double> theta_err;

    double theta_infinity = 0;
    double theta_infinity_uncertainty = 0;
    double fit_limit_inverse = 0;  // model a + b/r
    double fit_limit_log = 0;      // model a + b/r + c log(r)/r^2
    double theta_star_lower = 0;
    double theta_star_upper = 0;

    bool truncated = false;
    double cutoff_clearance = 0;       // boundary clearance at the largest ball
    bool base_point_independent = true;
    double base_point_delta = 0;
};

struct DensityOptions {
    QuadOptions quad;
    int threads = 0;
    bool check_base_independence = true;
};

// Theta(x, r) = mu(B_r(x)) / (pi r^2).
double density_ratio(const std::vector<SurfaceChart>& charts, const Vec& x,
                     double r, const QuadOptions& opts = {});

std::vector<double> geometric_radii(double r_min, double r_max, int n);

// Extrapolated density at infinity over an increasing radii schedule
// (needs >= 6 radii spanning >= 2 decades). Throws NonConvergent when the two
// fit models disagree by more than 5x their internal residuals.
DensityProfile density_at_infinity(const std::vector<SurfaceChart>& charts,
                                   const Vec& x, std::vector<double> radii,
                                   const DensityOptions& opts = {});

// Density at a point: Theta(x, sigma) extrapolated sigma -> 0 with the linear
// model Theta = a + b sigma over {sigma0, sigma0/2, sigma0/4}.
struct PointDensity {
    double theta = 0;
    double uncertainty = 0;
    std::vector<double> sigmas, values;
};
PointDensity density_at_point(const std::vector<SurfaceChart>& charts,
                              const Vec& x, double sigma0,
                              const QuadOptions& opts = {});

// Integral of |nabla^perp r / r|^2 over the whole cutoff plus the slack of
// the every-radius bound mu(B_rho)/(pi rho^2) <= 9 Theta_* + (59/16pi) W.
struct RadialDeviationReport {
    double integral = 0;
    double integral_err = 0;
    double willmore = 0;
    double density_at_rho = 0;
    double theta_star = 0;
    double slack = 0;
    double combined_err = 0;
    bool truncated = false;
};
RadialDeviationReport radial_deviation_energy(
    const std::vector<SurfaceChart>& charts, const Vec& x, double rho,
    double theta_star_lower, const QuadOptions& opts = {});

// Normal part of the gradient of r_x at a surface point.
inline Vec perp_radial(const ChartFrame& fr, const Vec& x) {
    const Vec d = fr.position - x;
    const double r = d.norm();
    if (r == 0) return Vec::Zero(d.size());
    return normal_part(fr.tangent, d) / r;
}

} // namespace wlab
