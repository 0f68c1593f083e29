#pragma once

#include <vector>

#include "wlab/quadrature.hpp"

namespace wlab {

// Terms of the monotonicity identity between radii sigma < rho about x:
//   mu(B_s)/s^2 = mu(B_r)/r^2 + (1/16) int_{ann} |H|^2
//                 - int_{ann} |grad^perp r / r + H/4|^2
//                 + (1/2r^2) int_{B_r} r <grad^perp r, H>
//                 - (1/2s^2) int_{B_s} r <grad^perp r, H>.
struct MonotonicityLedger {
    Vec center;
    double sigma = 0, rho = 0;

    double lhs = 0;                 // mu(B_sigma)/sigma^2
    double term_ball_rho = 0;       // mu(B_rho)/rho^2
    double term_willmore = 0;       // (1/16) annulus Willmore
    double term_deviation = 0;      // minus the annulus deviation energy
    double term_cross_rho = 0;      // (1/2 rho^2) int_{B_rho} r<grad^perp r,H>
    double term_cross_sigma = 0;    // minus (1/2 sigma^2) int_{B_sigma} ...

    double residual = 0;
    double combined_error = 0;

    struct InequalitySlack {
        double delta;
        double slack; // rhs - lhs of the delta-form inequality
        double error;
    };
    std::vector<InequalitySlack> inequality;

    double rhs_sum() const {
        return term_ball_rho + term_willmore + term_deviation + term_cross_rho +
               term_cross_sigma;
    }
};

MonotonicityLedger monotonicity_check(const std::vector<SurfaceChart>& charts,
                                      const Vec& x, double sigma, double rho,
                                      const QuadOptions& opts = {});

} // namespace wlab
