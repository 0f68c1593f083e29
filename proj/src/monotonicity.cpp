#include "wlab/monotonicity.hpp"

#include "wlab/density.hpp"

namespace wlab {

namespace {

// Per-ball ingredients: area, Willmore, deviation |grad^perp r/r + H/4|^2 and
// the cross term r <grad^perp r, H>, integrated in one pass.
IntegrandSet ledger_integrands(const Vec& x) {
    return {4, true, [x](const SurfPoint& sp, double* out) {
                const Vec d = sp.frame.position - x;
                const double r = d.norm();
                const Vec H = sp.frame.mean_curvature;
                const Vec pr = perp_radial(sp.frame, x);
                out[0] = 1;
                out[1] = H.squaredNorm();
                out[2] = (r > 0 ? (pr / r + H / 4).squaredNorm()
                                : (H / 4).squaredNorm());
                out[3] = r * pr.dot(H); // r * <grad^perp r, H>, grad^perp r = pr
            }};
}

} // namespace

MonotonicityLedger monotonicity_check(const std::vector<SurfaceChart>& charts,
                                      const Vec& x, double sigma, double rho,
                                      const QuadOptions& opts) {
    if (!(sigma > 0 && sigma < rho))
        throw InputError("monotonicity_check needs 0 < sigma < rho");

    MonotonicityLedger led;
    led.center = x;
    led.sigma = sigma;
    led.rho = rho;

    const IntegrandSet set = ledger_integrands(x);
    const QuadratureResult small = integrate_over_ball(charts, {x, sigma}, set, opts);
    const QuadratureResult big = integrate_over_ball(charts, {x, rho}, set, opts);

    const double s2 = sigma * sigma, r2 = rho * rho;
    led.lhs = small.value[0] / s2;
    led.term_ball_rho = big.value[0] / r2;
    led.term_willmore = (big.value[1] - small.value[1]) / 16;
    led.term_deviation = -(big.value[2] - small.value[2]);
    led.term_cross_rho = big.value[3] / (2 * r2);
    led.term_cross_sigma = -small.value[3] / (2 * s2);
    led.residual = led.lhs - led.rhs_sum();

    led.combined_error =
        small.error_estimate[0] / s2 + big.error_estimate[0] / r2 +
        (big.error_estimate[1] + small.error_estimate[1]) / 16 +
        (big.error_estimate[2] + small.error_estimate[2]) +
        big.error_estimate[3] / (2 * r2) + small.error_estimate[3] / (2 * s2);

    for (const double delta : {0.1, 0.5, 1.0}) {
        MonotonicityLedger::InequalitySlack is;
        is.delta = delta;
        is.slack = (1 + delta) * big.value[0] / r2 +
                   big.value[1] / (2 * delta) - led.lhs;
        is.error = (1 + delta) * big.error_estimate[0] / r2 +
                   big.error_estimate[1] / (2 * delta) +
                   small.error_estimate[0] / s2;
        led.inequality.push_back(is);
    }
    return led;
}

} // namespace wlab
