#pragma once

#include <functional>
#include <vector>

#include "wlab/density.hpp"
#include "wlab/quadrature.hpp"

namespace wlab {

// Sphere inversion about x0: p -> (p - x0)/|p - x0|^2 + x0.

// Inverted chart h(u,v) with analytic derivatives chained from the source.
// Throws BasePointOnSurface when the sampled source passes within 1e-9 of x0
// and no puncture was declared.
SurfaceChart invert_chart(const SurfaceChart& source, const Vec& x0,
                          bool puncture_declared = false);

std::vector<SurfaceChart> invert(const std::vector<SurfaceChart>& sources,
                                 const Vec& x0, bool puncture_declared = false);

// Closed-form pushforward of the mean curvature under inversion, recentred
// at x0:  |F|^2 H - 2<H,F> F + 4 F_perp - 8 (|F_perp|^2/|F|^2) F,  F = f - x0.
Vec inverted_mean_curvature(const ChartFrame& source_frame, const Vec& x0);

// Everything needed to verify the pointwise transformation calculus at one
// parameter point.
struct InversionPointData {
    ChartFrame source;
    ChartFrame tilde;   // from direct differentiation of the inverted chart
    Vec F;              // f - x0
    Vec h_rel;          // h - x0
    Vec F_perp;         // normal part of F w.r.t. the source tangent plane
    Vec h_perp;         // normal part of h_rel w.r.t. the inverted tangent plane
    Vec H_tilde_closed; // closed-form pushforward
    double lhs_density; // (|Ht|^2/16 - |Ht/4 + grad~perp r~/r~|^2) sqrt(det g~)
    double rhs_density; // -(|H|^2/16 - |H/4 + grad^perp r/r|^2) sqrt(det g)
};
InversionPointData inversion_point(const SurfaceChart& source, const Vec& x0,
                                   double u, double v);

struct AntisymmetryLedger {
    struct Row {
        int chart;
        double u, v;
        double lhs, rhs, residual, rel_residual;
    };
    std::vector<Row> rows;
    double max_rel_residual = 0;
    double mean_rel_residual = 0;
};

// Pointwise check of the antisymmetric transformation identity at n random
// interior parameter points per chart (deterministic for a fixed seed).
AntisymmetryLedger antisymmetry_check(const std::vector<SurfaceChart>& sources,
                                      const Vec& x0, int n_samples,
                                      unsigned long seed = 12345);

using ChartFactory = std::function<std::vector<SurfaceChart>(double extent)>;

struct DensityFormulaReport {
    double lhs = 0;            // integral of the tilde-side density expression
    double lhs_err = 0;        // quadrature + truncation estimate
    double rhs = 0;            // pi Theta(inf)  (minus pi Theta(0) if 0 in Sigma)
    double rhs_err = 0;
    double residual = 0;
    double willmore_tilde = 0; // integral |H~|^2 dmu~, for the minimal-case form
    double willmore_tilde_err = 0;
    double theta_infinity = 0;
    bool source_through_base = false;
    double theta_at_base = 0;  // Theta(Sigma, x0) when the source passes through x0
};

DensityFormulaReport density_formula_check(const ChartFactory& factory,
                                           double extent, const Vec& x0,
                                           const DensityOptions& opts = {});

struct DensityIdentityReport {
    bool compact_source = false; // Theta(inf)=0 branch: identity not applicable
    double theta_tilde_at_base = 0;
    double theta_tilde_uncertainty = 0;
    double theta_infinity = 0;
    double theta_infinity_uncertainty = 0;
    double residual = 0;
    bool at_least_one = false; // Theta(tilde, x0) >= 1 - tolerance
};

// Lemma-4.3-type identity Theta(Sigma~, x0) = Theta(Sigma, inf) for x0 off
// the surface. Reports CompactSource for compact sources.
DensityIdentityReport density_identity_check(
    const std::vector<SurfaceChart>& sources, const Vec& x0,
    const DensityOptions& opts = {});

struct PuncturedIdentityReport {
    double theta_source_at_puncture = 0;
    double theta_source_uncertainty = 0;
    double theta_tilde_infinity = 0;
    double theta_tilde_uncertainty = 0;
    double residual = 0;
};

// Prop-5.1-type identity Theta(Sigma, 0) = Theta(Sigma~, inf) for a surface
// with a declared puncture whose chart approaches 0.
PuncturedIdentityReport punctured_density_identity_check(
    const std::vector<SurfaceChart>& sources, const DensityOptions& opts = {});

struct WillmoreBoundReport {
    double lhs = 0;  // integral |H~|^2 dmu~
    double rhs = 0;  // 320 integral (|H|^2 + |grad^perp r / r|^2) dmu
    double slack = 0;
    double combined_err = 0;
};

WillmoreBoundReport inverted_willmore_bound_check(
    const std::vector<SurfaceChart>& sources, const Vec& x0,
    const QuadOptions& opts = {});

} // namespace wlab
