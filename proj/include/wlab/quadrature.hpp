#pragma once

#include <functional>
#include <vector>

#include "wlab/chart.hpp"

namespace wlab {

struct BallRegion {
    Vec center;
    double radius = 0;
};

// Integration region cut out by distance-like level sets: a point is inside
// when every cut function is <= 0. Cut functions must be 1-Lipschitz in the
// ambient position so that cell classification by sampled values is sound.
struct Region {
    std::vector<std::function<double(const Vec&)>> cuts;
    double scale = 0; // smallest geometric feature; 0 means "no boundary"

    static Region everything() { return {}; }
    static Region ball(const BallRegion& b);
    static Region annulus(const Vec& center, double r_inner, double r_outer);
    // slab |<n0,(p-y)>-normal-part| < half_width around the plane through y
    // spanned orthogonally to the rows of normals (k x dim, orthonormal rows)
    static Region band(const Vec& y, const Mat& normals, double half_width);
    Region intersect(const Region& other) const;
};

// Evaluation point handed to integrands.
struct SurfPoint {
    const ChartFrame& frame;
    double u, v;
    int chart_index;
};

// A set of scalar integrands evaluated together over one region; out has
// n_outputs slots. dmu (= sqrt(det g) du dv) is applied by the engine.
struct IntegrandSet {
    int n_outputs = 1;
    bool need_curvature = false;
    std::function<void(const SurfPoint&, double* out)> fn;
};

struct QuadOptions {
    double rel_tol = 1e-7;
    double abs_tol = 0;
    int max_depth = 38;
    double edge_tol = 1e-3;   // straddling cells split until diam < edge_tol*scale
    int initial_grid = 8;     // root cells along the longer parameter axis
    bool allow_truncation = false;
    double target_spacing = 0; // also refine interior cells to this image diameter
    // Optional sample collector (used by the flatness module): receives each
    // leaf quadrature node with its weight w*sqrt(det g).
    std::function<void(const SurfPoint&, double weight)> collect;
};

struct QuadratureResult {
    Vec value;
    Vec error_estimate;
    long cells_used = 0;
    bool truncated = false;         // region touched a cutoff side
    double boundary_clearance = 0;  // min distance of cutoff sides to the region
    double max_spacing = 0;         // largest image diameter of a leaf cell in-region

    double scalar() const { return value[0]; }
    double err() const { return error_estimate[0]; }
};

QuadratureResult integrate_over_region(const std::vector<SurfaceChart>& charts,
                                       const Region& region,
                                       const IntegrandSet& set,
                                       const QuadOptions& opts = {});

QuadratureResult integrate_over_ball(const std::vector<SurfaceChart>& charts,
                                     const BallRegion& ball,
                                     const IntegrandSet& set,
                                     const QuadOptions& opts = {});

// Area of the surface inside the ball.
QuadratureResult ball_area(const std::vector<SurfaceChart>& charts,
                           const BallRegion& ball, const QuadOptions& opts = {});

// Willmore energy (integral of |H|^2), over a ball or the whole chart cutoff.
QuadratureResult willmore_energy(const std::vector<SurfaceChart>& charts,
                                 const BallRegion* ball = nullptr,
                                 const QuadOptions& opts = {});

// Total curvature (integral of |A|^2).
QuadratureResult total_curvature(const std::vector<SurfaceChart>& charts,
                                 const BallRegion* ball = nullptr,
                                 const QuadOptions& opts = {});

} // namespace wlab
