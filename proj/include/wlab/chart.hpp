#pragma once

#include <array>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "wlab/errors.hpp"

namespace wlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Mat2 = Eigen::Matrix2d;

// What a rectangular parameter-domain side represents.
//   Cutoff    — a genuine truncation of a non-compact surface; integration
//               regions crossing it are unsound unless the caller opts in.
//   Periodic  — the opposite side is the same curve on the surface.
//   Collapsed — the side degenerates to a point or an interior curve of a
//               closed surface (e.g. sphere poles), not a real boundary.
enum class SideKind { Cutoff, Periodic, Collapsed };

// Side indices into SurfaceChart::sides.
enum Side : int { UMin = 0, UMax = 1, VMin = 2, VMax = 3 };

// An analytic immersion patch f : [u0,u1] x [v0,v1] -> R^(2+k).
// Derivatives come from the supplied closures when present and fall back to
// central finite differences of step fd_step otherwise.
struct SurfaceChart {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    int ambient_dim = 3;
    int derivative_order = 2; // 0, 1 or 2 analytic orders available

    std::function<Vec(double, double)> eval;
    std::function<void(double, double, Vec&, Vec&)> d1;       // fu, fv
    std::function<void(double, double, Vec&, Vec&, Vec&)> d2; // fuu, fuv, fvv

    double fd_step = 0; // set when any finite-difference fallback is active
    std::array<SideKind, 4> sides = {SideKind::Cutoff, SideKind::Cutoff,
                                     SideKind::Cutoff, SideKind::Cutoff};
    std::string label;

    double du() const { return u1 - u0; }
    double dv() const { return v1 - v0; }
    double domain_diameter() const { return std::hypot(du(), dv()); }

    // FD step actually used when a derivative closure is missing.
    double effective_fd_step() const {
        return fd_step > 0 ? fd_step : 1e-5 * domain_diameter();
    }

    bool interior(double u, double v) const {
        return u > u0 && u < u1 && v > v0 && v < v1;
    }
};

// First- and second-order jet of a chart at a parameter point.
struct Jet {
    Vec f;
    Vec fu, fv;
    Vec fuu, fuv, fvv; // empty when only first order was requested
};

Jet jet(const SurfaceChart& chart, double u, double v, int order);

inline constexpr double kDetGTol = 1e-14; // tol_g on det(g)

// Pointwise differential data used by quadrature and the flatness scans.
struct ChartFrame {
    Vec position;
    Mat tangent;    // ambient_dim x 2, orthonormal
    Mat2 g;         // first fundamental form
    double det_g = 0;
    Vec mean_curvature; // empty unless second order was requested
    double norm2_A = 0; // |A|^2, valid with second order
};

Mat2 first_fundamental_form(const SurfaceChart& chart, double u, double v);
Vec mean_curvature_vector(const SurfaceChart& chart, double u, double v);
double second_fundamental_form_norm2(const SurfaceChart& chart, double u, double v);

// One-stop evaluation; with_curvature controls whether second derivatives
// are taken.
ChartFrame chart_frame(const SurfaceChart& chart, double u, double v,
                       bool with_curvature);

// Orthonormalize [fu fv] (Gram-Schmidt). Throws DegenerateImmersion when the
// metric determinant falls below kDetGTol.
Mat orthonormal_tangent(const Vec& fu, const Vec& fv);

// Normal component of w at a point with orthonormal tangent basis Q.
inline Vec normal_part(const Mat& Q, const Vec& w) {
    return w - Q * (Q.transpose() * w);
}

} // namespace wlab
