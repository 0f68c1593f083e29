#include "wlab/chart.hpp"

#include <cmath>

namespace wlab {

Jet jet(const SurfaceChart& chart, double u, double v, int order) {
    Jet j;
    j.f = chart.eval(u, v);
    if (order < 1) return j;

    const double h = chart.effective_fd_step();
    if (chart.d1 && chart.derivative_order >= 1) {
        chart.d1(u, v, j.fu, j.fv);
    } else {
        j.fu = (chart.eval(u + h, v) - chart.eval(u - h, v)) / (2 * h);
        j.fv = (chart.eval(u, v + h) - chart.eval(u, v - h)) / (2 * h);
    }
    if (order < 2) return j;

    if (chart.d2 && chart.derivative_order >= 2) {
        chart.d2(u, v, j.fuu, j.fuv, j.fvv);
    } else {
        j.fuu = (chart.eval(u + h, v) - 2 * j.f + chart.eval(u - h, v)) / (h * h);
        j.fvv = (chart.eval(u, v + h) - 2 * j.f + chart.eval(u, v - h)) / (h * h);
        j.fuv = (chart.eval(u + h, v + h) - chart.eval(u + h, v - h) -
                 chart.eval(u - h, v + h) + chart.eval(u - h, v - h)) /
                (4 * h * h);
    }
    return j;
}

Mat orthonormal_tangent(const Vec& fu, const Vec& fv) {
    Mat Q(fu.size(), 2);
    const double nu = fu.norm();
    if (nu == 0) throw DegenerateImmersion("zero first derivative");
    Q.col(0) = fu / nu;
    Vec w = fv - Q.col(0) * Q.col(0).dot(fv);
    const double nw = w.norm();
    if (nw == 0) throw DegenerateImmersion("parallel first derivatives");
    Q.col(1) = w / nw;
    return Q;
}

namespace {

Mat2 metric_of(const Vec& fu, const Vec& fv) {
    Mat2 g;
    g(0, 0) = fu.dot(fu);
    g(0, 1) = g(1, 0) = fu.dot(fv);
    g(1, 1) = fv.dot(fv);
    return g;
}

void check_det(double det, double u, double v) {
    if (det <= kDetGTol)
        throw DegenerateImmersion("det(g) = " + std::to_string(det) + " at (" +
                                  std::to_string(u) + ", " + std::to_string(v) + ")");
}

} // namespace

Mat2 first_fundamental_form(const SurfaceChart& chart, double u, double v) {
    Jet j = jet(chart, u, v, 1);
    Mat2 g = metric_of(j.fu, j.fv);
    check_det(g.determinant(), u, v);
    return g;
}

ChartFrame chart_frame(const SurfaceChart& chart, double u, double v,
                       bool with_curvature) {
    Jet j = jet(chart, u, v, with_curvature ? 2 : 1);
    ChartFrame out;
    out.position = j.f;
    out.g = metric_of(j.fu, j.fv);
    out.det_g = out.g.determinant();
    check_det(out.det_g, u, v);
    out.tangent = orthonormal_tangent(j.fu, j.fv);
    if (!with_curvature) return out;

    const Mat2 ginv = out.g.inverse();
    // Normal parts of the second derivatives give the second fundamental form
    // A_ij; H is its full metric trace (so |H| = 2/R on the round sphere).
    Vec Auu = normal_part(out.tangent, j.fuu);
    Vec Auv = normal_part(out.tangent, j.fuv);
    Vec Avv = normal_part(out.tangent, j.fvv);
    out.mean_curvature =
        ginv(0, 0) * Auu + 2 * ginv(0, 1) * Auv + ginv(1, 1) * Avv;

    // |A|^2 = g^{ik} g^{jl} <A_ij, A_kl>
    double n2 = 0;
    const Vec* A[2][2] = {{&Auu, &Auv}, {&Auv, &Avv}};
    for (int i = 0; i < 2; ++i)
        for (int jx = 0; jx < 2; ++jx)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    n2 += ginv(i, k) * ginv(jx, l) * A[i][jx]->dot(*A[k][l]);
    out.norm2_A = n2;
    return out;
}

Vec mean_curvature_vector(const SurfaceChart& chart, double u, double v) {
    return chart_frame(chart, u, v, true).mean_curvature;
}

double second_fundamental_form_norm2(const SurfaceChart& chart, double u, double v) {
    return chart_frame(chart, u, v, true).norm2_A;
}

} // namespace wlab
