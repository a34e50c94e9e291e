#include "zgkn/geometry.hpp"
#include "zgkn/errors.hpp"
#include "zgkn/dirac_frame.hpp"

#include <cmath>
#include <cstdio>

namespace zgkn::geom {

FrameData frame_data(const OblatePoint& p, double a) {
    FrameData fd;
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    fd.varpi = std::sqrt(p.r * p.r + a * a);
    fd.rho = {p.r, a * ct};
    fd.abs_rho = std::hypot(p.r, a * ct);
    if (fd.abs_rho < ring_guard) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "point within %.1e of the ring (r=%.3e, theta=%.6f)",
                      ring_guard, p.r, p.theta);
        throw RingSingularity(buf);
    }
    const double r = p.r, w = fd.varpi, m3 = fd.abs_rho * fd.abs_rho * fd.abs_rho;
    fd.A = a * a * r * st * st / (w * m3);
    fd.B = a * r * st / m3;
    fd.C = a * a * st * ct / m3;
    fd.D = a * ct * w / m3;
    fd.E = r * w / m3;
    fd.F = w * w * ct / (m3 * st); // diverges on the axis, as it must
    return fd;
}

MetricDiag metric_line_element(const OblatePoint& p, double a) {
    FrameData fd = frame_data(p, a);
    const double st = std::sin(p.theta);
    MetricDiag g;
    g.g_tt = 1.0;
    g.g_rr = -(fd.abs_rho * fd.abs_rho) / (fd.varpi * fd.varpi);
    g.g_thth = -(fd.abs_rho * fd.abs_rho);
    g.g_phph = -(fd.varpi * fd.varpi) * st * st;
    return g;
}

Eigen::Matrix4d coframe_matrix(const OblatePoint& p, double a) {
    FrameData fd = frame_data(p, a);
    const double st = std::sin(p.theta);
    const double w = fd.varpi, m = fd.abs_rho;
    Eigen::Matrix4d cf = Eigen::Matrix4d::Zero();
    // coordinate order (t, r, theta, phi)
    cf(0, 0) = w / m;                   // omega^0 = (varpi/|rho|)(dt - a sin^2 dphi)
    cf(0, 3) = -(w / m) * a * st * st;
    cf(1, 2) = m;                        // omega^1 = |rho| dtheta
    cf(2, 0) = -(st / m) * a;            // omega^2 = (sin/|rho|)(-a dt + varpi^2 dphi)
    cf(2, 3) = (st / m) * w * w;
    cf(3, 1) = m / w;                    // omega^3 = (|rho|/varpi) dr
    return cf;
}

Eigen::Matrix4d frame_matrix(const OblatePoint& p, double a) {
    FrameData fd = frame_data(p, a);
    const double st = std::sin(p.theta);
    if (st == 0)
        throw AxisSingularity("frame vectors need sin(theta) != 0");
    const double w = fd.varpi, m = fd.abs_rho;
    Eigen::Matrix4d fr = Eigen::Matrix4d::Zero();
    fr(0, 0) = w / m;                    // e_0 = (varpi/|rho|) d_t + (a/(varpi|rho|)) d_phi
    fr(0, 3) = a / (w * m);
    fr(1, 2) = 1.0 / m;                  // e_1 = (1/|rho|) d_theta
    fr(2, 0) = a * st / m;               // e_2 = (a sin/|rho|) d_t + (1/(|rho| sin)) d_phi
    fr(2, 3) = 1.0 / (m * st);
    fr(3, 1) = w / m;                    // e_3 = (varpi/|rho|) d_r
    return fr;
}

MhatMatrix mhat(const OblatePoint& p, double a) {
    FrameData fd = frame_data(p, a);
    const double c = a * std::sin(p.theta) / fd.varpi;
    MhatMatrix out;
    out.m = Eigen::Matrix4cd::Identity() +
            c * frame::gamma_tables().alpha[2];
    out.eig_plus = 1.0 + c;
    out.eig_minus = 1.0 - c;
    return out;
}

double volume_density(const OblatePoint& p, double a) {
    FrameData fd = frame_data(p, a);
    return fd.abs_rho * fd.abs_rho * std::sin(p.theta);
}

} // namespace zgkn::geom
