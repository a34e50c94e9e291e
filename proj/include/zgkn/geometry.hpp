#pragma once

#include <Eigen/Dense>
#include <complex>

namespace zgkn::geom {

// Physical inputs of the model: ring radius a (in hbar/(mc)) and coupling
// gamma = e*Q = Z*alpha. The electron mass is 1 in natural units.
struct ModelParams {
    double a = 0;
    double gamma = 0;
};

// Oblate spheroidal coordinates on the double-sheeted space: r runs over all
// of R (r>0 upper sheet, r<0 lower sheet), theta in [0,pi], phi in [0,2pi).
struct OblatePoint {
    double r = 0;
    double theta = 0;
    double phi = 0;
};

// Distance from the ring in the (r, a*cos(theta)) chart below which geometric
// quantities are treated as singular.
inline constexpr double ring_guard = 1e-14;

// Scalars entering the orthonormal coframe and the rotation coefficients.
// rho = r + i*a*cos(theta), varpi = sqrt(r^2 + a^2).
struct FrameData {
    double varpi = 0;
    std::complex<double> rho;
    double abs_rho = 0;
    // rotation coefficients of the coframe, in the order they appear in the
    // structure equations
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
};

// Throws RingSingularity when |rho| < ring_guard.
FrameData frame_data(const OblatePoint& p, double a);

// Diagonal metric components in (t, r, theta, phi) order, signature (+,-,-,-):
// g_tt = 1, g_rr = -|rho|^2/varpi^2, g_thth = -|rho|^2,
// g_phph = -varpi^2 sin^2(theta).
struct MetricDiag {
    double g_tt = 0, g_rr = 0, g_thth = 0, g_phph = 0;
};
MetricDiag metric_line_element(const OblatePoint& p, double a);

// Orthonormal coframe omega^alpha = coframe(alpha, mu) dx^mu with coordinate
// order (t, r, theta, phi) and frame order (0: time, 1: theta leg, 2: phi
// leg, 3: r leg). Satisfies omega^T eta omega = g with eta=diag(1,-1,-1,-1).
Eigen::Matrix4d coframe_matrix(const OblatePoint& p, double a);

// Frame vectors e_alpha = frame(alpha, mu) d/dx^mu, the inverse transpose of
// the coframe: frame * coframe^T = identity.
Eigen::Matrix4d frame_matrix(const OblatePoint& p, double a);

// Weight matrix of the conserved inner product on t=const slices with
// measure dr dtheta dphi: mhat = I + (a sin(theta)/varpi) alpha^2. Complex
// Hermitian; eigenvalues are 1 +- a sin(theta)/varpi, each twice.
struct MhatMatrix {
    Eigen::Matrix4cd m;
    double eig_plus = 0;
    double eig_minus = 0;
};
MhatMatrix mhat(const OblatePoint& p, double a);

// sqrt(-det g) = |rho|^2 sin(theta).
double volume_density(const OblatePoint& p, double a);

} // namespace zgkn::geom
