#pragma once

#include "zgkn/geometry.hpp"

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace zgkn::frame {

// Dirac matrices in the Weyl-type representation used throughout:
// gamma^0 = offdiag(I, I), gamma^k = offdiag(-sigma_k, +sigma_k), so that
// alpha^k = gamma^0 gamma^k = diag(sigma_k, -sigma_k) and alpha^0 = I.
struct GammaTables {
    std::array<Eigen::Matrix4cd, 4> gamma;
    std::array<Eigen::Matrix4cd, 4> alpha;
};
const GammaTables& gamma_tables();

// chi = (1/2) log(varpi * conj(rho) * sin(theta)), the spinor rescaling that
// absorbs every connection term of the frame Dirac operator. Principal
// branch; see chi_log_rho_star for branch-continuous differencing.
std::complex<double> chi(const geom::OblatePoint& p, double a);

// log(conj(rho)) with the imaginary part chosen nearest to arg(ref), so that
// finite-difference stencils never straddle the log branch cut on the lower
// sheet near the equator.
std::complex<double> log_rho_star_near(const geom::OblatePoint& p, double a,
                                       std::complex<double> ref);

// frak_m = l(chi): the 2x2 first-order reduction coefficient matrix
//   (1/|rho|) [[varpi d_r chi, d_theta chi], [d_theta chi, -varpi d_r chi]]
// evaluated in closed form.
Eigen::Matrix2cd frak_m(const geom::OblatePoint& p, double a);

// frak_m' = -frak_m^dagger (the companion coefficient in the conjugate
// block).
Eigen::Matrix2cd frak_m_prime(const geom::OblatePoint& p, double a);

// Finite-difference residual max|frak_m - l^FD(chi)| with central step h in
// both r and theta; second-order accurate, branch-safe on both sheets.
double check_m_equals_l_chi(const geom::OblatePoint& p, double a, double h);

// Coefficients of the separated Prufer systems at radius r and colatitude
// theta (electron mass m = 1):
//   radial:  w = (-a kappa + gamma r)/varpi^2, t_r = r/varpi, t_l = lambda/varpi
//   angular: mu = a cos(theta), k = a E sin(theta) - kappa/sin(theta)
struct SeparatedCoefficients {
    double w = 0;
    double mr_over_varpi = 0;
    double lambda_over_varpi = 0;
    double ma_cos_theta = 0;
    double k_theta = 0;
};
SeparatedCoefficients separated_coefficients(double r, double theta, double E,
                                             double lambda, double kappa,
                                             const geom::ModelParams& params);

} // namespace zgkn::frame
