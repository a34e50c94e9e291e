#pragma once

#include "zgkn/geometry.hpp"
#include "zgkn/numerics.hpp"

namespace zgkn::radial {

// Prufer phase equation for the separated radial system
// (R1, R2) = R (e^{i Omega/2}, e^{-i Omega/2}):
//   dOmega/dr = 2 (r/varpi) cos(Omega) + 2 (lambda/varpi) sin(Omega)
//               + 2 (a kappa - gamma r)/varpi^2 - 2 E
//   dlnR /dr  = (r/varpi) sin(Omega) - (lambda/varpi) cos(Omega)
// with varpi = sqrt(r^2+a^2); electron mass 1, attractive coupling gamma>0.
double omega_rhs(double r, double Omega, double E, double lambda, double kappa,
                 const geom::ModelParams& params);

// Limits of the decaying-solution phase: Omega(-inf) = -pi + arccos(E),
// Omega(+inf) = -arccos(E) (mod 2pi representatives).
double asymptotic_omega(double E, int side);

// Start value at finite radius +-R including the O(1/R) correction
// -+ (lambda +- gamma/sqrt(1-E^2))/R.
double asymptotic_omega_start(double E, double lambda, double R, int side,
                              const geom::ModelParams& params);

// Truncation radius max(50, 30/sqrt(1-E^2)).
double default_r_infinity(double E);

struct RadialSolveRequest {
    double E = 0;
    double lambda = 0;
    double kappa = 0.5;
    geom::ModelParams params;
    double r_infinity = 0;       // 0: use default_r_infinity(E)
    num::OdeOptions ode;
    bool check_truncation = false;
    double truncation_tol = 1e-8;
};

struct RadialMatch {
    double defect_raw = 0;       // Omega_L(0) - Omega_R(0), unreduced
    double defect = 0;           // reduced to (-pi, pi]
    int winding = 0;             // defect_raw = defect + 2 pi winding
    double omega_left0 = 0;
    double omega_right0 = 0;
    double ln_amp_left0 = 0;     // lnR accumulated from -R to 0 (lnR(-R)=0)
    double ln_amp_right0 = 0;    // lnR accumulated from +R to 0 (lnR(+R)=0)
    double r_infinity_used = 0;
};

// Shoots the decaying solutions from both infinities to the matching radius
// r = 0. Eigenvalue condition: defect_raw in 2 pi Z, i.e. sin(defect_raw/2)
// = 0. Requires |a| >= 1e-6 (the a = 0 limit is served by the closed-form
// Sommerfeld module) and |E| < 1 (OutOfGap otherwise). With check_truncation
// set, doubles r_infinity and throws TruncationTooSmall when the raw defect
// moves by more than truncation_tol.
RadialMatch shoot_radial(const RadialSolveRequest& req);

} // namespace zgkn::radial
