#pragma once

#include "zgkn/geometry.hpp"
#include "zgkn/numerics.hpp"

#include <optional>
#include <vector>

namespace zgkn::angular {

// Prufer phase equation for the separated angular system
// (S1, S2) = S (cos(Theta/2), sin(Theta/2)):
//   dTheta/dtheta = 2 (lambda - a cos(theta) cos(Theta) + k(theta) sin(Theta))
//   dlnS /dtheta  = -a cos(theta) sin(Theta) - k(theta) cos(Theta)
// with k(theta) = a E sin(theta) - kappa/sin(theta).
double theta_rhs(double theta, double Theta, double E, double lambda,
                 double kappa, const geom::ModelParams& params);

struct AngularSolveRequest {
    double E = 0;
    double kappa = 0.5;
    geom::ModelParams params;
    int branch_index = 0;                 // n_theta label, 0..max_branches-1
    double theta0 = 1e-6;                 // Frobenius start offset
    num::OdeOptions ode;
    double lambda_tol = 1e-12;
    int max_branches = 8;
    // continuation hint: previous eigenvalue and its raw-mismatch plateau
    std::optional<double> lambda_hint;
    std::optional<double> mismatch_target;
};

struct AngularSolution {
    double lambda = 0;
    int branch_index = 0;
    double mismatch_raw = 0;              // in 2*pi*Z at an eigenvalue
    double residual = 0;                  // |sin(mismatch_raw/2)|
};

// Raw Prufer mismatch Theta_left(pi/2) - Theta_right(pi/2) for the
// square-integrable Frobenius representatives. Even multiples of pi signal
// eigenvalues. Negative kappa is served by the exact mirror
// (E, lambda, kappa) -> (-E, -lambda, -kappa), mismatch -> -mismatch.
double shoot_angular(double lambda, double E, double kappa,
                     const geom::ModelParams& params, double theta0 = 1e-6,
                     const num::OdeOptions& ode = {});

// All angular eigenvalues inside the bracket |lambda| <= 20 + 2|kappa| +
// 2|a|(1+|E|), ordered by |lambda| ascending (positive first on near-ties).
std::vector<AngularSolution> scan_branches(double E, double kappa,
                                           const geom::ModelParams& params,
                                           int max_branches, double theta0 = 1e-6,
                                           const num::OdeOptions& ode = {},
                                           double lambda_tol = 1e-12);

// Eigenvalue of the requested branch; uses the continuation hint when given,
// otherwise a full scan. Throws NoBranchFound when branch_index is not
// resolved inside the bracket.
AngularSolution angular_eigenvalue(const AngularSolveRequest& req);

// (Theta, lnS) profiles at the requested colatitude nodes (strictly inside
// (0, pi), ascending). Both half-integrations are stitched at pi/2: Theta is
// made continuous by shifting the right half by mismatch_raw, lnS by
// matching values; lnS is normalized to 0 at its maximum.
struct AngularProfile {
    std::vector<double> theta;
    std::vector<double> Theta;
    std::vector<double> lnS;
};
AngularProfile angular_profile(const AngularSolution& sol,
                               const AngularSolveRequest& req,
                               const std::vector<double>& theta_nodes);

} // namespace zgkn::angular
