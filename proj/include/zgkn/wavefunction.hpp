#pragma once

#include "zgkn/geometry.hpp"
#include "zgkn/numerics.hpp"
#include "zgkn/spectrum.hpp"

#include <vector>

namespace zgkn::wavefn {

// Profile sampling grids. Radial nodes are log-spaced per sheet (exactly
// mirror-symmetric, negative nodes are the bit-wise negations of the
// positive ones) plus the node r = 0; colatitude nodes are uniform strictly
// inside (0, pi) so that the axis limits S = 0 close the quadratures.
struct ProfileGrids {
    std::vector<double> r_nodes;      // ascending, -R ... -r_min, 0, r_min ... R
    std::vector<double> theta_nodes;  // pi k/(n+1), k = 1..n
    double r_min = 0;
    double log_step = 0;              // spacing in ln|r| per sheet
    double theta_step = 0;            // spacing in theta (also the end gaps)
    int n_r_per_sheet = 0;
};

ProfileGrids default_grids(double a, double r_infinity, int n_r_per_sheet = 2001,
                           int n_theta = 512);

// A normalized bound state: Prufer data on the grids plus the marginal
// probability density in r for the conserved inner product with weight
// mhat = I + (a sin/varpi) alpha^2 and measure dr dtheta dphi:
//   density(r) = 4 pi R(r)^2 [ I_theta - a (sin Omega(r)/varpi(r)) J_theta ]
// with I_theta = int S^2 dtheta, J_theta = int S^2 sin(theta) sin(Theta)
// dtheta, normalized so that int density dr = 1.
struct BoundState {
    spectrum::EigenPair pair;
    geom::ModelParams params;
    ProfileGrids grids;
    std::vector<double> Omega;   // radial phase, continuous across r = 0
    std::vector<double> lnR;     // log radial amplitude, max = 0
    std::vector<double> Theta;   // angular phase, continuous across pi/2
    std::vector<double> lnS;     // log angular amplitude, max = 0
    std::vector<double> density; // normalized marginal in r
    double norm_scale = 0;       // norm of the max-scaled profiles before division
    double w_plus = 0;           // probability on the r > 0 sheet
    double w_minus = 0;          // probability on the r < 0 sheet
    bool underflow_clamped = false;
    double r_infinity_used = 0;
};

// Integrates the separated system once more along the grids, stitches the
// half-line solutions, and normalizes. Throws ZeroNorm / ProfileUnderflow
// when the quadratures degenerate.
BoundState reconstruct(const spectrum::EigenPair& pair,
                       const geom::ModelParams& params,
                       const ProfileGrids* grids = nullptr,
                       const num::OdeOptions& ode = {},
                       double r_infinity = 0, double theta0 = 1e-6);

} // namespace zgkn::wavefn
