#include "zgkn/wavefunction.hpp"
#include "zgkn/angular.hpp"
#include "zgkn/errors.hpp"
#include "zgkn/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zgkn::wavefn {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln_floor = -745.0; // exp underflows to 0 below this

double round_to_2pi(double x) { return 2 * pi * std::round(x / (2 * pi)); }

} // namespace

ProfileGrids default_grids(double a, double r_infinity, int n_r_per_sheet,
                           int n_theta) {
    if (n_r_per_sheet < 3 || n_theta < 3)
        throw TooFewSamples("profile grids need at least 3 nodes per direction");
    ProfileGrids g;
    g.n_r_per_sheet = n_r_per_sheet;
    g.r_min = std::max(1e-6, 1e-3 * std::abs(a));
    const double u0 = std::log(g.r_min), u1 = std::log(r_infinity);
    if (!(u1 > u0))
        throw TooFewSamples("r_infinity must exceed the inner radius");
    g.log_step = (u1 - u0) / (n_r_per_sheet - 1);

    std::vector<double> pos(static_cast<std::size_t>(n_r_per_sheet));
    for (int i = 0; i < n_r_per_sheet; ++i)
        pos[static_cast<std::size_t>(i)] = std::exp(u0 + g.log_step * i);
    pos.back() = r_infinity; // exact endpoint

    g.r_nodes.reserve(2 * static_cast<std::size_t>(n_r_per_sheet) + 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) g.r_nodes.push_back(-*it);
    g.r_nodes.push_back(0.0);
    g.r_nodes.insert(g.r_nodes.end(), pos.begin(), pos.end());

    g.theta_step = pi / (n_theta + 1);
    g.theta_nodes.reserve(static_cast<std::size_t>(n_theta));
    for (int j = 1; j <= n_theta; ++j)
        g.theta_nodes.push_back(pi * j / static_cast<double>(n_theta + 1));
    return g;
}

BoundState reconstruct(const spectrum::EigenPair& pair,
                       const geom::ModelParams& params,
                       const ProfileGrids* grids_in, const num::OdeOptions& ode,
                       double r_infinity, double theta0) {
    BoundState st;
    st.pair = pair;
    st.params = params;
    st.r_infinity_used =
        (r_infinity > 0) ? r_infinity : radial::default_r_infinity(pair.E);
    st.grids = grids_in ? *grids_in
                        : default_grids(params.a, st.r_infinity_used);
    const ProfileGrids& g = st.grids;
    const std::size_t nr = g.r_nodes.size();
    const std::size_t nth = g.theta_nodes.size();
    if (nr != 2 * static_cast<std::size_t>(g.n_r_per_sheet) + 1 ||
        g.r_nodes[nr / 2] != 0.0)
        throw TooFewSamples("radial grid must be sheet-symmetric around r = 0");

    // ---- angular profiles -------------------------------------------------
    angular::AngularSolveRequest areq;
    areq.E = pair.E;
    areq.kappa = pair.kappa;
    areq.params = params;
    areq.branch_index = pair.n_theta;
    areq.theta0 = theta0;
    areq.ode = ode;
    angular::AngularSolution asol;
    asol.lambda = pair.lambda;
    asol.branch_index = pair.n_theta;
    angular::AngularProfile aprof = angular::angular_profile(asol, areq, g.theta_nodes);
    st.Theta = std::move(aprof.Theta);
    st.lnS = std::move(aprof.lnS);

    // theta quadratures over [0, pi]: interior samples plus the S = 0 axis
    // limits, uniform spacing theta_step
    std::vector<double> f_i(nth + 2, 0.0), f_j(nth + 2, 0.0);
    for (std::size_t j = 0; j < nth; ++j) {
        double s2 = std::exp(2 * st.lnS[j]);
        f_i[j + 1] = s2;
        f_j[j + 1] = s2 * std::sin(g.theta_nodes[j]) * std::sin(st.Theta[j]);
    }
    const double I_theta = num::simpson_uniform(f_i, g.theta_step);
    const double J_theta = num::simpson_uniform(f_j, g.theta_step);
    if (!(I_theta > 0) || !std::isfinite(J_theta))
        throw ZeroNorm("angular amplitude quadrature degenerated");

    // ---- radial profiles --------------------------------------------------
    num::Rhs rhs = [&](double r, const double* y, double* dy) {
        dy[0] = radial::omega_rhs(r, y[0], pair.E, pair.lambda, pair.kappa, params);
        const double w = std::sqrt(r * r + params.a * params.a);
        dy[1] = (r / w) * std::sin(y[0]) - (pair.lambda / w) * std::cos(y[0]);
    };
    std::size_t zero_idx = nr / 2; // grids are symmetric around the r=0 node
    std::vector<double> left_nodes(g.r_nodes.begin(),
                                   g.r_nodes.begin() + static_cast<std::ptrdiff_t>(zero_idx) + 1);
    std::vector<double> right_nodes(g.r_nodes.rbegin(),
                                    g.r_nodes.rbegin() + static_cast<std::ptrdiff_t>(zero_idx) + 1);
    if (left_nodes.front() != -st.r_infinity_used ||
        right_nodes.front() != st.r_infinity_used)
        throw TooFewSamples("profile grid does not span [-R, R]");

    num::OdeOptions o = ode;
    o.dense = false;
    auto yl = num::integrate_path(
        rhs, 2, left_nodes,
        {radial::asymptotic_omega_start(pair.E, pair.lambda, st.r_infinity_used,
                                        -1, params),
         0.0},
        o);
    auto yr = num::integrate_path(
        rhs, 2, right_nodes,
        {radial::asymptotic_omega_start(pair.E, pair.lambda, st.r_infinity_used,
                                        +1, params),
         0.0},
        o);

    const double d_raw = yl.back()[0] - yr.back()[0];
    const double omega_shift = round_to_2pi(d_raw);
    const double ln_shift = yl.back()[1] - yr.back()[1];

    st.Omega.assign(nr, 0.0);
    st.lnR.assign(nr, 0.0);
    for (std::size_t i = 0; i <= zero_idx; ++i) {
        st.Omega[i] = yl[i][0];
        st.lnR[i] = yl[i][1];
    }
    for (std::size_t i = 0; i < zero_idx; ++i) {
        // right_nodes run from +R down to 0; map back to ascending indices
        std::size_t idx = nr - 1 - i;
        st.Omega[idx] = yr[i][0] + omega_shift;
        st.lnR[idx] = yr[i][1] + ln_shift;
    }

    double ln_max = *std::max_element(st.lnR.begin(), st.lnR.end());
    for (double& v : st.lnR) {
        v -= ln_max;
        if (v < ln_floor) {
            v = ln_floor;
            st.underflow_clamped = true;
        }
    }

    // ---- quadratures and normalization ------------------------------------
    const double a = params.a;
    auto varpi = [&](double r) { return std::sqrt(r * r + a * a); };
    std::vector<double> R2(nr);
    for (std::size_t i = 0; i < nr; ++i) R2[i] = std::exp(2 * st.lnR[i]);

    // Simpson in u = ln|r| per sheet (dr = |r| du), trapezoid across the
    // tiny central gap [-r_min, r_min]
    auto sheet_integrals = [&](bool positive, double& I_out, double& J_out) {
        std::vector<double> fi(static_cast<std::size_t>(g.n_r_per_sheet));
        std::vector<double> fj(static_cast<std::size_t>(g.n_r_per_sheet));
        for (int k = 0; k < g.n_r_per_sheet; ++k) {
            // ascending in u = ln|r|
            std::size_t idx = positive
                                  ? zero_idx + 1 + static_cast<std::size_t>(k)
                                  : zero_idx - 1 - static_cast<std::size_t>(k);
            double r = g.r_nodes[idx];
            fi[static_cast<std::size_t>(k)] = R2[idx] * std::abs(r);
            fj[static_cast<std::size_t>(k)] =
                R2[idx] * std::abs(r) * std::sin(st.Omega[idx]) / varpi(r);
        }
        I_out = num::simpson_uniform(fi, g.log_step);
        J_out = num::simpson_uniform(fj, g.log_step);
    };
    double I_pos = 0, J_pos = 0, I_neg = 0, J_neg = 0;
    sheet_integrals(true, I_pos, J_pos);
    sheet_integrals(false, I_neg, J_neg);

    auto central = [&](std::size_t ia, std::size_t ib, double& I_out, double& J_out) {
        double h = std::abs(g.r_nodes[ib] - g.r_nodes[ia]);
        double fa_i = R2[ia], fb_i = R2[ib];
        double fa_j = R2[ia] * std::sin(st.Omega[ia]) / varpi(g.r_nodes[ia]);
        double fb_j = R2[ib] * std::sin(st.Omega[ib]) / varpi(g.r_nodes[ib]);
        I_out = 0.5 * h * (fa_i + fb_i);
        J_out = 0.5 * h * (fa_j + fb_j);
    };
    double Ic_neg, Jc_neg, Ic_pos, Jc_pos;
    central(zero_idx - 1, zero_idx, Ic_neg, Jc_neg);
    central(zero_idx, zero_idx + 1, Ic_pos, Jc_pos);

    const double I_plus = I_pos + Ic_pos, J_plus = J_pos + Jc_pos;
    const double I_minus = I_neg + Ic_neg, J_minus = J_neg + Jc_neg;
    const double I_r = I_plus + I_minus;
    const double J_r = J_plus + J_minus;
    if (!(I_r > 0)) throw ProfileUnderflow("radial amplitude vanished on the grid");

    const double norm2 = 4 * pi * (I_r * I_theta - a * J_r * J_theta);
    if (!(norm2 > 0) || !std::isfinite(norm2))
        throw ZeroNorm("mhat norm is not positive");
    st.norm_scale = std::sqrt(norm2);

    st.density.assign(nr, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        double r = g.r_nodes[i];
        st.density[i] = 4 * pi * R2[i] *
                        (I_theta - a * (std::sin(st.Omega[i]) / varpi(r)) * J_theta) /
                        norm2;
    }
    st.w_plus = 4 * pi * (I_plus * I_theta - a * J_plus * J_theta) / norm2;
    st.w_minus = 4 * pi * (I_minus * I_theta - a * J_minus * J_theta) / norm2;
    return st;
}

} // namespace zgkn::wavefn
