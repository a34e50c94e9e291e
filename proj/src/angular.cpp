#include "zgkn/angular.hpp"
#include "zgkn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace zgkn::angular {

namespace {

constexpr double pi = std::numbers::pi;

double round_to_2pi(double x) { return 2 * pi * std::round(x / (2 * pi)); }

// Frobenius representatives of the square-integrable solutions for kappa>0:
// S ~ theta^kappa at 0 with Theta(0) = 0, S ~ (pi-theta)^kappa at pi with
// Theta(pi) = -pi. First-order start values at offset theta0.
double left_start(double theta0, double lambda, double a, double kappa) {
    return 2 * (lambda - a) * theta0 / (1 + 2 * kappa);
}
double right_start(double theta0, double lambda, double a, double kappa) {
    return -pi - 2 * (lambda - a) * theta0 / (1 + 2 * kappa);
}

struct ShootResult {
    double mismatch;      // Theta_L(pi/2) - Theta_R(pi/2)
    double theta_l_mid;   // Theta_L(pi/2)
};

ShootResult shoot_positive_kappa(double lambda, double E, double kappa,
                                 const geom::ModelParams& params, double theta0,
                                 const num::OdeOptions& ode) {
    if (!(theta0 > 0) || !(theta0 < pi / 4))
        throw AxisSingularity("theta0 must lie in (0, pi/4)");
    const double a = params.a;
    num::Rhs rhs = [&](double th, const double* y, double* dy) {
        dy[0] = theta_rhs(th, y[0], E, lambda, kappa, params);
    };
    num::OdeOptions o = ode;
    o.dense = false;
    auto left = num::integrate(rhs, 1, theta0, pi / 2,
                               {left_start(theta0, lambda, a, kappa)}, o);
    auto right = num::integrate(rhs, 1, pi - theta0, pi / 2,
                                {right_start(theta0, lambda, a, kappa)}, o);
    double tl = left.final_state()[0], tr = right.final_state()[0];
    return {tl - tr, tl};
}

ShootResult shoot_any(double lambda, double E, double kappa,
                      const geom::ModelParams& params, double theta0,
                      const num::OdeOptions& ode) {
    if (kappa > 0) return shoot_positive_kappa(lambda, E, kappa, params, theta0, ode);
    // exact mirror (E, lambda, kappa, Theta) -> (-E, -lambda, -kappa, pi - Theta)
    ShootResult hat = shoot_positive_kappa(-lambda, -E, -kappa, params, theta0, ode);
    return {-hat.mismatch, pi - hat.theta_l_mid};
}

} // namespace

double theta_rhs(double theta, double Theta, double E, double lambda,
                 double kappa, const geom::ModelParams& params) {
    const double st = std::sin(theta);
    if (st <= 0)
        throw AxisSingularity("theta outside (0, pi)");
    const double k = params.a * E * st - kappa / st;
    return 2 * (lambda - params.a * std::cos(theta) * std::cos(Theta) +
                k * std::sin(Theta));
}

double shoot_angular(double lambda, double E, double kappa,
                     const geom::ModelParams& params, double theta0,
                     const num::OdeOptions& ode) {
    if (kappa == 0)
        throw InvalidQuantumNumbers("kappa must be nonzero");
    return shoot_any(lambda, E, kappa, params, theta0, ode).mismatch;
}

std::vector<AngularSolution> scan_branches(double E, double kappa,
                                           const geom::ModelParams& params,
                                           int max_branches, double theta0,
                                           const num::OdeOptions& ode,
                                           double lambda_tol) {
    const double span = 20 + 2 * std::abs(kappa) +
                        2 * std::abs(params.a) * (1 + std::abs(E));
    const double step = 0.25;

    auto mismatch_at = [&](double lam) {
        return shoot_angular(lam, E, kappa, params, theta0, ode);
    };

    // sample the bracket, then subdivide until no interval hides more than
    // one crossing of an even multiple of pi
    std::vector<std::pair<double, double>> nodes; // (lambda, mismatch)
    int n = static_cast<int>(std::ceil(2 * span / step));
    nodes.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        double lam = -span + 2 * span * i / static_cast<double>(n);
        nodes.emplace_back(lam, mismatch_at(lam));
    }
    for (std::size_t i = 0; i + 1 < nodes.size();) {
        auto [la, ma] = nodes[i];
        auto [lb, mb] = nodes[i + 1];
        if (std::abs(mb - ma) > pi && lb - la > 1e-6) {
            double lm = 0.5 * (la + lb);
            nodes.insert(nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                         {lm, mismatch_at(lm)});
        } else {
            ++i;
        }
    }

    std::vector<AngularSolution> found;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        auto [la, ma] = nodes[i];
        auto [lb, mb] = nodes[i + 1];
        double ga = std::sin(ma / 2), gb = std::sin(mb / 2);
        bool crossing = (ga == 0) || (ga > 0) != (gb > 0);
        if (!crossing) continue;
        double target = round_to_2pi(0.5 * (ma + mb));
        if ((ma - target) * (mb - target) > 0) continue; // grazing, no root
        double lam = (ma == target)
                         ? la
                         : num::find_root([&](double l) { return mismatch_at(l) - target; },
                                          la, lb, lambda_tol);
        AngularSolution sol;
        sol.lambda = lam;
        sol.mismatch_raw = mismatch_at(lam);
        sol.residual = std::abs(std::sin(sol.mismatch_raw / 2));
        found.push_back(sol);
    }

    std::sort(found.begin(), found.end(),
              [](const AngularSolution& x, const AngularSolution& y) {
                  double ax = std::abs(x.lambda), ay = std::abs(y.lambda);
                  if (std::abs(ax - ay) > 1e-9) return ax < ay;
                  return x.lambda > y.lambda; // positive branch first on ties
              });
    if (static_cast<int>(found.size()) > max_branches)
        found.resize(static_cast<std::size_t>(max_branches));
    for (std::size_t i = 0; i < found.size(); ++i)
        found[i].branch_index = static_cast<int>(i);
    return found;
}

AngularSolution angular_eigenvalue(const AngularSolveRequest& req) {
    if (req.kappa == 0)
        throw InvalidQuantumNumbers("kappa must be nonzero");
    if (req.branch_index < 0 || req.branch_index >= req.max_branches)
        throw NoBranchFound("branch index outside the supported range");

    if (req.lambda_hint && req.mismatch_target) {
        auto g = [&](double lam) {
            return shoot_angular(lam, req.E, req.kappa, req.params, req.theta0,
                                 req.ode) -
                   *req.mismatch_target;
        };
        double delta = 1e-3;
        double lo = *req.lambda_hint - delta, hi = *req.lambda_hint + delta;
        for (int tries = 0; tries < 14; ++tries) {
            double glo = g(lo), ghi = g(hi);
            if (glo == 0 || ghi == 0 || (glo > 0) != (ghi > 0)) {
                double lam = (glo == 0) ? lo
                             : (ghi == 0)
                                 ? hi
                                 : num::find_root(g, lo, hi, req.lambda_tol);
                AngularSolution sol;
                sol.lambda = lam;
                sol.branch_index = req.branch_index;
                sol.mismatch_raw = g(lam) + *req.mismatch_target;
                sol.residual = std::abs(std::sin(sol.mismatch_raw / 2));
                if (std::abs(sol.mismatch_raw - *req.mismatch_target) < 0.5)
                    return sol;
                break; // drifted onto a different plateau: rescan
            }
            delta *= 4;
            lo = *req.lambda_hint - delta;
            hi = *req.lambda_hint + delta;
        }
    }

    auto branches = scan_branches(req.E, req.kappa, req.params, req.max_branches,
                                  req.theta0, req.ode, req.lambda_tol);
    if (req.branch_index >= static_cast<int>(branches.size())) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "branch %d not found (%d branches in bracket)",
                      req.branch_index, static_cast<int>(branches.size()));
        throw NoBranchFound(buf);
    }
    return branches[static_cast<std::size_t>(req.branch_index)];
}

AngularProfile angular_profile(const AngularSolution& sol,
                               const AngularSolveRequest& req,
                               const std::vector<double>& theta_nodes) {
    for (std::size_t i = 0; i < theta_nodes.size(); ++i) {
        if (theta_nodes[i] <= 0 || theta_nodes[i] >= pi)
            throw AxisSingularity("profile nodes must lie strictly inside (0, pi)");
        if (i && theta_nodes[i] <= theta_nodes[i - 1])
            throw TooFewSamples("profile nodes must ascend");
    }

    if (req.kappa < 0) {
        AngularSolveRequest mirror = req;
        mirror.E = -req.E;
        mirror.kappa = -req.kappa;
        mirror.lambda_hint.reset();
        mirror.mismatch_target.reset();
        AngularSolution msol = sol;
        msol.lambda = -sol.lambda;
        msol.mismatch_raw = -sol.mismatch_raw;
        AngularProfile p = angular_profile(msol, mirror, theta_nodes);
        for (double& t : p.Theta) t = pi - t;
        return p;
    }

    const double a = req.params.a;
    const double lambda = sol.lambda;
    num::Rhs rhs = [&](double th, const double* y, double* dy) {
        dy[0] = theta_rhs(th, y[0], req.E, lambda, req.kappa, req.params);
        const double st = std::sin(th);
        const double k = a * req.E * st - req.kappa / st;
        dy[1] = -a * std::cos(th) * std::sin(y[0]) - k * std::cos(y[0]);
    };
    num::OdeOptions o = req.ode;
    o.dense = false;

    // split requested nodes at pi/2; integrate each half from its endpoint
    std::vector<double> left_nodes{req.theta0}, right_nodes{pi - req.theta0};
    for (double t : theta_nodes)
        if (t <= pi / 2) left_nodes.push_back(std::max(t, req.theta0));
    left_nodes.push_back(pi / 2);
    for (auto it = theta_nodes.rbegin(); it != theta_nodes.rend(); ++it)
        if (*it > pi / 2) right_nodes.push_back(std::min(*it, pi - req.theta0));
    right_nodes.push_back(pi / 2);

    auto yl = num::integrate_path(rhs, 2, left_nodes,
                                  {left_start(req.theta0, lambda, a, req.kappa), 0.0}, o);
    auto yr = num::integrate_path(rhs, 2, right_nodes,
                                  {right_start(req.theta0, lambda, a, req.kappa), 0.0}, o);

    const double mismatch = yl.back()[0] - yr.back()[0];
    const double dTheta = round_to_2pi(mismatch);
    const double dlnS = yl.back()[1] - yr.back()[1];

    AngularProfile prof;
    prof.theta = theta_nodes;
    prof.Theta.reserve(theta_nodes.size());
    prof.lnS.reserve(theta_nodes.size());
    std::size_t il = 1;                      // skip the start node
    std::size_t ir = right_nodes.size() - 2; // right nodes excluding pi/2, reversed
    for (double t : theta_nodes) {
        if (t <= pi / 2) {
            prof.Theta.push_back(yl[il][0]);
            prof.lnS.push_back(yl[il][1]);
            ++il;
        } else {
            prof.Theta.push_back(yr[ir][0] + dTheta);
            prof.lnS.push_back(yr[ir][1] + dlnS);
            --ir;
        }
    }
    double mx = -1e300;
    for (double v : prof.lnS) mx = std::max(mx, v);
    for (double& v : prof.lnS) v -= mx;
    return prof;
}

} // namespace zgkn::angular
