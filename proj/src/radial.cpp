#include "zgkn/radial.hpp"
#include "zgkn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace zgkn::radial {

namespace {

constexpr double pi = std::numbers::pi;

void validate(const RadialSolveRequest& req) {
    if (std::abs(req.params.a) < 1e-6)
        throw InvalidQuantumNumbers(
            "radial shooting needs |a| >= 1e-6; use the Sommerfeld closed form at a = 0");
    if (!(std::abs(req.E) < 1)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "E=%.6g outside the mass gap (-1, 1)", req.E);
        throw OutOfGap(buf);
    }
}

struct HalfShot {
    double omega0;
    double ln_amp0;
};

HalfShot shoot_half(const RadialSolveRequest& req, double R, int side) {
    num::Rhs rhs = [&](double r, const double* y, double* dy) {
        dy[0] = omega_rhs(r, y[0], req.E, req.lambda, req.kappa, req.params);
        const double w = std::sqrt(r * r + req.params.a * req.params.a);
        dy[1] = (r / w) * std::sin(y[0]) - (req.lambda / w) * std::cos(y[0]);
    };
    num::OdeOptions o = req.ode;
    o.dense = false;
    double start = asymptotic_omega_start(req.E, req.lambda, R, side, req.params);
    auto traj = num::integrate(rhs, 2, side * R, 0.0, {start, 0.0}, o);
    return {traj.final_state()[0], traj.final_state()[1]};
}

RadialMatch match_at(const RadialSolveRequest& req, double R) {
    HalfShot left = shoot_half(req, R, -1);
    HalfShot right = shoot_half(req, R, +1);
    RadialMatch m;
    m.omega_left0 = left.omega0;
    m.omega_right0 = right.omega0;
    m.ln_amp_left0 = left.ln_amp0;
    m.ln_amp_right0 = right.ln_amp0;
    m.defect_raw = left.omega0 - right.omega0;
    long k = std::lround(m.defect_raw / (2 * pi));
    m.defect = m.defect_raw - 2 * pi * static_cast<double>(k);
    if (m.defect <= -pi) {
        m.defect += 2 * pi;
        --k;
    } else if (m.defect > pi) {
        m.defect -= 2 * pi;
        ++k;
    }
    m.winding = static_cast<int>(k);
    m.r_infinity_used = R;
    return m;
}

} // namespace

double omega_rhs(double r, double Omega, double E, double lambda, double kappa,
                 const geom::ModelParams& params) {
    const double w2 = r * r + params.a * params.a;
    const double w = std::sqrt(w2);
    return 2 * (r / w) * std::cos(Omega) + 2 * (lambda / w) * std::sin(Omega) +
           2 * (params.a * kappa - params.gamma * r) / w2 - 2 * E;
}

double asymptotic_omega(double E, int side) {
    if (!(std::abs(E) < 1))
        throw OutOfGap("asymptotic phase needs |E| < 1");
    return (side < 0) ? -pi + std::acos(E) : -std::acos(E);
}

double asymptotic_omega_start(double E, double lambda, double R, int side,
                              const geom::ModelParams& params) {
    const double q = std::sqrt((1 - E) * (1 + E));
    if (side < 0)
        return -pi + std::acos(E) - (lambda - params.gamma / q) / R;
    return -std::acos(E) + (lambda + params.gamma / q) / R;
}

double default_r_infinity(double E) {
    const double q2 = (1 - E) * (1 + E);
    if (q2 <= 0) throw OutOfGap("truncation radius needs |E| < 1");
    return std::max(50.0, 30.0 / std::sqrt(q2));
}

RadialMatch shoot_radial(const RadialSolveRequest& req) {
    validate(req);
    const double R = (req.r_infinity > 0) ? req.r_infinity : default_r_infinity(req.E);
    RadialMatch m = match_at(req, R);
    if (req.check_truncation) {
        RadialMatch m2 = match_at(req, 2 * R);
        if (std::abs(m2.defect_raw - m.defect_raw) > req.truncation_tol) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "defect moves %.3e when doubling r_infinity=%.6g",
                          std::abs(m2.defect_raw - m.defect_raw), R);
            throw TruncationTooSmall(buf);
        }
    }
    return m;
}

} // namespace zgkn::radial
