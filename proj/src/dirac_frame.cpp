#include "zgkn/dirac_frame.hpp"
#include "zgkn/errors.hpp"

#include <cmath>

namespace zgkn::frame {

namespace {

using cd = std::complex<double>;
constexpr cd I{0, 1};

GammaTables build_tables() {
    GammaTables t;
    Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    std::array<Eigen::Matrix2cd, 3> sigma;
    sigma[0] << 0, 1, 1, 0;
    sigma[1] << 0, -I, I, 0;
    sigma[2] << 1, 0, 0, -1;

    for (auto& g : t.gamma) g.setZero();
    t.gamma[0].block<2, 2>(0, 2) = id2;
    t.gamma[0].block<2, 2>(2, 0) = id2;
    for (int k = 0; k < 3; ++k) {
        t.gamma[k + 1].block<2, 2>(0, 2) = -sigma[k];
        t.gamma[k + 1].block<2, 2>(2, 0) = sigma[k];
    }
    for (int a = 0; a < 4; ++a) t.alpha[a] = t.gamma[0] * t.gamma[a];
    return t;
}

} // namespace

const GammaTables& gamma_tables() {
    static const GammaTables tables = build_tables();
    return tables;
}

std::complex<double> chi(const geom::OblatePoint& p, double a) {
    const double st = std::sin(p.theta);
    if (st <= 0)
        throw AxisSingularity("chi needs sin(theta) > 0");
    geom::FrameData fd = geom::frame_data(p, a);
    cd rho_star = std::conj(fd.rho);
    return 0.5 * (std::log(fd.varpi * st) + std::log(rho_star));
}

std::complex<double> log_rho_star_near(const geom::OblatePoint& p, double a,
                                       std::complex<double> ref) {
    cd rho_star{p.r, -a * std::cos(p.theta)};
    // principal log of the ratio keeps the branch locally continuous
    return ref + std::log(rho_star / std::exp(ref));
}

Eigen::Matrix2cd frak_m(const geom::OblatePoint& p, double a) {
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    if (st <= 0)
        throw AxisSingularity("frak_m needs sin(theta) > 0");
    geom::FrameData fd = geom::frame_data(p, a);
    cd rho_star = std::conj(fd.rho);
    // varpi d_r chi = (r/varpi + varpi/rho*)/2,  d_theta chi = (cot + i a sin/rho*)/2
    cd dr = 0.5 * (p.r / fd.varpi + fd.varpi / rho_star);
    cd dth = 0.5 * (ct / st + I * a * st / rho_star);
    Eigen::Matrix2cd m;
    m << dr, dth, dth, -dr;
    return m / fd.abs_rho;
}

Eigen::Matrix2cd frak_m_prime(const geom::OblatePoint& p, double a) {
    return -frak_m(p, a).adjoint();
}

double check_m_equals_l_chi(const geom::OblatePoint& p, double a, double h) {
    const auto chi_at = [&](double r, double theta, cd ref_log) {
        geom::OblatePoint q{r, theta, 0};
        const double st = std::sin(theta);
        return 0.5 * (std::log(std::sqrt(r * r + a * a) * st) +
                      log_rho_star_near(q, a, ref_log));
    };
    cd ref = std::log(cd{p.r, -a * std::cos(p.theta)});
    cd dchi_dr = (chi_at(p.r + h, p.theta, ref) - chi_at(p.r - h, p.theta, ref)) / (2 * h);
    cd dchi_dth = (chi_at(p.r, p.theta + h, ref) - chi_at(p.r, p.theta - h, ref)) / (2 * h);

    geom::FrameData fd = geom::frame_data(p, a);
    Eigen::Matrix2cd l_chi;
    l_chi << fd.varpi * dchi_dr, dchi_dth, dchi_dth, -fd.varpi * dchi_dr;
    l_chi /= fd.abs_rho;

    return (frak_m(p, a) - l_chi).cwiseAbs().maxCoeff();
}

SeparatedCoefficients separated_coefficients(double r, double theta, double E,
                                             double lambda, double kappa,
                                             const geom::ModelParams& params) {
    const double st = std::sin(theta);
    if (st <= 0)
        throw AxisSingularity("angular coefficients need sin(theta) > 0");
    const double w2 = r * r + params.a * params.a;
    SeparatedCoefficients c;
    c.w = (-params.a * kappa + params.gamma * r) / w2;
    c.mr_over_varpi = r / std::sqrt(w2);
    c.lambda_over_varpi = lambda / std::sqrt(w2);
    c.ma_cos_theta = params.a * std::cos(theta);
    c.k_theta = params.a * E * st - kappa / st;
    return c;
}

} // namespace zgkn::frame
