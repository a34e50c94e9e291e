#include "zgkn/fields.hpp"
#include "zgkn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace zgkn::fields {

namespace {

void ring_check(double r, double a_cos, double guard, const char* what) {
    if (std::hypot(r, a_cos) < guard) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s within %.1e of the ring", what, guard);
        throw RingSingularity(buf);
    }
}

} // namespace

PotentialValue generalized_potential(const geom::OblatePoint& p, double a,
                                     double Q, double I_loop) {
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const double ac = a * ct;
    ring_check(p.r, ac, geom::ring_guard, "potential");
    const double m2 = p.r * p.r + ac * ac;
    const double m = std::sqrt(m2);
    const double w = std::sqrt(p.r * p.r + a * a);
    const double Qm = I_loop * std::numbers::pi * a; // c = 1

    PotentialValue v;
    v.A_t = -Q * p.r / m2;
    v.A_phi = Qm * a * p.r * st * st / m2;
    // frame components from inverting A = A0 omega^0 + A2 omega^2
    v.frame_A0 = p.r * (-Q * w * w + Qm * a * a * st * st) / (w * m2 * m);
    v.frame_A2 = (Qm - Q) * a * p.r * st / (m2 * m);
    return v;
}

PotentialValue potential(const geom::OblatePoint& p, double a, double Q) {
    // the ring's own current I = Q c/(pi a) makes Qm = Q; a=0 degenerates to
    // a pure Coulomb potential, handled without the 1/a current expression
    if (a == 0) {
        PotentialValue v = generalized_potential(p, 0, Q, 0);
        return v;
    }
    return generalized_potential(p, a, Q, Q / (std::numbers::pi * a));
}

FieldSample appell_field_cs(double r, double cos_theta, double sin_theta,
                            double theta_label, double a, double Qe, double Qm) {
    const double ac = a * cos_theta;
    ring_check(r, ac, geom::ring_guard, "field");
    const double m2 = r * r + ac * ac;
    const double m = std::sqrt(m2);
    const double w = std::sqrt(r * r + a * a);

    // 1/conj(rho)^2 = (r + i a cos)^2 / |rho|^4
    const double inv_re = (r * r - ac * ac) / (m2 * m2);
    const double inv_im = 2 * r * ac / (m2 * m2);

    // coordinate one-form components of E and B:
    //   (E + iB)_r = Q/rho*^2, (E + iB)_theta = i a sin Q/rho*^2
    const double E_r = Qe * inv_re;
    const double E_th = -a * sin_theta * Qe * inv_im;
    const double B_r = Qm * inv_im;
    const double B_th = a * sin_theta * Qm * inv_re;

    // orthonormal components (dr leg has length |rho|/varpi, dtheta leg |rho|)
    const double E_rh = E_r * (w / m), E_thh = E_th / m;
    const double B_rh = B_r * (w / m), B_thh = B_th / m;

    // meridional unit vectors in the (R, z) = (varpi sin, r cos) plane
    const double rhat_R = r * sin_theta / m, rhat_z = w * cos_theta / m;
    const double that_R = w * cos_theta / m, that_z = -r * sin_theta / m;

    FieldSample s;
    s.r = r;
    s.theta = theta_label;
    s.sheet = (r > 0) - (r < 0);
    s.phi_el = Qe * r / m2;
    s.E_R = E_rh * rhat_R + E_thh * that_R;
    s.E_z = E_rh * rhat_z + E_thh * that_z;
    s.B_R = B_rh * rhat_R + B_thh * that_R;
    s.B_z = B_rh * rhat_z + B_thh * that_z;
    return s;
}

FieldSample appell_field_general(const geom::OblatePoint& p, double a,
                                 double Qe, double Qm) {
    return appell_field_cs(p.r, std::cos(p.theta), std::sin(p.theta), p.theta,
                           a, Qe, Qm);
}

FieldSample appell_field(const geom::OblatePoint& p, double a, double Q) {
    return appell_field_general(p, a, Q, Q);
}

double phi_el_cylindrical(double R, double z, int sheet, double a, double Q) {
    const double A = R * R + z * z - a * a;
    const double u = 0.5 * (A + std::sqrt(A * A + 4 * a * a * z * z));
    const double denom = u * u + a * a * z * z;
    if (denom == 0) {
        // u = 0 and a z = 0: the open disc (phi vanishes there) or the ring
        if (R < a - geom::ring_guard) return 0.0;
        throw RingSingularity("cylindrical point on the ring");
    }
    return sheet * Q * u * std::sqrt(u) / denom;
}

FieldGrid field_grid(const FieldGridSpec& spec, double a) {
    if (spec.n_r < 2 || spec.n_theta < 2)
        throw TooFewSamples("field grid needs at least 2 nodes per direction");
    FieldGrid grid;
    grid.samples.reserve(static_cast<std::size_t>(spec.n_r) * spec.n_theta);
    const double pi = std::numbers::pi;
    for (int i = 0; i < spec.n_r; ++i) {
        double r = -spec.r_max +
                   (2.0 * spec.r_max) * i / static_cast<double>(spec.n_r - 1);
        for (int j = 0; j < spec.n_theta; ++j) {
            double theta = pi * j / static_cast<double>(spec.n_theta - 1);
            double ct = std::cos(theta), st = std::sin(theta);
            if (std::hypot(r, a * ct) < spec.guard) {
                ++grid.skipped;
                continue;
            }
            grid.samples.push_back(
                appell_field_cs(r, ct, st, theta, a, spec.Qe, spec.Qm));
        }
    }
    return grid;
}

} // namespace zgkn::fields
