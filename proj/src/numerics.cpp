#include "zgkn/numerics.hpp"
#include "zgkn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace zgkn::num {
namespace {

// Dormand-Prince 5(4) tableau (FSAL: stage 7 equals the next step's stage 1).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order weights (also the a7j row).
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference 5th - embedded 4th order, for the error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

struct Stepper {
    const Rhs& rhs;
    std::size_t dim;
    double rel_tol, abs_tol;
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    double err_prev = 1.0; // PI controller memory

    Stepper(const Rhs& f, std::size_t n, const OdeOptions& opt)
        : rhs(f), dim(n), rel_tol(opt.rel_tol), abs_tol(opt.abs_tol),
          k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n) {}

    void eval(double t, const std::vector<double>& y, std::vector<double>& k) {
        rhs(t, y.data(), k.data());
        if (!all_finite(k)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "non-finite derivative at t=%.6g", t);
            throw NonFiniteRhs(buf);
        }
    }

    // One attempted step of size h from (t, y, k1). Returns the scaled error
    // norm; on success the caller commits ynew/k7.
    double attempt(double t, const std::vector<double>& y, double h) {
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * a21 * k1[i];
        eval(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
        eval(t + h, ytmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        eval(t + h, ynew, k7);

        double err2 = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err2 += (ei / sc) * (ei / sc);
        }
        return std::sqrt(err2 / static_cast<double>(dim));
    }
};

// Hairer-style initial step heuristic.
double initial_step(Stepper& st, double t0, const std::vector<double>& y0,
                    double span, double dir) {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < st.dim; ++i) {
        double sc = st.abs_tol + st.rel_tol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (st.k1[i] / sc) * (st.k1[i] / sc);
    }
    d0 = std::sqrt(d0 / static_cast<double>(st.dim));
    d1 = std::sqrt(d1 / static_cast<double>(st.dim));
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h = std::min(h, 0.1 * span);
    (void)t0;
    return dir * std::max(h, 1e-12 * span);
}

} // namespace

Trajectory integrate(const Rhs& rhs, std::size_t dim, double t0, double t1,
                     const std::vector<double>& y0, const OdeOptions& opt) {
    if (y0.size() != dim)
        throw IntegrationFailure("state size does not match dim");
    Trajectory traj;
    traj.t.push_back(t0);
    traj.y.push_back(y0);
    if (t1 == t0) return traj;

    const double span = std::abs(t1 - t0);
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double h_floor = 1e-14 * span;

    Stepper st(rhs, dim, opt);
    std::vector<double> y = y0;
    double t = t0;
    st.eval(t, y, st.k1);
    double h = initial_step(st, t0, y0, span, dir);

    std::size_t steps = 0;
    bool last_rejected = false;
    while (dir * (t1 - t) > 0) {
        if (++steps > opt.max_steps)
            throw IntegrationFailure("step budget exhausted");
        if (std::abs(h) < h_floor) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "step %.3e below floor %.3e at t=%.6g", std::abs(h), h_floor, t);
            throw StepUnderflow(buf);
        }
        bool hit_end = false;
        if (dir * (t + h - t1) > 0) { h = t1 - t; hit_end = true; }

        double err = st.attempt(t, y, h);
        if (err <= 1.0) {
            t = hit_end ? t1 : t + h;
            y = st.ynew;
            std::swap(st.k1, st.k7); // FSAL
            if (opt.dense || dir * (t1 - t) <= 0) {
                traj.t.push_back(t);
                traj.y.push_back(y);
            }
            // PI controller (Hairer DOPRI5 defaults).
            double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.7 / 5.0) *
                         std::pow(st.err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
            st.err_prev = std::max(err, 1e-16);
            h *= fac;
            last_rejected = false;
        } else {
            double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
            h *= fac;
            last_rejected = true;
        }
    }
    if (!opt.dense) {
        // ensure exactly [start, end] recorded
        if (traj.t.size() != 2) {
            traj.t = {t0, t};
            traj.y = {y0, y};
        }
    }
    return traj;
}

std::vector<std::vector<double>> integrate_path(const Rhs& rhs, std::size_t dim,
                                                const std::vector<double>& nodes,
                                                const std::vector<double>& y0,
                                                const OdeOptions& opt) {
    if (nodes.size() < 1) throw TooFewSamples("integrate_path needs nodes");
    std::vector<std::vector<double>> out;
    out.reserve(nodes.size());
    out.push_back(y0);
    std::vector<double> y = y0;
    OdeOptions o = opt;
    o.dense = false;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        Trajectory seg = integrate(rhs, dim, nodes[i - 1], nodes[i], y, o);
        y = seg.final_state();
        out.push_back(y);
    }
    return out;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, double* bracket_out, int max_iter) {
    if (bracket_out) *bracket_out = 0;
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw NoSignChange("no sign change over bracket");

    // Brent's method: inverse quadratic / secant with bisection fallback.
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = b - a; e = d; }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 1.11e-16 * std::abs(b) + 0.5 * x_tol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0) {
            if (bracket_out) *bracket_out = fb == 0 ? 0 : std::abs(c - b);
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                double q0 = fa / fc, r = fb / fc;
                p = s * (2 * xm * q0 * (q0 - r) - (b - a) * (r - 1));
                q = (q0 - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2 * p < std::min(3 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if (fb == 0) {
            if (bracket_out) *bracket_out = 0;
            return b;
        }
    }
    throw MaxIterations("root refinement did not converge");
}

double quadrature(const std::vector<double>& x, const std::vector<double>& f) {
    if (x.size() != f.size())
        throw TooFewSamples("abscissa/ordinate size mismatch");
    if (x.size() < 2)
        throw TooFewSamples("quadrature needs at least two samples");
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    return s;
}

double simpson_uniform(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw TooFewSamples("simpson needs at least three samples");
    std::size_t m = n - 1; // interval count
    double s = 0;
    std::size_t last = m;
    if (m % 2 != 0) {
        // n>=3 with odd interval count implies m>=3; close the final three
        // intervals with the 3/8 rule
        last = m - 3;
        s += 3.0 * h / 8.0 *
             (f[last] + 3 * f[last + 1] + 3 * f[last + 2] + f[last + 3]);
    }
    for (std::size_t i = 0; i + 2 <= last; i += 2)
        s += h / 3.0 * (f[i] + 4 * f[i + 1] + f[i + 2]);
    return s;
}

} // namespace zgkn::num
