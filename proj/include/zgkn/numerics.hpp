#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace zgkn::num {

// Right-hand side of an ODE system y' = f(t, y). The dimension is fixed by
// the integrate() call; f must write dim values into dydt.
using Rhs = std::function<void(double t, const double* y, double* dydt)>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    bool dense = false;               // record every accepted step
    std::size_t max_steps = 20'000'000;
};

struct Trajectory {
    std::vector<double> t;            // accepted nodes, t.front()=t0, t.back()=t1
    std::vector<std::vector<double>> y;
    const std::vector<double>& final_state() const { return y.back(); }
};

// Embedded Dormand-Prince 5(4) pair with PI step-size control. Integrates
// from t0 to t1 (either direction). Throws StepUnderflow when the accepted
// step falls below 1e-14*|t1-t0|, NonFiniteRhs on non-finite derivatives,
// IntegrationFailure when max_steps is exhausted.
Trajectory integrate(const Rhs& rhs, std::size_t dim, double t0, double t1,
                     const std::vector<double>& y0, const OdeOptions& opt = {});

// Integrates through a strictly monotone node sequence, returning the state
// at every node (y.size() == nodes.size(), y.front() == y0). Adaptive step
// state carries across node boundaries.
std::vector<std::vector<double>> integrate_path(const Rhs& rhs, std::size_t dim,
                                                const std::vector<double>& nodes,
                                                const std::vector<double>& y0,
                                                const OdeOptions& opt = {});

// Brent root bracketing refinement on [lo, hi]. Requires a sign change
// (NoSignChange otherwise), stops when the bracket width falls below x_tol
// or an exact zero is hit; MaxIterations after max_iter shrink steps.
// When bracket_out is given it receives the width of the final sign-change
// bracket around the returned root (0 on an exact zero hit): the honest
// localization bound even when f is a near-step whose value at the root
// stays large.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, double* bracket_out = nullptr,
                 int max_iter = 200);

// Trapezoid rule on arbitrary monotone sample points (>= 2, else
// TooFewSamples). Exact for linear integrands.
double quadrature(const std::vector<double>& x, const std::vector<double>& f);

// Composite Simpson on a uniform grid with spacing h; an odd interval count
// is closed with a Simpson 3/8 tail. Needs >= 3 samples.
double simpson_uniform(const std::vector<double>& f, double h);

} // namespace zgkn::num
