#pragma once

#include "zgkn/angular.hpp"
#include "zgkn/geometry.hpp"
#include "zgkn/numerics.hpp"
#include "zgkn/radial.hpp"

#include <vector>

namespace zgkn::spectrum {

// Relativistic Sommerfeld level for principal quantum number n >= 1 and
// angular label kappa_s in {1, ..., n}:
//   E = (1 + alpha^2/(n - kappa_s + sqrt(kappa_s^2 - alpha^2))^2)^(-1/2).
double sommerfeld_energy(int n, int kappa_s, double alpha);

// Non-relativistic binding reference: E_bind = -mu alpha^2/(2 n^2).
double bohr_energy(int n, double alpha, double mu = 1.0);

// Sufficient conditions for a complete point spectrum in the gap:
// (1) 2|a| < 1 and (2) gamma < sqrt(2|a|(1 - 2|a|)).
struct SufficientConditions {
    bool ring_radius_ok = false;
    bool coupling_ok = false;
    double threshold = 0;
    bool ok() const { return ring_radius_ok && coupling_ok; }
};
SufficientConditions check_sufficient_conditions(const geom::ModelParams& params);

struct EigenPair {
    double E = 0;
    double lambda = 0;
    double kappa = 0;
    int n_theta = 0;             // angular branch index
    int winding = 0;             // radial phase winding label
    double residual_angular = 0; // |sin(raw angular mismatch / 2)|
    // Width of the terminal energy bracket enclosing the radial
    // eigencondition crossing. The raw defect slips by 2 pi across a wall
    // that can be narrower than one ulp of E, so its value at any sampled
    // point is not a conditioning-safe measure; the bracket is.
    double residual_radial = 0;
};

struct ScanMetadata {
    double e_lo = 0, e_hi = 0;
    double scan_step = 0;
    double root_tol_requested = 0;
    double root_tol_used = 0;
    double dedup_tol = 0;
    int cells = 0;
    int threads = 0;
    long grid_evaluations = 0;
    long refine_evaluations = 0;
    bool eigenvalue_cap_hit = false;
};

struct SpectrumRequest {
    geom::ModelParams params;
    std::vector<double> kappas{0.5, -0.5};
    double e_lo = -1 + 1e-6;
    double e_hi = 1 - 1e-6;
    int max_branches = 2;        // angular branches per kappa channel
    int max_eigenvalues = 64;    // per (kappa, branch) cell
    double scan_step = 1e-3;
    double root_tol = 1e-11;     // refinement runs tighter; see metadata
    double dedup_tol = 1e-9;
    double r_infinity = 0;       // 0: per-energy default
    double theta0 = 1e-6;
    num::OdeOptions ode;
    bool override_conditions = false;
    bool allow_integer_kappa = false;
    int threads = 1;             // cells are distributed; output is
                                 // byte-identical for any thread count
};

struct SpectrumReport {
    geom::ModelParams params;
    std::vector<double> channels;      // kappa values searched
    std::vector<EigenPair> eigenvalues;
    SufficientConditions conditions;
    double symmetry_defect = 0;        // max_i min_j |E_i + E_j|
    bool gap_ok = true;                // all |E| < 1
    ScanMetadata scan;
};

// Scans the gap window for every (kappa, branch) cell: angular eigenvalue
// continuation in E, radial defect d(E), roots of sin(d/2) refined with
// find_root. Deterministic for any thread count. Throws OutOfGap when the
// window leaves (-1, 1) or when the sufficient conditions fail without
// override, InvalidQuantumNumbers for malformed kappa lists.
SpectrumReport point_spectrum(const SpectrumRequest& req);

// Pairing of computed levels with the Sommerfeld ladder at coupling alpha:
// nearest level over 1 <= kappa_s <= n <= n_max.
struct SommerfeldRow {
    double computed_E = 0;
    int n = 0;
    int kappa_s = 0;
    double sommerfeld_E = 0;
    double deviation = 0;
};
std::vector<SommerfeldRow> sommerfeld_comparison(const SpectrumReport& report,
                                                 double alpha, int n_max);

} // namespace zgkn::spectrum
