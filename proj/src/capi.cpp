#include "zgkn.h"

#include "zgkn/errors.hpp"
#include "zgkn/fields.hpp"
#include "zgkn/radial.hpp"
#include "zgkn/report.hpp"
#include "zgkn/spectrum.hpp"
#include "zgkn/version.hpp"
#include "zgkn/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <utility>

namespace {

thread_local std::string g_last_error;

zgkn_status status_from_code(const std::string& code) {
    static const std::pair<const char*, zgkn_status> table[] = {
        {"StepUnderflow", ZGKN_ERR_STEP_UNDERFLOW},
        {"NonFiniteRhs", ZGKN_ERR_NONFINITE_RHS},
        {"IntegrationFailure", ZGKN_ERR_INTEGRATION_FAILURE},
        {"NoSignChange", ZGKN_ERR_NO_SIGN_CHANGE},
        {"MaxIterations", ZGKN_ERR_MAX_ITERATIONS},
        {"TooFewSamples", ZGKN_ERR_TOO_FEW_SAMPLES},
        {"RingSingularity", ZGKN_ERR_RING_SINGULARITY},
        {"AxisSingularity", ZGKN_ERR_AXIS_SINGULARITY},
        {"NoBranchFound", ZGKN_ERR_NO_BRANCH_FOUND},
        {"OutOfGap", ZGKN_ERR_OUT_OF_GAP},
        {"TruncationTooSmall", ZGKN_ERR_TRUNCATION_TOO_SMALL},
        {"InvalidQuantumNumbers", ZGKN_ERR_INVALID_QUANTUM_NUMBERS},
        {"ProfileUnderflow", ZGKN_ERR_PROFILE_UNDERFLOW},
        {"ZeroNorm", ZGKN_ERR_ZERO_NORM},
    };
    for (const auto& [name, status] : table)
        if (code == name) return status;
    return ZGKN_ERR_UNKNOWN;
}

// Runs fn inside a catch-all and converts exceptions into status codes plus
// the thread-local message.
template <typename Fn>
zgkn_status guarded(Fn&& fn) {
    try {
        fn();
        return ZGKN_OK;
    } catch (const zgkn::Error& e) {
        g_last_error = e.what();
        return status_from_code(e.code());
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return ZGKN_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ZGKN_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown failure";
        return ZGKN_ERR_UNKNOWN;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

zgkn_status fail_invalid(const char* message) {
    g_last_error = message;
    return ZGKN_ERR_INVALID_ARGUMENT;
}

} // namespace

struct zgkn_config {
    zgkn::io::Config cfg;
};

struct zgkn_spectrum {
    zgkn::spectrum::SpectrumReport report;
    zgkn::io::Config cfg;
};

struct zgkn_boundstate {
    zgkn::wavefn::BoundState state;
    zgkn::io::Config cfg;
};

struct zgkn_fieldgrid {
    zgkn::fields::FieldGrid grid;
};

extern "C" {

const char* zgkn_version(void) { return zgkn::tool_version; }
const char* zgkn_schema_version(void) { return zgkn::schema_version; }
const char* zgkn_units_note(void) { return zgkn::units_note; }

const char* zgkn_status_name(zgkn_status status) {
    switch (status) {
    case ZGKN_OK: return "ok";
    case ZGKN_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case ZGKN_ERR_STEP_UNDERFLOW: return "step_underflow";
    case ZGKN_ERR_NONFINITE_RHS: return "nonfinite_rhs";
    case ZGKN_ERR_INTEGRATION_FAILURE: return "integration_failure";
    case ZGKN_ERR_NO_SIGN_CHANGE: return "no_sign_change";
    case ZGKN_ERR_MAX_ITERATIONS: return "max_iterations";
    case ZGKN_ERR_TOO_FEW_SAMPLES: return "too_few_samples";
    case ZGKN_ERR_RING_SINGULARITY: return "ring_singularity";
    case ZGKN_ERR_AXIS_SINGULARITY: return "axis_singularity";
    case ZGKN_ERR_NO_BRANCH_FOUND: return "no_branch_found";
    case ZGKN_ERR_OUT_OF_GAP: return "out_of_gap";
    case ZGKN_ERR_TRUNCATION_TOO_SMALL: return "truncation_too_small";
    case ZGKN_ERR_INVALID_QUANTUM_NUMBERS: return "invalid_quantum_numbers";
    case ZGKN_ERR_PROFILE_UNDERFLOW: return "profile_underflow";
    case ZGKN_ERR_ZERO_NORM: return "zero_norm";
    case ZGKN_ERR_UNKNOWN: break;
    }
    return "unknown";
}

const char* zgkn_last_error_message(void) { return g_last_error.c_str(); }

void zgkn_string_free(char* s) { std::free(s); }

/* ---- configuration ---------------------------------------------------- */

zgkn_config* zgkn_config_new(void) { return new (std::nothrow) zgkn_config; }

void zgkn_config_free(zgkn_config* cfg) { delete cfg; }

zgkn_status zgkn_config_set(zgkn_config* cfg, const char* key,
                            const char* value) {
    if (!cfg || !key || !value) return fail_invalid("null argument");
    return guarded([&] { cfg->cfg.set(key, value); });
}

zgkn_status zgkn_config_load_file(zgkn_config* cfg, const char* path) {
    if (!cfg || !path) return fail_invalid("null argument");
    return guarded([&] { cfg->cfg.load_file(path); });
}

zgkn_status zgkn_config_get(const zgkn_config* cfg, const char* key,
                            char** value_out) {
    if (!cfg || !key || !value_out) return fail_invalid("null argument");
    return guarded([&] {
        auto v = cfg->cfg.get(key);
        *value_out = v ? copy_string(*v) : nullptr;
    });
}

/* ---- closed forms and checks ------------------------------------------ */

double zgkn_sommerfeld_energy(int n, int kappa_s, double alpha,
                              zgkn_status* status) {
    double value = std::numeric_limits<double>::quiet_NaN();
    zgkn_status st = guarded(
        [&] { value = zgkn::spectrum::sommerfeld_energy(n, kappa_s, alpha); });
    if (status) *status = st;
    return value;
}

double zgkn_bohr_energy(int n, double alpha) {
    if (n < 1) return std::numeric_limits<double>::quiet_NaN();
    return zgkn::spectrum::bohr_energy(n, alpha);
}

zgkn_status zgkn_check_conditions(const zgkn_config* cfg, int* ring_radius_ok,
                                  int* coupling_ok, double* threshold) {
    if (!cfg) return fail_invalid("null argument");
    return guarded([&] {
        auto c = zgkn::spectrum::check_sufficient_conditions(
            cfg->cfg.model_params());
        if (ring_radius_ok) *ring_radius_ok = c.ring_radius_ok ? 1 : 0;
        if (coupling_ok) *coupling_ok = c.coupling_ok ? 1 : 0;
        if (threshold) *threshold = c.threshold;
    });
}

zgkn_status zgkn_conditions_json(const zgkn_config* cfg, char** out) {
    if (!cfg || !out) return fail_invalid("null argument");
    return guarded([&] {
        *out = copy_string(
            zgkn::io::conditions_json(cfg->cfg.model_params(), cfg->cfg));
    });
}

/* ---- point spectrum ---------------------------------------------------- */

zgkn_status zgkn_spectrum_run(const zgkn_config* cfg, zgkn_spectrum** out) {
    if (!cfg || !out) return fail_invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<zgkn_spectrum>();
        handle->report = zgkn::spectrum::point_spectrum(cfg->cfg.spectrum_request());
        handle->cfg = cfg->cfg;
        *out = handle.release();
    });
}

void zgkn_spectrum_free(zgkn_spectrum* spec) { delete spec; }

int zgkn_spectrum_count(const zgkn_spectrum* spec) {
    return spec ? static_cast<int>(spec->report.eigenvalues.size()) : 0;
}

zgkn_status zgkn_spectrum_eigenvalue(const zgkn_spectrum* spec, int index,
                                     double* energy, double* lambda,
                                     double* kappa, int* n_theta,
                                     int* winding) {
    if (!spec) return fail_invalid("null argument");
    if (index < 0 || index >= zgkn_spectrum_count(spec))
        return fail_invalid("eigenvalue index out of range");
    const auto& p = spec->report.eigenvalues[static_cast<std::size_t>(index)];
    if (energy) *energy = p.E;
    if (lambda) *lambda = p.lambda;
    if (kappa) *kappa = p.kappa;
    if (n_theta) *n_theta = p.n_theta;
    if (winding) *winding = p.winding;
    return ZGKN_OK;
}

double zgkn_spectrum_symmetry_defect(const zgkn_spectrum* spec) {
    return spec ? spec->report.symmetry_defect
                : std::numeric_limits<double>::quiet_NaN();
}

int zgkn_spectrum_gap_ok(const zgkn_spectrum* spec) {
    return spec && spec->report.gap_ok ? 1 : 0;
}

zgkn_status zgkn_spectrum_to_json(const zgkn_spectrum* spec, char** out) {
    if (!spec || !out) return fail_invalid("null argument");
    return guarded([&] {
        *out = copy_string(zgkn::io::spectrum_report_json(spec->report, spec->cfg));
    });
}

zgkn_status zgkn_spectrum_to_csv(const zgkn_spectrum* spec, char** out) {
    if (!spec || !out) return fail_invalid("null argument");
    return guarded(
        [&] { *out = copy_string(zgkn::io::spectrum_report_csv(spec->report)); });
}

zgkn_status zgkn_spectrum_sommerfeld_match_csv(const zgkn_spectrum* spec,
                                               double alpha, int n_max,
                                               char** out) {
    if (!spec || !out) return fail_invalid("null argument");
    return guarded([&] {
        auto rows = zgkn::spectrum::sommerfeld_comparison(spec->report, alpha, n_max);
        std::string s = "computed_E,n,kappa_s,sommerfeld_E,deviation\n";
        char buf[120];
        for (const auto& row : rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%.17g,%.17g\n",
                          row.computed_E, row.n, row.kappa_s, row.sommerfeld_E,
                          row.deviation);
            s += buf;
        }
        *out = copy_string(s);
    });
}

/* ---- bound-state profiles ---------------------------------------------- */

namespace {

zgkn_status reconstruct_into(const zgkn_config* cfg,
                             const zgkn::spectrum::EigenPair& pair,
                             zgkn_boundstate** out) {
    return guarded([&] {
        auto grids = zgkn::wavefn::default_grids(
            cfg->cfg.model_params().a,
            cfg->cfg.get_double("r_infinity", 0.0) > 0
                ? cfg->cfg.get_double("r_infinity", 0.0)
                : zgkn::radial::default_r_infinity(pair.E),
            cfg->cfg.profile_r_nodes(), cfg->cfg.profile_theta_nodes());
        auto handle = std::make_unique<zgkn_boundstate>();
        handle->state = zgkn::wavefn::reconstruct(
            pair, cfg->cfg.model_params(), &grids, cfg->cfg.ode_options(),
            cfg->cfg.get_double("r_infinity", 0.0),
            cfg->cfg.get_double("theta0", 1e-6));
        handle->cfg = cfg->cfg;
        *out = handle.release();
    });
}

} // namespace

zgkn_status zgkn_groundstate_run(const zgkn_config* cfg,
                                 zgkn_boundstate** out) {
    if (!cfg || !out) return fail_invalid("null argument");
    *out = nullptr;
    const zgkn::spectrum::EigenPair* ground = nullptr;
    zgkn::spectrum::SpectrumReport report;
    zgkn_status st = guarded([&] {
        report = zgkn::spectrum::point_spectrum(cfg->cfg.spectrum_request());
        for (const auto& p : report.eigenvalues)
            if (p.E > 0 && (!ground || p.E < ground->E)) ground = &p;
        if (!ground)
            throw zgkn::NoBranchFound(
                "no positive-energy level inside the scan window");
    });
    if (st != ZGKN_OK) return st;
    return reconstruct_into(cfg, *ground, out);
}

zgkn_status zgkn_boundstate_from_pair(const zgkn_config* cfg, double energy,
                                      double lambda, double kappa, int n_theta,
                                      zgkn_boundstate** out) {
    if (!cfg || !out) return fail_invalid("null argument");
    *out = nullptr;
    zgkn::spectrum::EigenPair pair;
    pair.E = energy;
    pair.lambda = lambda;
    pair.kappa = kappa;
    pair.n_theta = n_theta;
    return reconstruct_into(cfg, pair, out);
}

void zgkn_boundstate_free(zgkn_boundstate* st) { delete st; }

double zgkn_boundstate_energy(const zgkn_boundstate* st) {
    return st ? st->state.pair.E : std::numeric_limits<double>::quiet_NaN();
}

int zgkn_boundstate_radial_count(const zgkn_boundstate* st) {
    return st ? static_cast<int>(st->state.grids.r_nodes.size()) : 0;
}

zgkn_status zgkn_boundstate_radial_row(const zgkn_boundstate* st, int index,
                                       double* r, double* density,
                                       double* ln_r_amp, double* omega) {
    if (!st) return fail_invalid("null argument");
    if (index < 0 || index >= zgkn_boundstate_radial_count(st))
        return fail_invalid("radial row index out of range");
    auto i = static_cast<std::size_t>(index);
    if (r) *r = st->state.grids.r_nodes[i];
    if (density) *density = st->state.density[i];
    if (ln_r_amp) *ln_r_amp = st->state.lnR[i];
    if (omega) *omega = st->state.Omega[i];
    return ZGKN_OK;
}

zgkn_status zgkn_boundstate_weights(const zgkn_boundstate* st, double* w_plus,
                                    double* w_minus) {
    if (!st) return fail_invalid("null argument");
    if (w_plus) *w_plus = st->state.w_plus;
    if (w_minus) *w_minus = st->state.w_minus;
    return ZGKN_OK;
}

zgkn_status zgkn_boundstate_to_json(const zgkn_boundstate* st, char** out) {
    if (!st || !out) return fail_invalid("null argument");
    return guarded(
        [&] { *out = copy_string(zgkn::io::boundstate_json(st->state, st->cfg)); });
}

zgkn_status zgkn_boundstate_to_csv(const zgkn_boundstate* st, char** out) {
    if (!st || !out) return fail_invalid("null argument");
    return guarded(
        [&] { *out = copy_string(zgkn::io::boundstate_csv(st->state)); });
}

/* ---- electromagnetic field grids --------------------------------------- */

zgkn_status zgkn_fields_run(const zgkn_config* cfg, zgkn_fieldgrid** out) {
    if (!cfg || !out) return fail_invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<zgkn_fieldgrid>();
        handle->grid = zgkn::fields::field_grid(cfg->cfg.field_grid_spec(),
                                                cfg->cfg.model_params().a);
        *out = handle.release();
    });
}

void zgkn_fieldgrid_free(zgkn_fieldgrid* grid) { delete grid; }

int zgkn_fieldgrid_count(const zgkn_fieldgrid* grid) {
    return grid ? static_cast<int>(grid->grid.samples.size()) : 0;
}

int zgkn_fieldgrid_skipped(const zgkn_fieldgrid* grid) {
    return grid ? grid->grid.skipped : 0;
}

zgkn_status zgkn_fieldgrid_row(const zgkn_fieldgrid* grid, int index,
                               double* r, double* theta, int* sheet,
                               double* phi_el, double* e_r, double* e_z,
                               double* b_r, double* b_z) {
    if (!grid) return fail_invalid("null argument");
    if (index < 0 || index >= zgkn_fieldgrid_count(grid))
        return fail_invalid("field row index out of range");
    const auto& f = grid->grid.samples[static_cast<std::size_t>(index)];
    if (r) *r = f.r;
    if (theta) *theta = f.theta;
    if (sheet) *sheet = f.sheet;
    if (phi_el) *phi_el = f.phi_el;
    if (e_r) *e_r = f.E_R;
    if (e_z) *e_z = f.E_z;
    if (b_r) *b_r = f.B_R;
    if (b_z) *b_z = f.B_z;
    return ZGKN_OK;
}

zgkn_status zgkn_fieldgrid_to_csv(const zgkn_fieldgrid* grid, char** out) {
    if (!grid || !out) return fail_invalid("null argument");
    return guarded(
        [&] { *out = copy_string(zgkn::io::fieldgrid_csv(grid->grid)); });
}

/* ---- Sommerfeld tables -------------------------------------------------- */

zgkn_status zgkn_sommerfeld_table_csv(double alpha, int n_max, char** out) {
    if (!out) return fail_invalid("null argument");
    return guarded(
        [&] { *out = copy_string(zgkn::io::sommerfeld_table_csv(alpha, n_max)); });
}

zgkn_status zgkn_sommerfeld_table_json(const zgkn_config* cfg, double alpha,
                                       int n_max, char** out) {
    if (!cfg || !out) return fail_invalid("null argument");
    return guarded([&] {
        *out = copy_string(zgkn::io::sommerfeld_table_json(alpha, n_max, cfg->cfg));
    });
}

} /* extern "C" */
