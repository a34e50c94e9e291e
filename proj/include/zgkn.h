/* C interface to the zGKN Dirac bound-state solver.
 *
 * Every object returned through a ** out-parameter is owned by the caller
 * and released with the matching _free function; strings returned through
 * char** are released with zgkn_string_free. Calls never throw; failures
 * come back as a zgkn_status and the per-thread message from
 * zgkn_last_error_message(). All functions are thread-safe as long as a
 * given handle is not used from two threads at once.
 */
#ifndef ZGKN_H
#define ZGKN_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zgkn_status {
    ZGKN_OK = 0,
    ZGKN_ERR_INVALID_ARGUMENT = 1,
    ZGKN_ERR_STEP_UNDERFLOW = 2,
    ZGKN_ERR_NONFINITE_RHS = 3,
    ZGKN_ERR_INTEGRATION_FAILURE = 4,
    ZGKN_ERR_NO_SIGN_CHANGE = 5,
    ZGKN_ERR_MAX_ITERATIONS = 6,
    ZGKN_ERR_TOO_FEW_SAMPLES = 7,
    ZGKN_ERR_RING_SINGULARITY = 8,
    ZGKN_ERR_AXIS_SINGULARITY = 9,
    ZGKN_ERR_NO_BRANCH_FOUND = 10,
    ZGKN_ERR_OUT_OF_GAP = 11,
    ZGKN_ERR_TRUNCATION_TOO_SMALL = 12,
    ZGKN_ERR_INVALID_QUANTUM_NUMBERS = 13,
    ZGKN_ERR_PROFILE_UNDERFLOW = 14,
    ZGKN_ERR_ZERO_NORM = 15,
    ZGKN_ERR_UNKNOWN = 16
} zgkn_status;

const char* zgkn_version(void);
const char* zgkn_schema_version(void);
const char* zgkn_units_note(void);
const char* zgkn_status_name(zgkn_status status);

/* Message from the most recent failing call on the calling thread;
 * empty string when no call has failed yet. */
const char* zgkn_last_error_message(void);

void zgkn_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

typedef struct zgkn_config zgkn_config;

zgkn_config* zgkn_config_new(void);
void zgkn_config_free(zgkn_config* cfg);

/* Rejects unknown keys and malformed values. */
zgkn_status zgkn_config_set(zgkn_config* cfg, const char* key,
                            const char* value);

/* Flat "key = value" text file; '#' starts a comment line. */
zgkn_status zgkn_config_load_file(zgkn_config* cfg, const char* path);

/* *value_out receives an owned copy of the raw value, or NULL when the key
 * is not set. */
zgkn_status zgkn_config_get(const zgkn_config* cfg, const char* key,
                            char** value_out);

/* ---- closed forms and checks ------------------------------------------ */

/* Sommerfeld level at coupling alpha; principal number n >= kappa_s >= 1.
 * On invalid input returns NaN and sets *status (which may be NULL). */
double zgkn_sommerfeld_energy(int n, int kappa_s, double alpha,
                              zgkn_status* status);

/* Nonrelativistic binding -alpha^2/(2 n^2); NaN for n < 1. */
double zgkn_bohr_energy(int n, double alpha);

/* Sufficient conditions for a nonempty discrete spectrum inside the gap.
 * Uses keys a and gamma/Z; each out pointer may be NULL. Returns ZGKN_OK
 * even when a condition fails -- the flags carry the verdict. */
zgkn_status zgkn_check_conditions(const zgkn_config* cfg, int* ring_radius_ok,
                                  int* coupling_ok, double* threshold);

zgkn_status zgkn_conditions_json(const zgkn_config* cfg, char** out);

/* ---- point spectrum ---------------------------------------------------- */

typedef struct zgkn_spectrum zgkn_spectrum;

zgkn_status zgkn_spectrum_run(const zgkn_config* cfg, zgkn_spectrum** out);
void zgkn_spectrum_free(zgkn_spectrum* spec);

int zgkn_spectrum_count(const zgkn_spectrum* spec);
zgkn_status zgkn_spectrum_eigenvalue(const zgkn_spectrum* spec, int index,
                                     double* energy, double* lambda,
                                     double* kappa, int* n_theta,
                                     int* winding);
double zgkn_spectrum_symmetry_defect(const zgkn_spectrum* spec);
int zgkn_spectrum_gap_ok(const zgkn_spectrum* spec);

zgkn_status zgkn_spectrum_to_json(const zgkn_spectrum* spec, char** out);
zgkn_status zgkn_spectrum_to_csv(const zgkn_spectrum* spec, char** out);

/* Nearest Sommerfeld labels (1 <= kappa_s <= n <= n_max) for each computed
 * level with E > 0, as CSV / JSON tables. */
zgkn_status zgkn_spectrum_sommerfeld_match_csv(const zgkn_spectrum* spec,
                                               double alpha, int n_max,
                                               char** out);

/* ---- bound-state profiles ---------------------------------------------- */

typedef struct zgkn_boundstate zgkn_boundstate;

/* Runs the spectrum for cfg and reconstructs the lowest positive level
 * (the ground state); ZGKN_ERR_NO_BRANCH_FOUND when no E > 0 level exists. */
zgkn_status zgkn_groundstate_run(const zgkn_config* cfg,
                                 zgkn_boundstate** out);

/* Reconstructs the profile of one already-located eigenvalue. */
zgkn_status zgkn_boundstate_from_pair(const zgkn_config* cfg, double energy,
                                      double lambda, double kappa, int n_theta,
                                      zgkn_boundstate** out);

void zgkn_boundstate_free(zgkn_boundstate* st);

double zgkn_boundstate_energy(const zgkn_boundstate* st);
int zgkn_boundstate_radial_count(const zgkn_boundstate* st);
zgkn_status zgkn_boundstate_radial_row(const zgkn_boundstate* st, int index,
                                       double* r, double* density,
                                       double* ln_r_amp, double* omega);
zgkn_status zgkn_boundstate_weights(const zgkn_boundstate* st, double* w_plus,
                                    double* w_minus);

zgkn_status zgkn_boundstate_to_json(const zgkn_boundstate* st, char** out);
zgkn_status zgkn_boundstate_to_csv(const zgkn_boundstate* st, char** out);

/* ---- electromagnetic field grids --------------------------------------- */

typedef struct zgkn_fieldgrid zgkn_fieldgrid;

zgkn_status zgkn_fields_run(const zgkn_config* cfg, zgkn_fieldgrid** out);
void zgkn_fieldgrid_free(zgkn_fieldgrid* grid);

int zgkn_fieldgrid_count(const zgkn_fieldgrid* grid);
int zgkn_fieldgrid_skipped(const zgkn_fieldgrid* grid);
zgkn_status zgkn_fieldgrid_row(const zgkn_fieldgrid* grid, int index,
                               double* r, double* theta, int* sheet,
                               double* phi_el, double* e_r, double* e_z,
                               double* b_r, double* b_z);
zgkn_status zgkn_fieldgrid_to_csv(const zgkn_fieldgrid* grid, char** out);

/* ---- Sommerfeld tables -------------------------------------------------- */

zgkn_status zgkn_sommerfeld_table_csv(double alpha, int n_max, char** out);
zgkn_status zgkn_sommerfeld_table_json(const zgkn_config* cfg, double alpha,
                                       int n_max, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ZGKN_H */
