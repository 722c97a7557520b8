/*
 * dqdsim C API: steady-state simulator for a driven two-level system
 * coupled to a structured phonon bath.
 *
 * Usage: create a handle, feed it configuration (a file, key/value
 * overrides, or both), then invoke commands. All functions returning
 * dqd_status are non-throwing; on failure query dqd_sim_last_error().
 */
#ifndef DQDSIM_H
#define DQDSIM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dqd_sim dqd_sim; /* opaque simulator session */

typedef enum dqd_status {
    DQD_OK = 0,
    DQD_ERR_CONFIG = 1, /* bad key, bad value, missing key, bad ranges */
    DQD_ERR_NUMERIC = 2, /* quadrature, fit or integration failure */
    DQD_ERR_IO = 3       /* unreadable config, unwritable output */
} dqd_status;

const char* dqd_version(void);

dqd_sim* dqd_sim_new(void);
void dqd_sim_free(dqd_sim* sim);

/* Merge keys from a flat `key = value` config file. */
dqd_status dqd_sim_load_config(dqd_sim* sim, const char* path);

/* Override a single key; unknown keys are rejected immediately. */
dqd_status dqd_sim_set(dqd_sim* sim, const char* key, const char* value);

/* Validate the accumulated configuration. Commands call this implicitly. */
dqd_status dqd_sim_commit(dqd_sim* sim);

/* Fit bath kernels, write artifacts into cache_dir; metadata text is
 * heap-allocated into *metadata (free with dqd_string_free). */
dqd_status dqd_sim_fit_bath(dqd_sim* sim, char** metadata);

/* Bias sweep to CSV. Passing NULL uses the configured output_path. */
dqd_status dqd_sim_sweep(dqd_sim* sim, const char* csv_path);

/* Single-point trajectory CSV (config method must be weak or polaron). */
dqd_status dqd_sim_dynamics(dqd_sim* sim, double t_end, int samples,
                            const char* csv_path);

/* Run the invariant suite. *n_failed receives the number of failed checks;
 * *report (optional) a printable pass/fail table. */
dqd_status dqd_sim_validate(dqd_sim* sim, char** report, int* n_failed);

/* Message for the most recent failing call on this handle. */
const char* dqd_sim_last_error(const dqd_sim* sim);

void dqd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DQDSIM_H */
