// dqdsim command line: fit-bath | sweep | dynamics | validate.
// Thin shell over the C API; all numerics live in the shared library.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqdsim.h"

namespace {

struct Flags {
    std::string config_path;
    std::map<std::string, std::string> values;
};

void add_config_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_path, "flat key = value config file");
    static const char* keys[] = {
        "epsilon", "delta",   "omega0",    "Omega0",        "P",
        "omega_c", "d_cs",    "kT",        "method",        "eps_min",
        "eps_max", "eps_steps", "rtol",    "atol",          "quad_tol",
        "fit_tol_kernel", "fit_tol_spectral", "steady_tol", "max_periods",
        "workers", "n_terms_max", "output_path", "cache_dir"};
    for (const char* key : keys) {
        cmd->add_option_function<std::string>(
            std::string("--") + key,
            [&flags, key](const std::string& v) { flags.values[key] = v; },
            std::string("config key ") + key);
    }
}

int fail(dqd_sim* sim, dqd_status st) {
    std::fprintf(stderr, "error: %s\n", dqd_sim_last_error(sim));
    return static_cast<int>(st);
}

int apply_config(dqd_sim* sim, const Flags& flags) {
    if (!flags.config_path.empty()) {
        const dqd_status st = dqd_sim_load_config(sim, flags.config_path.c_str());
        if (st != DQD_OK) return fail(sim, st);
    }
    for (const auto& [k, v] : flags.values) {
        const dqd_status st = dqd_sim_set(sim, k.c_str(), v.c_str());
        if (st != DQD_OK) return fail(sim, st);
    }
    const dqd_status st = dqd_sim_commit(sim);
    if (st != DQD_OK) return fail(sim, st);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state simulator for a driven double-quantum-dot qubit "
                 "coupled to a phonon bath"};
    app.require_subcommand(1);

    Flags fit_flags, sweep_flags, dyn_flags, val_flags;
    double t_end = 500.0;
    int samples = 1000;

    CLI::App* fit = app.add_subcommand("fit-bath", "fit spectral + correlation kernels, "
                                                   "write cached artifacts");
    add_config_flags(fit, fit_flags);
    CLI::App* swp = app.add_subcommand("sweep", "bias sweep of the time-averaged steady "
                                                "state to CSV");
    add_config_flags(swp, sweep_flags);
    CLI::App* dyn = app.add_subcommand("dynamics", "single-point population trajectory CSV");
    add_config_flags(dyn, dyn_flags);
    dyn->add_option("--t-end", t_end, "integration horizon (units 1/omega0)");
    dyn->add_option("--samples", samples, "number of output samples");
    CLI::App* val = app.add_subcommand("validate", "run the invariant suite");
    add_config_flags(val, val_flags);

    CLI11_PARSE(app, argc, argv);

    dqd_sim* sim = dqd_sim_new();
    if (!sim) {
        std::fprintf(stderr, "error: out of memory\n");
        return 2;
    }
    int rc = 0;
    if (fit->parsed()) {
        rc = apply_config(sim, fit_flags);
        if (rc == 0) {
            char* meta = nullptr;
            const dqd_status st = dqd_sim_fit_bath(sim, &meta);
            if (st != DQD_OK) rc = fail(sim, st);
            else {
                std::fputs(meta, stdout);
                dqd_string_free(meta);
            }
        }
    } else if (swp->parsed()) {
        rc = apply_config(sim, sweep_flags);
        if (rc == 0) {
            const dqd_status st = dqd_sim_sweep(sim, nullptr);
            if (st != DQD_OK) rc = fail(sim, st);
        }
    } else if (dyn->parsed()) {
        rc = apply_config(sim, dyn_flags);
        if (rc == 0) {
            const dqd_status st = dqd_sim_dynamics(sim, t_end, samples, nullptr);
            if (st != DQD_OK) rc = fail(sim, st);
        }
    } else if (val->parsed()) {
        rc = apply_config(sim, val_flags);
        if (rc == 0) {
            char* report = nullptr;
            int n_failed = 0;
            const dqd_status st = dqd_sim_validate(sim, &report, &n_failed);
            if (st != DQD_OK) rc = fail(sim, st);
            else {
                std::fputs(report, stdout);
                dqd_string_free(report);
                rc = n_failed == 0 ? 0 : 2;
            }
        }
    }
    dqd_sim_free(sim);
    return rc;
}
