#include "dqdsim.h"

#include <cstring>
#include <map>
#include <optional>
#include <string>

#include "dqdsim/errors.hpp"
#include "dqdsim/session.hpp"

namespace {

const char* kVersion = "dqdsim 1.0.0";

const std::map<std::string, int>& known_keys() {
    static const std::map<std::string, int> keys = {
        {"epsilon", 0},     {"delta", 0},          {"omega0", 0},
        {"Omega0", 0},      {"P", 0},              {"omega_c", 0},
        {"d_cs", 0},        {"kT", 0},             {"method", 0},
        {"eps_min", 0},     {"eps_max", 0},        {"eps_steps", 0},
        {"rtol", 0},        {"atol", 0},           {"quad_tol", 0},
        {"fit_tol_kernel", 0}, {"fit_tol_spectral", 0}, {"steady_tol", 0},
        {"max_periods", 0}, {"workers", 0},        {"n_terms_max", 0},
        {"output_path", 0}, {"cache_dir", 0}};
    return keys;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct dqd_sim {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    std::optional<dqd::Session> session;
    std::string last_error;

    dqd::Session& committed() {
        if (!session) {
            dqd::RunConfig cfg = config_path.empty()
                                     ? dqd::parse_config_values(overrides)
                                     : dqd::parse_config(config_path, overrides);
            session.emplace(std::move(cfg));
        }
        return *session;
    }
};

namespace {

template <typename F>
dqd_status guarded(dqd_sim* sim, F&& body) {
    if (!sim) return DQD_ERR_CONFIG;
    try {
        body();
        sim->last_error.clear();
        return DQD_OK;
    } catch (const dqd::ConfigError& e) {
        sim->last_error = e.what();
        return DQD_ERR_CONFIG;
    } catch (const dqd::IoError& e) {
        sim->last_error = e.what();
        return DQD_ERR_IO;
    } catch (const std::exception& e) {
        sim->last_error = e.what();
        return DQD_ERR_NUMERIC;
    }
}

} // namespace

extern "C" {

const char* dqd_version(void) { return kVersion; }

dqd_sim* dqd_sim_new(void) { return new (std::nothrow) dqd_sim; }

void dqd_sim_free(dqd_sim* sim) { delete sim; }

dqd_status dqd_sim_load_config(dqd_sim* sim, const char* path) {
    return guarded(sim, [&] {
        if (!path) throw dqd::ConfigError("null config path");
        // syntax and key-name errors surface here; completeness at commit
        dqd::read_config_file(path);
        sim->config_path = path;
        sim->session.reset();
    });
}

dqd_status dqd_sim_set(dqd_sim* sim, const char* key, const char* value) {
    return guarded(sim, [&] {
        if (!key || !value) throw dqd::ConfigError("null key or value");
        if (!known_keys().count(key))
            throw dqd::ConfigError("unknown key '" + std::string(key) + "'");
        sim->overrides[key] = value;
        sim->session.reset();
    });
}

dqd_status dqd_sim_commit(dqd_sim* sim) {
    return guarded(sim, [&] { sim->committed(); });
}

dqd_status dqd_sim_fit_bath(dqd_sim* sim, char** metadata) {
    return guarded(sim, [&] {
        const std::string meta = sim->committed().fit_bath();
        if (metadata) *metadata = dup_string(meta);
    });
}

dqd_status dqd_sim_sweep(dqd_sim* sim, const char* csv_path) {
    return guarded(sim, [&] {
        dqd::Session& s = sim->committed();
        s.sweep_csv(csv_path ? csv_path : s.config().output_path);
    });
}

dqd_status dqd_sim_dynamics(dqd_sim* sim, double t_end, int samples, const char* csv_path) {
    return guarded(sim, [&] {
        dqd::Session& s = sim->committed();
        s.dynamics_csv(csv_path ? csv_path : s.config().output_path, t_end, samples);
    });
}

dqd_status dqd_sim_validate(dqd_sim* sim, char** report, int* n_failed) {
    return guarded(sim, [&] {
        const auto checks = sim->committed().validate();
        int failed = 0;
        std::string text;
        for (const auto& c : checks) {
            if (!c.passed) ++failed;
            text += (c.passed ? "[PASS] " : "[FAIL] ") + c.name + ": " + c.detail + "\n";
        }
        if (report) *report = dup_string(text);
        if (n_failed) *n_failed = failed;
    });
}

const char* dqd_sim_last_error(const dqd_sim* sim) {
    return sim ? sim->last_error.c_str() : "null handle";
}

void dqd_string_free(char* s) { std::free(s); }

} // extern "C"
