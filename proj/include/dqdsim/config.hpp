#ifndef DQDSIM_CONFIG_HPP
#define DQDSIM_CONFIG_HPP

#include <map>
#include <set>
#include <string>

#include "dqdsim/model.hpp"
#include "dqdsim/steady_sweep.hpp"

namespace dqd {

// Flat key = value configuration. The eight physical parameters are
// required; solver/sweep controls carry documented defaults. Unknown keys
// are errors (fail-closed).
struct RunConfig {
    // physics (required)
    double epsilon = 0.0;
    double delta = 0.0;
    double omega0 = 1.0;
    double Omega0 = 0.0;
    double P = 0.0;
    double omega_c = 2.0;
    double d_cs = 0.0;
    double kT = 0.0;

    // method / sweep grid
    std::string method = "both"; // weak | polaron | both
    double eps_min = 0.6;
    double eps_max = 1.6;
    int eps_steps = 101;

    // tolerances / limits
    double rtol = 1e-9;
    double atol = 1e-12;
    double quad_tol = 1e-8;
    double fit_tol_kernel = 1e-4;
    double fit_tol_spectral = 1e-3;
    double steady_tol = 1e-6;
    int max_periods = 2000;
    int workers = 0; // 0 -> hardware concurrency
    int n_terms_max = 128;
    std::string output_path = "out.csv";
    std::string cache_dir = "fit_cache";

    // model parameters normalized so that omega0 = 1 internally
    ModelParams model() const;
    std::set<Method> methods() const;
    void validate() const;
};

// Parse a config file; `overrides` (e.g. CLI flags) are applied afterwards
// and must use the same key names. Either source may supply required keys.
RunConfig parse_config(const std::string& path,
                       const std::map<std::string, std::string>& overrides = {});

// Overrides only (no file).
RunConfig parse_config_values(const std::map<std::string, std::string>& values);

// Syntax pass only: `key = value` lines, `#` comments, unknown keys and
// duplicates rejected; required-key completeness is not checked here.
std::map<std::string, std::string> read_config_file(const std::string& path);

} // namespace dqd

#endif
