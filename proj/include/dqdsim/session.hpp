#ifndef DQDSIM_SESSION_HPP
#define DQDSIM_SESSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "dqdsim/bath.hpp"
#include "dqdsim/config.hpp"
#include "dqdsim/expfit.hpp"
#include "dqdsim/steady_sweep.hpp"

namespace dqd {

// Everything derived from the bath-relevant parameters, cached on disk keyed
// by a content hash of (P, omega_c, d_cs, kT, tolerances, n_terms_max).
struct BathArtifacts {
    double eta = 1.0;
    double eta_2nd = 1.0;
    GammaEstimate gamma;
    LorFit lorfit;
    ExpFit weak_fit, fit11, fit22;
    double weak_heldout = 0.0, c11_heldout = 0.0, c22_heldout = 0.0;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

// One run's worth of pipeline state: config plus lazily computed artifacts.
class Session {
public:
    explicit Session(RunConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

    const RunConfig& config() const { return cfg_; }

    // compute-or-load; fit_bath() additionally (re)writes artifact files
    const BathArtifacts& bath();

    // writes all fit artifacts + metadata; returns the metadata text
    std::string fit_bath();

    // bias sweep to CSV at cfg.output_path (or an explicit path)
    void sweep_csv(const std::string& path);

    // single-point trajectory CSV (method must not be "both")
    void dynamics_csv(const std::string& path, double t_end, int samples);

    // invariant suite; exit-0 semantics = all passed
    std::vector<ValidationCheck> validate();

    // hash key identifying the bath artifact set
    std::string cache_key() const;

private:
    BathArtifacts compute_artifacts();
    void write_artifacts(const BathArtifacts& a, std::string* metadata_out);
    bool try_load_artifacts(BathArtifacts& a);

    RunConfig cfg_;
    std::optional<BathArtifacts> bath_;
};

// helper shared with tests: uniform grid [0, tau_max] of n samples
std::vector<double> uniform_grid(double tau_max, int n);

} // namespace dqd

#endif
