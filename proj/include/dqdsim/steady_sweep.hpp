#ifndef DQDSIM_STEADY_SWEEP_HPP
#define DQDSIM_STEADY_SWEEP_HPP

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dqdsim/expfit.hpp"
#include "dqdsim/model.hpp"
#include "dqdsim/solver.hpp"

namespace dqd {

enum class Method { weak, polaron };

inline const char* method_name(Method m) { return m == Method::weak ? "weak" : "polaron"; }

struct SteadyResult {
    double M0 = 0.0;          // time-averaged steady-state right-dot population
    int periods_used = 0;
    bool converged = false;
    double min_eig_steady = 0.0; // min density eigenvalue over the final period
    double residual = 0.0;       // last period-to-period change of the average
    double max_trace_err = 0.0;  // max |tr rho - 1| over the whole run
    double max_herm_defect = 0.0;
};

struct SteadyOptions {
    double steady_tol = 1e-6;
    int max_periods = 2000;
    int samples_per_period = 64;
    int consecutive = 3; // periods below tol required to declare steady
};

// Integrates period by period; after each period computes the trapezoid
// average of the right-dot population and declares steady once the
// period-to-period change stays below steady_tol for `consecutive` periods.
// Returns converged = false (never throws) when max_periods runs out.
SteadyResult run_to_steady(DrivenSolver& solver, const ModelParams& p,
                           const SteadyOptions& opt, const Op2& rho0 = Op2::proj_left());

struct SweepRow {
    double epsilon;
    Method method;
    SteadyResult result;
    bool failed = false;      // integration error captured in-row
    std::string error;
};

// Everything a sweep point needs besides epsilon; fits and eta are computed
// once per parameter set and shared read-only across workers.
struct SweepInputs {
    ModelParams params;       // epsilon replaced per point
    double eta = 1.0;
    ExpFit weak_fit;
    ExpFit fit11, fit22;
    double rtol = 1e-9;
    double atol = 1e-12;
    SteadyOptions steady;
};

// Deterministic parallel sweep: rows ordered by epsilon then method,
// independent of worker count.
std::vector<SweepRow> sweep(const SweepInputs& in, const std::vector<double>& eps_grid,
                            const std::set<Method>& methods, int workers);

struct AsymmetryReport {
    bool applicable = false;
    double eps_star = 0.0;   // resonance bias, W(eps*) = omega0
    double blue_mean = 0.0;  // mean M0 over the blue-detuned window (W < omega0)
    double red_mean = 0.0;
    bool shoulder_detected = false;
    double plateau_mean = 0.0; // mean M0 over the detected plateau run
};

struct ShoulderOptions {
    double window_inner = 0.05; // delta: exclusion half-width around eps*
    double window_outer = 0.35; // w: analysis half-width
    double slope_fraction = 0.2;   // plateau slope threshold vs neighborhood median
    int min_run = 3;               // consecutive flat intervals required
    double baseline_factor = 2.0;  // plateau must exceed factor * far baseline
};

// Blue/red asymmetry means plus a plateau (steplike shoulder) detector on
// the blue-detuned side. Thresholds are conventions, overridable.
AsymmetryReport asymmetry_report(const std::vector<SweepRow>& rows, const ModelParams& p,
                                 const ShoulderOptions& opt = {});

} // namespace dqd

#endif
