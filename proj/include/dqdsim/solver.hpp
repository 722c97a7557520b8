#ifndef DQDSIM_SOLVER_HPP
#define DQDSIM_SOLVER_HPP

#include <functional>
#include <vector>

#include "dqdsim/op2.hpp"

namespace dqd {

// lab-frame right-dot population; the |r><r| projector commutes with the
// polaron displacement, so the polaron-frame diagonal entry is the lab one
inline double population_right(const Op2& rho) { return rho(1, 1).real(); }

// Common driving surface for the steady-state machinery: both master
// equation integrators advance an internal stacked state and expose the
// reduced density matrix through dense-output samples.
class DrivenSolver {
public:
    virtual ~DrivenSolver() = default;

    // restart from t = 0 with the given density matrix (aux operators zeroed)
    virtual void reset(const Op2& rho0) = 0;

    // advance to t_end, reporting interpolated rho at each requested time
    virtual void advance(double t_end, const std::vector<double>& sample_times,
                         const std::function<void(double, const Op2&)>& on_sample) = 0;

    virtual double time() const = 0;
    virtual Op2 rho() const = 0;
};

// trajectory sampling share by both integrate_* entry points and the CLI
struct TrajectoryPoint {
    double t;
    double population_right;
    cxd trace;
    double herm_defect;
    double eig_min;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
};

Trajectory sample_trajectory(DrivenSolver& solver, const Op2& rho0, double t_end,
                             int n_samples);

} // namespace dqd

#endif
