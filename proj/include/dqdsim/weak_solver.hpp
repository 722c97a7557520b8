#ifndef DQDSIM_WEAK_SOLVER_HPP
#define DQDSIM_WEAK_SOLVER_HPP

#include <memory>

#include "dqdsim/expfit.hpp"
#include "dqdsim/model.hpp"
#include "dqdsim/ode.hpp"
#include "dqdsim/solver.hpp"

namespace dqd {

// Weak-coupling non-Markovian master equation in auxiliary-operator form:
//   drho/dt = -i[H_s(t), rho] - i[sigma_z, S + S^dag],  S = sum_m K_m
//   dK_m/dt = -i[H_s(t), K_m] + gamma_m K_m - i alpha_m sigma_z rho
// with K_m(0) = 0. The stacked state is (rho, K_1..K_M).
struct WeakState {
    Op2 rho;
    std::vector<Op2> aux;
    double t = 0.0;
};

// time derivative of a weak state (pure function; exposed for tests)
WeakState weak_rhs(const WeakState& state, const ModelParams& p, const ExpFit& fit);

class WeakSolver : public DrivenSolver {
public:
    WeakSolver(const ModelParams& p, const ExpFit& fit, const OdeOptions& opt = {});

    void reset(const Op2& rho0) override;
    void advance(double t_end, const std::vector<double>& sample_times,
                 const std::function<void(double, const Op2&)>& on_sample) override;
    double time() const override { return ode_->time(); }
    Op2 rho() const override;

private:
    ModelParams p_;
    ExpFit fit_;
    std::unique_ptr<Dopri5> ode_;
};

Trajectory integrate_weak(const ModelParams& p, const ExpFit& fit, const Op2& rho0,
                          double t_end, double rtol, double atol, int n_samples = 1000);

} // namespace dqd

#endif
