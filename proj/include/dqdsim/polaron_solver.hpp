#ifndef DQDSIM_POLARON_SOLVER_HPP
#define DQDSIM_POLARON_SOLVER_HPP

#include <memory>

#include "dqdsim/expfit.hpp"
#include "dqdsim/model.hpp"
#include "dqdsim/ode.hpp"
#include "dqdsim/solver.hpp"

namespace dqd {

// Full-polaron master equation in auxiliary-operator form, with
// sigma_1 = sigma_x, sigma_2 = sigma_y and C12 = C21 = 0:
//   drho'/dt = -i[H'_s(t), rho']
//              + sum_i sum_m i (Delta(t)/2) [sigma_i, D_{ii,m} rho' + rho' D_{ii,m}^dag]
//   dD_{ii,m}/dt = -i[H'_s(t), D_{ii,m}] + gamma_{ii,m} D_{ii,m}
//                  + i alpha_{ii,m} (Delta(t)/2) sigma_i
// The H.c. of the dissipator is resolved analytically into the single
// commutator above, which preserves trace and hermiticity exactly.
struct PolaronState {
    Op2 rho;
    std::vector<Op2> d11, d22;
    double t = 0.0;
};

PolaronState polaron_rhs(const PolaronState& state, const ModelParams& p, double eta,
                         const ExpFit& fit11, const ExpFit& fit22);

class PolaronSolver : public DrivenSolver {
public:
    PolaronSolver(const ModelParams& p, double eta, const ExpFit& fit11,
                  const ExpFit& fit22, const OdeOptions& opt = {});

    void reset(const Op2& rho0) override;
    void advance(double t_end, const std::vector<double>& sample_times,
                 const std::function<void(double, const Op2&)>& on_sample) override;
    double time() const override { return ode_->time(); }
    Op2 rho() const override;

private:
    ModelParams p_;
    double eta_;
    ExpFit fit11_, fit22_;
    std::unique_ptr<Dopri5> ode_;
};

// joint: one adaptive integration of the stacked (rho', D) system (default).
// frozen_d: integrates the autonomous D subsystem first, then rho' against
// dense Hermite interpolation of D; kept as a cross-check of the bilinear
// coupling path.
enum class PolaronStrategy { joint, frozen_d };

Trajectory integrate_polaron(const ModelParams& p, double eta, const ExpFit& fit11,
                             const ExpFit& fit22, const Op2& rho0, double t_end,
                             double rtol, double atol, int n_samples = 1000,
                             PolaronStrategy strategy = PolaronStrategy::joint);

} // namespace dqd

#endif
