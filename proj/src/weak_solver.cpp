#include "dqdsim/weak_solver.hpp"

namespace dqd {
namespace {

void pack(const Op2& rho, const std::vector<Op2>& aux, Dopri5::State& y) {
    y.resize(4 * (1 + aux.size()));
    for (int i = 0; i < 4; ++i) y[i] = rho.m[i];
    for (size_t m = 0; m < aux.size(); ++m)
        for (int i = 0; i < 4; ++i) y[4 * (m + 1) + i] = aux[m].m[i];
}

Op2 unpack_rho(const Dopri5::State& y) {
    Op2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = y[i];
    return r;
}

} // namespace

WeakState weak_rhs(const WeakState& state, const ModelParams& p, const ExpFit& fit) {
    const Op2 h = lab_hamiltonian(p, state.t);
    const Op2 sz = Op2::sigma_z();
    const cxd mi(0.0, -1.0);

    Op2 ksum = Op2::zero();
    for (const Op2& k : state.aux) ksum += k;

    WeakState d;
    d.t = 1.0;
    d.rho = mi * commutator(h, state.rho) + mi * commutator(sz, ksum + ksum.dagger());
    d.aux.resize(state.aux.size());
    for (size_t m = 0; m < state.aux.size(); ++m) {
        const ExpTerm& tm = fit.terms[m];
        d.aux[m] = mi * commutator(h, state.aux[m]) + tm.gamma * state.aux[m] +
                   mi * tm.alpha * (sz * state.rho);
    }
    return d;
}

WeakSolver::WeakSolver(const ModelParams& p, const ExpFit& fit, const OdeOptions& opt)
    : p_(p), fit_(fit) {
    p_.validate();
    const size_t m = fit_.terms.size();
    auto rhs = [this, m](double t, const Dopri5::State& y, Dopri5::State& dy) {
        const Op2 h = lab_hamiltonian(p_, t);
        const Op2 sz = Op2::sigma_z();
        const cxd mi(0.0, -1.0);
        Op2 rho = unpack_rho(y);

        Op2 ksum = Op2::zero();
        for (size_t k = 0; k < m; ++k)
            for (int i = 0; i < 4; ++i) ksum.m[i] += y[4 * (k + 1) + i];

        const Op2 drho =
            mi * commutator(h, rho) + mi * commutator(sz, ksum + ksum.dagger());
        for (int i = 0; i < 4; ++i) dy[i] = drho.m[i];

        const Op2 szrho = sz * rho;
        for (size_t k = 0; k < m; ++k) {
            Op2 kk;
            for (int i = 0; i < 4; ++i) kk.m[i] = y[4 * (k + 1) + i];
            const ExpTerm& tm = fit_.terms[k];
            const Op2 dk = mi * commutator(h, kk) + tm.gamma * kk + mi * tm.alpha * szrho;
            for (int i = 0; i < 4; ++i) dy[4 * (k + 1) + i] = dk.m[i];
        }
    };
    ode_ = std::make_unique<Dopri5>(rhs, opt);
    reset(Op2::proj_left());
}

void WeakSolver::reset(const Op2& rho0) {
    Dopri5::State y;
    pack(rho0, std::vector<Op2>(fit_.terms.size()), y);
    ode_->init(0.0, y);
}

void WeakSolver::advance(double t_end, const std::vector<double>& sample_times,
                         const std::function<void(double, const Op2&)>& on_sample) {
    ode_->advance(t_end, sample_times, [&](double t, const Dopri5::State& y) {
        on_sample(t, unpack_rho(y));
    });
}

Op2 WeakSolver::rho() const { return unpack_rho(ode_->state()); }

Trajectory sample_trajectory(DrivenSolver& solver, const Op2& rho0, double t_end,
                             int n_samples) {
    Trajectory traj;
    traj.points.reserve(n_samples + 1);
    solver.reset(rho0);
    std::vector<double> times(n_samples + 1);
    for (int i = 0; i <= n_samples; ++i) times[i] = t_end * i / n_samples;
    solver.advance(t_end, times, [&](double t, const Op2& rho) {
        const DensityChecks c = density_checks(rho);
        traj.points.push_back(
            TrajectoryPoint{t, population_right(rho), c.trace, c.herm_defect, c.eig_min});
    });
    return traj;
}

Trajectory integrate_weak(const ModelParams& p, const ExpFit& fit, const Op2& rho0,
                          double t_end, double rtol, double atol, int n_samples) {
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    WeakSolver solver(p, fit, opt);
    return sample_trajectory(solver, rho0, t_end, n_samples);
}

} // namespace dqd
