#include "dqdsim/polaron_solver.hpp"

#include <cmath>

namespace dqd {
namespace {

Op2 unpack_at(const Dopri5::State& y, size_t block) {
    Op2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = y[4 * block + i];
    return r;
}

void pack_at(Dopri5::State& y, size_t block, const Op2& op) {
    for (int i = 0; i < 4; ++i) y[4 * block + i] = op.m[i];
}

} // namespace

PolaronState polaron_rhs(const PolaronState& state, const ModelParams& p, double eta,
                         const ExpFit& fit11, const ExpFit& fit22) {
    const Op2 h = polaron_hamiltonian(p, eta, state.t);
    const double half_drive = 0.5 * drive_amplitude(p, state.t);
    const cxd mi(0.0, -1.0);
    const cxd pi_half(0.0, half_drive); // i * Delta(t)/2
    const Op2 sx = Op2::sigma_x();
    const Op2 sy = Op2::sigma_y();

    PolaronState d;
    d.t = 1.0;
    d.rho = mi * commutator(h, state.rho);

    Op2 acc1 = Op2::zero(), acc2 = Op2::zero();
    for (const Op2& dm : state.d11) acc1 += dm * state.rho + state.rho * dm.dagger();
    for (const Op2& dm : state.d22) acc2 += dm * state.rho + state.rho * dm.dagger();
    d.rho += pi_half * commutator(sx, acc1) + pi_half * commutator(sy, acc2);

    d.d11.resize(state.d11.size());
    for (size_t m = 0; m < state.d11.size(); ++m)
        d.d11[m] = mi * commutator(h, state.d11[m]) + fit11.terms[m].gamma * state.d11[m] +
                   pi_half * fit11.terms[m].alpha * sx;
    d.d22.resize(state.d22.size());
    for (size_t m = 0; m < state.d22.size(); ++m)
        d.d22[m] = mi * commutator(h, state.d22[m]) + fit22.terms[m].gamma * state.d22[m] +
                   pi_half * fit22.terms[m].alpha * sy;
    return d;
}

PolaronSolver::PolaronSolver(const ModelParams& p, double eta, const ExpFit& fit11,
                             const ExpFit& fit22, const OdeOptions& opt)
    : p_(p), eta_(eta), fit11_(fit11), fit22_(fit22) {
    p_.validate();
    const size_t m1 = fit11_.terms.size();
    const size_t m2 = fit22_.terms.size();
    auto rhs = [this, m1, m2](double t, const Dopri5::State& y, Dopri5::State& dy) {
        const Op2 h = polaron_hamiltonian(p_, eta_, t);
        const double half_drive = 0.5 * drive_amplitude(p_, t);
        const cxd mi(0.0, -1.0);
        const cxd pih(0.0, half_drive);
        const Op2 sx = Op2::sigma_x();
        const Op2 sy = Op2::sigma_y();

        const Op2 rho = unpack_at(y, 0);

        Op2 acc1 = Op2::zero(), acc2 = Op2::zero();
        for (size_t k = 0; k < m1; ++k) {
            const Op2 dm = unpack_at(y, 1 + k);
            acc1 += dm * rho + rho * dm.dagger();
        }
        for (size_t k = 0; k < m2; ++k) {
            const Op2 dm = unpack_at(y, 1 + m1 + k);
            acc2 += dm * rho + rho * dm.dagger();
        }
        Op2 drho = mi * commutator(h, rho);
        drho += pih * commutator(sx, acc1) + pih * commutator(sy, acc2);
        pack_at(dy, 0, drho);

        for (size_t k = 0; k < m1; ++k) {
            const Op2 dm = unpack_at(y, 1 + k);
            const Op2 dd = mi * commutator(h, dm) + fit11_.terms[k].gamma * dm +
                           pih * fit11_.terms[k].alpha * sx;
            pack_at(dy, 1 + k, dd);
        }
        for (size_t k = 0; k < m2; ++k) {
            const Op2 dm = unpack_at(y, 1 + m1 + k);
            const Op2 dd = mi * commutator(h, dm) + fit22_.terms[k].gamma * dm +
                           pih * fit22_.terms[k].alpha * sy;
            pack_at(dy, 1 + m1 + k, dd);
        }
    };
    ode_ = std::make_unique<Dopri5>(rhs, opt);
    reset(Op2::proj_left());
}

void PolaronSolver::reset(const Op2& rho0) {
    Dopri5::State y(4 * (1 + fit11_.terms.size() + fit22_.terms.size()), cxd(0.0));
    pack_at(y, 0, rho0);
    ode_->init(0.0, y);
}

void PolaronSolver::advance(double t_end, const std::vector<double>& sample_times,
                            const std::function<void(double, const Op2&)>& on_sample) {
    ode_->advance(t_end, sample_times, [&](double t, const Dopri5::State& y) {
        on_sample(t, unpack_at(y, 0));
    });
}

Op2 PolaronSolver::rho() const { return unpack_at(ode_->state(), 0); }

namespace {

// frozen-D route: integrate the autonomous D subsystem once, store dense
// values and derivatives, then drive rho' off cubic Hermite interpolation
Trajectory integrate_frozen_d(const ModelParams& p, double eta, const ExpFit& fit11,
                              const ExpFit& fit22, const Op2& rho0, double t_end,
                              const OdeOptions& opt, int n_samples) {
    const size_t m1 = fit11.terms.size();
    const size_t m2 = fit22.terms.size();
    const size_t nd = m1 + m2;
    const cxd mi(0.0, -1.0);
    const Op2 sx = Op2::sigma_x();
    const Op2 sy = Op2::sigma_y();

    auto d_rhs = [&](double t, const Dopri5::State& y, Dopri5::State& dy) {
        const Op2 h = polaron_hamiltonian(p, eta, t);
        const cxd pih(0.0, 0.5 * drive_amplitude(p, t));
        for (size_t k = 0; k < nd; ++k) {
            const bool first = k < m1;
            const ExpTerm& tm = first ? fit11.terms[k] : fit22.terms[k - m1];
            const Op2& sig = first ? sx : sy;
            const Op2 dm = unpack_at(y, k);
            pack_at(dy, k, mi * commutator(h, dm) + tm.gamma * dm + pih * tm.alpha * sig);
        }
    };

    const double dt_want = std::min(2.0 * M_PI / p.omega0 / 256.0, t_end / 64.0);
    const int n_steps = static_cast<int>(std::ceil(t_end / dt_want));
    const double dt_grid = t_end / n_steps;
    const int n_grid = n_steps + 1;
    std::vector<Dopri5::State> dval(n_grid), dder(n_grid);
    {
        Dopri5 dsolver(d_rhs, opt);
        Dopri5::State y0(4 * nd, cxd(0.0));
        dsolver.init(0.0, y0);
        std::vector<double> times(n_grid);
        for (int i = 0; i < n_grid; ++i) times[i] = dt_grid * i;
        dsolver.advance(t_end, times, [&](double t, const Dopri5::State& y) {
            const int idx = std::min(static_cast<int>(std::round(t / dt_grid)), n_grid - 1);
            dval[idx] = y;
            Dopri5::State dy(y.size());
            d_rhs(t, y, dy);
            dder[idx] = dy;
        });
    }

    auto d_interp = [&](double t, Dopri5::State& out) {
        const double s = std::clamp(t / dt_grid, 0.0, double(n_grid - 1));
        const int i0 = std::min(static_cast<int>(s), n_grid - 2);
        const double th = s - i0;
        const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
        const double h10 = th * (1 - th) * (1 - th);
        const double h01 = th * th * (3 - 2 * th);
        const double h11 = th * th * (th - 1);
        const size_t n = dval[i0].size();
        out.resize(n);
        for (size_t j = 0; j < n; ++j)
            out[j] = h00 * dval[i0][j] + dt_grid * h10 * dder[i0][j] +
                     h01 * dval[i0 + 1][j] + dt_grid * h11 * dder[i0 + 1][j];
    };

    Dopri5::State dnow;
    auto rho_rhs = [&](double t, const Dopri5::State& y, Dopri5::State& dy) {
        const Op2 h = polaron_hamiltonian(p, eta, t);
        const cxd pih(0.0, 0.5 * drive_amplitude(p, t));
        const Op2 rho = unpack_at(y, 0);
        d_interp(t, dnow);
        Op2 acc1 = Op2::zero(), acc2 = Op2::zero();
        for (size_t k = 0; k < nd; ++k) {
            Op2 dm;
            for (int i = 0; i < 4; ++i) dm.m[i] = dnow[4 * k + i];
            if (k < m1)
                acc1 += dm * rho + rho * dm.dagger();
            else
                acc2 += dm * rho + rho * dm.dagger();
        }
        Op2 drho = mi * commutator(h, rho);
        drho += pih * commutator(sx, acc1) + pih * commutator(sy, acc2);
        pack_at(dy, 0, drho);
    };

    Dopri5 rsolver(rho_rhs, opt);
    Dopri5::State y0(4, cxd(0.0));
    pack_at(y0, 0, rho0);
    rsolver.init(0.0, y0);

    Trajectory traj;
    std::vector<double> times(n_samples + 1);
    for (int i = 0; i <= n_samples; ++i) times[i] = t_end * i / n_samples;
    rsolver.advance(t_end, times, [&](double t, const Dopri5::State& y) {
        const Op2 rho = unpack_at(y, 0);
        const DensityChecks c = density_checks(rho);
        traj.points.push_back(
            TrajectoryPoint{t, population_right(rho), c.trace, c.herm_defect, c.eig_min});
    });
    return traj;
}

} // namespace

Trajectory integrate_polaron(const ModelParams& p, double eta, const ExpFit& fit11,
                             const ExpFit& fit22, const Op2& rho0, double t_end,
                             double rtol, double atol, int n_samples,
                             PolaronStrategy strategy) {
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    if (strategy == PolaronStrategy::frozen_d)
        return integrate_frozen_d(p, eta, fit11, fit22, rho0, t_end, opt, n_samples);
    PolaronSolver solver(p, eta, fit11, fit22, opt);
    return sample_trajectory(solver, rho0, t_end, n_samples);
}

} // namespace dqd
