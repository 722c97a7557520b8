#include "dqdsim/steady_sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dqdsim/errors.hpp"
#include "dqdsim/polaron_solver.hpp"
#include "dqdsim/weak_solver.hpp"

namespace dqd {

SteadyResult run_to_steady(DrivenSolver& solver, const ModelParams& p,
                           const SteadyOptions& opt, const Op2& rho0) {
    if (!(p.omega0 > 0.0)) throw ConfigError("run_to_steady needs omega0 > 0");
    const double period = 2.0 * M_PI / p.omega0;
    const int ns = std::max(64, opt.samples_per_period);

    SteadyResult out;
    solver.reset(rho0);

    double prev_avg = 0.0;
    bool have_prev = false;
    int below = 0;

    std::vector<double> pops(ns + 1);
    std::vector<double> times(ns + 1);
    for (int k = 1; k <= opt.max_periods; ++k) {
        const double t0 = (k - 1) * period;
        for (int i = 0; i <= ns; ++i) times[i] = t0 + period * i / ns;

        double min_eig = 1.0;
        int idx = 0;
        solver.advance(t0 + period, times, [&](double, const Op2& rho) {
            const DensityChecks c = density_checks(rho);
            pops[idx++] = population_right(rho);
            min_eig = std::min(min_eig, c.eig_min);
            out.max_trace_err =
                std::max(out.max_trace_err, std::abs(c.trace - cxd(1.0)));
            out.max_herm_defect = std::max(out.max_herm_defect, c.herm_defect);
        });

        // composite trapezoid over the period
        double avg = 0.5 * (pops[0] + pops[ns]);
        for (int i = 1; i < ns; ++i) avg += pops[i];
        avg /= ns;

        out.M0 = avg;
        out.periods_used = k;
        out.min_eig_steady = min_eig;
        if (have_prev) {
            out.residual = std::fabs(avg - prev_avg);
            below = (out.residual <= opt.steady_tol) ? below + 1 : 0;
            if (below >= opt.consecutive) {
                out.converged = true;
                return out;
            }
        }
        prev_avg = avg;
        have_prev = true;
    }
    out.converged = false;
    return out;
}

namespace {

SweepRow run_point(const SweepInputs& in, double eps, Method method) {
    SweepRow row;
    row.epsilon = eps;
    row.method = method;
    ModelParams p = in.params;
    p.epsilon = eps;
    OdeOptions ode;
    ode.rtol = in.rtol;
    ode.atol = in.atol;
    try {
        if (method == Method::weak) {
            WeakSolver solver(p, in.weak_fit, ode);
            row.result = run_to_steady(solver, p, in.steady);
        } else {
            PolaronSolver solver(p, in.eta, in.fit11, in.fit22, ode);
            row.result = run_to_steady(solver, p, in.steady);
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        row.result.converged = false;
    }
    return row;
}

} // namespace

std::vector<SweepRow> sweep(const SweepInputs& in, const std::vector<double>& eps_grid,
                            const std::set<Method>& methods, int workers) {
    if (eps_grid.empty()) throw ConfigError("sweep: empty epsilon grid");
    if (!std::is_sorted(eps_grid.begin(), eps_grid.end()))
        throw ConfigError("sweep: epsilon grid must be ascending");

    struct Task {
        double eps;
        Method method;
    };
    std::vector<Task> tasks;
    for (double e : eps_grid)
        for (Method m : {Method::weak, Method::polaron})
            if (methods.count(m)) tasks.push_back(Task{e, m});

    std::vector<SweepRow> rows(tasks.size());
    const int nw = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    if (nw == 1) {
        for (size_t i = 0; i < tasks.size(); ++i)
            rows[i] = run_point(in, tasks[i].eps, tasks[i].method);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                rows[i] = run_point(in, tasks[i].eps, tasks[i].method);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

AsymmetryReport asymmetry_report(const std::vector<SweepRow>& rows, const ModelParams& p,
                                 const ShoulderOptions& opt) {
    AsymmetryReport rep;
    if (p.omega0 <= p.delta) return rep; // no resonance bias exists
    rep.eps_star = std::sqrt(p.omega0 * p.omega0 - p.delta * p.delta);

    // one M0 per epsilon (first method present; caller passes single-method rows)
    std::vector<double> eps, m0;
    for (const auto& r : rows) {
        if (r.failed) continue;
        if (!eps.empty() && r.epsilon == eps.back()) continue;
        eps.push_back(r.epsilon);
        m0.push_back(r.result.M0);
    }
    if (eps.size() < 8) return rep;

    const double lo_blue = rep.eps_star - opt.window_outer;
    const double hi_blue = rep.eps_star - opt.window_inner;
    const double lo_red = rep.eps_star + opt.window_inner;
    const double hi_red = rep.eps_star + opt.window_outer;
    if (eps.front() > lo_blue || eps.back() < hi_red) return rep;

    double bsum = 0, rsum = 0;
    int bn = 0, rn = 0;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] >= lo_blue && eps[i] <= hi_blue) {
            bsum += m0[i];
            ++bn;
        }
        if (eps[i] >= lo_red && eps[i] <= hi_red) {
            rsum += m0[i];
            ++rn;
        }
    }
    if (bn < 3 || rn < 3) return rep;
    rep.applicable = true;
    rep.blue_mean = bsum / bn;
    rep.red_mean = rsum / rn;

    // far-detuned baseline: mean over the outer 10% of grid points on each end
    const size_t tail = std::max<size_t>(2, eps.size() / 10);
    double base = 0;
    for (size_t i = 0; i < tail; ++i) base += m0[i] + m0[eps.size() - 1 - i];
    base /= 2.0 * tail;

    // plateau scan over blue-window intervals: |dM0/deps| below a fraction of
    // the window median while M0 stays above the baseline multiple
    std::vector<size_t> iv;    // interval index = left grid point
    std::vector<double> slope;
    for (size_t i = 0; i + 1 < eps.size(); ++i) {
        const double mid = 0.5 * (eps[i] + eps[i + 1]);
        if (mid < lo_blue || mid > hi_blue) continue;
        iv.push_back(i);
        slope.push_back(std::fabs((m0[i + 1] - m0[i]) / (eps[i + 1] - eps[i])));
    }
    if (slope.size() < static_cast<size_t>(opt.min_run)) return rep;
    std::vector<double> sorted = slope;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double med = sorted[sorted.size() / 2];

    // longest qualifying run wins
    int run = 0, best_run = 0;
    double run_sum = 0.0, best_sum = 0.0;
    auto flush = [&]() {
        if (run >= opt.min_run && run > best_run) {
            best_run = run;
            best_sum = run_sum;
        }
        run = 0;
        run_sum = 0.0;
    };
    for (size_t j = 0; j < slope.size(); ++j) {
        const size_t i = iv[j];
        const bool flat = slope[j] < opt.slope_fraction * med &&
                          std::min(m0[i], m0[i + 1]) > opt.baseline_factor * base;
        if (flat) {
            ++run;
            run_sum += 0.5 * (m0[i] + m0[i + 1]);
        } else {
            flush();
        }
    }
    flush();
    if (best_run > 0) {
        rep.shoulder_detected = true;
        rep.plateau_mean = best_sum / best_run;
    }
    return rep;
}

} // namespace dqd
