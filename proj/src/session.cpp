#include "dqdsim/session.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include "dqdsim/errors.hpp"
#include "dqdsim/oracle.hpp"
#include "dqdsim/polaron_solver.hpp"
#include "dqdsim/special.hpp"
#include "dqdsim/weak_solver.hpp"

namespace fs = std::filesystem;

namespace dqd {

std::vector<double> uniform_grid(double tau_max, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = tau_max * i / (n - 1);
    return g;
}

namespace {

constexpr int kKernelSamples = 2048;     // polaron kernels
constexpr int kKernelSamplesWeak = 8192; // weak kernel carries fast pole decay
constexpr double kTauMaxDefault = 50.0;
constexpr double kTauMaxCap = 400.0;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<BathSample> to_samples(const std::vector<double>& taus,
                                   const std::vector<cxd>& vals) {
    std::vector<BathSample> s(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) s[i] = BathSample{taus[i], vals[i]};
    return s;
}

// slowest meaningful decay rate; representation terms below 2% L2
// contribution do not count as physical memory
double slowest_rate(const ExpFit& fit, double tau_max) {
    double total = 0.0;
    std::vector<double> w(fit.terms.size());
    for (size_t i = 0; i < fit.terms.size(); ++i) {
        const double re = std::min(fit.terms[i].gamma.real(), -1e-9);
        w[i] = std::abs(fit.terms[i].alpha) * std::sqrt(-std::expm1(2 * re * tau_max) / (-2 * re));
        total += w[i] * w[i];
    }
    total = std::sqrt(total);
    double slow = 1e9;
    for (size_t i = 0; i < fit.terms.size(); ++i)
        if (w[i] > 2e-2 * total) slow = std::min(slow, -fit.terms[i].gamma.real());
    return slow;
}

struct KernelFit {
    ExpFit fit;
    double heldout = 0.0;
};

KernelFit fit_one_kernel(const std::string& name, const ModelParams& p,
                         const std::function<std::vector<cxd>(const std::vector<double>&)>& eval,
                         double tol, int m_max, int n_samples,
                         const std::vector<cxd>& seeds) {
    double tau_max = kTauMaxDefault;
    KernelFit out;
    for (int pass = 0; pass < 2; ++pass) {
        const std::vector<double> taus = uniform_grid(tau_max, n_samples);
        ExpFitOptions opt;
        opt.kernel_name = name;
        opt.m_max = m_max;
        opt.seed_gammas = seeds;
        out.fit = fit_exponentials(to_samples(taus, eval(taus)), tol, opt);

        const double slow = slowest_rate(out.fit, tau_max);
        const double needed = std::min(std::max(kTauMaxDefault, 10.0 / slow), kTauMaxCap);
        if (needed <= 1.2 * tau_max || pass == 1) break;
        tau_max = needed;
    }
    const std::vector<double> taus2 = uniform_grid(tau_max, 2 * n_samples - 1);
    out.heldout = expfit_residual(out.fit, to_samples(taus2, eval(taus2)));
    return out;
}

} // namespace

std::string Session::cache_key() const {
    const ModelParams p = cfg_.model();
    std::string s;
    for (double v : {p.P, p.omega_c, p.d_cs, p.kT, cfg_.quad_tol, cfg_.fit_tol_kernel,
                     cfg_.fit_tol_spectral, double(cfg_.n_terms_max)})
        s += fmt17(v) + "|";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(s));
    return buf;
}

BathArtifacts Session::compute_artifacts() {
    const ModelParams p = cfg_.model();
    BathArtifacts a;
    a.eta = eta(p, cfg_.quad_tol);
    a.eta_2nd = eta_second_order(p, cfg_.quad_tol);
    a.gamma = gamma_estimate(p);

    a.lorfit = (p.P > 0.0)
                   ? fit_lorentzian_spectral(p, std::min(cfg_.n_terms_max, 12),
                                             100.0 * p.omega_c, cfg_.fit_tol_spectral)
                   : LorFit{};
    a.lorfit.omega_max = 100.0 * p.omega_c;

    // weak kernel: dense grid resolves the fast pole decay; the spectral-fit
    // poles seed the rate pool
    {
        std::vector<cxd> seeds;
        for (const auto& t : a.lorfit.terms) {
            seeds.push_back(cxd(-t.Gamma, t.Omega));
            seeds.push_back(cxd(-t.Gamma, -t.Omega));
        }
        auto eval = [&](const std::vector<double>& taus) {
            return sample_weak_grid(p, a.lorfit, taus, WeakKernelDomain::extended);
        };
        KernelFit kf = fit_one_kernel("weak", p, eval, cfg_.fit_tol_kernel,
                                      cfg_.n_terms_max, kKernelSamplesWeak, seeds);
        a.weak_fit = kf.fit;
        a.weak_heldout = kf.heldout;
    }

    // polaron kernels from the shared r(tau) samples
    {
        const double e2 = a.eta * a.eta;
        auto eval11 = [&](const std::vector<double>& taus) {
            std::vector<cxd> r = sample_r_grid(p, taus);
            for (auto& v : r) v = e2 * (std::cosh(v) - 1.0);
            return r;
        };
        auto eval22 = [&](const std::vector<double>& taus) {
            std::vector<cxd> r = sample_r_grid(p, taus);
            for (auto& v : r) v = -e2 * std::sinh(v);
            return r;
        };
        KernelFit k11 = fit_one_kernel("c11", p, eval11, cfg_.fit_tol_kernel,
                                       cfg_.n_terms_max, kKernelSamples, {});
        a.fit11 = k11.fit;
        a.c11_heldout = k11.heldout;
        KernelFit k22 = fit_one_kernel("c22", p, eval22, cfg_.fit_tol_kernel,
                                       cfg_.n_terms_max, kKernelSamples, {});
        a.fit22 = k22.fit;
        a.c22_heldout = k22.heldout;
    }
    return a;
}

bool Session::try_load_artifacts(BathArtifacts& a) {
    const fs::path dir(cfg_.cache_dir);
    const std::string key = cache_key();
    const fs::path meta = dir / (key + ".meta");
    if (!fs::exists(meta)) return false;
    try {
        std::ifstream is(meta);
        std::string magic, version;
        is >> magic >> version;
        if (magic != "dqdsim-bathmeta" || version != "v1") return false;
        std::string k;
        double weak_ok = 0;
        while (is >> k) {
            if (k == "eta") is >> a.eta;
            else if (k == "eta_2nd") is >> a.eta_2nd;
            else if (k == "gamma") is >> a.gamma.gamma;
            else if (k == "weak_coupling_ok") is >> weak_ok;
            else if (k == "weak_heldout") is >> a.weak_heldout;
            else if (k == "c11_heldout") is >> a.c11_heldout;
            else if (k == "c22_heldout") is >> a.c22_heldout;
            else {
                std::string skip;
                is >> skip;
            }
        }
        a.gamma = gamma_estimate(cfg_.model());
        a.lorfit = load_lorfit((dir / (key + ".lorfit")).string());
        a.weak_fit = load_expfit((dir / (key + ".weak.expfit")).string());
        a.fit11 = load_expfit((dir / (key + ".c11.expfit")).string());
        a.fit22 = load_expfit((dir / (key + ".c22.expfit")).string());
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

void Session::write_artifacts(const BathArtifacts& a, std::string* metadata_out) {
    const fs::path dir(cfg_.cache_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const std::string key = cache_key();

    std::vector<fs::path> written;
    auto finalize = [&](const fs::path& tmp, const fs::path& final) {
        fs::rename(tmp, final);
        written.push_back(final);
    };
    try {
        const fs::path lor_tmp = dir / (key + ".lorfit.tmp");
        save_lorfit(lor_tmp.string(), a.lorfit);
        finalize(lor_tmp, dir / (key + ".lorfit"));
        const struct {
            const char* suffix;
            const ExpFit* fit;
        } fits[] = {{".weak.expfit", &a.weak_fit},
                    {".c11.expfit", &a.fit11},
                    {".c22.expfit", &a.fit22}};
        for (const auto& f : fits) {
            const fs::path tmp = dir / (key + f.suffix + ".tmp");
            save_expfit(tmp.string(), *f.fit);
            finalize(tmp, dir / (key + std::string(f.suffix)));
        }

        std::ostringstream meta;
        meta << "dqdsim-bathmeta v1\n";
        meta << "eta " << fmt17(a.eta) << "\n";
        meta << "eta_2nd " << fmt17(a.eta_2nd) << "\n";
        meta << "gamma " << fmt17(a.gamma.gamma) << "\n";
        meta << "weak_coupling_ok " << (a.gamma.weak_coupling_ok ? 1 : 0) << "\n";
        meta << "lorfit_terms " << a.lorfit.terms.size() << "\n";
        meta << "lorfit_residual " << fmt17(a.lorfit.residual_linf) << "\n";
        meta << "weak_terms " << a.weak_fit.terms.size() << "\n";
        meta << "weak_residual " << fmt17(a.weak_fit.residual_l2) << "\n";
        meta << "weak_heldout " << fmt17(a.weak_heldout) << "\n";
        meta << "c11_terms " << a.fit11.terms.size() << "\n";
        meta << "c11_residual " << fmt17(a.fit11.residual_l2) << "\n";
        meta << "c11_heldout " << fmt17(a.c11_heldout) << "\n";
        meta << "c22_terms " << a.fit22.terms.size() << "\n";
        meta << "c22_residual " << fmt17(a.fit22.residual_l2) << "\n";
        meta << "c22_heldout " << fmt17(a.c22_heldout) << "\n";
        const fs::path meta_tmp = dir / (key + ".meta.tmp");
        {
            std::ofstream os(meta_tmp);
            if (!os) throw IoError("cannot write " + meta_tmp.string());
            os << meta.str();
        }
        finalize(meta_tmp, dir / (key + ".meta"));
        if (metadata_out) *metadata_out = meta.str();
    } catch (...) {
        for (const auto& f : written) fs::remove(f, ec);
        throw;
    }
}

const BathArtifacts& Session::bath() {
    if (!bath_) {
        BathArtifacts a;
        if (!try_load_artifacts(a)) {
            a = compute_artifacts();
            write_artifacts(a, nullptr);
        }
        bath_ = std::move(a);
    }
    return *bath_;
}

std::string Session::fit_bath() {
    BathArtifacts a = compute_artifacts();
    std::string meta;
    write_artifacts(a, &meta);
    bath_ = std::move(a);
    return meta;
}

void Session::sweep_csv(const std::string& path) {
    const BathArtifacts& a = bath();
    SweepInputs in;
    in.params = cfg_.model();
    in.eta = a.eta;
    in.weak_fit = a.weak_fit;
    in.fit11 = a.fit11;
    in.fit22 = a.fit22;
    in.rtol = cfg_.rtol;
    in.atol = cfg_.atol;
    in.steady.steady_tol = cfg_.steady_tol;
    in.steady.max_periods = cfg_.max_periods;

    std::vector<double> grid(cfg_.eps_steps);
    for (int i = 0; i < cfg_.eps_steps; ++i)
        grid[i] = cfg_.eps_steps == 1
                      ? cfg_.eps_min
                      : cfg_.eps_min + (cfg_.eps_max - cfg_.eps_min) * i / (cfg_.eps_steps - 1);

    const int workers =
        cfg_.workers > 0 ? cfg_.workers : std::max(1u, std::thread::hardware_concurrency());
    const std::vector<SweepRow> rows = sweep(in, grid, cfg_.methods(), workers);

    std::ofstream os(path);
    if (!os) throw IoError("cannot write sweep CSV '" + path + "'");
    os << "epsilon_over_w0,method,M0,min_eig_steady,converged,periods_used,residual\n";
    for (const auto& r : rows) {
        os << fmt17(r.epsilon) << ',' << method_name(r.method) << ',' << fmt17(r.result.M0)
           << ',' << fmt17(r.result.min_eig_steady) << ',' << (r.result.converged ? 1 : 0)
           << ',' << r.result.periods_used << ',' << fmt17(r.result.residual) << '\n';
    }
    if (!os) throw IoError("write failed for '" + path + "'");
}

void Session::dynamics_csv(const std::string& path, double t_end, int samples) {
    if (cfg_.method == "both")
        throw ConfigError("dynamics requires method = weak or polaron");
    if (!(t_end > 0.0) || samples < 2)
        throw ConfigError("dynamics requires t_end > 0 and samples >= 2");
    const ModelParams p = cfg_.model();
    Trajectory traj;
    if (cfg_.method == "weak") {
        const BathArtifacts& a = bath();
        traj = integrate_weak(p, a.weak_fit, Op2::proj_left(), t_end, cfg_.rtol, cfg_.atol,
                              samples);
    } else {
        const BathArtifacts& a = bath();
        traj = integrate_polaron(p, a.eta, a.fit11, a.fit22, Op2::proj_left(), t_end,
                                 cfg_.rtol, cfg_.atol, samples);
    }
    std::ofstream os(path);
    if (!os) throw IoError("cannot write dynamics CSV '" + path + "'");
    os << "t,population_right,trace_re,trace_im,herm_defect,eig_min\n";
    for (const auto& pt : traj.points)
        os << fmt17(pt.t) << ',' << fmt17(pt.population_right) << ','
           << fmt17(pt.trace.real()) << ',' << fmt17(pt.trace.imag()) << ','
           << fmt17(pt.herm_defect) << ',' << fmt17(pt.eig_min) << '\n';
    if (!os) throw IoError("write failed for '" + path + "'");
}

std::vector<ValidationCheck> Session::validate() {
    std::vector<ValidationCheck> checks;
    const ModelParams p = cfg_.model();
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back(ValidationCheck{name, ok, detail});
    };
    auto rel_ok = [](double actual, double expected, double tol) {
        if (expected == 0.0) return std::fabs(actual) <= 1e-12;
        return std::fabs(actual - expected) <= tol * std::fabs(expected);
    };

    // eta identities
    const double et = eta(p, cfg_.quad_tol);
    const cxd r0 = r_tau(p, 0.0, cfg_.quad_tol);
    const double two_ln_eta = (p.P > 0.0) ? 2.0 * std::log(et) : 0.0;
    add("eta_identity_r0", rel_ok(r0.real(), two_ln_eta, 1e-6),
        "Re r(0) = " + fmt17(r0.real()) + " vs 2 ln eta = " + fmt17(two_ln_eta));
    const PolaronCorr c0 = corr_polaron(p, et, 0.0, cfg_.quad_tol);
    const double c11_expect = 0.5 * std::pow(1.0 - et * et, 2);
    const double c22_expect = 0.5 * (1.0 - std::pow(et, 4));
    add("eta_identity_c11", rel_ok(c0.C11.real(), c11_expect, 1e-6),
        "C11(0) = " + fmt17(c0.C11.real()) + " vs " + fmt17(c11_expect));
    add("eta_identity_c22", rel_ok(c0.C22.real(), c22_expect, 1e-6),
        "C22(0) = " + fmt17(c0.C22.real()) + " vs " + fmt17(c22_expect));

    // fit residual certification against freshly sampled kernels
    try {
        const BathArtifacts& a = bath();
        bool ok = a.lorfit.residual_linf <= cfg_.fit_tol_spectral || p.P == 0.0;
        const double e2 = a.eta * a.eta;
        auto resid_of = [&](const ExpFit& f, int which) {
            const std::vector<double> taus = uniform_grid(kTauMaxDefault, 1024);
            std::vector<cxd> v;
            if (which == 0) v = sample_weak_grid(p, a.lorfit, taus, WeakKernelDomain::extended);
            else {
                v = sample_r_grid(p, taus);
                for (auto& x : v)
                    x = which == 1 ? e2 * (std::cosh(x) - 1.0) : -e2 * std::sinh(x);
            }
            return expfit_residual(f, to_samples(taus, v));
        };
        const double rw = resid_of(a.weak_fit, 0);
        const double r1 = resid_of(a.fit11, 1);
        const double r2 = resid_of(a.fit22, 2);
        // certification tolerance is looser than training because the
        // artifact may have been fitted on a longer grid
        const double lim = 5.0 * cfg_.fit_tol_kernel;
        ok = ok && rw <= lim && r1 <= lim && r2 <= lim;
        add("fit_certification", ok,
            "residuals weak/c11/c22 = " + fmt17(rw) + " " + fmt17(r1) + " " + fmt17(r2) +
                " (limit " + fmt17(lim) + ")");
        add("heldout_residuals",
            a.weak_heldout <= 5.0 * cfg_.fit_tol_kernel &&
                a.c11_heldout <= 5.0 * cfg_.fit_tol_kernel &&
                a.c22_heldout <= 5.0 * cfg_.fit_tol_kernel,
            "heldout weak/c11/c22 = " + fmt17(a.weak_heldout) + " " + fmt17(a.c11_heldout) +
                " " + fmt17(a.c22_heldout));
    } catch (const std::exception& e) {
        add("fit_certification", false, e.what());
    }

    // closed-system oracle at P = 0
    {
        ModelParams pc = p;
        pc.P = 0.0;
        ExpFit empty;
        const double t_end = 50.0;
        const int ns = 200;
        std::vector<double> times(ns + 1);
        for (int i = 0; i <= ns; ++i) times[i] = t_end * i / ns;
        const std::vector<double> ref =
            closed_system_populations(pc, Op2::proj_left(), times);
        const Trajectory tw =
            integrate_weak(pc, empty, Op2::proj_left(), t_end, cfg_.rtol, cfg_.atol, ns);
        const Trajectory tp = integrate_polaron(pc, 1.0, empty, empty, Op2::proj_left(),
                                                t_end, cfg_.rtol, cfg_.atol, ns);
        double worst = 0.0;
        for (int i = 0; i <= ns; ++i) {
            worst = std::max(worst, std::fabs(tw.points[i].population_right - ref[i]));
            worst = std::max(worst, std::fabs(tp.points[i].population_right - ref[i]));
        }
        add("closed_system_oracle", worst <= 1e-6,
            "max |population - RK4 oracle| = " + fmt17(worst));
    }

    // steady-state initial-state independence + conservation drift
    try {
        const BathArtifacts& a = bath();
        SteadyOptions so;
        so.steady_tol = cfg_.steady_tol;
        so.max_periods = cfg_.max_periods;
        OdeOptions ode;
        ode.rtol = cfg_.rtol;
        ode.atol = cfg_.atol;
        double worst_diff = 0.0, worst_trace = 0.0, worst_herm = 0.0;
        bool all_conv = true;
        std::string note;
        for (Method m : cfg_.methods()) {
            std::unique_ptr<DrivenSolver> solver;
            if (m == Method::weak)
                solver = std::make_unique<WeakSolver>(p, a.weak_fit, ode);
            else
                solver = std::make_unique<PolaronSolver>(p, a.eta, a.fit11, a.fit22, ode);
            const SteadyResult from_l = run_to_steady(*solver, p, so, Op2::proj_left());
            if (m == Method::weak && from_l.min_eig_steady < -1e-6) {
                note += std::string(method_name(m)) + ": skipped (positivity breakdown); ";
                continue;
            }
            const SteadyResult from_r = run_to_steady(*solver, p, so, Op2::proj_right());
            all_conv = all_conv && from_l.converged && from_r.converged;
            worst_diff = std::max(worst_diff, std::fabs(from_l.M0 - from_r.M0));
            worst_trace = std::max({worst_trace, from_l.max_trace_err, from_r.max_trace_err});
            worst_herm =
                std::max({worst_herm, from_l.max_herm_defect, from_r.max_herm_defect});
        }
        const double lim = std::max(1e-4, 10.0 * cfg_.steady_tol);
        add("initial_state_independence", all_conv && worst_diff <= lim,
            note + "|M0(l) - M0(r)| = " + fmt17(worst_diff) + " (limit " + fmt17(lim) + ")");
        add("conservation", worst_trace <= 1e-8 && worst_herm <= 1e-8,
            "max |tr-1| = " + fmt17(worst_trace) + ", max herm defect = " + fmt17(worst_herm));
    } catch (const std::exception& e) {
        add("initial_state_independence", false, e.what());
    }

    return checks;
}

} // namespace dqd
