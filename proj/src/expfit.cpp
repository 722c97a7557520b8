#include "dqdsim/expfit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dqdsim/errors.hpp"

namespace dqd {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// LorFit
// ---------------------------------------------------------------------------

double LorFit::eval(double omega) const {
    const double w2 = omega * omega;
    double s = 0.0;
    for (const auto& t : terms) {
        const double o2 = t.Omega * t.Omega;
        const double g2 = t.Gamma * t.Gamma;
        const double den = (w2 - o2) * (w2 - o2) + 2.0 * (w2 + o2) * g2 + g2 * g2;
        s += 4.0 * t.p * t.Omega * omega / den;
    }
    return s;
}

LorPoles lorfit_poles(const LorFit& fit) {
    LorPoles out;
    for (const auto& t : fit.terms) {
        const double q = 4.0 * t.p * t.Omega;
        const cxd iG(0.0, t.Gamma);
        const cxd zs[4] = {t.Omega + iG, t.Omega - iG, -t.Omega + iG, -t.Omega - iG};
        for (const cxd& z : zs) {
            // D(w) = ((w-Om)^2+Ga^2)((w+Om)^2+Ga^2); residue of q w/D at z
            const cxd zm = z - t.Omega, zp = z + t.Omega;
            const cxd g2 = cxd(t.Gamma * t.Gamma);
            const cxd dD = 2.0 * zm * (zp * zp + g2) + (zm * zm + g2) * 2.0 * zp;
            out.z.push_back(z);
            out.r.push_back(q * z / dD);
        }
    }
    return out;
}

namespace {

double lorentz_drude(double omega, double P, double wc) {
    return 0.5 * P * omega * wc * wc / (omega * omega + wc * wc);
}

struct LorGrid {
    std::vector<double> w;
    std::vector<double> target;
};

LorGrid make_lor_grid(double P, double wc, double omega_max, int n) {
    LorGrid g;
    const double lo = 1e-3;
    g.w.resize(n);
    g.target.resize(n);
    const double r = std::log(omega_max / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        g.w[i] = lo * std::exp(r * i);
        g.target[i] = lorentz_drude(g.w[i], P, wc);
    }
    return g;
}

double lor_linf(const LorFit& fit, double P, double wc, double omega_max) {
    const LorGrid g = make_lor_grid(P, wc, omega_max, 2000);
    double worst = 0.0;
    for (size_t i = 0; i < g.w.size(); ++i)
        worst = std::max(worst, std::fabs(fit.eval(g.w[i]) - g.target[i]) / g.target[i]);
    return worst;
}

// weighted linear LS for the p_k given fixed (Omega_k, Gamma_k)
VectorXd lor_solve_amplitudes(const LorGrid& g, const std::vector<double>& Om,
                              const std::vector<double>& Ga) {
    const int n = static_cast<int>(Om.size());
    const int m = static_cast<int>(g.w.size());
    MatrixXd A(m, n);
    for (int i = 0; i < m; ++i) {
        const double w2 = g.w[i] * g.w[i];
        for (int k = 0; k < n; ++k) {
            const double o2 = Om[k] * Om[k], g2 = Ga[k] * Ga[k];
            const double den = (w2 - o2) * (w2 - o2) + 2.0 * (w2 + o2) * g2 + g2 * g2;
            A(i, k) = 4.0 * Om[k] * g.w[i] / den / g.target[i];
        }
    }
    return A.colPivHouseholderQr().solve(VectorXd::Ones(m));
}

// residual vector (fit - target)/target for LM; q = (p_k, log Om_k, log Ga_k)
VectorXd lor_residual(const LorGrid& g, const VectorXd& q, int n) {
    VectorXd r(g.w.size());
    for (size_t i = 0; i < g.w.size(); ++i) {
        const double w = g.w[i], w2 = w * w;
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double Om = std::exp(q[n + k]), Ga = std::exp(q[2 * n + k]);
            const double o2 = Om * Om, g2 = Ga * Ga;
            const double den = (w2 - o2) * (w2 - o2) + 2.0 * (w2 + o2) * g2 + g2 * g2;
            s += 4.0 * q[k] * Om * w / den;
        }
        r[i] = (s - g.target[i]) / g.target[i];
    }
    return r;
}

void lor_lm_refine(const LorGrid& g, VectorXd& q, int n, int iters) {
    const int np = 3 * n;
    double lambda = 1e-3;
    VectorXd r = lor_residual(g, q, n);
    double cost = r.squaredNorm();
    for (int it = 0; it < iters; ++it) {
        MatrixXd J(r.size(), np);
        for (int k = 0; k < np; ++k) {
            const double h = 1e-6 * std::max(1.0, std::fabs(q[k]));
            VectorXd qp = q;
            qp[k] += h;
            J.col(k) = (lor_residual(g, qp, n) - r) / h;
        }
        const MatrixXd JtJ = J.transpose() * J;
        const VectorXd Jtr = J.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 40; ++tries) {
            MatrixXd H = JtJ;
            for (int k = 0; k < np; ++k)
                H(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
            const VectorXd dq = H.ldlt().solve(-Jtr);
            VectorXd qn = q + dq;
            VectorXd rn = lor_residual(g, qn, n);
            const double cn = rn.squaredNorm();
            if (cn < cost * (1.0 - 1e-16)) {
                q = qn;
                r = rn;
                cost = cn;
                lambda = std::max(lambda * 0.4, 1e-14);
                improved = true;
                break;
            }
            lambda *= 5.0;
        }
        if (!improved || lambda > 1e14) break;
    }
}

} // namespace

LorFit fit_lorentzian_spectral(const ModelParams& p, int n_terms, double omega_max,
                               double tol) {
    if (n_terms < 1) throw ConfigError("fit_lorentzian_spectral needs n_terms >= 1");
    if (omega_max <= 0.0) omega_max = 100.0 * p.omega_c;

    LorFit best;
    best.omega_max = omega_max;
    if (p.P == 0.0) {
        best.residual_linf = 0.0;
        return best;
    }

    const LorGrid grid = make_lor_grid(p.P, p.omega_c, omega_max, 500);
    double best_res = std::numeric_limits<double>::infinity();

    // deterministic multistart: geometric Omega ladder with a few fixed
    // width-to-center ratios
    const double ratios[] = {2.2, 0.9, 0.4};
    for (int n = 1; n <= n_terms; ++n) {
        for (double ratio : ratios) {
            std::vector<double> Om(n), Ga(n);
            const double om_lo = 0.25 * p.omega_c;
            const double om_hi = 0.45 * omega_max;
            for (int k = 0; k < n; ++k) {
                Om[k] = (n == 1) ? std::sqrt(om_lo * om_hi)
                                 : om_lo * std::pow(om_hi / om_lo, double(k) / (n - 1));
                Ga[k] = ratio * Om[k];
            }
            const VectorXd p0 = lor_solve_amplitudes(grid, Om, Ga);
            VectorXd q(3 * n);
            for (int k = 0; k < n; ++k) {
                q[k] = p0[k];
                q[n + k] = std::log(Om[k]);
                q[2 * n + k] = std::log(Ga[k]);
            }
            lor_lm_refine(grid, q, n, 500);

            LorFit fit;
            fit.omega_max = omega_max;
            for (int k = 0; k < n; ++k)
                fit.terms.push_back(
                    LorTerm{q[k], std::exp(q[n + k]), std::exp(q[2 * n + k])});
            fit.residual_linf = lor_linf(fit, p.P, p.omega_c, omega_max);
            if (fit.residual_linf < best_res) {
                best_res = fit.residual_linf;
                best = fit;
            }
            if (best_res <= tol) return best;
        }
    }
    std::ostringstream os;
    os << "spectral fit failed: best relative L_inf residual " << best_res << " > " << tol
       << " with up to " << n_terms << " terms";
    throw NumericError(os.str());
}

// ---------------------------------------------------------------------------
// ExpFit
// ---------------------------------------------------------------------------

cxd ExpFit::eval(double tau) const {
    cxd s(0.0);
    for (const auto& t : terms) s += t.alpha * std::exp(t.gamma * tau);
    return s;
}

cxd eval_expfit(const ExpFit& fit, double tau) { return fit.eval(tau); }

double expfit_residual(const ExpFit& fit, const std::vector<BathSample>& samples) {
    double num = 0.0, den = 0.0;
    for (const auto& s : samples) {
        num += std::norm(fit.eval(s.tau) - s.value);
        den += std::norm(s.value);
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

namespace {

struct Grid {
    std::vector<double> tau;
    VectorXcd y;
    double dt;
};

Grid check_grid(const std::vector<BathSample>& samples) {
    if (samples.size() < 8) throw ConfigError("fit_exponentials needs at least 8 samples");
    Grid g;
    const size_t n = samples.size();
    g.tau.resize(n);
    g.y.resize(n);
    const double t0 = samples[0].tau;
    const double dt = samples[1].tau - samples[0].tau;
    if (!(dt > 0.0)) throw ConfigError("fit_exponentials: samples not increasing in tau");
    const double span = samples.back().tau - t0;
    for (size_t i = 0; i < n; ++i) {
        const double expect = t0 + dt * double(i);
        if (std::fabs(samples[i].tau - expect) > 1e-9 * std::max(1.0, span))
            throw ConfigError("fit_exponentials requires a uniform tau grid");
        g.tau[i] = samples[i].tau;
        g.y[i] = samples[i].value;
    }
    g.dt = dt;
    return g;
}

// matrix-pencil pole extraction on (possibly strided) data
std::vector<cxd> matrix_pencil(const VectorXcd& y, double dt, int m_want, int np_target) {
    const int n_all = static_cast<int>(y.size());
    const int stride = std::max(1, (n_all + np_target - 1) / np_target);
    const int np = (n_all + stride - 1) / stride;
    if (np < 8) return {};
    const int L = np / 2;
    MatrixXcd H(np - L, L + 1);
    for (int i = 0; i < np - L; ++i)
        for (int j = 0; j <= L; ++j) H(i, j) = y[(i + j) * stride];

    Eigen::BDCSVD<MatrixXcd> svd(H, Eigen::ComputeThinV);
    const int m = std::min<int>(m_want, static_cast<int>(svd.singularValues().size()));
    if (m < 1) return {};
    const MatrixXcd V = svd.matrixV().leftCols(m);
    const MatrixXcd V1 = V.topRows(V.rows() - 1);
    const MatrixXcd V2 = V.bottomRows(V.rows() - 1);
    const MatrixXcd A = V1.colPivHouseholderQr().solve(V2);
    Eigen::ComplexEigenSolver<MatrixXcd> es(A, false);
    std::vector<cxd> out;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const cxd z = es.eigenvalues()[k];
        if (std::abs(z) < 1e-14) continue;
        cxd gm = std::log(z) / (dt * stride);
        if (gm.real() >= 0.0) gm = cxd(-std::max(std::fabs(gm.real()), 1e-3), gm.imag());
        out.push_back(gm);
    }
    return out;
}

MatrixXcd vandermonde(const std::vector<double>& tau, const std::vector<cxd>& gam) {
    MatrixXcd V(tau.size(), gam.size());
    for (size_t j = 0; j < gam.size(); ++j)
        for (size_t i = 0; i < tau.size(); ++i) V(i, j) = std::exp(gam[j] * tau[i]);
    return V;
}

struct LlsResult {
    VectorXcd alpha;
    VectorXcd resid;
    double rel;
};

LlsResult amp_lls(const std::vector<double>& tau, const VectorXcd& y,
                  const std::vector<cxd>& gam) {
    LlsResult out;
    if (gam.empty()) {
        out.resid = y;
        out.rel = 1.0;
        return out;
    }
    const MatrixXcd V = vandermonde(tau, gam);
    out.alpha = V.colPivHouseholderQr().solve(y);
    out.resid = V * out.alpha - y;
    out.rel = out.resid.norm() / y.norm();
    return out;
}

// L2[0, T] norm contribution of a term, used for pruning
double term_weight(const cxd& alpha, const cxd& gamma, double T) {
    const double re = std::min(gamma.real(), -1e-6);
    return std::abs(alpha) * std::sqrt(-std::expm1(2.0 * re * T) / (-2.0 * re));
}

// variable-projection LM with the Kaufman Jacobian; clamped rates. Terms
// whose decay is unresolvable on this grid stay frozen (amplitudes remain
// free through the inner linear solve).
double varpro(const std::vector<double>& tau, const VectorXcd& y, std::vector<cxd>& gam,
              VectorXcd& alpha, double re_min, double re_max, double im_max, int iters) {
    const double dt = tau.size() > 1 ? tau[1] - tau[0] : 1.0;
    const double re_freeze = -2.5 / dt;
    auto clamp = [&](cxd g) {
        return cxd(std::clamp(g.real(), re_min, re_max),
                   std::clamp(g.imag(), -im_max, im_max));
    };
    std::vector<int> free_idx;
    for (size_t k = 0; k < gam.size(); ++k) {
        if (gam[k].real() >= re_freeze) {
            gam[k] = clamp(gam[k]);
            free_idx.push_back(static_cast<int>(k));
        }
    }
    LlsResult cur = amp_lls(tau, y, gam);
    double cost = cur.resid.squaredNorm();
    double lambda = 1e-3;
    const int nf = static_cast<int>(free_idx.size());
    const int nt = static_cast<int>(tau.size());
    if (nf == 0) {
        alpha = cur.alpha;
        return cur.rel;
    }

    for (int it = 0; it < iters; ++it) {
        // J columns: d resid / d Re(g_k) = alpha_k tau e^{g_k tau}, d/d Im = i * that
        MatrixXcd Jc(nt, nf);
        for (int k = 0; k < nf; ++k) {
            const int j = free_idx[k];
            for (int i = 0; i < nt; ++i)
                Jc(i, k) = cur.alpha[j] * tau[i] * std::exp(gam[j] * tau[i]);
        }
        const MatrixXcd G = Jc.adjoint() * Jc;
        const VectorXcd pv = Jc.adjoint() * cur.resid;
        MatrixXd JtJ(2 * nf, 2 * nf);
        VectorXd Jtr(2 * nf);
        // real-valued normal equations over (Re g, Im g)
        for (int a = 0; a < nf; ++a) {
            Jtr[2 * a] = pv[a].real();
            Jtr[2 * a + 1] = pv[a].imag();
            for (int b = 0; b < nf; ++b) {
                const cxd hab = G(a, b);
                JtJ(2 * a, 2 * b) = hab.real();
                JtJ(2 * a, 2 * b + 1) = -hab.imag();
                JtJ(2 * a + 1, 2 * b) = hab.imag();
                JtJ(2 * a + 1, 2 * b + 1) = hab.real();
            }
        }
        bool improved = false;
        for (int tries = 0; tries < 25; ++tries) {
            MatrixXd H = JtJ;
            for (int k = 0; k < 2 * nf; ++k) H(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
            const VectorXd dq = H.ldlt().solve(-Jtr);
            std::vector<cxd> gn(gam);
            for (int k = 0; k < nf; ++k)
                gn[free_idx[k]] = clamp(gn[free_idx[k]] + cxd(dq[2 * k], dq[2 * k + 1]));
            LlsResult nxt = amp_lls(tau, y, gn);
            const double cn = nxt.resid.squaredNorm();
            if (cn < cost * (1.0 - 1e-15)) {
                gam = std::move(gn);
                cur = std::move(nxt);
                cost = cn;
                lambda = std::max(lambda * 0.5, 1e-14);
                improved = true;
                break;
            }
            lambda *= 6.0;
        }
        if (!improved || lambda > 1e13) break;
    }
    alpha = cur.alpha;
    return cur.rel;
}

void sort_terms(std::vector<ExpTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const ExpTerm& a, const ExpTerm& b) {
        const double na = std::abs(a.alpha), nb = std::abs(b.alpha);
        if (na != nb) return na > nb;
        if (a.gamma.real() != b.gamma.real()) return a.gamma.real() > b.gamma.real();
        return a.gamma.imag() < b.gamma.imag();
    });
}

} // namespace

ExpFit fit_exponentials(const std::vector<BathSample>& samples, double tol,
                        const ExpFitOptions& opt) {
    const Grid g = check_grid(samples);
    const int n = static_cast<int>(g.tau.size());
    const double T = g.tau.back();

    ExpFit fit;
    fit.kernel = opt.kernel_name;
    const double ynorm = g.y.norm();
    if (ynorm < 1e-300) {
        fit.residual_l2 = 0.0;
        return fit; // identically zero kernel (e.g. P = 0)
    }

    // remainder after removing the analytically known part
    VectorXcd z = g.y;
    for (const auto& ft : opt.fixed_terms)
        for (int i = 0; i < n; ++i) z[i] -= ft.alpha * std::exp(ft.gamma * g.tau[i]);

    const double re_min = (opt.re_min != 0.0) ? opt.re_min : -3.0 / g.dt;
    const double im_max = (opt.im_max != 0.0) ? opt.im_max : 0.85 * M_PI / g.dt;
    const double re_max = -1e-2 / T;

    const int n_fixed = static_cast<int>(opt.fixed_terms.size());
    const int budget = opt.m_max - n_fixed;
    if (budget < 1)
        throw ConfigError("fit_exponentials: m_max leaves no room beyond fixed terms");

    // strided copy for the refinement stage keeps LM affordable
    const int rstride = std::max(1, n / 2048);
    std::vector<double> tau_r;
    VectorXcd z_r(
        (n + rstride - 1) / rstride);
    for (int i = 0, k = 0; i < n; i += rstride, ++k) {
        tau_r.push_back(g.tau[i]);
        z_r[k] = z[i];
    }

    const double znorm = z.norm();
    std::vector<cxd> best_gam;
    VectorXcd best_alpha;
    double best_rel = std::numeric_limits<double>::infinity();

    auto record = [&](std::vector<cxd>& gam) {
        LlsResult fin = amp_lls(g.tau, z, gam);
        if (fin.rel < best_rel) {
            best_rel = fin.rel;
            best_gam = gam;
            best_alpha = fin.alpha;
        }
        return fin.rel;
    };
    auto prune_to = [&](std::vector<cxd> pool, int limit) {
        LlsResult lls = amp_lls(g.tau, z, pool);
        std::vector<int> idx(pool.size());
        for (size_t i = 0; i < pool.size(); ++i) idx[i] = static_cast<int>(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return term_weight(lls.alpha[a], pool[a], T) >
                   term_weight(lls.alpha[b], pool[b], T);
        });
        std::vector<cxd> gam;
        for (int i = 0; i < std::min<int>(limit, static_cast<int>(idx.size())); ++i)
            gam.push_back(pool[idx[i]]);
        return gam;
    };
    const double goal = 0.9 * tol * ynorm / std::max(znorm, 1e-300);

    if (znorm > 1e-14 * ynorm) {
        std::vector<cxd> seeds;
        for (const cxd& s : opt.seed_gammas)
            if (s.real() < 0.0) seeds.push_back(s);

        // stage 1: two-scale matrix pencil (+ seeds). The unstrided head run
        // sees fast rates that subsampling aliases away; the strided run
        // covers slow structure.
        std::vector<cxd> pool = matrix_pencil(z, g.dt, std::min(24, budget), 1024);
        {
            const int head = std::min<int>(n, 768);
            const VectorXcd zh = z.head(head);
            std::vector<cxd> fast = matrix_pencil(zh, g.dt, 16, head);
            pool.insert(pool.end(), fast.begin(), fast.end());
        }
        pool.insert(pool.end(), seeds.begin(), seeds.end());
        std::vector<cxd> gam = prune_to(std::move(pool), std::min(36, budget));
        VectorXcd alpha;
        varpro(tau_r, z_r, gam, alpha, re_min, re_max, im_max, 250);
        record(gam);

        // stage 2: damped Fourier ladder digs into delayed-echo structure
        // that strictly decaying pencil modes cannot reach
        if (best_rel > goal && budget - static_cast<int>(best_gam.size()) >= 8) {
            std::vector<cxd> pool2 = best_gam;
            const int k_max = (budget - static_cast<int>(pool2.size()) - 1) / 2;
            for (int k = -k_max; k <= k_max; ++k)
                pool2.push_back(cxd(-2.0 / T, 2.0 * M_PI * k / T));
            std::vector<cxd> gam2 = prune_to(std::move(pool2), budget);
            varpro(tau_r, z_r, gam2, alpha, re_min, re_max, im_max, 350);
            record(gam2);
        }
    }

    // drop negligible terms, re-solve amplitudes once
    if (!best_gam.empty()) {
        const double floor_w = 1e-12 * ynorm * std::sqrt(g.dt);
        std::vector<cxd> kept;
        for (size_t k = 0; k < best_gam.size(); ++k)
            if (term_weight(best_alpha[static_cast<int>(k)], best_gam[k], T) > floor_w)
                kept.push_back(best_gam[k]);
        if (kept.size() != best_gam.size() && !kept.empty()) {
            LlsResult fin = amp_lls(g.tau, z, kept);
            best_gam = kept;
            best_alpha = fin.alpha;
        }
    }

    // merge fixed + fitted, certify on the original data
    for (const auto& ft : opt.fixed_terms) fit.terms.push_back(ft);
    for (size_t k = 0; k < best_gam.size(); ++k)
        fit.terms.push_back(ExpTerm{best_alpha[static_cast<int>(k)], best_gam[k]});
    sort_terms(fit.terms);
    fit.residual_l2 = expfit_residual(fit, samples);

    for (const auto& t : fit.terms)
        if (t.gamma.real() >= 0.0)
            throw NumericError("fit_exponentials produced a non-decaying term");
    if (fit.residual_l2 > tol) {
        std::ostringstream os;
        os << "exponential fit failed for '" << opt.kernel_name << "': residual "
           << fit.residual_l2 << " > " << tol << " with " << fit.terms.size() << " terms (m_max "
           << opt.m_max << ")";
        throw NumericError(os.str());
    }
    return fit;
}

// ---------------------------------------------------------------------------
// artifact I/O (17 significant digits; round-trips doubles exactly)
// ---------------------------------------------------------------------------

void save_expfit(const std::string& path, const ExpFit& fit) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    char buf[512];
    std::snprintf(buf, sizeof buf, "expfit v1 %s %zu %.17g\n", fit.kernel.c_str(),
                  fit.terms.size(), fit.residual_l2);
    os << buf;
    for (const auto& t : fit.terms) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", t.alpha.real(),
                      t.alpha.imag(), t.gamma.real(), t.gamma.imag());
        os << buf;
    }
    if (!os) throw IoError("write failed for " + path);
}

ExpFit load_expfit(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read " + path);
    std::string magic, version;
    size_t n = 0;
    ExpFit fit;
    is >> magic >> version >> fit.kernel >> n >> fit.residual_l2;
    if (!is || magic != "expfit" || version != "v1")
        throw IoError("bad expfit header in " + path);
    for (size_t i = 0; i < n; ++i) {
        double ar, ai, gr, gi;
        if (!(is >> ar >> ai >> gr >> gi)) throw IoError("truncated expfit file " + path);
        fit.terms.push_back(ExpTerm{cxd(ar, ai), cxd(gr, gi)});
    }
    return fit;
}

void save_lorfit(const std::string& path, const LorFit& fit) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    char buf[512];
    std::snprintf(buf, sizeof buf, "lorfit v1 %zu %.17g %.17g\n", fit.terms.size(),
                  fit.residual_linf, fit.omega_max);
    os << buf;
    for (const auto& t : fit.terms) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", t.p, t.Omega, t.Gamma);
        os << buf;
    }
    if (!os) throw IoError("write failed for " + path);
}

LorFit load_lorfit(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read " + path);
    std::string magic, version;
    size_t n = 0;
    LorFit fit;
    is >> magic >> version >> n >> fit.residual_linf >> fit.omega_max;
    if (!is || magic != "lorfit" || version != "v1")
        throw IoError("bad lorfit header in " + path);
    for (size_t i = 0; i < n; ++i) {
        LorTerm t;
        if (!(is >> t.p >> t.Omega >> t.Gamma)) throw IoError("truncated lorfit file " + path);
        fit.terms.push_back(t);
    }
    return fit;
}

} // namespace dqd
