#include "dqdsim/bath.hpp"

#include <cmath>
#include <sstream>

#include "dqdsim/errors.hpp"
#include "dqdsim/quadrature.hpp"
#include "dqdsim/special.hpp"

namespace dqd {
namespace {

double beta_of(const ModelParams& p) {
    return p.kT > 0.0 ? 1.0 / p.kT : std::numeric_limits<double>::infinity();
}

// J(w)/w^2 with the small-w cancellation removed
double j_over_w2(double w, const ModelParams& p) {
    const double lorentz = 0.5 * p.P * w * p.omega_c * p.omega_c / (w * w + p.omega_c * p.omega_c);
    return lorentz * one_minus_sinc_over_w2(w, p.d_cs);
}

double upper_limit(const ModelParams& p) { return 100.0 * p.omega_c; }

// panel width resolving the sinc oscillation and (optionally) cos(w tau)
double panel_hint(const ModelParams& p, double tau) {
    double h = 0.25 * p.omega_c;
    if (p.d_cs > 0.0) h = std::min(h, M_PI / p.d_cs / 2.0);
    if (tau > 0.0) h = std::min(h, M_PI / tau / 2.0);
    return h;
}

} // namespace

double spectral_density(double omega, const ModelParams& p) {
    if (omega < 0.0) throw NumericError("spectral_density: omega must be >= 0");
    return j_over_w2(omega, p) * omega * omega;
}

double eta(const ModelParams& p, double quad_tol) {
    if (p.P == 0.0) return 1.0;
    const double beta = beta_of(p);
    QuadOptions opt;
    opt.rel_tol = quad_tol;
    opt.initial_panel = panel_hint(p, 0.0);
    const double integral = integrate(
        [&](double w) { return j_over_w2(w, p) * coth_half_beta(w, beta); }, 0.0,
        upper_limit(p), opt);
    return std::exp(-2.0 * integral);
}

double eta_second_order(const ModelParams& p, double quad_tol) {
    if (p.P == 0.0) return 1.0;
    QuadOptions opt;
    opt.rel_tol = quad_tol;
    opt.initial_panel = panel_hint(p, 0.0);
    const double integral =
        integrate([&](double w) { return j_over_w2(w, p); }, 0.0, upper_limit(p), opt);
    return 1.0 - 2.0 * integral;
}

cxd r_tau(const ModelParams& p, double tau, double quad_tol) {
    if (tau < 0.0) throw NumericError("r_tau: tau must be >= 0");
    if (p.P == 0.0) return cxd(0.0);
    const double beta = beta_of(p);
    QuadOptions opt;
    opt.rel_tol = quad_tol;
    opt.initial_panel = panel_hint(p, tau);
    const double re = integrate(
        [&](double w) {
            return j_over_w2(w, p) * coth_half_beta(w, beta) * std::cos(w * tau);
        },
        0.0, upper_limit(p), opt);
    const double im =
        integrate([&](double w) { return j_over_w2(w, p) * std::sin(w * tau); }, 0.0,
                  upper_limit(p), opt);
    return -4.0 * cxd(re, -im);
}

PolaronCorr corr_polaron(const ModelParams& p, double eta_val, double tau, double quad_tol) {
    const cxd r = r_tau(p, tau, quad_tol);
    const double e2 = eta_val * eta_val;
    return PolaronCorr{e2 * (std::cosh(r) - 1.0), -e2 * std::sinh(r)};
}

cxd lorfit_tail_integral(const LorFit& lorfit, double w0, double tau) {
    const LorPoles pr = lorfit_poles(lorfit);
    cxd acc(0.0);
    if (tau <= 0.0) {
        for (size_t j = 0; j < pr.z.size(); ++j) acc -= pr.r[j] * std::log(w0 - pr.z[j]);
        return acc;
    }
    const cxd edge = std::exp(cxd(0.0, -w0 * tau));
    for (size_t j = 0; j < pr.z.size(); ++j) {
        const cxd zeta = cxd(0.0, tau) * (w0 - pr.z[j]);
        acc += pr.r[j] * edge * expint_scaled(zeta);
    }
    return acc;
}

cxd corr_weak(const ModelParams& p, const LorFit& lorfit, double tau, double quad_tol,
              WeakKernelDomain domain) {
    if (tau < 0.0) throw NumericError("corr_weak: tau must be >= 0");
    if (p.P == 0.0 || lorfit.terms.empty()) return cxd(0.0);
    const double beta = beta_of(p);
    const double w0 = upper_limit(p);
    QuadOptions opt;
    opt.rel_tol = quad_tol;
    opt.initial_panel = panel_hint(p, tau);
    auto jt = [&](double w) {
        return lorfit.eval(w) * one_minus_sinc_over_w2(w, p.d_cs) * w * w;
    };
    const double re = integrate(
        [&](double w) { return jt(w) * coth_half_beta(w, beta) * std::cos(w * tau); }, 0.0,
        w0, opt);
    const double im =
        integrate([&](double w) { return jt(w) * std::sin(w * tau); }, 0.0, w0, opt);
    cxd c(re, -im);
    if (domain == WeakKernelDomain::extended) c += lorfit_tail_integral(lorfit, w0, tau);
    return c;
}

// ---------------------------------------------------------------------------
// batch samplers: fixed Gauss-Legendre panels + per-step rotation recurrence
// ---------------------------------------------------------------------------

namespace {

// 24-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric)
constexpr int kGL = 24;
constexpr double kGlX[12] = {
    0.064056892862605626, 0.191118867473616309, 0.315042679696163374,
    0.433793507626045138, 0.545421471388839536, 0.648093651936975569,
    0.740124191578554364, 0.820001985973902922, 0.886415527004401034,
    0.938274552002732759, 0.974728555971309498, 0.995187219997021360};
constexpr double kGlW[12] = {
    0.127938195346752157, 0.125837456346828296, 0.121670472927803391,
    0.115505668053725601, 0.107444270115965634, 0.097618652104113888,
    0.086190161531953276, 0.073346481411080306, 0.059298584915436781,
    0.044277438817419806, 0.028531388628933663, 0.012341229799987200};

struct GlMesh {
    std::vector<double> node, weight;
};

GlMesh make_mesh(double a, double b, double panel_w) {
    GlMesh m;
    const int np = std::max(1, static_cast<int>(std::ceil((b - a) / panel_w)));
    m.node.reserve(static_cast<size_t>(np) * kGL);
    m.weight.reserve(static_cast<size_t>(np) * kGL);
    for (int i = 0; i < np; ++i) {
        const double lo = a + (b - a) * i / np;
        const double hi = a + (b - a) * (i + 1) / np;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (int k = 0; k < 12; ++k) {
            m.node.push_back(c - h * kGlX[k]);
            m.weight.push_back(h * kGlW[k]);
            m.node.push_back(c + h * kGlX[k]);
            m.weight.push_back(h * kGlW[k]);
        }
    }
    return m;
}

// C(tau_j) = sum_i F1_i cos(w_i tau_j) - i F2_i sin(w_i tau_j) on a uniform
// tau grid, using complex rotations advanced once per step.
std::vector<cxd> cos_sin_transform(const GlMesh& mesh, const std::vector<double>& f1,
                                   const std::vector<double>& f2,
                                   const std::vector<double>& taus) {
    const size_t nw = mesh.node.size();
    const size_t nt = taus.size();
    std::vector<cxd> out(nt);
    if (nt == 0) return out;
    const double t0 = taus[0];
    const double dt = nt > 1 ? taus[1] - taus[0] : 0.0;
    std::vector<cxd> phase(nw), rot(nw);
    for (size_t i = 0; i < nw; ++i) {
        phase[i] = std::polar(1.0, mesh.node[i] * t0);
        rot[i] = std::polar(1.0, mesh.node[i] * dt);
    }
    for (size_t j = 0; j < nt; ++j) {
        double acc_c1 = 0.0, acc_s2 = 0.0;
        for (size_t i = 0; i < nw; ++i) {
            acc_c1 += f1[i] * phase[i].real();
            acc_s2 += f2[i] * phase[i].imag();
            phase[i] *= rot[i];
        }
        out[j] = cxd(acc_c1, -acc_s2);
    }
    return out;
}

double batch_panel_width(const ModelParams& p, double tau_max) {
    double h = 0.25 * p.omega_c;
    if (p.d_cs > 0.0) h = std::min(h, M_PI / p.d_cs / 2.0);
    if (tau_max > 0.0) h = std::min(h, 8.0 / tau_max);
    return h;
}

} // namespace

std::vector<cxd> sample_r_grid(const ModelParams& p, const std::vector<double>& taus) {
    if (taus.empty() || p.P == 0.0) return std::vector<cxd>(taus.size(), cxd(0.0));
    const double beta = beta_of(p);
    const GlMesh mesh = make_mesh(0.0, upper_limit(p), batch_panel_width(p, taus.back()));
    const size_t nw = mesh.node.size();
    std::vector<double> f1(nw), f2(nw);
    for (size_t i = 0; i < nw; ++i) {
        const double jw2 = j_over_w2(mesh.node[i], p);
        f1[i] = -4.0 * mesh.weight[i] * jw2 * coth_half_beta(mesh.node[i], beta);
        f2[i] = -4.0 * mesh.weight[i] * jw2;
    }
    return cos_sin_transform(mesh, f1, f2, taus);
}

std::vector<cxd> sample_weak_grid(const ModelParams& p, const LorFit& lorfit,
                                  const std::vector<double>& taus, WeakKernelDomain domain) {
    if (taus.empty() || p.P == 0.0 || lorfit.terms.empty())
        return std::vector<cxd>(taus.size(), cxd(0.0));
    const double beta = beta_of(p);
    const double w0 = upper_limit(p);
    const GlMesh mesh = make_mesh(0.0, w0, batch_panel_width(p, taus.back()));
    const size_t nw = mesh.node.size();
    std::vector<double> f1(nw), f2(nw);
    for (size_t i = 0; i < nw; ++i) {
        const double w = mesh.node[i];
        const double jt = lorfit.eval(w) * one_minus_sinc_over_w2(w, p.d_cs) * w * w;
        f1[i] = mesh.weight[i] * jt * coth_half_beta(w, beta);
        f2[i] = mesh.weight[i] * jt;
    }
    std::vector<cxd> out = cos_sin_transform(mesh, f1, f2, taus);
    if (domain == WeakKernelDomain::extended)
        for (size_t j = 0; j < taus.size(); ++j)
            out[j] += lorfit_tail_integral(lorfit, w0, taus[j]);
    return out;
}

GammaEstimate gamma_estimate(const ModelParams& p, double threshold) {
    GammaEstimate out;
    out.gamma = 0.5 * p.P * p.omega_c;
    const Splitting s = splitting_and_detuning(p);
    const double scale = std::max(p.drive, std::fabs(s.detuning));
    out.weak_coupling_ok = scale >= threshold * out.gamma;
    std::ostringstream os;
    os << "Gamma ~ P*omega_c/2 = " << out.gamma << "; Omega0 = " << p.drive
       << ", |detuning| = " << std::fabs(s.detuning) << "; criterion max(Omega0,|delta|) >= "
       << threshold << "*Gamma is " << (out.weak_coupling_ok ? "satisfied" : "violated");
    out.report = os.str();
    return out;
}

} // namespace dqd
