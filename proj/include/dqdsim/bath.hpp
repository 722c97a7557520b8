#ifndef DQDSIM_BATH_HPP
#define DQDSIM_BATH_HPP

#include <string>
#include <vector>

#include "dqdsim/expfit.hpp"
#include "dqdsim/model.hpp"

namespace dqd {

// J(w) = (P/2) w wc^2/(w^2+wc^2) [1 - sinc(d_cs w)], sinc x = sin x / x.
// Throws on negative omega.
double spectral_density(double omega, const ModelParams& p);

// eta = exp[-2 int_0^{100 wc} dw (J/w^2) coth(beta w/2)]
double eta(const ModelParams& p, double quad_tol);

// second order in the coupling at zero temperature:
// eta_2nd = 1 - 2 int_0^{100 wc} dw J/w^2
double eta_second_order(const ModelParams& p, double quad_tol);

// r(tau) = -4 int_0^{100 wc} dw (J/w^2)[cos(w tau) coth(beta w/2) - i sin(w tau)]
cxd r_tau(const ModelParams& p, double tau, double quad_tol);

struct PolaronCorr {
    cxd C11; // eta^2 {cosh r - 1}
    cxd C22; // -eta^2 sinh r
};
PolaronCorr corr_polaron(const ModelParams& p, double eta_val, double tau,
                         double quad_tol = 1e-8);

enum class WeakKernelDomain {
    truncated, // hard cutoff at 100 wc (matches the direct-quadrature convention)
    extended   // adds the closed-form Lorentzian tail beyond 100 wc
};

// C(tau) for the weak-coupling master equation, with the Lorentz-Drude
// factor replaced by the certified spectral fit and the sinc factor exact.
cxd corr_weak(const ModelParams& p, const LorFit& lorfit, double tau, double quad_tol = 1e-8,
              WeakKernelDomain domain = WeakKernelDomain::truncated);

// Closed-form integral_{W0}^inf Lfit(w) e^{-i w tau} dw via the pole expansion
// (coth = 1 and the sinc factor negligible beyond W0 = 100 wc).
cxd lorfit_tail_integral(const LorFit& lorfit, double w0, double tau);

// Batch kernel sampling on a uniform tau grid with a fixed Gauss-Legendre
// panelization and rotation recurrences. Matches the adaptive routes to
// well below quadrature tolerance at a fraction of the cost.
std::vector<cxd> sample_r_grid(const ModelParams& p, const std::vector<double>& taus);
std::vector<cxd> sample_weak_grid(const ModelParams& p, const LorFit& lorfit,
                                  const std::vector<double>& taus,
                                  WeakKernelDomain domain = WeakKernelDomain::extended);

struct GammaEstimate {
    double gamma;          // P wc / 2
    bool weak_coupling_ok; // max(Omega0, |detuning|) >= threshold * gamma
    std::string report;
};
GammaEstimate gamma_estimate(const ModelParams& p, double threshold = 10.0);

} // namespace dqd

#endif
