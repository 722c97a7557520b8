#ifndef DQDSIM_EXPFIT_HPP
#define DQDSIM_EXPFIT_HPP

#include <string>
#include <vector>

#include "dqdsim/model.hpp"
#include "dqdsim/op2.hpp"

namespace dqd {

struct BathSample {
    double tau;
    cxd value;
};

// One anti-symmetrized Lorentzian of the spectral substitute:
//   4 p Omega w / [(w^2-Omega^2)^2 + 2(w^2+Omega^2) Gamma^2 + Gamma^4]
struct LorTerm {
    double p, Omega, Gamma;
};

struct LorFit {
    std::vector<LorTerm> terms;
    double omega_max = 0.0;     // certified fit window [~0, omega_max]
    double residual_linf = 0.0; // relative L_inf against the Lorentz-Drude factor

    double eval(double omega) const;
};

// Partial fractions of eval(): sum_j r_j / (w - z_j), four poles per term.
struct LorPoles {
    std::vector<cxd> z;
    std::vector<cxd> r;
};
LorPoles lorfit_poles(const LorFit& fit);

struct ExpTerm {
    cxd alpha, gamma;
};

struct ExpFit {
    std::string kernel; // label persisted in the artifact header
    std::vector<ExpTerm> terms;
    double residual_l2 = 0.0; // relative L2 on the training grid

    cxd eval(double tau) const;
};

cxd eval_expfit(const ExpFit& fit, double tau);

// Nonlinear least-squares fit of the Lorentz-Drude factor
// (P/2) w wc^2/(w^2+wc^2) on a log-spaced grid up to omega_max.
// Throws NumericError when the certified residual stays above tol.
LorFit fit_lorentzian_spectral(const ModelParams& p, int n_terms, double omega_max,
                               double tol);

struct ExpFitOptions {
    int m_max = 128;
    // extra decay-rate candidates joining the matrix-pencil pool
    std::vector<cxd> seed_gammas;
    // analytically known exponential part: subtracted before fitting,
    // merged back unchanged into the result
    std::vector<ExpTerm> fixed_terms;
    // clamps for the nonlinear refinement; 0 -> derived from the grid
    double re_min = 0.0;
    double im_max = 0.0;
    std::string kernel_name = "kernel";
};

// Matrix-pencil initialization + variable-projection Levenberg-Marquardt
// refinement on a uniform grid. Deterministic: no randomized restarts.
ExpFit fit_exponentials(const std::vector<BathSample>& samples, double tol,
                        const ExpFitOptions& opt = {});

// relative L2 residual of the fit against a sample set
double expfit_residual(const ExpFit& fit, const std::vector<BathSample>& samples);

void save_expfit(const std::string& path, const ExpFit& fit);
ExpFit load_expfit(const std::string& path);
void save_lorfit(const std::string& path, const LorFit& fit);
LorFit load_lorfit(const std::string& path);

} // namespace dqd

#endif
