#ifndef DQDSIM_QUADRATURE_HPP
#define DQDSIM_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace dqd {

struct QuadOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;     // floor for near-zero integrals
    double initial_panel = 0.0; // 0 -> single panel; else first split width
    int max_panels = 200000;
};

// Adaptive Gauss-Kronrod 7(15) over [a, b]. The initial uniform
// panelization (QuadOptions::initial_panel) should match the integrand's
// oscillation scale; bisection then drives the embedded-rule error below
// rel_tol * |integral|. Throws NumericError on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadOptions& opt = {});

} // namespace dqd

#endif
