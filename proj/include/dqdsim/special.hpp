#ifndef DQDSIM_SPECIAL_HPP
#define DQDSIM_SPECIAL_HPP

#include <complex>

namespace dqd {

// coth(beta*omega/2) with the zero-temperature limit coth -> 1 taken when
// beta is infinite (kT = 0). Large arguments saturate to 1 before exp overflow.
double coth_half_beta(double omega, double beta_inv_kT);

// [1 - sinc(d*omega)] / omega^2 with the Taylor limit d^2/6 below
// omega = 1e-8 (removes the 0/0 cancellation).
double one_minus_sinc_over_w2(double omega, double d);

// Scaled exponential integral G(z) = e^z E1(z), principal branch, valid off
// the negative real axis. Used for closed-form Lorentzian tail integrals
// where the unscaled E1 would over/underflow.
std::complex<double> expint_scaled(std::complex<double> z);

} // namespace dqd

#endif
