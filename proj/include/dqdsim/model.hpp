#ifndef DQDSIM_MODEL_HPP
#define DQDSIM_MODEL_HPP

#include "dqdsim/op2.hpp"

namespace dqd {

// All frequencies in units of omega0 (drive angular frequency), which is
// fixed to 1 internally; times in units of 1/omega0. kT = 0 selects the
// zero-temperature limit (coth -> 1).
struct ModelParams {
    double epsilon = 0.0;  // bias
    double delta = 0.0;    // bare interdot tunneling
    double omega0 = 1.0;   // drive angular frequency (1 in internal units)
    double drive = 0.0;    // drive amplitude Omega_0
    double P = 0.0;        // dimensionless phonon coupling strength
    double omega_c = 2.0;  // bath cutoff
    double d_cs = 0.0;     // interdot separation over sound speed, units 1/omega0
    double kT = 0.0;       // temperature

    // Throws ConfigError if an invariant is violated.
    void validate() const;
};

// Delta(t) = Delta - 2 Omega_0 cos(omega0 t)
double drive_amplitude(const ModelParams& p, double t);

// H_s(t) = -(eps/2) sigma_z - (Delta(t)/2) sigma_x
Op2 lab_hamiltonian(const ModelParams& p, double t);

// H'_s(t) = -(eps/2) sigma_z - (eta Delta(t)/2) sigma_x.
// The constant identity shift is dropped (commutes with everything;
// contributes only a global phase).
Op2 polaron_hamiltonian(const ModelParams& p, double eta, double t);

struct Splitting {
    double W;        // sqrt(eps^2 + delta^2)
    double detuning; // W - omega0
};

Splitting splitting_and_detuning(const ModelParams& p);

} // namespace dqd

#endif
