#include "dqdsim/model.hpp"

#include <cmath>
#include <string>

#include "dqdsim/errors.hpp"

namespace dqd {

void ModelParams::validate() const {
    auto bad = [](const std::string& what) { throw ConfigError("model parameter " + what); };
    if (!(omega0 > 0.0)) bad("omega0 must be > 0");
    if (delta < 0.0) bad("delta must be >= 0");
    if (drive < 0.0) bad("Omega0 must be >= 0");
    if (P < 0.0) bad("P must be >= 0");
    if (!(omega_c > 0.0)) bad("omega_c must be > 0");
    if (d_cs < 0.0) bad("d_cs must be >= 0");
    if (kT < 0.0) bad("kT must be >= 0");
}

double drive_amplitude(const ModelParams& p, double t) {
    return p.delta - 2.0 * p.drive * std::cos(p.omega0 * t);
}

Op2 lab_hamiltonian(const ModelParams& p, double t) {
    const double dt = drive_amplitude(p, t);
    Op2 h;
    h(0, 0) = -0.5 * p.epsilon;
    h(1, 1) = 0.5 * p.epsilon;
    h(0, 1) = -0.5 * dt;
    h(1, 0) = -0.5 * dt;
    return h;
}

Op2 polaron_hamiltonian(const ModelParams& p, double eta, double t) {
    if (eta < 0.0 || eta > 1.0)
        throw ConfigError("eta must lie in [0, 1], got " + std::to_string(eta));
    const double dt = eta * drive_amplitude(p, t);
    Op2 h;
    h(0, 0) = -0.5 * p.epsilon;
    h(1, 1) = 0.5 * p.epsilon;
    h(0, 1) = -0.5 * dt;
    h(1, 0) = -0.5 * dt;
    return h;
}

Splitting splitting_and_detuning(const ModelParams& p) {
    const double w = std::hypot(p.epsilon, p.delta);
    return Splitting{w, w - p.omega0};
}

} // namespace dqd
