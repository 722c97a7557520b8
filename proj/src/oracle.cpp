#include "dqdsim/oracle.hpp"

#include <cmath>

#include "dqdsim/errors.hpp"
#include "dqdsim/solver.hpp"

namespace dqd {

std::vector<double> closed_system_populations(const ModelParams& p, const Op2& rho0,
                                              const std::vector<double>& sample_times,
                                              double dt) {
    std::vector<double> out;
    out.reserve(sample_times.size());
    const cxd mi(0.0, -1.0);
    auto deriv = [&](double t, const Op2& rho) { return mi * commutator(lab_hamiltonian(p, t), rho); };

    Op2 rho = rho0;
    double t = 0.0;
    for (double ts : sample_times) {
        if (ts < t) throw NumericError("closed_system_populations: times must ascend");
        while (t < ts - 1e-12) {
            const double h = std::min(dt, ts - t);
            const Op2 k1 = deriv(t, rho);
            const Op2 k2 = deriv(t + 0.5 * h, rho + 0.5 * h * k1);
            const Op2 k3 = deriv(t + 0.5 * h, rho + 0.5 * h * k2);
            const Op2 k4 = deriv(t + h, rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
        }
        out.push_back(population_right(rho));
    }
    return out;
}

} // namespace dqd
