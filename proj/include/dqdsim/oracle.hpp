#ifndef DQDSIM_ORACLE_HPP
#define DQDSIM_ORACLE_HPP

#include <vector>

#include "dqdsim/model.hpp"

namespace dqd {

// Fixed-step classical RK4 integration of the closed-system von Neumann
// equation for the driven two-level system. Deliberately independent of the
// adaptive machinery; used as the P = 0 verification oracle.
std::vector<double> closed_system_populations(const ModelParams& p, const Op2& rho0,
                                              const std::vector<double>& sample_times,
                                              double dt = 1e-4);

} // namespace dqd

#endif
