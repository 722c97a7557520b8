#include "dqdsim/special.hpp"

#include <cmath>
#include <limits>

#include "dqdsim/errors.hpp"

namespace dqd {

double coth_half_beta(double omega, double beta) {
    if (std::isinf(beta)) return 1.0;
    const double x = 0.5 * beta * omega;
    if (x > 20.0) return 1.0; // coth(20) - 1 < 1e-17
    return 1.0 / std::tanh(x);
}

double one_minus_sinc_over_w2(double omega, double d) {
    const double aw = std::fabs(omega);
    if (aw < 1e-8) return d * d / 6.0;
    const double x = d * omega;
    double oms; // 1 - sinc(x)
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        oms = x2 / 6.0 * (1.0 - x2 / 20.0);
    } else {
        oms = 1.0 - std::sin(x) / x;
    }
    return oms / (omega * omega);
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

// power series: E1(z) = -gamma - ln z - sum (-z)^n / (n n!)
std::complex<double> expint_series(std::complex<double> z) {
    std::complex<double> sum(0.0);
    std::complex<double> term(1.0);
    for (int n = 1; n < 120; ++n) {
        term *= -z / double(n);
        const std::complex<double> add = term / double(n);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    const std::complex<double> e1 = -kEulerGamma - std::log(z) - sum;
    return std::exp(z) * e1;
}

// asymptotic series: e^z E1(z) ~ (1/z) sum (-1)^n n! / z^n, truncated at the
// smallest term; adequate for |z| >= 25 at any arg off the cut
std::complex<double> expint_asymptotic(std::complex<double> z) {
    std::complex<double> sum(1.0);
    std::complex<double> term(1.0);
    double last = 1.0;
    for (int n = 1; n < 60; ++n) {
        term *= -double(n) / z;
        const double mag = std::abs(term);
        if (mag > last) break; // divergence point reached
        sum += term;
        last = mag;
        if (mag < 1e-18) break;
    }
    return sum / z;
}

// modified Lentz continued fraction, G(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
std::complex<double> expint_cf(std::complex<double> z) {
    const double tiny = 1e-290;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int n = 1; n < 400; ++n) {
        const std::complex<double> a = -double(n) * double(n);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return h;
    }
    throw NumericError("expint continued fraction failed to converge");
}

} // namespace

std::complex<double> expint_scaled(std::complex<double> z) {
    const double az = std::abs(z);
    if (az == 0.0) throw NumericError("expint_scaled undefined at z = 0");
    if (az >= 25.0) return expint_asymptotic(z);
    if (z.real() >= 0.0 && az >= 4.0) return expint_cf(z);
    return expint_series(z);
}

} // namespace dqd
