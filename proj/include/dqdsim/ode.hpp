#ifndef DQDSIM_ODE_HPP
#define DQDSIM_ODE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dqdsim/errors.hpp"

namespace dqd {

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_init = 1e-4;
    double h_max = 0.0; // 0 -> no cap
    long max_steps = 200000000L;
};

// Dormand-Prince 5(4) with the standard quartic dense-output interpolant.
// State is a flat complex vector; the RHS writes dy/dt in place.
class Dopri5 {
public:
    using State = std::vector<std::complex<double>>;
    using Rhs = std::function<void(double, const State&, State&)>;

    Dopri5(Rhs rhs, OdeOptions opt = {}) : rhs_(std::move(rhs)), opt_(opt) {}

    void init(double t0, const State& y0) {
        t_ = t0;
        y_ = y0;
        const size_t n = y0.size();
        for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &ynew_})
            v->assign(n, {});
        rhs_(t_, y_, k1_);
        h_ = opt_.h_init;
        steps_ = 0;
    }

    double time() const { return t_; }
    const State& state() const { return y_; }

    // Advance to t_end; `samples` must be sorted ascending within (t, t_end].
    // on_sample receives the dense-output state at each requested time.
    void advance(double t_end,
                 const std::vector<double>& samples,
                 const std::function<void(double, const State&)>& on_sample) {
        size_t si = 0;
        while (si < samples.size() && samples[si] <= t_) {
            if (samples[si] == t_) on_sample(t_, y_);
            ++si;
        }
        while (t_ < t_end) {
            double h = h_;
            if (opt_.h_max > 0.0) h = std::min(h, opt_.h_max);
            h = std::min(h, t_end - t_);
            if (!(h > 0.0)) break;
            if (h < 1e-14 * std::max(1.0, std::fabs(t_)))
                throw NumericError("ode step size underflow (stiffness?) at t = " +
                                   std::to_string(t_));
            if (++steps_ > opt_.max_steps)
                throw NumericError("ode exceeded max step count");

            const double err = attempt_step(h);
            if (err <= 1.0) {
                // dense output inside (t_, t_+h]
                while (si < samples.size() && samples[si] <= t_ + h + 1e-14 * h) {
                    const double ts = std::min(samples[si], t_ + h);
                    dense_eval(h, (ts - t_) / h, ytmp_);
                    on_sample(ts, ytmp_);
                    ++si;
                }
                t_ += h;
                std::swap(y_, ynew_);
                std::swap(k1_, k7_); // FSAL
                const double fac =
                    std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 6.0);
                h_ = h * fac;
            } else {
                h_ = h * std::max(0.9 * std::pow(err, -0.2), 0.2);
            }
        }
    }

private:
    // returns scaled error norm; on success ynew_/k7_ hold the step result
    double attempt_step(double h) {
        const size_t n = y_.size();
        auto stage = [&](State& k, double c, auto&&... aks) {
            for (size_t i = 0; i < n; ++i) {
                std::complex<double> acc = y_[i];
                ((acc += h * aks.first * (*aks.second)[i]), ...);
                ytmp_[i] = acc;
            }
            rhs_(t_ + c * h, ytmp_, k);
        };
        using P = std::pair<double, const State*>;
        stage(k2_, 0.2, P{0.2, &k1_});
        stage(k3_, 0.3, P{3.0 / 40.0, &k1_}, P{9.0 / 40.0, &k2_});
        stage(k4_, 0.8, P{44.0 / 45.0, &k1_}, P{-56.0 / 15.0, &k2_}, P{32.0 / 9.0, &k3_});
        stage(k5_, 8.0 / 9.0, P{19372.0 / 6561.0, &k1_}, P{-25360.0 / 2187.0, &k2_},
              P{64448.0 / 6561.0, &k3_}, P{-212.0 / 729.0, &k4_});
        stage(k6_, 1.0, P{9017.0 / 3168.0, &k1_}, P{-355.0 / 33.0, &k2_},
              P{46732.0 / 5247.0, &k3_}, P{49.0 / 176.0, &k4_}, P{-5103.0 / 18656.0, &k5_});
        for (size_t i = 0; i < n; ++i)
            ynew_[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] +
                                    a75 * k5_[i] + a76 * k6_[i]);
        rhs_(t_ + h, ynew_, k7_);

        double err2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const std::complex<double> e =
                h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] +
                     e7 * k7_[i]);
            const double sc =
                opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
            err2 += std::norm(e / sc);
        }
        return std::sqrt(err2 / double(n));
    }

    // quartic interpolant on the accepted step (theta in [0, 1])
    void dense_eval(double h, double theta, State& out) const {
        const size_t n = y_.size();
        const double th = theta, th1 = 1.0 - theta;
        for (size_t i = 0; i < n; ++i) {
            const std::complex<double> ydiff = ynew_[i] - y_[i];
            const std::complex<double> bspl = h * k1_[i] - ydiff;
            const std::complex<double> r5 =
                h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] +
                     d7 * k7_[i]);
            const std::complex<double> r4 = ydiff - h * k7_[i] - bspl;
            out[i] = y_[i] + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
        }
    }

    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    Rhs rhs_;
    OdeOptions opt_;
    double t_ = 0.0, h_ = 1e-4;
    long steps_ = 0;
    State y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
};

} // namespace dqd

#endif
