#ifndef DQDSIM_OP2_HPP
#define DQDSIM_OP2_HPP

#include <array>
#include <cmath>
#include <complex>

namespace dqd {

using cxd = std::complex<double>;

// 2x2 complex operator, row-major storage. Basis convention:
// index 0 = |l>, index 1 = |r>, sigma_z = diag(+1, -1).
struct Op2 {
    std::array<cxd, 4> m{};

    constexpr cxd& operator()(int i, int j) { return m[2 * i + j]; }
    constexpr const cxd& operator()(int i, int j) const { return m[2 * i + j]; }

    static constexpr Op2 zero() { return Op2{}; }
    static constexpr Op2 identity() { return Op2{{cxd(1), cxd(0), cxd(0), cxd(1)}}; }
    static constexpr Op2 sigma_x() { return Op2{{cxd(0), cxd(1), cxd(1), cxd(0)}}; }
    static constexpr Op2 sigma_y() {
        return Op2{{cxd(0), cxd(0, -1), cxd(0, 1), cxd(0)}};
    }
    static constexpr Op2 sigma_z() { return Op2{{cxd(1), cxd(0), cxd(0), cxd(-1)}}; }
    static constexpr Op2 diag(cxd a, cxd b) { return Op2{{a, cxd(0), cxd(0), b}}; }
    // |l><l| and |r><r| projectors
    static constexpr Op2 proj_left() { return diag(cxd(1), cxd(0)); }
    static constexpr Op2 proj_right() { return diag(cxd(0), cxd(1)); }

    Op2& operator+=(const Op2& o) {
        for (int i = 0; i < 4; ++i) m[i] += o.m[i];
        return *this;
    }
    Op2& operator-=(const Op2& o) {
        for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
        return *this;
    }
    Op2& operator*=(cxd s) {
        for (int i = 0; i < 4; ++i) m[i] *= s;
        return *this;
    }

    friend Op2 operator+(Op2 a, const Op2& b) { return a += b; }
    friend Op2 operator-(Op2 a, const Op2& b) { return a -= b; }
    friend Op2 operator*(cxd s, Op2 a) { return a *= s; }
    friend Op2 operator*(Op2 a, cxd s) { return a *= s; }

    friend Op2 operator*(const Op2& a, const Op2& b) {
        Op2 c;
        c.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
        c.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
        c.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
        c.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
        return c;
    }

    Op2 dagger() const {
        return Op2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    cxd trace() const { return m[0] + m[3]; }

    double max_abs() const {
        double v = 0.0;
        for (const auto& e : m) v = std::max(v, std::abs(e));
        return v;
    }
};

inline Op2 commutator(const Op2& a, const Op2& b) { return a * b - b * a; }

struct DensityChecks {
    cxd trace;
    double herm_defect; // max entrywise |rho - rho^dagger|
    double eig_min;     // eigenvalues of the Hermitian part
    double eig_max;
};

// Closed-form eigenvalues of the Hermitian part; no iterative solver.
inline DensityChecks density_checks(const Op2& rho) {
    DensityChecks out;
    out.trace = rho.trace();
    const Op2 d = rho - rho.dagger();
    out.herm_defect = d.max_abs();
    const Op2 h = 0.5 * (rho + rho.dagger());
    const double a = h(0, 0).real();
    const double b = h(1, 1).real();
    const double disc = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(h(0, 1)));
    const double mid = 0.5 * (a + b);
    out.eig_min = mid - disc;
    out.eig_max = mid + disc;
    return out;
}

} // namespace dqd

#endif
