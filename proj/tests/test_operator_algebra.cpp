#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dqdsim/superop.hpp"

using namespace dqd;

namespace {

std::mt19937 rng(12345);

Op2 random_op() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Op2 a;
    for (auto& e : a.m) e = cxd(u(rng), u(rng));
    return a;
}

Op2 random_hermitian() {
    const Op2 a = random_op();
    return 0.5 * (a + a.dagger());
}

} // namespace

TEST_CASE("vectorize round trip and layout") {
    SUBCASE("fixed layout") {
        const Vec4 v = vectorize(Op2::diag(1.0, 0.0));
        CHECK(v[0] == cxd(1.0));
        CHECK(v[1] == cxd(0.0));
        CHECK(v[2] == cxd(0.0));
        CHECK(v[3] == cxd(0.0));
    }
    SUBCASE("round trip identity on random operators") {
        for (int i = 0; i < 50; ++i) {
            const Op2 x = random_op();
            CHECK((devectorize(vectorize(x)) - x).max_abs() == 0.0);
        }
    }
    SUBCASE("linearity") {
        const Op2 x = random_op(), y = random_op();
        const cxd a(0.3, -1.1), b(-0.7, 0.2);
        const Vec4 lhs = vectorize(a * x + b * y);
        const Vec4 vx = vectorize(x), vy = vectorize(y);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(lhs[i] - (a * vx[i] + b * vy[i])) < 1e-15);
    }
}

TEST_CASE("commutator superoperator") {
    SUBCASE("identity commutes") {
        const Superop s = commutator_superop(Op2::identity(), cxd(0, -1));
        double worst = 0.0;
        for (const auto& e : s.m) worst = std::max(worst, std::abs(e));
        CHECK(worst == 0.0);
    }
    SUBCASE("-i[sigma_z, sigma_x] = 2 sigma_y") {
        const Superop s = commutator_superop(Op2::sigma_z(), cxd(0, -1));
        const Op2 got = devectorize(s.apply(vectorize(Op2::sigma_x())));
        const Op2 want = 2.0 * Op2::sigma_y();
        CHECK((got - want).max_abs() < 1e-15);
    }
    SUBCASE("matches direct commutator on random input") {
        for (int i = 0; i < 30; ++i) {
            const Op2 h = random_op(), a = random_op();
            const cxd sc(0.4, -0.9);
            const Op2 via_super = devectorize(commutator_superop(h, sc).apply(vectorize(a)));
            const Op2 direct = sc * commutator(h, a);
            CHECK((via_super - direct).max_abs() < 1e-14);
        }
    }
    SUBCASE("trace annihilated for Hermitian generator") {
        for (int i = 0; i < 30; ++i) {
            const Op2 h = random_hermitian(), a = random_op();
            const Op2 out = devectorize(commutator_superop(h, cxd(0, -1)).apply(vectorize(a)));
            CHECK(std::abs(out.trace()) < 1e-14);
        }
    }
    SUBCASE("preserves hermiticity of Hermitian inputs") {
        for (int i = 0; i < 30; ++i) {
            const Op2 h = random_hermitian(), a = random_hermitian();
            const Op2 out = devectorize(commutator_superop(h, cxd(0, -1)).apply(vectorize(a)));
            CHECK(density_checks(out).herm_defect <= 1e-14);
        }
    }
}

TEST_CASE("density checks") {
    SUBCASE("pure left state") {
        const DensityChecks c = density_checks(Op2::proj_left());
        CHECK(c.trace == cxd(1.0));
        CHECK(c.herm_defect == 0.0);
        CHECK(c.eig_min == doctest::Approx(0.0));
        CHECK(c.eig_max == doctest::Approx(1.0));
    }
    SUBCASE("maximally mixed") {
        const DensityChecks c = density_checks(0.5 * Op2::identity());
        CHECK(c.eig_min == doctest::Approx(0.5));
        CHECK(c.eig_max == doctest::Approx(0.5));
    }
    SUBCASE("flags a negative population") {
        const DensityChecks c = density_checks(Op2::diag(1.05, -0.05));
        CHECK(c.eig_min == doctest::Approx(-0.05));
    }
    SUBCASE("hermiticity defect measures the anti-Hermitian part") {
        Op2 rho = 0.5 * Op2::identity();
        rho(0, 1) = cxd(0.0, 0.25);
        rho(1, 0) = cxd(0.0, 0.25); // not conjugates: defect 0.5
        CHECK(density_checks(rho).herm_defect == doctest::Approx(0.5));
    }
}
