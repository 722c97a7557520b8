#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dqdsim/errors.hpp"
#include "dqdsim/model.hpp"

using namespace dqd;

namespace {

ModelParams paper_params() {
    ModelParams p;
    p.epsilon = 0.9887;
    p.delta = 0.15;
    p.drive = 0.034;
    p.P = 0.09;
    p.omega_c = 2.0;
    p.d_cs = 16.0;
    p.kT = 0.12;
    return p;
}

} // namespace

TEST_CASE("drive amplitude") {
    ModelParams p = paper_params();
    SUBCASE("zero drive is constant") {
        p.drive = 0.0;
        CHECK(drive_amplitude(p, 0.0) == doctest::Approx(0.15).epsilon(1e-15));
        CHECK(drive_amplitude(p, 17.3) == doctest::Approx(0.15).epsilon(1e-15));
    }
    SUBCASE("values at t = 0 and half period") {
        CHECK(drive_amplitude(p, 0.0) == doctest::Approx(0.082).epsilon(1e-12));
        CHECK(drive_amplitude(p, M_PI) == doctest::Approx(0.218).epsilon(1e-12));
    }
    SUBCASE("periodic with the drive period") {
        const double T = 2.0 * M_PI / p.omega0;
        for (double t : {0.0, 0.31, 2.7, 11.0})
            CHECK(drive_amplitude(p, t) ==
                  doctest::Approx(drive_amplitude(p, t + T)).epsilon(1e-14));
    }
}

TEST_CASE("lab hamiltonian") {
    ModelParams p;
    SUBCASE("zero parameters give the zero operator") {
        CHECK(lab_hamiltonian(p, 0.0).max_abs() == 0.0);
    }
    SUBCASE("pure bias is diagonal") {
        p.epsilon = 1.0;
        const Op2 h = lab_hamiltonian(p, 0.0);
        CHECK(h(0, 0).real() == doctest::Approx(-0.5));
        CHECK(h(1, 1).real() == doctest::Approx(0.5));
        CHECK(std::abs(h(0, 1)) == 0.0);
    }
    SUBCASE("eigenvalue gap equals W at zero drive") {
        p = paper_params();
        p.drive = 0.0;
        const Op2 h = lab_hamiltonian(p, 0.4);
        // 2x2 Hermitian eigenvalue gap
        const double a = h(0, 0).real(), b = h(1, 1).real();
        const double gap = 2.0 * std::sqrt(0.25 * (a - b) * (a - b) + std::norm(h(0, 1)));
        CHECK(gap == doctest::Approx(splitting_and_detuning(p).W).epsilon(1e-14));
    }
    SUBCASE("always Hermitian") {
        p = paper_params();
        for (double t : {0.0, 0.7, 3.9}) {
            const Op2 h = lab_hamiltonian(p, t);
            CHECK((h - h.dagger()).max_abs() == 0.0);
        }
    }
}

TEST_CASE("polaron hamiltonian") {
    ModelParams p = paper_params();
    SUBCASE("eta = 1 reproduces the lab frame") {
        for (double t : {0.0, 1.3}) {
            const Op2 d = polaron_hamiltonian(p, 1.0, t) - lab_hamiltonian(p, t);
            CHECK(d.max_abs() == 0.0);
        }
    }
    SUBCASE("eta = 0 suppresses tunneling") {
        const Op2 h = polaron_hamiltonian(p, 0.0, 0.3);
        CHECK(std::abs(h(0, 1)) == 0.0);
        CHECK(h(0, 0).real() == doctest::Approx(-0.5 * p.epsilon));
    }
    SUBCASE("renormalized off-diagonal element") {
        p.epsilon = 0.99;
        p.delta = 0.15;
        p.drive = 0.0;
        const Op2 h = polaron_hamiltonian(p, 0.8, 0.0);
        CHECK(h(0, 1).real() == doctest::Approx(-0.06).epsilon(1e-14));
    }
    SUBCASE("eta outside [0,1] rejected") {
        CHECK_THROWS_AS(polaron_hamiltonian(p, 1.5, 0.0), ConfigError);
        CHECK_THROWS_AS(polaron_hamiltonian(p, -0.1, 0.0), ConfigError);
    }
}

TEST_CASE("splitting and detuning") {
    ModelParams p;
    SUBCASE("origin") {
        const Splitting s = splitting_and_detuning(p);
        CHECK(s.W == 0.0);
        CHECK(s.detuning == doctest::Approx(-1.0));
    }
    SUBCASE("resonance bias") {
        p.epsilon = 0.9887;
        p.delta = 0.15;
        const Splitting s = splitting_and_detuning(p);
        CHECK(s.W == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(std::fabs(s.detuning) < 1e-4);
    }
    SUBCASE("off resonance") {
        p.epsilon = 1.4;
        p.delta = 0.15;
        CHECK(splitting_and_detuning(p).W == doctest::Approx(1.40801).epsilon(1e-5));
    }
}

TEST_CASE("parameter validation") {
    ModelParams p = paper_params();
    p.omega_c = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = paper_params();
    p.kT = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = paper_params();
    CHECK_NOTHROW(p.validate());
}
