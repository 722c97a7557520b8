#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dqdsim/config.hpp"
#include "dqdsim/errors.hpp"

using namespace dqd;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "cfg_test_" + std::to_string(counter++) + ".tmp";
        std::ofstream os(path);
        os << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kPaperBlock =
    "# driven DQD, bias sweep parameters\n"
    "epsilon = 0.9887\n"
    "delta = 0.15\n"
    "omega0 = 1.0\n"
    "Omega0 = 0.034\n"
    "P = 0.09\n"
    "omega_c = 2.0\n"
    "d_cs = 16.0\n"
    "kT = 0.12\n";

} // namespace

TEST_CASE("parse the paper parameter block") {
    TempFile f(kPaperBlock);
    const RunConfig cfg = parse_config(f.path);
    CHECK(cfg.P == doctest::Approx(0.09));
    CHECK(cfg.delta == doctest::Approx(0.15));
    CHECK(cfg.omega_c == doctest::Approx(2.0));
    CHECK(cfg.kT == doctest::Approx(0.12));
    CHECK(cfg.d_cs == doctest::Approx(16.0));
    CHECK(cfg.Omega0 == doctest::Approx(0.034));
    CHECK(cfg.method == "both"); // defaults intact
    CHECK(cfg.eps_steps == 101);
}

TEST_CASE("empty file lists every missing required key") {
    TempFile f("# nothing here\n");
    try {
        parse_config(f.path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (const char* k : {"epsilon", "delta", "omega0", "Omega0", "P", "omega_c",
                              "d_cs", "kT"})
            CHECK(msg.find(k) != std::string::npos);
    }
}

TEST_CASE("unknown keys are fail-closed") {
    TempFile f(std::string(kPaperBlock) + "bogus_knob = 3\n");
    CHECK_THROWS_AS(parse_config(f.path), ConfigError);
}

TEST_CASE("range errors") {
    TempFile f(kPaperBlock);
    SUBCASE("inverted sweep range") {
        CHECK_THROWS_AS(parse_config(f.path, {{"eps_min", "1.6"}, {"eps_max", "0.6"}}),
                        ConfigError);
    }
    SUBCASE("nonpositive tolerance") {
        CHECK_THROWS_AS(parse_config(f.path, {{"rtol", "0"}}), ConfigError);
    }
    SUBCASE("bad method") {
        CHECK_THROWS_AS(parse_config(f.path, {{"method", "magic"}}), ConfigError);
    }
    SUBCASE("negative physical parameter") {
        CHECK_THROWS_AS(parse_config(f.path, {{"P", "-0.1"}}), ConfigError);
    }
    SUBCASE("unparsable number") {
        CHECK_THROWS_AS(parse_config(f.path, {{"P", "zero.nine"}}), ConfigError);
    }
}

TEST_CASE("overrides win over file values") {
    TempFile f(kPaperBlock);
    const RunConfig cfg = parse_config(f.path, {{"P", "0.008"}, {"method", "weak"}});
    CHECK(cfg.P == doctest::Approx(0.008));
    CHECK(cfg.method == "weak");
    CHECK(cfg.methods() == std::set<Method>{Method::weak});
}

TEST_CASE("duplicate keys rejected") {
    TempFile f(std::string(kPaperBlock) + "P = 0.09\n");
    CHECK_THROWS_AS(parse_config(f.path), ConfigError);
}

TEST_CASE("model normalization by omega0") {
    TempFile f(kPaperBlock);
    RunConfig cfg = parse_config(f.path, {{"omega0", "2.0"}, {"epsilon", "1.0"},
                                          {"omega_c", "4.0"}, {"d_cs", "8.0"}});
    const ModelParams p = cfg.model();
    CHECK(p.omega0 == 1.0);
    CHECK(p.epsilon == doctest::Approx(0.5));
    CHECK(p.omega_c == doctest::Approx(2.0));
    CHECK(p.d_cs == doctest::Approx(16.0)); // units 1/omega0 scale the other way
}
