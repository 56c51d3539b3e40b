#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "relatherm/models.hpp"
#include "relatherm/presets.hpp"
#include "relatherm/scenarios.hpp"
#include "relatherm/spectral.hpp"
#include "relatherm/thermo.hpp"

using namespace relatherm;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("relatherm_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

ScenarioResult run(const std::string& text, const TempDir& dir, int threads = 1) {
    const Config cfg = Config::from_string(text, "inline.cfg");
    return run_scenario(cfg, {dir.path.string(), threads, 0});
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("spectrum rows and byte-identical reruns") {
    const TempDir dir;
    const std::string cfg =
        "scenario = spectrum\n"
        "[bath]\ncoupling = both\n"
        "[grid]\nbeta_omega = [0.1, 1.0, 5.0]\nu_list = [1e-9, 0.9, 1.0]\n"
        "[output]\npath = spectrum.csv\n";
    const ScenarioResult a = run(cfg, dir);
    const ScenarioResult b = run(cfg, dir);
    CHECK(a.csv == b.csv);
    const ScenarioResult c = run(cfg, dir, 4);
    CHECK(a.csv == c.csv);
    CHECK(a.csv.find("# config_hash = 0x") != std::string::npos);

    CHECK(a.columns == std::vector<std::string>{"beta_omega", "u", "coupling", "N"});
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const double x = a.number(r, "beta_omega");
        const double u = a.number(r, "u");
        const double n = a.number(r, "N");
        if (u < 1e-6)  // negligible rapidity rows reproduce the Planck value
            CHECK(n == doctest::Approx(planck_n(x, 1.0)).epsilon(1e-12));
        if (a.text(r, "coupling") == "udw" && x == 1.0 && u == 1.0)
            CHECK(n == doctest::Approx(0.47227703272282837).epsilon(1e-12));
    }
    // derivative coupling sees fewer quanta at u = 0.9, row by row
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (a.text(r, "coupling") != "udw" || a.number(r, "u") != 0.9) continue;
        for (std::size_t s = 0; s < a.rows(); ++s) {
            if (a.text(s, "coupling") == "td" && a.number(s, "u") == 0.9 &&
                a.number(s, "beta_omega") == a.number(r, "beta_omega"))
                CHECK(a.number(s, "N") < a.number(r, "N"));
        }
    }
}

TEST_CASE("qubit heat transfer dataset") {
    const TempDir dir;
    const ScenarioResult res = run(
        "scenario = qubit-heat\n"
        "[bath]\ncoupling = both\nlambda = 0.1\n"
        "[system]\nomega0 = 1.0\n"
        "[grid]\nu = [0.0, 0.5, 1.0, 2.0]\nbeta_omega = [0.5, 2.0]\n"
        "[output]\npath = qh.csv\n",
        dir);
    const SystemSpec sys = qubit_system(1.0);
    for (std::size_t r = 0; r < res.rows(); ++r) {
        const double u = res.number(r, "u");
        const double x = res.number(r, "beta_omega");
        const double dq = res.number(r, "delta_Q");
        if (u == 0.0) CHECK(dq == 0.0);  // prepared at the bath temperature
        if (x == 0.5 && u > 0.0) CHECK(dq < 0.0);
        // independent route: stationary state + internal energy
        const Coupling c = res.text(r, "coupling") == "udw" ? Coupling::UdW : Coupling::TD;
        const BathSpec bath{c, x, u, 0.1};
        const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
        const double oracle = heat_transfer(gen, gibbs_state(sys, x), sys);
        CHECK(dq == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("entropy production dataset stays nonnegative and decays") {
    const TempDir dir;
    const ScenarioResult res = run(
        "scenario = entropy-production\n"
        "[bath]\ncoupling = udw\ntemperature = 1.0\nu = 0.9\nlambda = 0.1\n"
        "[initial]\nt0 = 33.0\n"
        "[figure]\nalternate = false\n"
        "[numerics]\ngamma0_t_max = 2.0\nsamples = 60\n"
        "[output]\npath = ep.csv\n",
        dir);
    REQUIRE(res.rows() == 61);
    double prev = 1e300;
    for (std::size_t r = 0; r < res.rows(); ++r) {
        const double sigma = res.number(r, "sigma_over_gamma0");
        CHECK(sigma >= -1e-12);
        CHECK(sigma <= prev + 1e-9);
        prev = sigma;
    }
    REQUIRE(res.trajectories.size() == 1);
    CHECK(res.trajectories[0].max_trace_error < 1e-10);
    CHECK(res.trajectories[0].min_eigenvalue > -1e-10);
}

TEST_CASE("total entropy dataset: both variants nonnegative, zero at rest") {
    const TempDir dir;
    const ScenarioResult res = run(
        "scenario = total-entropy\n"
        "[bath]\ncoupling = both\ntemperature = 1.0\nlambda = 0.1\n"
        "[initial]\nt0 = 33.0\n"
        "[grid]\nu = [0.0, 0.5, 1.0, 2.0]\n"
        "[output]\npath = te.csv\n",
        dir);
    for (std::size_t r = 0; r < res.rows(); ++r) {
        CHECK(res.number(r, "delta_S_tot") > -1e-10);
        CHECK(res.number(r, "delta_S_tot_alt") > -1e-10);
    }
    // equilibrium run: nothing is produced
    const ScenarioResult eq = run(
        "scenario = total-entropy\n"
        "[bath]\ncoupling = udw\ntemperature = 1.0\nlambda = 0.1\n"
        "[initial]\nt0 = 1.0\n"
        "[grid]\nu = [0.0]\n"
        "[output]\npath = te0.csv\n",
        dir);
    CHECK(std::abs(eq.number(0, "delta_S_tot")) < 1e-10);
    CHECK(std::abs(eq.number(0, "delta_S_tot_alt")) < 1e-10);
}

TEST_CASE("evolve scenario: asymptotics and the identity-coupling edge case") {
    const TempDir dir;
    const ScenarioResult res = run(
        "scenario = evolve\n"
        "[bath]\ncoupling = udw\ntemperature = 1.0\nu = 1.0\nlambda = 0.5\n"
        "[system]\npreset = qubit\nomega0 = 1.0\n"
        "[initial]\nkind = thermal\nt0 = 5.0\n"
        "[numerics]\nt_final = 400.0\nsamples = 100\n"
        "[output]\npath = ev.csv\n",
        dir);
    const BathSpec bath{Coupling::UdW, 1.0, 1.0, 0.5};
    const double n = bath_occupation(bath, 1.0);
    // long-time energy settles at the stationary value -(omega/2)/(2N+1)
    const double e_final = res.number(res.rows() - 1, "energy");
    CHECK(e_final == doctest::Approx(-0.5 / (2.0 * n + 1.0)).epsilon(1e-7));
    CHECK(std::abs(res.number(res.rows() - 1, "heat_current")) < 1e-10);
    for (std::size_t r = 0; r < res.rows(); ++r) {
        CHECK(res.number(r, "trace_error") < 1e-10);
        CHECK(res.number(r, "min_eig") > -1e-10);
        CHECK(res.number(r, "sigma") >= -1e-12);
    }
    CHECK(res.summary.find("stationary_distance") != std::string::npos);

    // coupling operator proportional to the identity: nothing evolves
    const ScenarioResult frozen = run(
        "scenario = evolve\n"
        "[bath]\ncoupling = udw\nbeta = 1.0\nu = 0.5\nlambda = 0.7\n"
        "[system]\npreset = explicit\ndim = 2\n"
        "h = [0.5, 0], [0, 0], [0, 0], [-0.5, 0]\n"
        "a = [1, 0], [0, 0], [0, 0], [1, 0]\n"
        "[initial]\nkind = thermal\nt0 = 2.0\n"
        "[numerics]\nt_final = 10.0\nsamples = 20\n"
        "[output]\npath = frozen.csv\n",
        dir);
    const double e0 = frozen.number(0, "energy");
    for (std::size_t r = 0; r < frozen.rows(); ++r) {
        CHECK(frozen.number(r, "energy") == doctest::Approx(e0).epsilon(1e-12));
        CHECK(frozen.number(r, "heat_current") == 0.0);
    }
}

TEST_CASE("stationary scenario with injected occupations") {
    const TempDir dir;
    const ScenarioResult res = run(
        "scenario = stationary\n"
        "[bath]\ncoupling = udw\nbeta = 1.0\nu = 0.0\nlambda = 0.3\n"
        "n_override = [1.0, 1.0]\n"
        "[system]\npreset = three-level\nomega1 = 1.0\nomega2 = 0.6\n"
        "[output]\npath = st.csv\n",
        dir);
    REQUIRE(res.rows() == 3);
    CHECK(res.number(0, "population") == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(res.number(1, "population") == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(res.number(2, "population") == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(res.summary.find("detailed_balance_holds = true") != std::string::npos);
    CHECK(res.summary.find("heat_current_residual") != std::string::npos);
}

TEST_CASE("kms scenario emits the four residual columns") {
    const TempDir dir;
    const ScenarioResult res = run(
        "scenario = kms-check\n"
        "[kms]\nnmax = 4000\n"
        "[grid]\nbeta_list = [1.0]\nu_list = [0.4, 1.0]\nt_list = [0.3]\n"
        "[output]\npath = kms.csv\n",
        dir);
    REQUIRE(res.rows() == 2);
    for (std::size_t r = 0; r < res.rows(); ++r) {
        CHECK(res.number(r, "kms_residual") < 1e-8);
        CHECK(res.number(r, "boosted_kms_residual") > 1e-3);
        CHECK(res.number(r, "convex_residual") < 1e-8);
        CHECK(res.number(r, "closed_form_error") < 1e-9);
    }
}

TEST_CASE("config problems surface as ConfigError with exit code 2") {
    const TempDir dir;
    const auto bad = [&](const std::string& text) {
        const Config cfg = Config::from_string(text, "bad.cfg");
        return run_scenario(cfg, {dir.path.string(), 1, 0});
    };
    CHECK_THROWS_AS(bad("x = 1\n"), ConfigError);                       // no scenario
    CHECK_THROWS_AS(bad("scenario = warp\n"), ConfigError);             // unknown scenario
    CHECK_THROWS_AS(bad("scenario = evolve\n[bath]\nbeta = 1\n[initial]\nkind = thermal\n"),
                    ConfigError);                                       // missing t0
    CHECK_THROWS_AS(bad("scenario = evolve\n[bath]\nbeta = 1\ntemperature = 1\n"
                        "[initial]\nt0 = 2\n"),
                    ConfigError);                                       // beta and temperature
    CHECK_THROWS_AS(bad("scenario = stationary\n[bath]\nbeta = 1\nn_override = [1.0]\n"
                        "[system]\npreset = three-level\n"),
                    ConfigError);                                       // wrong override arity
    CHECK_THROWS_AS(bad("scenario = evolve\n[bath]\nbeta = 1\n[initial]\nt0 = 2\n"
                        "[numerics]\ninclude_lamb = true\n"),
                    ConfigError);                                       // lamb without epsilon
    CHECK_THROWS_AS(bad("scenario = evolve\n[bath]\nbeta = 1\n[initial]\nt0 = 2\n"
                        "[system]\npreset = explicit\ndim = 2\n"
                        "h = [0, 0], [1, 0], [0, 0], [0, 0]\n"
                        "a = [0, 0], [1, 0], [1, 0], [0, 0]\n"),
                    ConfigError);                                       // h not Hermitian

    const ConfigError config_err("");
    const QuadratureError quad_err("");
    const IntegratorError int_err("");
    const DegenerateStationaryError degen_err("");
    const std::runtime_error other("");
    CHECK(exit_code_for(config_err) == 2);
    CHECK(exit_code_for(quad_err) == 3);
    CHECK(exit_code_for(int_err) == 3);
    CHECK(exit_code_for(degen_err) == 4);
    CHECK(exit_code_for(other) == 1);
}

}  // TEST_SUITE
