#include <doctest.h>

#include <cmath>

#include "relatherm/models.hpp"
#include "relatherm/presets.hpp"
#include "relatherm/thermo.hpp"
#include "support.hpp"

using namespace relatherm;
using test_support::random_hamiltonian;
using test_support::random_hermitian;
using test_support::random_density;

namespace {

BathSpec udw(double beta, double u, double lambda = 1.0) {
    return {Coupling::UdW, beta, u, lambda};
}

// Explicit frequency-sum form of the heat current, as an independent route
// to the dissipator-trace implementation.
double heat_current_omega_sum(const Liouvillian& gen, const TransitionDecomposition& dec,
                              const Matrix& rho) {
    double q = 0.0;
    for (std::size_t i = 0; i < dec.transitions.size(); ++i) {
        const Matrix& a = dec.transitions[i].op;
        const double w = gen.rates.omega[i];
        const double g = gen.rates.gamma[i];
        const double n = gen.rates.occupation[i];
        const double up = (rho * a * a.adjoint()).trace().real();
        const double down = (rho * a.adjoint() * a).trace().real();
        q += g * w * (n * up - (n + 1.0) * down);
    }
    return q;
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("internal energy") {
    const SystemSpec sys = qubit_system(1.0);
    CHECK(internal_energy(qubit_stationary(1.0), sys) == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(internal_energy(0.5 * Matrix::Identity(2, 2), sys) == doctest::Approx(0.0));
    const Index dim = 40;
    const SystemSpec osc = oscillator_system(2.0, 1.0, dim);
    CHECK(internal_energy(oscillator_stationary(1.0, dim), osc) ==
          doctest::Approx(2.0 * 1.0).epsilon(1e-9));
    CHECK_THROWS_AS(internal_energy(Matrix::Identity(3, 3), sys), DimensionError);
}

TEST_CASE("heat current vanishes at stationarity and matches the frequency sum") {
    const SystemSpec sys = three_level_system(1.0, 0.6, 0.9, 1.2);
    const BathSpec bath{Coupling::TD, 1.1, 0.8, 0.7};
    const auto dec = decompose_transitions(sys);
    const Liouvillian gen = build_liouvillian(sys, bath, dec);
    const Matrix ss = stationary_state(gen);
    CHECK(std::abs(heat_current(gen, ss, sys)) < 1e-10);
    for (unsigned seed : {1u, 2u, 3u}) {
        const Matrix rho = random_density(3, seed);
        CHECK(heat_current(gen, rho, sys) ==
              doctest::Approx(heat_current_omega_sum(gen, dec, rho)).epsilon(1e-10));
    }
}

TEST_CASE("qubit heat current follows the closed form from a thermal start") {
    const double omega0 = 1.0, t0 = 2.0;
    const SystemSpec sys = qubit_system(omega0);
    const BathSpec bath = udw(1.0, 0.9, 0.6);
    const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
    const double g0 = gen.rates.gamma[0], n = gen.rates.occupation[0];
    const double n0 = planck_n(1.0 / t0, omega0);
    const Matrix rho0 = gibbs_state(sys, 1.0 / t0);
    const Trajectory traj = evolve(gen, rho0, 5.0 / g0, {.sample_count = 40});
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        const double expected = qubit_heat_current(n0, n, g0, omega0, traj.times[s]);
        CHECK(heat_current(gen, traj.states[s], sys) ==
              doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("no heat flows between matched temperatures at rest") {
    const SystemSpec sys = qubit_system(1.0);
    const BathSpec bath = udw(1.3, 0.0, 0.5);
    const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
    const Matrix rho0 = gibbs_state(sys, 1.3);
    CHECK(std::abs(heat_current(gen, rho0, sys)) < 1e-13);
    CHECK(std::abs(heat_transfer(gen, rho0, sys)) < 1e-11);
}

TEST_CASE("first law: energy changes integrate the heat current") {
    const SystemSpec sys = three_level_system(1.0, 0.55, 1.0, 0.8);
    const BathSpec bath = udw(0.9, 1.1, 0.5);
    const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
    const Trajectory traj = evolve(gen, gibbs_state(sys, 3.0), 20.0,
                                   {.tol = 1e-11, .sample_count = 400});
    const double dt = traj.times[1] - traj.times[0];
    for (std::size_t s = 1; s + 1 < traj.states.size(); ++s) {
        const double de = (internal_energy(traj.states[s + 1], sys) -
                           internal_energy(traj.states[s - 1], sys)) /
                          (2.0 * dt);
        const double q = heat_current(gen, traj.states[s], sys);
        // central difference carries O(dt^2) truncation
        CHECK(de == doctest::Approx(q).epsilon(1e-3));
    }
}

TEST_CASE("heat transfer closed forms") {
    const double omega0 = 1.0;
    const SystemSpec sys = qubit_system(omega0);
    for (double u : {0.0, 0.7, 1.4}) {
        const BathSpec bath = udw(1.0, u, 0.5);
        const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
        const double n = gen.rates.occupation[0];
        for (double t0 : {0.5, 1.0, 3.0}) {
            const double n0 = planck_n(1.0 / t0, omega0);
            const Matrix rho0 = gibbs_state(sys, 1.0 / t0);
            CHECK(heat_transfer(gen, rho0, sys) ==
                  doctest::Approx(qubit_heat_transfer(n0, n, omega0)).epsilon(1e-9));
            // the sign of the transfer is the sign of N - n0
            if (std::abs(n - n0) > 1e-12)
                CHECK(std::signbit(heat_transfer(gen, rho0, sys)) == std::signbit(n - n0));
        }
    }
}

TEST_CASE("moving bath at high temperature is colder: transfer negative below the crossover") {
    const SystemSpec sys = qubit_system(1.0);
    for (auto coupling : {Coupling::UdW, Coupling::TD}) {
        for (double x : {0.25, 0.5, 0.9}) {  // beta omega < 1, T0 = T
            for (double u = 0.25; u <= 2.0; u += 0.25) {
                const BathSpec bath{coupling, x, u, 0.5};
                const double n = bath_occupation(bath, 1.0);
                const double n0 = planck_n(x, 1.0);
                CHECK(qubit_heat_transfer(n0, n, 1.0) < 0.0);
            }
        }
    }
}

TEST_CASE("gibbs state limits") {
    const SystemSpec sys = qubit_system(1.0);
    const Matrix cold = gibbs_state(sys, 1e3);
    CHECK(cold(0, 0).real() < 1e-15);
    CHECK(cold(1, 1).real() == doctest::Approx(1.0));
    const Matrix hot = gibbs_state(sys, 1e-9);
    CHECK((hot - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-8);
    const double beta = 1.7;
    const double n0 = planck_n(beta, 1.0);
    CHECK(gibbs_state(sys, beta)(0, 0).real() ==
          doctest::Approx(n0 / (2.0 * n0 + 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gibbs_state(sys, 0.0), DomainError);
}

TEST_CASE("von Neumann entropy") {
    const SystemSpec sys = qubit_system(1.0);
    CHECK(von_neumann_entropy(QubitInit{0.9, 0.2}.density()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(0.5 * Matrix::Identity(2, 2)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.0 / 3.0;
    rho(1, 1) = 2.0 / 3.0;
    CHECK(von_neumann_entropy(rho) ==
          doctest::Approx(std::log(3.0) - (2.0 / 3.0) * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy production at the Gibbs state and the direct 2x2 value") {
    const double omega0 = 1.0;
    const double beta = std::log(2.0);  // N = 1, Gibbs populations (1/3, 2/3)
    const SystemSpec sys = qubit_system(omega0);
    const BathSpec bath = udw(beta, 0.0, 0.8);
    const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
    CHECK(std::abs(spohn_sigma(gen, gibbs_state(sys, beta), sys, beta)) < 1e-12);

    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 0.4;
    rho(1, 1) = 0.6;
    // scalar-logarithm evaluation of the trace formula for this diagonal pair
    const double expected = gen.rates.gamma[0] * 0.2 * std::log(4.0 / 3.0);
    CHECK(spohn_sigma(gen, rho, sys, beta) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("entropy production is nonnegative on random states") {
    for (Index d = 2; d <= 5; ++d) {
        for (unsigned seed = 0; seed < 25; ++seed) {
            const SystemSpec sys{random_hamiltonian(d, 300 + seed),
                                 random_hermitian(d, 400 + seed)};
            const double beta = 0.2 + 0.15 * (seed % 7);
            const BathSpec bath = udw(beta, 0.0, 0.5);
            const auto dec = decompose_transitions(sys);
            const Liouvillian gen = build_liouvillian(sys, bath, dec);
            const Matrix rho = random_density(d, 500 + seed);
            CHECK(spohn_sigma(gen, rho, sys, beta) >= -1e-12);
        }
    }
}

TEST_CASE("rank-deficient states are clamped with a warning") {
    const SystemSpec sys = qubit_system(1.0);
    const BathSpec bath = udw(1.0, 0.0, 0.5);
    const Liouvillian gen = build_liouvillian(sys, bath, decompose_transitions(sys));
    bool warned = false;
    const double sigma = spohn_sigma(gen, QubitInit{pi / 3, 0.0}.density(), sys, 1.0, &warned);
    CHECK(warned);
    CHECK(std::isfinite(sigma));
    CHECK(sigma >= 0.0);
    warned = true;
    spohn_sigma(gen, random_density(2, 9), sys, 1.0, &warned);
    CHECK_FALSE(warned);
}

TEST_CASE("moving-bath entropy production") {
    const SystemSpec sys = qubit_system(1.0);
    const auto dec = decompose_transitions(sys);
    const Matrix rho = random_density(2, 13);

    // u = 0 reduces to the fixed-reservoir value
    const BathSpec rest = udw(1.2, 0.0, 0.6);
    const Liouvillian gen0 = build_liouvillian(sys, rest, dec);
    CHECK(sigma_moving(sys, dec, rest, rho) ==
          doctest::Approx(spohn_sigma(gen0, rho, sys, 1.2)).epsilon(1e-12));

    // at the moving stationary state the production stays strictly positive
    const BathSpec moving = udw(1.0, 0.9, 0.6);
    const Liouvillian gen = build_liouvillian(sys, moving, dec);
    const Matrix ss = stationary_state(gen);
    const double sigma_inf = sigma_moving(sys, dec, moving, ss);
    CHECK(sigma_inf > 0.0);
    CHECK(std::abs(heat_current(gen, ss, sys)) < 1e-12);  // yet no net heat flows
}

TEST_CASE("generator-level and pointwise averages of the production agree") {
    const SystemSpec sys = qubit_system(1.0);
    const auto dec = decompose_transitions(sys);
    const BathSpec bath{Coupling::TD, 1.0, 0.8, 0.7};
    const Liouvillian gen = build_liouvillian(sys, bath, dec);
    const Matrix rho = random_density(2, 21);

    const Matrix log_rho = detail::log_density(rho, nullptr);
    double ds_dt = -(gen.apply_dissipator(rho) * log_rho).trace().real();
    const GaussLegendre gl(64);
    double heat_part = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double xi = gl.nodes[i];
        const Liouvillian gx = fixed_temperature_liouvillian(sys, dec, bath, xi);
        heat_part += 0.5 * gl.weights[i] * directional_weight(bath, xi) *
                     directional_beta(bath, xi) * heat_current(gx, rho, sys);
    }
    CHECK(sigma_moving(sys, dec, bath, rho) ==
          doctest::Approx(ds_dt - heat_part).epsilon(1e-10));
}

TEST_CASE("total produced entropy") {
    const SystemSpec sys = qubit_system(1.0);
    const auto dec = decompose_transitions(sys);

    // already stationary at rest: nothing is produced, either variant
    const BathSpec rest = udw(1.0, 0.0, 0.5);
    const Matrix rho_eq = gibbs_state(sys, 1.0);
    CHECK(std::abs(total_entropy_production(sys, dec, rest, rho_eq)) < 1e-10);
    CHECK(std::abs(total_entropy_production(sys, dec, rest, rho_eq, {}, true)) < 1e-10);

    // both variants stay nonnegative over the rapidity sweep
    for (auto coupling : {Coupling::UdW, Coupling::TD}) {
        for (double u : {0.0, 0.5, 1.0, 2.0}) {
            const BathSpec bath{coupling, 1.0, u, 0.5};
            const Matrix rho0 = gibbs_state(sys, 1.0 / 33.0);
            CHECK(total_entropy_production(sys, dec, bath, rho0) > -1e-10);
            CHECK(total_entropy_production(sys, dec, bath, rho0, {}, true) > -1e-10);
        }
    }
}

TEST_CASE("time-integrated production vs the end-point functionals") {
    const SystemSpec sys = qubit_system(1.0);
    const auto dec = decompose_transitions(sys);
    const Matrix rho0 = gibbs_state(sys, 1.0 / 33.0);

    auto integrated_sigma = [&](const BathSpec& bath) {
        const Liouvillian gen = build_liouvillian(sys, bath, dec);
        const double g0 = gen.rates.gamma[0];
        const Trajectory traj = evolve(gen, rho0, 30.0 / g0, {.sample_count = 1500});
        double acc = 0.0;
        double prev = sigma_moving(sys, dec, bath, traj.states[0]);
        for (std::size_t s = 1; s < traj.times.size(); ++s) {
            const double cur = sigma_moving(sys, dec, bath, traj.states[s]);
            acc += 0.5 * (prev + cur) * (traj.times[s] - traj.times[s - 1]);
            prev = cur;
        }
        return acc;
    };

    // at rest all three notions coincide
    const BathSpec rest = udw(1.0, 0.0, 0.5);
    const double total = total_entropy_production(sys, dec, rest, rho0);
    const double total_alt = total_entropy_production(sys, dec, rest, rho0, {}, true);
    const double integral = integrated_sigma(rest);
    CHECK(total == doctest::Approx(total_alt).epsilon(1e-10));
    // trapezoid sum carries O(h^2) truncation
    CHECK(integral == doctest::Approx(total).epsilon(1e-3));

    // in motion the stationary production stays positive, so the running
    // integral exceeds both end-point functionals; record the gap
    const BathSpec moving = udw(1.0, 0.9, 0.5);
    const double m_total = total_entropy_production(sys, dec, moving, rho0);
    const double m_alt = total_entropy_production(sys, dec, moving, rho0, {}, true);
    const double m_integral = integrated_sigma(moving);
    CHECK(m_integral > m_alt);
    MESSAGE("u=0.9: integral of sigma = ", m_integral, ", endpoint form = ", m_total,
            ", asymptotic-energy variant = ", m_alt);
}

TEST_CASE("empirical temperature") {
    // at rest: Omega / (e^{Omega/T} - 1)
    const BathSpec rest = udw(2.0, 0.0, 1.0);
    CHECK(empirical_temperature(rest, 1.5) ==
          doctest::Approx(1.5 * planck_n(2.0, 1.5)).epsilon(1e-14));
    // freezes out at zero temperature
    CHECK(empirical_temperature(udw(1e4, 1.0), 1.0) < 1e-300);
    // strictly increasing in T at fixed omega and rapidity
    for (auto coupling : {Coupling::UdW, Coupling::TD}) {
        double prev = -1.0;
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            const BathSpec b{coupling, 1.0 / t, 1.0, 1.0};
            const double theta = empirical_temperature(b, 1.0);
            CHECK(theta > prev);
            prev = theta;
        }
    }
    CHECK_THROWS_AS(empirical_temperature(rest, 0.0), DomainError);
}

}  // TEST_SUITE
