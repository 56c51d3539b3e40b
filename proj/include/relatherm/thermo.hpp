// thermo.hpp — Thermodynamic functionals on probe states: internal energy,
// heat current and transfer, Gibbs states, von Neumann entropy, entropy
// production relative to fixed and directionally-averaged reservoirs, and the
// empirical temperature read off a moving thermometer.

#pragma once

#include <cmath>

#include <Eigen/Eigenvalues>

#include "relatherm/dynamics.hpp"
#include "relatherm/liouville.hpp"
#include "relatherm/spectral.hpp"
#include "relatherm/types.hpp"

namespace relatherm {

inline double internal_energy(const Matrix& rho, const SystemSpec& sys) {
    if (rho.rows() != sys.dim() || rho.cols() != sys.dim())
        throw DimensionError("internal_energy: dimension mismatch");
    return (rho * sys.h).trace().real();
}

// Heat current q = Tr(L_diss[rho] h); the unitary part moves no energy.
inline double heat_current(const Liouvillian& gen, const Matrix& rho, const SystemSpec& sys) {
    return (gen.apply_dissipator(rho) * sys.h).trace().real();
}

// Total heat received from the bath between rho0 and the asymptotic state.
inline double heat_transfer(const Liouvillian& gen, const Matrix& rho0, const SystemSpec& sys,
                            double tol = 1e-10) {
    const Matrix rho_inf = stationary_state(gen, tol);
    return internal_energy(rho_inf, sys) - internal_energy(rho0, sys);
}

// Gibbs state e^{-beta h}/Z via eigendecomposition, shifted so the largest
// Boltzmann weight is one.
inline Matrix gibbs_state(const SystemSpec& sys, double beta) {
    sys.validate();
    if (!(beta > 0.0)) throw DomainError("gibbs_state: beta must be > 0");
    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.h);
    const RealVector eps = es.eigenvalues();
    RealVector w = (-beta * (eps.array() - eps(0))).exp();
    w /= w.sum();
    return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// -Tr rho log rho in nats; eigenvalues below 1e-14 count as exact zeros.
inline double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-14) s -= p * std::log(p);
    }
    return s;
}

namespace detail {

// log rho with eigenvalues clamped at eta and renormalized; sets the warning
// flag when clamping changed anything.
inline Matrix log_density(const Matrix& rho, bool* clamped, double eta = 1e-12) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho));
    RealVector p = es.eigenvalues();
    bool warn = false;
    for (Index i = 0; i < p.size(); ++i)
        if (p(i) < eta) {
            p(i) = eta;
            warn = true;
        }
    p /= p.sum();
    if (clamped) *clamped = warn;
    Matrix logs = p.array().log().matrix().cast<Complex>().asDiagonal();
    return es.eigenvectors() * logs * es.eigenvectors().adjoint();
}

}  // namespace detail

// Entropy production rate relative to a fixed-temperature reservoir:
// -Tr(L_beta[rho](log rho - log rho_beta)) >= 0, vanishing at the Gibbs
// state. States of deficient rank are clamped before the logarithm; the
// optional flag reports when that happened.
inline double spohn_sigma(const Liouvillian& gen_at_beta, const Matrix& rho,
                          const SystemSpec& sys, double beta, bool* rank_warning = nullptr) {
    const Matrix log_rho = detail::log_density(rho, rank_warning);
    const Matrix log_gibbs = detail::log_density(gibbs_state(sys, beta), nullptr);
    const Matrix flow = gen_at_beta.apply_dissipator(rho);
    return -(flow * (log_rho - log_gibbs)).trace().real();
}

// Entropy production of the moving bath: the weighted directional average of
// spohn_sigma over the fixed-temperature reservoirs.
inline double sigma_moving(const SystemSpec& sys, const TransitionDecomposition& dec,
                           const BathSpec& bath, const Matrix& rho,
                           const QuadratureSpec& quad = {}) {
    const GaussLegendre gl(quad.gl_order);
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double xi = gl.nodes[i];
        const Liouvillian gen_xi = fixed_temperature_liouvillian(sys, dec, bath, xi);
        sum += gl.weights[i] * directional_weight(bath, xi) *
               spohn_sigma(gen_xi, rho, sys, directional_beta(bath, xi));
    }
    return 0.5 * sum;
}

// Total produced entropy between rho0 and the asymptotic state. The third
// term integrates beta_xi against either the Gibbs energy at beta_xi (as the
// balance identity is stated) or, behind the flag, the actual asymptotic
// energy E(inf).
inline double total_entropy_production(const SystemSpec& sys, const TransitionDecomposition& dec,
                                       const BathSpec& bath, const Matrix& rho0,
                                       const QuadratureSpec& quad = {},
                                       bool use_asymptotic_energy = false, double tol = 1e-10) {
    const Liouvillian gen = build_liouvillian(sys, bath, dec);
    const Matrix rho_inf = stationary_state(gen, tol);
    const double e0 = internal_energy(rho0, sys);
    const double e_inf = internal_energy(rho_inf, sys);
    const GaussLegendre gl(quad.gl_order);
    double third = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double xi = gl.nodes[i];
        const double beta_xi = directional_beta(bath, xi);
        const double e_xi =
            use_asymptotic_energy ? e_inf : internal_energy(gibbs_state(sys, beta_xi), sys);
        third += gl.weights[i] * directional_weight(bath, xi) * beta_xi * (e_xi - e0);
    }
    third *= 0.5;
    return von_neumann_entropy(rho_inf) - von_neumann_entropy(rho0) - third;
}

// Empirical temperature of a moving thermometer of frequency omega:
// theta = omega N(omega), strictly increasing in the bath temperature.
inline double empirical_temperature(const BathSpec& bath, double omega) {
    if (!(omega > 0.0)) throw DomainError("empirical_temperature: omega must be > 0");
    return omega * bath_occupation(bath, omega);
}

}  // namespace relatherm
