// models.hpp — Closed-form solutions for the standard probes: qubit
// trajectory and stationary state, oscillator and three-level stationary
// states, and the associated heat-current and heat-transfer expressions.
// These serve as oracles for the numeric generator and integrator.

#pragma once

#include <cmath>

#include "relatherm/types.hpp"

namespace relatherm {

// Initial pure qubit state e^{i phi} cos(theta/2)|1> + sin(theta/2)|0>.
struct QubitInit {
    double theta{0.0};
    double phi{0.0};

    void validate() const {
        if (theta < 0.0 || theta > pi) throw DomainError("QubitInit: theta must lie in [0, pi]");
    }

    Matrix density() const {
        validate();
        const Complex amp_e = std::exp(Complex(0.0, phi)) * std::cos(theta / 2.0);
        const Complex amp_g = std::sin(theta / 2.0);
        Matrix rho(2, 2);
        rho << amp_e * std::conj(amp_e), amp_e * std::conj(amp_g),
               amp_g * std::conj(amp_e), amp_g * std::conj(amp_g);
        return rho;
    }
};

// Exact qubit density matrix at proper time tau: populations relax at
// Gamma0(2N+1) toward the stationary values, coherences decay at half that
// rate while rotating at the (possibly Lamb-shifted) frequency Omega.
inline Matrix qubit_rho(const QubitInit& init, double occupation, double gamma0, double omega,
                        double tau) {
    init.validate();
    if (!(occupation >= 0.0)) throw DomainError("qubit_rho: N must be >= 0");
    if (!(gamma0 > 0.0)) throw DomainError("qubit_rho: Gamma0 must be > 0");
    if (tau < 0.0) throw DomainError("qubit_rho: tau must be >= 0");
    const double n2p1 = 2.0 * occupation + 1.0;
    const double relax = std::exp(-gamma0 * n2p1 * tau);
    const double cohere = std::exp(-0.5 * gamma0 * n2p1 * tau);
    const double c = std::cos(init.theta), s = std::sin(init.theta);
    Matrix rho(2, 2);
    rho(0, 0) = 0.5 * (1.0 + relax * c - (1.0 - relax) / n2p1);
    rho(1, 1) = 0.5 * (1.0 - relax * c + (1.0 - relax) / n2p1);
    rho(0, 1) = 0.5 * cohere * s * std::exp(Complex(0.0, -omega * tau + init.phi));
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

// Proper-time derivative of the solution above; used to verify that the
// closed form satisfies the generator equation.
inline Matrix qubit_rho_derivative(const QubitInit& init, double occupation, double gamma0,
                                   double omega, double tau) {
    const double n2p1 = 2.0 * occupation + 1.0;
    const double rate = gamma0 * n2p1;
    const double relax = std::exp(-rate * tau);
    const double cohere = std::exp(-0.5 * rate * tau);
    const double c = std::cos(init.theta), s = std::sin(init.theta);
    Matrix drho(2, 2);
    drho(0, 0) = 0.5 * (-rate * relax * c - rate * relax / n2p1);
    drho(1, 1) = -drho(0, 0).real();
    drho(0, 1) = 0.5 * s * std::exp(Complex(0.0, -omega * tau + init.phi)) * cohere *
                 Complex(-0.5 * rate, -omega);
    drho(1, 0) = std::conj(drho(0, 1));
    return drho;
}

inline Matrix qubit_stationary(double occupation) {
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = occupation / (2.0 * occupation + 1.0);
    rho(1, 1) = (occupation + 1.0) / (2.0 * occupation + 1.0);
    return rho;
}

inline double qubit_heat_current(double n0, double occupation, double gamma0, double omega0,
                                 double tau) {
    if (!(n0 >= 0.0) || !(occupation >= 0.0))
        throw DomainError("qubit_heat_current: occupations must be >= 0");
    return gamma0 * omega0 * std::exp(-gamma0 * (1.0 + 2.0 * occupation) * tau) *
           (occupation - n0) / (2.0 * n0 + 1.0);
}

inline double qubit_heat_transfer(double n0, double occupation, double omega0) {
    return omega0 * (occupation - n0) / ((2.0 * n0 + 1.0) * (2.0 * occupation + 1.0));
}

// Geometric stationary distribution of the damped oscillator, truncated and
// renormalized. Throws when the truncated tail exceeds 1e-10.
inline Matrix oscillator_stationary(double occupation, Index dim) {
    if (!(occupation >= 0.0)) throw DomainError("oscillator_stationary: N must be >= 0");
    if (dim < 2) throw DomainError("oscillator_stationary: dim must be >= 2");
    Matrix rho = Matrix::Zero(dim, dim);
    if (occupation == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    const double r = occupation / (occupation + 1.0);
    if (std::pow(r, static_cast<double>(dim)) > 1e-10)
        throw DomainError("oscillator_stationary: truncation tail above 1e-10; increase dim");
    double sum = 0.0;
    for (Index n = 0; n < dim; ++n) {
        rho(n, n) = std::pow(r, static_cast<double>(n)) / (occupation + 1.0);
        sum += rho(n, n).real();
    }
    rho /= sum;
    return rho;
}

inline double oscillator_heat_current(double n0, double occupation, double gamma0, double omega0,
                                      double tau) {
    if (!(n0 >= 0.0) || !(occupation >= 0.0))
        throw DomainError("oscillator_heat_current: occupations must be >= 0");
    return gamma0 * omega0 * std::exp(-gamma0 * tau) * (occupation - n0);
}

inline double oscillator_heat_transfer(double n0, double occupation, double omega0) {
    return omega0 * (occupation - n0);
}

// Stationary populations of the three-level atom in the (a, b, c) order.
// The N1 = N2 = 0 limit is the pure ground state.
inline Matrix three_level_stationary(double n1, double n2) {
    if (!(n1 >= 0.0) || !(n2 >= 0.0))
        throw DomainError("three_level_stationary: occupations must be >= 0");
    Matrix rho = Matrix::Zero(3, 3);
    const double den = 3.0 * n1 * n2 + n1 + n2;
    if (den == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    rho(0, 0) = (n1 + 1.0) * n2 / den;
    rho(1, 1) = n1 * (n2 + 1.0) / den;
    rho(2, 2) = n1 * n2 / den;
    return rho;
}

}  // namespace relatherm
