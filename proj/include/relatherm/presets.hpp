// presets.hpp — Standard probe systems: qubit, truncated harmonic oscillator
// and the three-level atom with one forbidden transition. Basis conventions
// are pinned here and relied on by tests and the CLI.

#pragma once

#include <cmath>

#include "relatherm/types.hpp"

namespace relatherm {

// Qubit basis order: index 0 = excited |1>, index 1 = ground |0>.
inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// |0><1| in the (excited, ground) order: lowers the excited state.
inline Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

inline Matrix sigma_plus() { return sigma_minus().adjoint().eval(); }

// Two-level atom of frequency omega0 with transverse coupling.
inline SystemSpec qubit_system(double omega0) {
    if (!(omega0 > 0.0)) throw DomainError("qubit_system: omega0 must be > 0");
    return {0.5 * omega0 * pauli_z(), pauli_x()};
}

inline Matrix lowering_operator(Index dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Truncation dimension for which the geometric stationary tail
// sum_{n >= d} (N/(N+1))^n (1/(N+1)) stays below tail_bound.
inline Index oscillator_dim_for_tail(double occupation, double tail_bound = 1e-10,
                                     Index max_dim = 64) {
    if (!(occupation >= 0.0)) throw DomainError("oscillator_dim_for_tail: N must be >= 0");
    if (occupation == 0.0) return 2;
    const double r = occupation / (occupation + 1.0);
    const Index d = static_cast<Index>(std::ceil(std::log(tail_bound) / std::log(r))) + 1;
    if (d > max_dim)
        throw DomainError("oscillator_dim_for_tail: requested tail needs dim beyond the cap");
    return std::max<Index>(d, 2);
}

// Harmonic oscillator truncated to dim levels; position coupling.
inline SystemSpec oscillator_system(double omega0, double mass, Index dim) {
    if (!(omega0 > 0.0)) throw DomainError("oscillator_system: omega0 must be > 0");
    if (!(mass > 0.0)) throw DomainError("oscillator_system: mass must be > 0");
    if (dim < 2) throw DomainError("oscillator_system: dim must be >= 2");
    const Matrix a = lowering_operator(dim);
    const Matrix h = omega0 * (a.adjoint() * a);
    const Matrix x = (a + a.adjoint()) / std::sqrt(2.0 * mass * omega0);
    return {h, x};
}

// Levels |a>, |b>, |c> with E_a = 0 < E_b < E_c; the a <-> b transition is
// forbidden. omega1 = E_c - E_a, omega2 = E_c - E_b; the per-transition
// coupling strengths enter through the coupling operator.
inline SystemSpec three_level_system(double omega1, double omega2, double lambda1 = 1.0,
                                     double lambda2 = 1.0) {
    if (!(omega1 > omega2) || !(omega2 > 0.0))
        throw DomainError("three_level_system: requires omega1 > omega2 > 0");
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = omega1 - omega2;
    h(2, 2) = omega1;
    Matrix s1 = Matrix::Zero(3, 3), s2 = Matrix::Zero(3, 3);
    s1(0, 2) = 1;  // |a><c|
    s2(1, 2) = 1;  // |b><c|
    const Matrix a = lambda1 * (s1 + s1.adjoint()) + lambda2 * (s2 + s2.adjoint());
    return {h, a};
}

}  // namespace relatherm
