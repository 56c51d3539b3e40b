// Shared helpers for the test suites: seeded random Hermitian operators and
// density matrices.

#pragma once

#include <random>

#include "relatherm/types.hpp"

namespace test_support {

using relatherm::Complex;
using relatherm::Index;
using relatherm::Matrix;

inline Matrix random_hermitian(Index d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return (0.5 * (m + m.adjoint())).eval();
}

// Nondegenerate Hamiltonian: random Hermitian plus a spread diagonal.
inline Matrix random_hamiltonian(Index d, unsigned seed, double spacing = 1.0) {
    Matrix h = 0.2 * random_hermitian(d, seed);
    for (Index i = 0; i < d; ++i) h(i, i) += spacing * static_cast<double>(i + 1);
    return h;
}

inline Matrix random_density(Index d, unsigned seed) {
    const Matrix g = random_hermitian(d, seed);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (0.5 * (rho + rho.adjoint())).eval();
}

}  // namespace test_support
