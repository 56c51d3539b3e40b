// liouville.hpp — Transition-operator decomposition of a finite-dimensional
// probe and the secular Lindblad generator it induces for a moving thermal
// bath, in the column-stacking superoperator representation.

#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "relatherm/spectral.hpp"
#include "relatherm/types.hpp"

namespace relatherm {

// One positive Bohr frequency with its lowering operator and the eigenbasis
// index pairs (n, m) it connects (eps_m - eps_n = omega > 0).
struct Transition {
    double omega;
    Matrix op;  // A_omega in the original basis
    std::vector<std::pair<Index, Index>> pairs;
};

// Energy-eigenbasis split of the coupling operator: positive-frequency
// lowering blocks plus the diagonal (omega = 0) remainder.
struct TransitionDecomposition {
    std::vector<Transition> transitions;  // sorted by increasing omega
    Matrix zero_op;                       // omega = 0 component, original basis
    RealVector energies;                  // eigenvalues of h, ascending
    Matrix eigenvectors;                  // columns diagonalize h

    Index dim() const { return eigenvectors.rows(); }
};

// Eigendecompose h, bucket the positive Bohr gaps with a relative tolerance
// (transitive clustering), and emit one lowering operator per cluster.
inline TransitionDecomposition decompose_transitions(const SystemSpec& sys,
                                                     double omega_tol = 1e-9) {
    sys.validate();
    if (!(omega_tol > 0.0)) throw DomainError("decompose_transitions: omega_tol must be > 0");
    const Index d = sys.dim();

    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("decompose_transitions: eigensolve failed");
    const RealVector eps = es.eigenvalues();
    const Matrix U = es.eigenvectors();
    const Matrix a_eig = U.adjoint() * sys.a * U;

    const double spread = eps(d - 1) - eps(0);
    const double tol_abs = omega_tol * std::max(spread, 1e-300);

    struct Gap {
        double omega;
        Index n, m;
    };
    std::vector<Gap> gaps;
    Matrix zero_eig = Matrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            const double g = eps(m) - eps(n);
            if (std::abs(g) <= tol_abs)
                zero_eig(n, m) += a_eig(n, m);
            else if (g > 0.0)
                gaps.push_back({g, n, m});
        }
    }

    TransitionDecomposition dec;
    dec.energies = eps;
    dec.eigenvectors = U;
    dec.zero_op = U * zero_eig * U.adjoint();

    std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
        return a.omega < b.omega || (a.omega == b.omega && (a.n < b.n || (a.n == b.n && a.m < b.m)));
    });

    const double prune_tol = 1e-14 * std::max(1.0, sys.a.norm());
    std::size_t i = 0;
    while (i < gaps.size()) {
        std::size_t j = i + 1;
        while (j < gaps.size() && gaps[j].omega - gaps[j - 1].omega < tol_abs) ++j;
        const double width = gaps[j - 1].omega - gaps[i].omega;
        if (width > 10.0 * tol_abs)
            throw ClusteringError(
                "decompose_transitions: frequency clusters overlap under the tolerance");
        Transition t;
        double sum = 0.0;
        Matrix op_eig = Matrix::Zero(d, d);
        for (std::size_t k = i; k < j; ++k) {
            sum += gaps[k].omega;
            op_eig(gaps[k].n, gaps[k].m) = a_eig(gaps[k].n, gaps[k].m);
            t.pairs.emplace_back(gaps[k].n, gaps[k].m);
        }
        i = j;
        if (op_eig.norm() <= prune_tol) continue;  // gap with no coupling matrix element
        t.omega = sum / static_cast<double>(t.pairs.size());
        t.op = U * op_eig * U.adjoint();
        dec.transitions.push_back(std::move(t));
    }
    return dec;
}

// Per-frequency dissipation rates: gamma(omega) with the downward (N+1) and
// upward (N) thermal factors split off.
struct RateTable {
    std::vector<double> omega;
    std::vector<double> gamma;
    std::vector<double> occupation;
};

inline RateTable rates_from_bath(const BathSpec& bath, const TransitionDecomposition& dec) {
    RateTable r;
    for (const auto& t : dec.transitions) {
        r.omega.push_back(t.omega);
        r.gamma.push_back(gamma_rate(bath, t.omega));
        r.occupation.push_back(bath_occupation(bath, t.omega));
    }
    return r;
}

// Secular Lindblad generator, split into its Hamiltonian commutator part and
// the dissipator. Column-stacking convention throughout.
struct Liouvillian {
    Matrix total;  // d^2 x d^2
    Matrix ham;
    Matrix diss;
    Index dim{0};
    BathSpec bath;
    RateTable rates;

    Matrix apply_total(const Matrix& rho) const {
        if (rho.rows() != dim || rho.cols() != dim)
            throw DimensionError("Liouvillian: density matrix dimension mismatch");
        return unvectorize(total * vectorize(rho), dim);
    }

    Matrix apply_dissipator(const Matrix& rho) const {
        if (rho.rows() != dim || rho.cols() != dim)
            throw DimensionError("Liouvillian: density matrix dimension mismatch");
        return unvectorize(diss * vectorize(rho), dim);
    }
};

namespace detail {

// D[X] rho = X rho X^dag - (1/2){X^dag X, rho} as a superoperator.
inline Matrix dissipator_superop(const Matrix& x) {
    const Index d = x.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix xdx = x.adjoint() * x;
    return kronecker(x.conjugate(), x) - 0.5 * kronecker(id, xdx) -
           0.5 * kronecker(xdx.transpose(), id);
}

inline Matrix commutator_superop(const Matrix& h) {
    const Index d = h.rows();
    const Matrix id = Matrix::Identity(d, d);
    return Complex(0.0, -1.0) * (kronecker(id, h) - kronecker(h.transpose(), id));
}

inline Liouvillian assemble(const SystemSpec& sys, const BathSpec& bath,
                            const TransitionDecomposition& dec, const RateTable& rates,
                            const Matrix& h_extra) {
    const Index d = sys.dim();
    Liouvillian gen;
    gen.dim = d;
    gen.bath = bath;
    gen.rates = rates;
    gen.diss = Matrix::Zero(d * d, d * d);
    for (std::size_t i = 0; i < dec.transitions.size(); ++i) {
        const double g = rates.gamma[i];
        const double n = rates.occupation[i];
        if (!(g >= 0.0) || !(n >= 0.0))
            throw DomainError("build_liouvillian: negative dissipation rate");
        const Matrix& a = dec.transitions[i].op;
        gen.diss += g * (n + 1.0) * dissipator_superop(a);
        if (n > 0.0) gen.diss += g * n * dissipator_superop(a.adjoint());
    }
    gen.ham = commutator_superop(sys.h + h_extra);
    gen.total = gen.ham + gen.diss;
    return gen;
}

}  // namespace detail

// Bath-induced Hermitian correction to the probe Hamiltonian. The sum runs
// over positive and negative Bohr frequencies; the zero-frequency term drops
// because the shift is odd.
inline Matrix lamb_shift_hamiltonian(const SystemSpec& sys, const BathSpec& bath,
                                     const TransitionDecomposition& dec, double epsilon,
                                     const QuadratureSpec& quad = {}) {
    const Index d = sys.dim();
    Matrix h_ls = Matrix::Zero(d, d);
    for (const auto& t : dec.transitions) {
        const double delta = lamb_shift(bath, t.omega, epsilon, quad);
        h_ls += delta * (t.op.adjoint() * t.op - t.op * t.op.adjoint());
    }
    return h_ls;
}

// Quantum-optical generator for the moving bath: rates gamma(omega)[N+1] down
// and gamma(omega) N up per positive Bohr frequency.
inline Liouvillian build_liouvillian(const SystemSpec& sys, const BathSpec& bath,
                                     const TransitionDecomposition& dec,
                                     bool include_lamb = false,
                                     std::optional<double> epsilon = std::nullopt,
                                     const QuadratureSpec& quad = {}) {
    sys.validate();
    bath.validate();
    Matrix h_extra = Matrix::Zero(sys.dim(), sys.dim());
    if (include_lamb) {
        if (!epsilon || !(*epsilon > 0.0))
            throw DomainError("build_liouvillian: Lamb shift requires a positive cutoff epsilon");
        h_extra = lamb_shift_hamiltonian(sys, bath, dec, *epsilon, quad);
    }
    return detail::assemble(sys, bath, dec, rates_from_bath(bath, dec), h_extra);
}

// Same structure with explicitly supplied occupation numbers per positive
// frequency (ascending order), bypassing the bath spectrum.
inline Liouvillian build_liouvillian_with_occupations(const SystemSpec& sys, const BathSpec& bath,
                                                      const TransitionDecomposition& dec,
                                                      const std::vector<double>& occupations) {
    sys.validate();
    bath.validate();
    if (occupations.size() != dec.transitions.size())
        throw DimensionError("build_liouvillian_with_occupations: one N per Bohr frequency");
    RateTable rates;
    for (std::size_t i = 0; i < dec.transitions.size(); ++i) {
        rates.omega.push_back(dec.transitions[i].omega);
        rates.gamma.push_back(gamma_rate(bath, dec.transitions[i].omega));
        rates.occupation.push_back(occupations[i]);
    }
    return detail::assemble(sys, bath, dec, rates, Matrix::Zero(sys.dim(), sys.dim()));
}

// Generator of a stationary thermal reservoir at the Doppler-shifted inverse
// temperature beta_xi: Planck occupations, same vacuum rates.
inline Liouvillian fixed_temperature_liouvillian(const SystemSpec& sys,
                                                 const TransitionDecomposition& dec,
                                                 const BathSpec& bath, double xi) {
    sys.validate();
    bath.validate();
    if (std::abs(xi) > 1.0)
        throw DomainError("fixed_temperature_liouvillian: xi must lie in [-1, 1]");
    const double beta_xi = directional_beta(bath, xi);
    RateTable rates;
    for (const auto& t : dec.transitions) {
        rates.omega.push_back(t.omega);
        rates.gamma.push_back(gamma_rate(bath, t.omega));
        rates.occupation.push_back(planck_n(beta_xi, t.omega));
    }
    return detail::assemble(sys, bath, dec, rates, Matrix::Zero(sys.dim(), sys.dim()));
}

inline Matrix apply(const Liouvillian& gen, const Matrix& rho) { return gen.apply_total(rho); }

inline Matrix dissipator_apply(const Liouvillian& gen, const Matrix& rho) {
    return gen.apply_dissipator(rho);
}

}  // namespace relatherm
