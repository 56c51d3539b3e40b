// dynamics.hpp — Time evolution under a Liouvillian (adaptive Runge-Kutta and
// exact exponential stepping), stationary states via the superoperator
// spectrum, and the population rate equation for non-degenerate probes.

#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <Eigen/Eigenvalues>

#include "relatherm/liouville.hpp"
#include "relatherm/types.hpp"

namespace relatherm {

enum class Method { RK45, ExpStep, FixedRK4 };

struct EvolveOptions {
    Method method{Method::RK45};
    double tol{1e-10};
    double max_step{0.0};     // 0 = unrestricted
    int sample_count{200};    // equally spaced samples after t = 0
    double fixed_step{0.0};   // FixedRK4 only
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    long steps{0};
    double max_trace_error{0.0};
    double min_eigenvalue{1.0};
};

namespace detail {

// Dormand-Prince 5(4) embedded pair.
template <class F>
inline bool dopri_step(F&& f, const Vector& y, double h, Vector& y5, double& err_norm,
                       double tol) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    const Vector k1 = f(y);
    const Vector k2 = f(y + h * (a21 * k1));
    const Vector k3 = f(y + h * (a31 * k1 + a32 * k2));
    const Vector k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector k7 = f(y5);
    const Vector e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double scale = 0.0;
    for (Index i = 0; i < y.size(); ++i)
        scale = std::max(scale, std::abs(e(i)) / (1.0 + std::max(std::abs(y(i)), std::abs(y5(i)))));
    err_norm = scale / tol;
    return err_norm <= 1.0;
}

inline void record_sample(Trajectory& traj, double t, const Matrix& rho, double tol) {
    Matrix state = hermitize(rho);
    const double trace_err = std::abs(state.trace().real() - 1.0) + std::abs(state.trace().imag());
    Eigen::SelfAdjointEigenSolver<Matrix> es(state, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    traj.max_trace_error = std::max(traj.max_trace_error, trace_err);
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_eig);
    if (trace_err > 100.0 * tol || min_eig < -100.0 * tol)
        throw IntegratorError("evolve: state invariants violated beyond 100x tolerance (trace "
                              "error " +
                              std::to_string(trace_err) + ", min eigenvalue " +
                              std::to_string(min_eig) + " at t = " + std::to_string(t) + ")");
    traj.times.push_back(t);
    traj.states.push_back(std::move(state));
}

}  // namespace detail

inline void validate_density_matrix(const Matrix& rho, double tol = 1e-10) {
    if (rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
    if ((rho - rho.adjoint()).norm() > tol * std::max(1.0, rho.norm()))
        throw DomainError("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw DomainError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw DomainError("density matrix has a negative eigenvalue");
}

// Integrate d rho / d tau = L[rho] from rho0 to t_final, sampling on an equal
// grid. Samples are re-Hermitized and invariant-checked; internal steps are
// not touched.
inline Trajectory evolve(const Liouvillian& gen, const Matrix& rho0, double t_final,
                         const EvolveOptions& options = {}) {
    if (!(t_final > 0.0)) throw DomainError("evolve: t_final must be > 0");
    if (rho0.rows() != gen.dim || rho0.cols() != gen.dim)
        throw DimensionError("evolve: initial state dimension mismatch");
    validate_density_matrix(rho0, 1e-8);
    const int samples = std::max(1, options.sample_count);
    const double dt = t_final / samples;

    Trajectory traj;
    detail::record_sample(traj, 0.0, rho0, options.tol);

    if (options.method == Method::ExpStep) {
        Eigen::ComplexEigenSolver<Matrix> es(gen.total);
        if (es.info() != Eigen::Success) throw IntegratorError("evolve: eigensolve failed");
        const Matrix& v = es.eigenvectors();
        const Vector coeff = v.partialPivLu().solve(vectorize(rho0));
        for (int s = 1; s <= samples; ++s) {
            const double t = s * dt;
            Vector scaled(coeff.size());
            for (Index i = 0; i < coeff.size(); ++i)
                scaled(i) = coeff(i) * std::exp(es.eigenvalues()(i) * t);
            detail::record_sample(traj, t, unvectorize(v * scaled, gen.dim), options.tol);
            ++traj.steps;
        }
        return traj;
    }

    auto rhs = [&](const Vector& y) -> Vector { return gen.total * y; };
    Vector y = vectorize(rho0);
    double t = 0.0;

    if (options.method == Method::FixedRK4) {
        const double h0 = options.fixed_step > 0.0 ? options.fixed_step : dt;
        for (int s = 1; s <= samples; ++s) {
            const double t_target = s * dt;
            while (t < t_target - 1e-14 * t_final) {
                const double h = std::min(h0, t_target - t);
                const Vector k1 = rhs(y);
                const Vector k2 = rhs(y + 0.5 * h * k1);
                const Vector k3 = rhs(y + 0.5 * h * k2);
                const Vector k4 = rhs(y + h * k3);
                y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t += h;
                ++traj.steps;
            }
            detail::record_sample(traj, t_target, unvectorize(y, gen.dim), options.tol);
        }
        return traj;
    }

    double h = dt;
    if (options.max_step > 0.0) h = std::min(h, options.max_step);
    for (int s = 1; s <= samples; ++s) {
        const double t_target = s * dt;
        while (t < t_target - 1e-14 * t_final) {
            h = std::min(h, t_target - t);
            if (h < 1e-14 * t_final)
                throw IntegratorError("evolve: step size underflow");
            Vector y5;
            double err;
            if (detail::dopri_step(rhs, y, h, y5, err, options.tol)) {
                y = std::move(y5);
                t += h;
                ++traj.steps;
            }
            double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            factor = std::clamp(factor, 0.2, 5.0);
            h *= factor;
            if (options.max_step > 0.0) h = std::min(h, options.max_step);
        }
        detail::record_sample(traj, t_target, unvectorize(y, gen.dim), options.tol);
    }
    return traj;
}

// Unique stationary state from the superoperator spectrum: the eigenvector of
// smallest-modulus eigenvalue, Hermitized and trace-normalized. Refuses when
// the zero eigenvalue is not simple within the tolerance.
inline Matrix stationary_state(const Liouvillian& gen, double tol = 1e-10) {
    Eigen::ComplexEigenSolver<Matrix> es(gen.total);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("stationary_state: eigensolve failed");
    const auto& vals = es.eigenvalues();
    Index i_min = 0, i_second = -1;
    for (Index i = 1; i < vals.size(); ++i)
        if (std::abs(vals(i)) < std::abs(vals(i_min))) i_min = i;
    for (Index i = 0; i < vals.size(); ++i) {
        if (i == i_min) continue;
        if (i_second < 0 || std::abs(vals(i)) < std::abs(vals(i_second))) i_second = i;
    }
    if (i_second >= 0 && std::abs(vals(i_second)) < 10.0 * tol)
        throw DegenerateStationaryError(
            "stationary_state: zero eigenvalue is not simple; asymptotic state is not unique");

    Matrix rho = hermitize(unvectorize(es.eigenvectors().col(i_min), gen.dim));
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12)
        throw DegenerateStationaryError("stationary_state: null vector is traceless");
    rho /= tr;
    const double residual = (gen.total * vectorize(rho)).norm();
    if (residual > std::max(tol, 1e3 * std::abs(vals(i_min))))
        throw std::runtime_error("stationary_state: residual above tolerance");
    return rho;
}

// ------------------------- population rate equation --------------------------

// Transition rates between energy eigenstates: rates(n, m) moves population
// from level m to level n. Downward transitions carry N+1, upward N.
struct PauliRates {
    RealVector energies;
    RealMatrix rates;  // zero diagonal
};

inline PauliRates pauli_rates(const SystemSpec& sys, const TransitionDecomposition& dec,
                              const BathSpec& bath) {
    sys.validate();
    const Index d = sys.dim();
    const double spread = dec.energies(d - 1) - dec.energies(0);
    for (Index n = 0; n + 1 < d; ++n)
        if (dec.energies(n + 1) - dec.energies(n) <= 1e-9 * std::max(spread, 1e-300))
            throw DomainError("pauli_rates: Hamiltonian has degenerate levels");

    const Matrix a_eig = dec.eigenvectors.adjoint() * sys.a * dec.eigenvectors;
    PauliRates pr;
    pr.energies = dec.energies;
    pr.rates = RealMatrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            if (n == m) continue;
            const double w = std::abs(pr.energies(n) - pr.energies(m));
            const double g = gamma_rate(bath, w);
            const double occ = bath_occupation(bath, w);
            const double amp2 = std::norm(a_eig(m, n));
            pr.rates(n, m) = g * amp2 * (pr.energies(m) > pr.energies(n) ? occ + 1.0 : occ);
        }
    }
    return pr;
}

// Stationary probability vector of the rate matrix (outflow on the diagonal).
// Requires the transition graph to be connected.
inline RealVector pauli_stationary(const PauliRates& pr) {
    const Index d = pr.rates.rows();
    // connectivity of the undirected support graph
    std::vector<bool> seen(d, false);
    std::queue<Index> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        const Index n = frontier.front();
        frontier.pop();
        for (Index m = 0; m < d; ++m) {
            if (!seen[m] && (pr.rates(n, m) > 0.0 || pr.rates(m, n) > 0.0)) {
                seen[m] = true;
                frontier.push(m);
            }
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw DegenerateStationaryError(
            "pauli_stationary: transition graph is disconnected; stationary vector not unique");

    RealMatrix m = pr.rates;
    m.diagonal().setZero();
    m -= pr.rates.colwise().sum().asDiagonal();
    // null space via LU; replace one balance row by normalization
    RealMatrix sys = m;
    sys.row(0).setOnes();
    RealVector rhs = RealVector::Zero(d);
    rhs(0) = 1.0;
    RealVector p = sys.fullPivLu().solve(rhs);
    p = p.cwiseMax(0.0);
    p /= p.sum();
    return p;
}

// Per-pair comparison of stationary population ratios against N/(N+1) at the
// pair's Bohr frequency. Report only; nothing is assumed.
struct DetailedBalanceReport {
    bool holds{true};
    double max_violation{0.0};
    struct Pair {
        Index upper, lower;
        double ratio, expected;
    };
    std::vector<Pair> pairs;
};

inline DetailedBalanceReport check_detailed_balance(const Matrix& rho_ss,
                                                    const TransitionDecomposition& dec,
                                                    const BathSpec& bath, double tol = 1e-8) {
    const Matrix rho_eig = dec.eigenvectors.adjoint() * rho_ss * dec.eigenvectors;
    DetailedBalanceReport report;
    for (const auto& t : dec.transitions) {
        const double occ = bath_occupation(bath, t.omega);
        const double expected = occ / (occ + 1.0);
        for (const auto& [n, m] : t.pairs) {
            // eps_m - eps_n = omega > 0: m is the upper level
            const double p_up = rho_eig(m, m).real();
            const double p_lo = rho_eig(n, n).real();
            if (p_lo <= 0.0) continue;
            const double ratio = p_up / p_lo;
            report.pairs.push_back({m, n, ratio, expected});
            report.max_violation =
                std::max(report.max_violation, std::abs(ratio - expected) / expected);
        }
    }
    report.holds = report.max_violation < tol;
    return report;
}

}  // namespace relatherm
