// types.hpp — Core domain types, aliases and error hierarchy.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relatherm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

// ----------------------------- error hierarchy ------------------------------

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateStationaryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClusteringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --------------------------------- bath -------------------------------------

enum class Coupling { UdW, TD };

inline const char* to_string(Coupling c) {
    return c == Coupling::UdW ? "udw" : "td";
}

// Names follow the rest-frame temperature reading; for the TD coupling the
// low/high temperature windows are the high/low frequency ones.
enum class AsymptoticRegime { LowVelocity, HighVelocity, LowTemperature, HighTemperature };

// Thermal scalar-field bath seen from a uniformly moving probe.
// Natural units throughout: hbar = c = k_B = 1.
struct BathSpec {
    Coupling coupling{Coupling::UdW};
    double beta{1.0};    // inverse temperature, > 0
    double u{0.0};       // rapidity of the probe trajectory, any sign
    double lambda{1.0};  // coupling constant, >= 0

    void validate() const {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw DomainError("BathSpec: beta must be positive and finite");
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw DomainError("BathSpec: lambda must be nonnegative and finite");
        if (!std::isfinite(u))
            throw DomainError("BathSpec: rapidity must be finite");
    }

    double temperature() const { return 1.0 / beta; }
};

// ------------------------------- quadrature ---------------------------------

struct QuadratureSpec {
    int gl_order{64};         // Gauss-Legendre order for xi-integrals on [-1,1]
    double abs_tol{1e-10};    // absolute tolerance for adaptive integration
    int max_intervals{4000};  // adaptive subdivision budget
};

// -------------------------------- system ------------------------------------

// Finite-dimensional probe: Hamiltonian h and Hermitian coupling operator a.
struct SystemSpec {
    Matrix h;
    Matrix a;

    Index dim() const { return h.rows(); }

    void validate(double herm_tol = 1e-12) const {
        if (h.rows() < 2 || h.rows() != h.cols())
            throw DimensionError("SystemSpec: h must be square with dim >= 2");
        if (a.rows() != h.rows() || a.cols() != h.cols())
            throw DimensionError("SystemSpec: a must match the dimension of h");
        const double scale_h = std::max(1.0, h.norm());
        const double scale_a = std::max(1.0, a.norm());
        if ((h - h.adjoint()).norm() > herm_tol * scale_h)
            throw DomainError("SystemSpec: h is not Hermitian");
        if ((a - a.adjoint()).norm() > herm_tol * scale_a)
            throw DomainError("SystemSpec: a is not Hermitian");
    }
};

// ------------------------------ small helpers -------------------------------

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Column-stacking vectorization; the fixed convention for every superoperator
// in this library: vec(A X B) = (B^T (x) A) vec(X).
inline Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvectorize(const Vector& v, Index d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace relatherm
