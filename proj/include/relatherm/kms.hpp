// kms.hpp — Thermal Hadamard functions of the massless scalar field as
// truncated image sums: imaginary-time periodicity (KMS) checks, the boosted
// correlator, its failure of the KMS property, and the convex-combination
// identity over Doppler-shifted temperatures.

#pragma once

#include <cmath>
#include <complex>

#include "relatherm/quadrature.hpp"
#include "relatherm/types.hpp"

namespace relatherm {

struct ImageSumSpec {
    double beta{1.0};
    int nmax{10000};
    double u{0.0};

    void validate() const {
        if (!(beta > 0.0)) throw DomainError("ImageSumSpec: beta must be > 0");
        if (nmax < 1) throw DomainError("ImageSumSpec: nmax must be >= 1");
        if (!std::isfinite(u)) throw DomainError("ImageSumSpec: rapidity must be finite");
    }
};

namespace detail {

inline void check_denominator(const Complex& d) {
    if (std::abs(d) < 1e-10)
        throw DomainError("hadamard image sum: evaluation point sits on a lightcone image");
}

// sum_{n > nmax} n^{-2} and n^{-4}, Euler-Maclaurin.
inline double zeta2_tail(int nmax) {
    const double n = nmax;
    return 1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n * n * n);
}

inline double zeta4_tail(int nmax) {
    const double n = nmax;
    return 1.0 / (3.0 * n * n * n);
}

// Tail of the symmetric image sum beyond nmax for denominators
// q2 - n^2 b^2 + 2 i n b T, through O(1/nmax^3); q2 = t^2 - r^2.
inline Complex image_tail(double beta, int nmax, const Complex& t_eff, const Complex& q2) {
    const double b2 = beta * beta;
    const Complex second = (8.0 * t_eff * t_eff - 2.0 * q2) / (4.0 * pi * pi * b2 * b2);
    return zeta2_tail(nmax) / (2.0 * pi * pi * b2) - second * zeta4_tail(nmax);
}

}  // namespace detail

// Closed form of the r = 0 thermal Hadamard function.
inline double hadamard_closed_r0(double beta, double t) {
    const double s = std::sinh(pi * t / beta);
    return -1.0 / (4.0 * beta * beta * s * s);
}

// Thermal Hadamard function as a symmetric truncated image sum plus the
// integral tail estimate. t may be complex for KMS shifts; the optional out
// parameter reports a bound on the remaining truncation error.
inline Complex hadamard_thermal(const ImageSumSpec& spec, Complex t, double r,
                                double* tail_bound = nullptr) {
    spec.validate();
    if (r < 0.0) throw DomainError("hadamard_thermal: r must be >= 0");
    Complex sum = 0.0;
    for (int n = -spec.nmax; n <= spec.nmax; ++n) {
        const Complex shifted = t + Complex(0.0, n * spec.beta);
        const Complex denom = shifted * shifted - r * r;
        detail::check_denominator(denom);
        sum += 1.0 / denom;
    }
    const Complex q2 = t * t - r * r;
    const Complex value = -sum / (4.0 * pi * pi) + detail::image_tail(spec.beta, spec.nmax, t, q2);
    if (tail_bound) {
        const double b2 = spec.beta * spec.beta;
        const double n3 = static_cast<double>(spec.nmax) * spec.nmax * spec.nmax;
        *tail_bound = 1.0 / (pi * pi * b2 * spec.nmax * spec.nmax) +
                      (8.0 * std::norm(t) + 2.0 * r * r) / (pi * pi * b2 * b2 * n3);
    }
    return value;
}

// Lorentz-boosted thermal Hadamard function: the image denominators acquire
// the frame-dependent combination t cosh u + x1 sinh u while t^2 - r^2 stays
// invariant. Reduces to hadamard_thermal at u = 0.
inline Complex hadamard_boosted(const ImageSumSpec& spec, Complex t, double x1, double r_perp,
                                double* tail_bound = nullptr) {
    spec.validate();
    if (r_perp < 0.0) throw DomainError("hadamard_boosted: r_perp must be >= 0");
    const double r2 = x1 * x1 + r_perp * r_perp;
    const Complex q2 = t * t - r2;
    const Complex t_eff = t * std::cosh(spec.u) + x1 * std::sinh(spec.u);
    Complex sum = 0.0;
    for (int n = -spec.nmax; n <= spec.nmax; ++n) {
        const double nb = n * spec.beta;
        const Complex denom = q2 - nb * nb + Complex(0.0, 2.0 * nb) * t_eff;
        detail::check_denominator(denom);
        sum += 1.0 / denom;
    }
    const Complex value =
        -sum / (4.0 * pi * pi) + detail::image_tail(spec.beta, spec.nmax, t_eff, q2);
    if (tail_bound) {
        const double b2 = spec.beta * spec.beta;
        const double n3 = static_cast<double>(spec.nmax) * spec.nmax * spec.nmax;
        *tail_bound = 1.0 / (pi * pi * b2 * spec.nmax * spec.nmax) +
                      (8.0 * std::norm(t_eff) + 2.0 * std::abs(q2)) / (pi * pi * b2 * b2 * n3);
    }
    return value;
}

// Correlator of the field's time derivative: -d^2/dt^2 of the image sum,
// differentiated term by term in closed form.
inline Complex hadamard_thermal_td(const ImageSumSpec& spec, Complex t, double r) {
    spec.validate();
    if (r < 0.0) throw DomainError("hadamard_thermal_td: r must be >= 0");
    Complex sum = 0.0;
    for (int n = -spec.nmax; n <= spec.nmax; ++n) {
        const Complex shifted = t + Complex(0.0, n * spec.beta);
        const Complex denom = shifted * shifted - r * r;
        detail::check_denominator(denom);
        const Complex d2 = denom * denom;
        sum += 8.0 * shifted * shifted / (d2 * denom) - 2.0 / d2;
    }
    const double b4 = spec.beta * spec.beta * spec.beta * spec.beta;
    const double tail = detail::zeta4_tail(spec.nmax) * 3.0 / (pi * pi * b4);
    return sum / (4.0 * pi * pi) + tail;
}

// Residual of the convex-combination identity at r = 0: the boosted
// correlator against the weight-one average of stationary correlators at the
// Doppler-shifted inverse temperatures, truncation-matched on both sides.
inline double boosted_convex_check(const ImageSumSpec& spec, double t,
                                   const QuadratureSpec& quad = {}) {
    spec.validate();
    const Complex lhs = hadamard_boosted(spec, t, 0.0, 0.0);
    const GaussLegendre gl(quad.gl_order);
    Complex rhs = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double xi = gl.nodes[i];
        ImageSumSpec shifted{spec.beta * (std::cosh(spec.u) - xi * std::sinh(spec.u)), spec.nmax,
                             0.0};
        rhs += gl.weights[i] * hadamard_thermal(shifted, t, 0.0);
    }
    rhs *= 0.5;
    return std::abs(lhs - rhs);
}

}  // namespace relatherm
