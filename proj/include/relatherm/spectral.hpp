// spectral.hpp — Frequency-domain bath coefficients for a uniformly moving
// probe in a static thermal scalar-field bath: Planck and velocity-dependent
// occupation numbers, decay rates, polylogarithms, Lamb-shift integrals,
// directional temperatures and weights.

#pragma once

#include <cmath>
#include <vector>

#include "relatherm/quadrature.hpp"
#include "relatherm/types.hpp"

namespace relatherm {

// log(1 - e^{-x}) for x > 0 without cancellation on either end.
inline double log1mexp(double x) {
    if (x <= 0.0) throw DomainError("log1mexp: requires x > 0");
    return x < 0.693147180559945 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

// Mean occupation of a thermal mode: 1/(e^{beta omega} - 1).
inline double planck_n(double beta, double omega) {
    if (!(beta > 0.0)) throw DomainError("planck_n: beta must be > 0");
    if (!(omega > 0.0)) throw DomainError("planck_n: omega must be > 0");
    return 1.0 / std::expm1(beta * omega);
}

// Riemann zeta at integer argument >= 2, Euler-Maclaurin tail.
inline double riemann_zeta(int ell) {
    if (ell < 2) throw DomainError("riemann_zeta: requires ell >= 2");
    const double s = ell;
    constexpr int M = 64;
    double sum = 0.0;
    for (int n = 1; n < M; ++n) sum += std::pow(n, -s);
    const double Ms = std::pow(M, -s);
    sum += Ms * M / (s - 1.0) + 0.5 * Ms;
    sum += s * Ms / M / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * Ms / (M * M * M) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * Ms /
           (static_cast<double>(M) * M * M * M * M) / 30240.0;
    return sum;
}

// Polylogarithm g_ell(x) = sum_{n>=1} x^n / n^ell on [0, 1].
// ell = 1 in closed form; ell >= 2 by series, with the zeta value substituted
// within 1e-12 of the endpoint where the series is uselessly slow.
inline double polylog(int ell, double x) {
    if (ell < 1) throw DomainError("polylog: requires ell >= 1");
    if (x < 0.0 || x > 1.0) throw DomainError("polylog: x must lie in [0, 1]");
    if (ell == 1) {
        if (x == 1.0) throw DomainError("polylog: g_1 diverges at x = 1");
        return -std::log1p(-x);
    }
    if (x >= 1.0 - 1e-12) return riemann_zeta(ell);
    if (x == 0.0) return 0.0;
    double sum = 0.0, xn = 1.0;
    for (long n = 1; n <= 1000000; ++n) {
        xn *= x;
        const double term = xn / std::pow(static_cast<double>(n), ell);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

// F(x) = 2 g_3(e^-x) + 2x g_2(e^-x) + x^2 g_1(e^-x); F(0) = 2 zeta(3).
inline double f_aux(double x) {
    if (x < 0.0) throw DomainError("f_aux: requires x >= 0");
    if (x == 0.0) return 2.0 * riemann_zeta(3);
    const double z = std::exp(-x);
    const double g1 = z > 0.0 ? -log1mexp(x) : 0.0;
    return 2.0 * polylog(3, z) + 2.0 * x * polylog(2, z) + x * x * g1;
}

namespace detail {

// d n / d omega and d^2 n / d omega^2 of the Planck distribution. With
// x = beta omega: n' = -beta n(n+1), n'' = beta^2 n(n+1)(2n+1).
inline double planck_dn(double beta, double omega) {
    const double n = planck_n(beta, omega);
    return -beta * n * (n + 1.0);
}

inline double planck_d2n(double beta, double omega) {
    const double n = planck_n(beta, omega);
    return beta * beta * n * (n + 1.0) * (2.0 * n + 1.0);
}

// Exact O(u^2) Taylor coefficient of N(omega; u) about u = 0, from the
// directional-average representation. For the field coupling the coefficient
// is (1/2) omega n' + (1/6) omega^2 n''; the derivative coupling adds a full
// extra omega n' through the weight and rate normalization.
inline double small_u_quadratic(const BathSpec& bath, double omega) {
    const double wn1 = omega * planck_dn(bath.beta, omega);
    const double wn2 = omega * omega * planck_d2n(bath.beta, omega);
    const double c_field = 0.5 * wn1 + wn2 / 6.0;
    return bath.coupling == Coupling::UdW ? c_field : c_field + 2.0 * wn1 / 3.0;
}

}  // namespace detail

// Expected quanta number for the field (UdW) coupling. Even in u; reduces to
// the Planck value as u -> 0. Closed forms hit 0/0 at small rapidity, so
// |u| < 1e-6 returns the Planck value and |u| < 1e-3 the quadratic expansion.
inline double n_udw(const BathSpec& bath, double omega) {
    bath.validate();
    if (!(omega > 0.0)) throw DomainError("n_udw: omega must be > 0");
    const double au = std::abs(bath.u);
    const double x = bath.beta * omega;
    if (au < 1e-6) return planck_n(bath.beta, omega);
    if (au < 1e-3)
        return planck_n(bath.beta, omega) + detail::small_u_quadratic(bath, omega) * au * au;
    const double xm = x * std::exp(-au);
    if (xm > 745.0 || xm == 0.0) return 0.0;  // value underflows either way
    const double xp = x * std::exp(au);
    const double num = (std::isinf(xp) ? 0.0 : log1mexp(xp)) - log1mexp(xm);
    return num / (2.0 * x * std::sinh(au));
}

// Expected quanta number for the time-derivative (TD) coupling.
inline double n_td(const BathSpec& bath, double omega) {
    bath.validate();
    if (!(omega > 0.0)) throw DomainError("n_td: omega must be > 0");
    const double au = std::abs(bath.u);
    const double x = bath.beta * omega;
    if (au < 1e-6) return planck_n(bath.beta, omega);
    if (au < 1e-3)
        return planck_n(bath.beta, omega) + detail::small_u_quadratic(bath, omega) * au * au;
    if (au > 350.0) return 0.0;  // e^{-3u} suppression is below double range
    const double xm = x * std::exp(-au);
    if (xm > 745.0) return 0.0;
    const double xp = x * std::exp(au);
    const double fp = std::isinf(xp) ? 0.0 : f_aux(xp);
    const double num = 3.0 * (f_aux(xm) - fp);
    return num / (2.0 * x * x * x * std::sinh(au) * (1.0 + 2.0 * std::cosh(2.0 * au)));
}

// Dispatch on the bath's coupling.
inline double bath_occupation(const BathSpec& bath, double omega) {
    return bath.coupling == Coupling::UdW ? n_udw(bath, omega) : n_td(bath, omega);
}

// Vacuum-referenced decay rate gamma(omega).
inline double gamma_rate(const BathSpec& bath, double omega) {
    bath.validate();
    if (!(omega > 0.0)) throw DomainError("gamma_rate: omega must be > 0");
    const double l2 = bath.lambda * bath.lambda;
    if (bath.coupling == Coupling::UdW) return l2 * omega / (2.0 * pi);
    return l2 * (1.0 + 2.0 * std::cosh(2.0 * bath.u)) * omega * omega * omega / (6.0 * pi);
}

// Closed-form regime approximations of N(omega). The low-velocity and TD
// low-temperature entries carry the exact leading coefficients of the full
// expressions (the printed forms truncate these inconsistently).
inline double n_asymptotic(const BathSpec& bath, double omega, AsymptoticRegime regime) {
    bath.validate();
    if (!(omega > 0.0)) throw DomainError("n_asymptotic: omega must be > 0");
    const double au = std::abs(bath.u);
    const double x = bath.beta * omega;
    switch (regime) {
        case AsymptoticRegime::LowVelocity:
            return planck_n(bath.beta, omega) + detail::small_u_quadratic(bath, omega) * au * au;
        case AsymptoticRegime::HighVelocity:
            if (bath.coupling == Coupling::UdW)
                return std::exp(-au) * (au - std::log(x)) / x;
            return 6.0 * riemann_zeta(3) * std::exp(-3.0 * au) / (x * x * x);
        case AsymptoticRegime::LowTemperature: {
            const double xm = x * std::exp(-au);
            if (bath.coupling == Coupling::UdW)
                return std::exp(-xm) / (2.0 * x * std::sinh(au));
            return 3.0 * (xm * xm + 2.0 * xm + 2.0) * std::exp(-xm) /
                   (2.0 * x * x * x * std::sinh(au) * (1.0 + 2.0 * std::cosh(2.0 * au)));
        }
        case AsymptoticRegime::HighTemperature:
            if (bath.coupling == Coupling::UdW)
                return (au < 1e-12 ? 1.0 : au / std::sinh(au)) / x;
            return 3.0 * std::cosh(au) / (1.0 + 2.0 * std::cosh(2.0 * au)) / x;
    }
    throw DomainError("n_asymptotic: unknown regime");
}

// ------------------------------- Lamb shift ---------------------------------

namespace detail {

inline double safe_log_abs(double v) { return std::log(std::max(std::abs(v), 1e-300)); }

// log |(w + k e^-u)(w - k e^u) / ((w - k e^-u)(w + k e^u))| for u > 0.
inline double boost_log_kernel(double w, double k, double eu, double emu) {
    return safe_log_abs(w + k * emu) + safe_log_abs(w - k * eu) - safe_log_abs(w - k * emu) -
           safe_log_abs(w + k * eu);
}

}  // namespace detail

// Thermal part of the Lamb shift at |omega| (cutoff-independent). The
// integrand has integrable log singularities at k = |omega| e^{+-|u|}; the
// k-axis is split there and a decade beyond the thermal scale. The u -> 0
// limit turns the singular pair into a principal-value pole, evaluated by
// symmetric folding around k = |omega|.
inline double lamb_shift_thermal(const BathSpec& bath, double omega_abs,
                                 const QuadratureSpec& quad = {}) {
    bath.validate();
    if (!(omega_abs > 0.0)) throw DomainError("lamb_shift_thermal: omega must be > 0");
    const double w = omega_abs;
    const double beta = bath.beta;
    const double l2 = bath.lambda * bath.lambda;
    const double au = std::abs(bath.u);
    const bool td = bath.coupling == Coupling::TD;

    if (au < 1e-5) {
        // -(l2 w / 2 pi^2) PV int_0^inf k^p n_k / (w^2 - k^2) dk, p = 1 or 3
        auto g = [&](double k) {
            const double weight = td ? k * k * k : k;
            return l2 * w * weight / (std::expm1(beta * k) * 2.0 * pi * pi * (w + k));
        };
        auto folded = [&](double s) { return (g(w - s) - g(w + s)) / s; };
        const double tail_end = 2.0 * w + 70.0 / beta;
        const double pv = integrate_adaptive(folded, 0.0, w, quad.abs_tol / 2, quad.max_intervals);
        auto tail = [&](double k) { return g(k) / (w - k); };
        const double rest =
            integrate_adaptive(tail, 2.0 * w, tail_end, quad.abs_tol / 2, quad.max_intervals);
        return -(pv + rest);
    }

    const double eu = std::exp(au), emu = std::exp(-au);
    auto integrand = [&](double k) {
        const double weight = td ? k * k : 1.0;
        return weight / std::expm1(beta * k) * detail::boost_log_kernel(w, k, eu, emu);
    };
    const double s1 = w * emu, s2 = w * eu;
    std::vector<double> breaks{0.0, s1, 0.5 * (s1 + s2), s2};
    const double decade = 10.0 / beta;
    if (decade > s2) breaks.push_back(decade);
    breaks.push_back(std::max(s2, decade) + 60.0 / beta);
    const double integral =
        integrate_adaptive_pieces(integrand, breaks, quad.abs_tol, quad.max_intervals);
    return l2 / (8.0 * pi * pi * std::sinh(au)) * integral;
}

// Short-time cutoff contribution to the Lamb shift at |omega|.
inline double lamb_shift_cutoff(const BathSpec& bath, double omega_abs, double epsilon) {
    const double l2 = bath.lambda * bath.lambda;
    const double we = omega_abs * epsilon;
    if (bath.coupling == Coupling::UdW)
        return l2 * omega_abs / (4.0 * pi * pi) * (euler_gamma - 1.0 + std::log(we));
    const double w3 = omega_abs * omega_abs * omega_abs;
    return l2 * (1.0 + 2.0 * std::cosh(2.0 * bath.u)) * w3 / (12.0 * pi * pi) *
           (3.0 / (we * we) + std::log(we) + euler_gamma - 1.0);
}

// Full Lamb shift Delta(omega): odd in omega, requires a short-time cutoff.
inline double lamb_shift(const BathSpec& bath, double omega, double epsilon,
                         const QuadratureSpec& quad = {}) {
    bath.validate();
    if (omega == 0.0) throw DomainError("lamb_shift: omega must be nonzero");
    if (!(epsilon > 0.0)) throw DomainError("lamb_shift: cutoff epsilon must be > 0");
    const double w = std::abs(omega);
    const double value = lamb_shift_cutoff(bath, w, epsilon) + lamb_shift_thermal(bath, w, quad);
    return omega > 0.0 ? value : -value;
}

// --------------------------- directional averaging --------------------------

// beta_xi = beta (cosh u - xi sinh u), the Doppler-shifted inverse temperature
// of field modes at direction cosine xi.
inline double directional_beta(const BathSpec& bath, double xi) {
    bath.validate();
    if (std::abs(xi) > 1.0) throw DomainError("directional_beta: xi must lie in [-1, 1]");
    return bath.beta * (std::cosh(bath.u) - xi * std::sinh(bath.u));
}

// Coupling-dependent probability density on [-1, 1], normalized so that
// (1/2) int w(xi) dxi = 1.
inline double directional_weight(const BathSpec& bath, double xi) {
    bath.validate();
    if (std::abs(xi) > 1.0) throw DomainError("directional_weight: xi must lie in [-1, 1]");
    if (bath.coupling == Coupling::UdW) return 1.0;
    const double c = std::cosh(bath.u) - xi * std::sinh(bath.u);
    return 3.0 * c * c / (1.0 + 2.0 * std::cosh(2.0 * bath.u));
}

// N(omega) as the weighted directional average of Planck occupations at the
// Doppler-shifted temperatures. Independent route to n_udw / n_td; serves as
// their oracle.
inline double n_via_directional_average(const BathSpec& bath, double omega,
                                        const QuadratureSpec& quad = {}) {
    bath.validate();
    if (!(omega > 0.0)) throw DomainError("n_via_directional_average: omega must be > 0");
    auto integrand = [&](double xi) {
        return directional_weight(bath, xi) / std::expm1(directional_beta(bath, xi) * omega);
    };
    const GaussLegendre gl(quad.gl_order);
    const GaussLegendre gl_check(quad.gl_order + 16);
    const double value = 0.5 * gl.integrate(integrand, -1.0, 1.0);
    const double check = 0.5 * gl_check.integrate(integrand, -1.0, 1.0);
    if (std::abs(value - check) > std::max(10.0 * quad.abs_tol, 1e-12 * std::abs(value)))
        throw QuadratureError("n_via_directional_average: quadrature did not converge");
    return value;
}

}  // namespace relatherm
