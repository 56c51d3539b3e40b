// quadrature.hpp — Gauss-Legendre rules and adaptive Gauss-Kronrod integration.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "relatherm/types.hpp"

namespace relatherm {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        if (n < 1) throw DomainError("GaussLegendre: order must be >= 1");
        nodes.resize(n);
        weights.resize(n);
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            // Chebyshev-based initial guess
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
            weights[n - 1 - i] = weights[i];
        }
    }

    // Integrate f over [a, b].
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }
};

namespace detail {

// Gauss-Kronrod 15(7) on [-1,1]; nonnegative abscissae, symmetric extension.
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(F&& f, double a, double b, double& kronrod, double& err) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double fc = f(mid);
    double resk = gk15_wk[7] * fc;
    double resg = gk15_wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk15_x[j];
        const double fsum = f(mid - dx) + f(mid + dx);
        resk += gk15_wk[j] * fsum;
        if (j % 2 == 1) resg += gk15_wg[j / 2] * fsum;
    }
    kronrod = resk * half;
    const double diff = std::abs(resk - resg) * std::abs(half);
    // standard QUADPACK-style rescaled error estimate
    err = diff < 1.0 ? std::pow(200.0 * diff, 1.5) : diff;
    if (!std::isfinite(err)) err = diff;
}

struct Piece {
    double err;
    double a, b, value;
    bool operator<(const Piece& o) const {
        return err < o.err || (err == o.err && a < o.a);
    }
};

}  // namespace detail

// Adaptive Gauss-Kronrod over [a,b] to an absolute tolerance. Throws
// QuadratureError when the subdivision budget is exhausted first.
template <class F>
inline double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                                 int max_intervals = 4000) {
    if (a == b) return 0.0;
    double v, e;
    detail::gk15(f, a, b, v, e);
    std::multiset<detail::Piece> pieces{{e, a, b, v}};
    double total_err = e;
    int n = 1;
    while (total_err > abs_tol) {
        if (n >= max_intervals)
            throw QuadratureError("integrate_adaptive: tolerance not met within interval budget");
        auto worst = std::prev(pieces.end());
        const detail::Piece p = *worst;
        pieces.erase(worst);
        total_err -= p.err;
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            throw QuadratureError("integrate_adaptive: interval collapsed below resolution");
        double v1, e1, v2, e2;
        detail::gk15(f, p.a, mid, v1, e1);
        detail::gk15(f, mid, p.b, v2, e2);
        pieces.insert({e1, p.a, mid, v1});
        pieces.insert({e2, mid, p.b, v2});
        total_err += e1 + e2;
        ++n;
    }
    double sum = 0.0;
    for (const auto& p : pieces) sum += p.value;
    return sum;
}

// Adaptive integration over a piecewise partition (break points at known
// singular or scale-changing abscissae). Tolerance is shared across pieces.
template <class F>
inline double integrate_adaptive_pieces(F&& f, const std::vector<double>& breaks,
                                        double abs_tol = 1e-10, int max_intervals = 4000) {
    if (breaks.size() < 2) throw DomainError("integrate_adaptive_pieces: need >= 2 break points");
    const double tol_each = abs_tol / static_cast<double>(breaks.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        sum += integrate_adaptive(f, breaks[i], breaks[i + 1], tol_each, max_intervals);
    return sum;
}

}  // namespace relatherm
