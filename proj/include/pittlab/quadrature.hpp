#pragma once

#include <algorithm>
#include <functional>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pittlab/common.hpp"

namespace pittlab {

/// Knobs shared by every log-substituted integral.
struct QuadratureConfig {
    double u_max = 40.0;  // u = -log t is integrated panel-wise up to here, exp-sinh beyond
    int panels = 8;       // Gauss-Legendre panels per unit length in u (at least one per cell)
    int grid_m = 0;       // torus samples per axis; 0 picks 8N+1 automatically

    QuadratureConfig doubled() const {
        QuadratureConfig c = *this;
        c.panels *= 2;
        c.grid_m *= 2;
        return c;
    }
};

/// Composite 10-point Gauss-Legendre on [a, b] split into `n` equal panels.
template <class F>
double gauss_panels(F&& f, double a, double b, int n) {
    if (!(b > a)) return 0.0;
    n = std::max(n, 1);
    const double h = (b - a) / n;
    CompensatedSum s;
    for (int i = 0; i < n; ++i) {
        const double lo = a + i * h;
        const double hi = i + 1 == n ? b : lo + h;
        s.add(boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi));
    }
    return s.value();
}

/// Panel count for an interval of length `len` at `per_unit` panels per unit length.
inline int panel_count(double len, int per_unit) {
    const double n = std::ceil(len * std::max(per_unit, 1));
    return static_cast<int>(std::clamp(n, 1.0, 1.0e6));
}

/// Integral of a smooth decaying f over [a, inf).
template <class F>
double exp_sinh_tail(F&& f, double a) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, a, infinity, 1e-13);
}

/// Beyond this u, e^{-u} leaves the normal double range.
inline constexpr double u_cap = 700.0;

/// int_a^inf g for g that can only be evaluated up to `cap`: unit panels on [a, cap] plus the remainder of
/// the power law C u^{-k} matched to g at cap/2 and cap. Returns +inf when that law is not integrable.
template <class F>
double capped_tail(F&& g, double a, double cap = u_cap) {
    if (!(cap > a)) return 0.0;
    const double head = gauss_panels(g, a, cap, panel_count(cap - a, 1));
    const double g1 = g(0.5 * cap), g2 = g(cap);
    if (!(g2 > 0.0)) return head;
    const double k = std::log(g1 / g2) / std::log(2.0);
    if (!(k > 1.0 + 1e-6)) return infinity;
    return head + g2 * cap / (k - 1.0);
}

/// Adaptive Gauss-Kronrod on [a, b].
template <class F>
double adaptive_integral(F&& f, double a, double b, double tol = 1e-13) {
    if (!(b > a)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

/// Integral over [a, b] of a function with an integrable power singularity at a:
/// geometric panels toward a, plus the analytic remainder of a pure power law on the last sliver.
template <class F>
double graded_integral(F&& f, double a, double b, double singular_exponent, int per_unit, int levels = 48) {
    if (!(b > a)) return 0.0;
    CompensatedSum s;
    double hi = b;
    const double len = b - a;
    for (int j = 0; j < levels; ++j) {
        const double lo = a + len * std::ldexp(1.0, -(j + 1));
        const int n = j == 0 ? panel_count(hi - lo, per_unit) : 1 + panel_count(hi - lo, per_unit) / 4;
        s.add(gauss_panels(f, lo, hi, n));
        hi = lo;
    }
    // f ~ c (x - a)^s on (a, hi]; take c from the sample at hi.
    const double w = hi - a;
    const double fh = f(hi);
    if (singular_exponent > -1.0) s.add(fh * w / (singular_exponent + 1.0));
    return s.value();
}

}  // namespace pittlab
