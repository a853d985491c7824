#pragma once

#include <string>
#include <string_view>

#include "pittlab/common.hpp"
#include "pittlab/fourier.hpp"
#include "pittlab/quadrature.hpp"
#include "pittlab/rearrange.hpp"
#include "pittlab/trig_polynomial.hpp"

namespace pittlab {

// ---------------------------------------------------------------- region classifier

struct PittParams {
    int d = 1;
    double p = 2.0;
    double q = 2.0;
    double beta = 0.0;
    double gamma = 0.0;
    double p0 = 2.0;  // Fourier type of the value space
};

enum class RegionKind { interior, endpoint_holds, endpoint_fails, outside, scaling_violated };
enum class EndpointCase { none, i, ii, iii, iv };

struct RegionVerdict {
    RegionKind kind = RegionKind::outside;
    EndpointCase endpoint = EndpointCase::none;

    friend bool operator==(const RegionVerdict&, const RegionVerdict&) = default;
};

inline std::string_view to_string(const RegionVerdict& v) {
    switch (v.kind) {
        case RegionKind::interior: return "interior";
        case RegionKind::endpoint_fails: return "endpoint_fails";
        case RegionKind::outside: return "outside";
        case RegionKind::scaling_violated: return "scaling_violated";
        case RegionKind::endpoint_holds: break;
    }
    switch (v.endpoint) {
        case EndpointCase::i: return "endpoint_i";
        case EndpointCase::ii: return "endpoint_ii";
        case EndpointCase::iii: return "endpoint_iii";
        case EndpointCase::iv: return "endpoint_iv";
        case EndpointCase::none: break;
    }
    return "endpoint_fails";
}

/// Lower end max{0, d(1/min{p,p0} + 1/q - 1)} of the admissible gamma range.
inline double gamma_lower_bound(const PittParams& s) {
    return std::max(0.0, s.d * (1.0 / std::min(s.p, s.p0) + 1.0 / s.q - 1.0));
}

inline double gamma_upper_bound(const PittParams& s) { return s.d / s.q; }

/// Verdict for the weighted inequality ||f^||_{L^q(|.|^{-gamma q})} <= C ||f||_{L^p(|.|^{beta p})}
/// over value spaces of Fourier type p0, worst case over such spaces.
inline RegionVerdict pitt_region_classify(const PittParams& s, double tol = 1e-12) {
    require(s.d == 1 || s.d == 2, "d in {1,2}");
    require(s.p > 1.0 && std::isfinite(s.p), "1 < p < inf");
    require(s.q > 1.0 && std::isfinite(s.q), "1 < q < inf");
    require(s.p0 > 1.0 && s.p0 <= 2.0, "1 < p0 <= 2");
    require(s.beta >= 0.0 && s.gamma >= 0.0, "beta, gamma >= 0");
    require(s.p <= s.q + tol, "p <= q");

    if (std::abs(s.beta - s.gamma - s.d * (1.0 - 1.0 / s.p - 1.0 / s.q)) > tol)
        return {RegionKind::scaling_violated, EndpointCase::none};
    const double lo = gamma_lower_bound(s);
    const double hi = gamma_upper_bound(s);
    if (s.gamma > lo + tol && s.gamma < hi - tol) return {RegionKind::interior, EndpointCase::none};
    if (std::abs(s.gamma - lo) > tol) return {RegionKind::outside, EndpointCase::none};

    const double p0d = conjugate_exponent(s.p0);
    const bool diagonal = std::abs(s.p - s.q) <= tol;
    if (diagonal) {
        if (std::abs(s.p0 - 2.0) <= tol) return {RegionKind::endpoint_holds, EndpointCase::ii};
        if (s.p < s.p0 - tol || s.p > p0d + tol) return {RegionKind::endpoint_holds, EndpointCase::i};
        return {RegionKind::endpoint_fails, EndpointCase::none};
    }
    if (s.p <= s.p0 + tol || s.p >= p0d - tol) return {RegionKind::endpoint_holds, EndpointCase::iii};
    if (p0d <= s.q + tol) return {RegionKind::endpoint_holds, EndpointCase::iv};
    return {RegionKind::endpoint_fails, EndpointCase::none};
}

// ---------------------------------------------------------------- ratio evaluators

struct SideValues {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

inline SideValues make_sides(double lhs, double rhs) {
    return {lhs, rhs, rhs > 0.0 ? lhs / rhs : 0.0};
}

/// Torus side: ||(c_n)||_{l^q((|n|+1)^{-gamma q})} against ||f||_{L^p(|t|^{beta p})}.
inline SideValues pitt_ratio(const TrigPolynomial& f, const PittParams& s, const QuadratureConfig& quad = {},
                             IndexNorm kind = IndexNorm::euclid) {
    const double rhs = weighted_lp_norm_torus(f, s.p, s.beta, quad);
    require(rhs > 0.0, "f nonzero", "degenerate input");
    const double lhs = weighted_lp_norm_sequence(f, s.q, -s.gamma, kind);
    return make_sides(lhs, rhs);
}

/// Line side for d = 1 step functions: ||f^||_{L^q(|xi|^{-gamma q})} on [-window, window] against the exact cell sum.
inline SideValues pitt_ratio(const StepFunction& f, const PittParams& s, double window, const QuadratureConfig& quad = {}) {
    const double rhs = weighted_lp_norm_line(f, s.p, s.beta);
    require(rhs > 0.0, "f nonzero", "degenerate input");
    const double lhs = weighted_lq_norm_ft_line(f, s.q, s.gamma, window, quad).value;
    return make_sides(lhs, rhs);
}

enum class TypeFamily { fourier, paley, hl };

struct TypeNotion {
    TypeFamily family = TypeFamily::fourier;
    TypeKind kind = TypeKind::type;
    double exponent = 2.0;
};

inline double lp_norm_torus(const TrigPolynomial& f, double p, const QuadratureConfig& quad = {}) {
    return weighted_lp_norm_torus(f, p, 0.0, quad);
}

inline long default_grid(const TrigPolynomial& f, const QuadratureConfig& quad) {
    return quad.grid_m > 0 ? quad.grid_m : std::max<long>(8 * f.degree() + 1, 64);
}

/// Coefficient-side over function-side ratio in the torus form of each notion.
/// Type p:  Fourier ||c||_{l^{p'}}, Paley ||c||_{l^{p',p}}, HL ||c||_{l^p((|n|+1)^{-d(2-p)})}, each over ||f||_{L^p}.
/// Cotype q: ||c||_{l^q} over ||f||_{L^{q'}}, ||f||_{L^{q',q}}, ||f||_{L^q(|t|^{d(q-2)})} respectively.
inline double type_test_ratio(const TrigPolynomial& f, const TypeNotion& notion, const QuadratureConfig& quad = {}) {
    const double r = notion.exponent;
    if (notion.kind == TypeKind::type)
        require(r > 1.0 && r <= 2.0, "type exponent in (1,2]");
    else
        require(r >= 2.0 && std::isfinite(r), "cotype exponent in [2,inf)");
    const auto norms = f.coefficient_norms();
    const double d = f.dimension();
    const double rd = conjugate_exponent(r);

    double top = 0.0, bottom = 0.0;
    if (notion.kind == TypeKind::type) {
        bottom = lp_norm_torus(f, r, quad);
        switch (notion.family) {
            case TypeFamily::fourier: top = lr_norm(std::span<const double>(norms), rd); break;
            case TypeFamily::paley: top = lz_norm_sequence(norms, {rd, r, 0.0}); break;
            case TypeFamily::hl: top = weighted_lp_norm_sequence(f, r, -d * (2.0 - r) / r); break;
        }
    } else {
        top = lr_norm(std::span<const double>(norms), r);
        switch (notion.family) {
            case TypeFamily::fourier: bottom = lp_norm_torus(f, rd, quad); break;
            case TypeFamily::paley:
                bottom = lz_norm_function(sample_rearrangement(f, default_grid(f, quad)), {rd, r, 0.0}, quad);
                break;
            case TypeFamily::hl: bottom = weighted_lp_norm_torus(f, r, d * (r - 2.0) / r, quad); break;
        }
    }
    require(bottom > 0.0, "f nonzero", "degenerate input");
    return top / bottom;
}

// ---------------------------------------------------------------- Zygmund family

enum class ZygmundVariant { standard, endpoint, sequence };

inline std::string_view to_string(ZygmundVariant v) {
    switch (v) {
        case ZygmundVariant::standard: return "std";
        case ZygmundVariant::endpoint: return "endpoint";
        case ZygmundVariant::sequence: return "sequence";
    }
    return "std";
}

/// Both sides of the (coefficient, function) pair for the three Zygmund-type inequalities.
/// standard: l^{inf,q}(log l)^b coefficients vs L^{1,q}(log L)^{b+1}, b > -1/q.
/// endpoint: l^{inf,q}(log l)^{-1/q} vs L^{1,q}(log L)^{1-1/q}(log log L)^1, q < inf.
/// sequence: L^{inf,q}(log L)^b function vs l^{1,q}(log l)^{b+1} coefficients, b < -1/q.
inline SideValues zygmund_check(const TrigPolynomial& f, double b, double q, ZygmundVariant variant,
                                const QuadratureConfig& quad = {}) {
    require(q >= 1.0, "q >= 1");
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const auto norms = f.coefficient_norms();
    const bool zero = std::all_of(norms.begin(), norms.end(), [](double v) { return v == 0.0; });
    switch (variant) {
        case ZygmundVariant::standard: {
            require(b > -inv_q || (std::isinf(q) && b > 0.0), "b > -1/q", "standard variant");
            if (zero) return {};
            const double lhs = lz_norm_sequence(norms, {infinity, q, b});
            const double rhs = lz_norm_function(sample_rearrangement(f, default_grid(f, quad)), {1.0, q, b + 1.0}, quad);
            return make_sides(lhs, rhs);
        }
        case ZygmundVariant::endpoint: {
            require(std::isfinite(q), "q < inf", "endpoint variant");
            if (zero) return {};
            const double lhs = lz_norm_sequence(norms, {infinity, q, -inv_q});
            LZParams src{1.0, q, 1.0 - inv_q, 1.0};
            const double rhs = lz_norm_function(sample_rearrangement(f, default_grid(f, quad)), src, quad);
            return make_sides(lhs, rhs);
        }
        case ZygmundVariant::sequence: {
            require(b < -inv_q, "b < -1/q", "sequence variant");
            if (zero) return {};
            const double lhs = lz_norm_function(sample_rearrangement(f, default_grid(f, quad)), {infinity, q, b}, quad);
            const double rhs = lz_norm_sequence(norms, {1.0, q, b + 1.0});
            return make_sides(lhs, rhs);
        }
    }
    return {};
}

/// sum_n exp(-a ||c_n||^{-1/(b+1/q)}); zero coefficients contribute nothing.
inline double exp_summability(std::span<const double> coefficient_norms, double a, double b, double q) {
    require(q >= 1.0, "q >= 1");
    const double s = b + (std::isinf(q) ? 0.0 : 1.0 / q);
    require(s > 0.0, "b + 1/q > 0");
    require(a > 0.0, "a > 0");
    CompensatedSum acc;
    for (double c : coefficient_norms) {
        require(c >= 0.0 && std::isfinite(c), "norms finite and nonnegative");
        if (c > 0.0) acc.add(std::exp(-a * std::pow(c, -1.0 / s)));
    }
    return acc.value();
}

/// int ||f(t)|| (log(2 + ||f(t)||))^b dt on the torus, by the periodic trapezoid rule.
inline double orlicz_norm_torus(const TrigPolynomial& f, double b, long M) {
    require(M >= 2 * f.degree() + 1, "M >= 2N+1");
    CompensatedSum acc;
    std::size_t count = 0;
    for (const auto& x : sample_on_grid(f, M)) {
        const double v = norm(x);
        acc.add(v * std::pow(std::log(2.0 + v), b));
        ++count;
    }
    return acc.value() / static_cast<double>(count);
}

// ---------------------------------------------------------------- Bochkarev

/// sup_n c*_n n^{1/p0'} (1 + log n)^{-(1/p0 - 1/max{p0', q})} / ||f||_{L^{p0,q}}.
inline double bochkarev_decay(const TrigPolynomial& f, double p0, double q, const QuadratureConfig& quad = {}) {
    require(p0 > 1.0 && p0 <= 2.0, "1 < p0 <= 2");
    require(q > p0, "q > p0");
    const double p0d = conjugate_exponent(p0);
    const double denom = lz_norm_function(sample_rearrangement(f, default_grid(f, quad)), {p0, q, 0.0}, quad);
    require(denom > 0.0, "f nonzero", "degenerate input");
    auto c = f.coefficient_norms();
    std::sort(c.begin(), c.end(), std::greater<>());
    const double log_exp = -(1.0 / p0 - 1.0 / std::max(p0d, q));
    double best = 0.0;
    for (std::size_t i = 0; i < c.size() && c[i] > 0.0; ++i) {
        const double n = static_cast<double>(i + 1);
        best = std::max(best, c[i] * std::pow(n, 1.0 / p0d) * std::pow(1.0 + std::log(n), log_exp));
    }
    return best / denom;
}

// ---------------------------------------------------------------- Stein-Weiss (d = 1)

struct SteinWeissParams {
    double u = 2.0;
    double v = 2.0;
    double lambda = 0.5;
    double a = 0.25;
    double b = 0.25;
};

inline void check_stein_weiss(const SteinWeissParams& s, double tol = 1e-12) {
    require(s.u > 1.0 && s.u <= s.v && std::isfinite(s.v), "1 < u <= v < inf");
    require(s.lambda > 0.0 && s.lambda < 1.0, "0 < lambda < d");
    require(s.a < 1.0 / s.v, "a < d/v");
    require(s.b < 1.0 / conjugate_exponent(s.u), "b < d/u'");
    require(s.a + s.b >= -tol, "a + b >= 0");
    require(std::abs(1.0 / s.v + 1.0 / conjugate_exponent(s.u) - s.lambda - s.a - s.b) <= tol,
            "d/v + d/u' = lambda + a + b");
}

/// (|.|^{-lambda} * g)(x) for a scalar step function, exact per cell.
inline double riesz_potential(const StepFunction& g, double lambda, double x) {
    const double one = 1.0 - lambda;
    auto F = [&](double s) { return std::copysign(std::pow(std::abs(s), one) / one, s); };
    const double a = g.scale();
    CompensatedSum acc;
    for (std::size_t i = 0; i < g.box().size(); ++i) {
        const cplx c = g.cell_polynomial().coefficient_entries(i)[0];
        if (c == cplx{0.0, 0.0}) continue;
        const double k = static_cast<double>(g.box().at(i).k[0]);
        const double lo = a * (-k - 0.5), hi = a * (-k + 0.5);
        acc.add(c.real() * (F(x - lo) - F(x - hi)));
    }
    return acc.value();
}

/// lhs = || |.|^{-lambda} * g ||_{L^v(|x|^{-a v})}, rhs = ||g||_{L^u(|x|^{b u})}.
inline SideValues stein_weiss_check(const StepFunction& g, const SteinWeissParams& s, const QuadratureConfig& quad = {}) {
    require(g.dimension() == 1 && g.space().m == 1, "scalar step function on the line");
    for (std::size_t i = 0; i < g.box().size(); ++i)
        require(g.cell_polynomial().coefficient_entries(i)[0].imag() == 0.0, "real cell values");
    check_stein_weiss(s);
    const double rhs = weighted_lp_norm_line(g, s.u, s.b);
    if (rhs == 0.0) return {};

    auto h = [&](double x) { return std::pow(std::abs(riesz_potential(g, s.lambda, x)), s.v); };
    const double w = -s.a * s.v;  // weight |x|^w, w > -1
    // breakpoints: cell edges and the origin
    std::vector<double> cuts{0.0};
    const double A = g.scale();
    for (long k = -g.radius(); k <= g.radius(); ++k) cuts.push_back(A * (static_cast<double>(k) + 0.5));
    cuts.push_back(-A * (static_cast<double>(g.radius()) + 0.5));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    CompensatedSum acc;
    const int per_unit = std::max(4, quad.panels) * 4;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        const double lo = cuts[j], hi = cuts[j + 1], mid = 0.5 * (lo + hi);
        // graded toward both ends: cusps of order 1 - lambda at cell edges, |x|^w at the origin
        auto weighted = [&](double x) { return h(x) * std::pow(std::abs(x), w); };
        const double s_lo = lo == 0.0 ? w : 0.0;
        const double s_hi = hi == 0.0 ? w : 0.0;
        acc.add(graded_integral([&](double r) { return weighted(lo + r); }, 0.0, mid - lo, s_lo, per_unit));
        acc.add(graded_integral([&](double r) { return weighted(hi - r); }, 0.0, hi - mid, s_hi, per_unit));
    }
    // outer region |x| > R in the variable x = R e^z
    const double R = cuts.back();
    for (double sign : {1.0, -1.0}) {
        auto outer = [&](double z) {
            const double x = R * std::exp(z);
            if (std::isinf(x)) return 0.0;
            return h(sign * x) * std::pow(x, w) * x;
        };
        acc.add(gauss_panels(outer, 0.0, 8.0, 64));
        acc.add(exp_sinh_tail(outer, 8.0));
    }
    return make_sides(std::pow(acc.value(), 1.0 / s.v), rhs);
}

}  // namespace pittlab
