#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pittlab/common.hpp"
#include "pittlab/growth_fit.hpp"
#include "pittlab/inequalities.hpp"
#include "pittlab/parallel.hpp"
#include "pittlab/quadrature.hpp"
#include "pittlab/rearrange.hpp"
#include "pittlab/trig_polynomial.hpp"
#include "pittlab/values.hpp"

namespace pittlab {

enum class Family {
    ex411,
    ex412,
    ex413,
    r56_strict,
    r56_endpoint,
    t61,
    pitt_type,
    z_sharp,
    z_loglog,
    boch_b_eq,
    boch_b_gt,
};

inline constexpr std::array<Family, 11> all_families{
    Family::ex411,     Family::ex412,   Family::ex413,    Family::r56_strict, Family::r56_endpoint, Family::t61,
    Family::pitt_type, Family::z_sharp, Family::z_loglog, Family::boch_b_eq,  Family::boch_b_gt,
};

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::ex411: return "EX411";
        case Family::ex412: return "EX412";
        case Family::ex413: return "EX413";
        case Family::r56_strict: return "R56_strict";
        case Family::r56_endpoint: return "R56_endpoint";
        case Family::t61: return "T61";
        case Family::pitt_type: return "PITT_TYPE";
        case Family::z_sharp: return "Z_SHARP";
        case Family::z_loglog: return "Z_LOGLOG";
        case Family::boch_b_eq: return "BOCH_SHARP_b_eq";
        case Family::boch_b_gt: return "BOCH_SHARP_b_gt";
    }
    return "EX411";
}

inline Family family_from_string(std::string_view name) {
    for (Family f : all_families)
        if (to_string(f) == name) return f;
    throw DomainError("known family id", std::string(name));
}

/// The inequality whose two sides a family drives apart.
inline std::string_view inequality_name(Family f) {
    switch (f) {
        case Family::ex411: return "HL type p";
        case Family::ex412: return "HL cotype q'";
        case Family::ex413: return "HL cotype p' (converse form)";
        case Family::r56_strict:
        case Family::r56_endpoint: return "weighted Pitt";
        case Family::t61: return "HL cotype q0 (inverse, max index norm)";
        case Family::pitt_type: return "Pitt type (max index norm)";
        case Family::z_sharp: return "Zygmund sequence form";
        case Family::z_loglog: return "Zygmund endpoint dual";
        case Family::boch_b_eq:
        case Family::boch_b_gt: return "Bochkarev Lorentz-Zygmund";
    }
    return "";
}

using ParamMap = std::map<std::string, double>;

inline ParamMap family_defaults(Family f) {
    switch (f) {
        case Family::ex411: return {{"p", 1.5}, {"eps", 0.5}};
        case Family::ex412: return {{"p", 1.2}, {"q", 1.8}, {"eps", 0.3}};
        case Family::ex413: return {{"p", 1.5}, {"eps", 0.5}};
        case Family::r56_strict: return {{"p0", 1.5}, {"p", 2.0}, {"q", 2.0}, {"gamma", 0.0}, {"eps", 0.4}};
        case Family::r56_endpoint: return {{"p0", 1.5}, {"p", 2.0}, {"q", 2.0}, {"eta", 0.4}};
        case Family::t61: return {{"q0", 3.0}, {"alpha", 0.7}};
        case Family::pitt_type: return {{"r", 1.5}, {"p", 2.0}, {"q", 2.0}, {"beta", 0.1}, {"gamma", 0.1}};
        case Family::z_sharp: return {{"q", 1.0}, {"b", -1.5}};
        case Family::z_loglog: return {{"q", 2.0}};
        case Family::boch_b_eq: return {{"p0", 2.0}, {"q", 1.0}, {"delta", 0.625}};
        case Family::boch_b_gt: return {{"p0", 2.0}, {"q", 1.0}, {"b", 0.0}, {"eps", 0.75}};
    }
    return {};
}

inline bool grows_loglog(Family f) { return f == Family::z_loglog || f == Family::boch_b_eq; }

/// Truncation schedule used when a spec leaves it empty.
inline std::vector<double> default_schedule(Family f, int d) {
    std::vector<double> out;
    if (d == 2) {
        for (int k = 2; k <= 7; ++k) out.push_back(std::ldexp(1.0, k));
    } else if (grows_loglog(f)) {
        // doubly logarithmic growth needs N far beyond anything summable term by term
        for (int k : {32, 64, 128, 256, 512, 1000}) out.push_back(std::ldexp(1.0, k));
    } else {
        for (int k = 7; k <= 17; k += 2) out.push_back(std::ldexp(1.0, k));
    }
    return out;
}

struct CounterexampleSpec {
    Family family = Family::ex411;
    ParamMap params;  // overrides of family_defaults
    int d = 1;
    std::vector<double> schedule;  // empty: default_schedule
    bool control = false;          // in-region control run: parameter windows are not enforced

    double param(const std::string& key) const {
        if (auto it = params.find(key); it != params.end()) return it->second;
        const auto defaults = family_defaults(family);
        if (auto it = defaults.find(key); it != defaults.end()) return it->second;
        throw DomainError("known parameter", key + " for " + std::string(to_string(family)));
    }

    std::vector<double> truncations() const { return schedule.empty() ? default_schedule(family, d) : schedule; }
};

/// Family parameters resolved to plain fields, with derived exponents.
struct FamilyParams {
    Family family = Family::ex411;
    int d = 1;
    double p = 0, q = 0, p0 = 0, q0 = 0, r = 0;
    double eps = 0, eta = 0, delta = 0, alpha = 0;
    double b = 0, beta = 0, gamma = 0;
};

namespace detail {

inline void inside(double x, double lo, double hi, const std::string& name, const char* condition) {
    if (!(x > lo && x < hi))
        throw DomainError(condition, name + " = " + std::to_string(x) + " outside (" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + ")");
}

inline double dual(double r) { return conjugate_exponent(r); }

}  // namespace detail

inline FamilyParams resolve(const CounterexampleSpec& spec) {
    require(spec.d == 1 || spec.d == 2, "d in {1,2}");
    const auto defaults = family_defaults(spec.family);
    for (const auto& [key, value] : spec.params) {
        if (!defaults.contains(key))
            throw DomainError("known parameter", key + " for " + std::string(to_string(spec.family)));
        require(std::isfinite(value), "finite parameters", key);
    }
    FamilyParams fp;
    fp.family = spec.family;
    fp.d = spec.d;
    auto get = [&](const char* k, double& out) {
        if (defaults.contains(k)) out = spec.param(k);
    };
    get("p", fp.p);
    get("q", fp.q);
    get("p0", fp.p0);
    get("q0", fp.q0);
    get("r", fp.r);
    get("eps", fp.eps);
    get("eta", fp.eta);
    get("delta", fp.delta);
    get("alpha", fp.alpha);
    get("b", fp.b);
    get("beta", fp.beta);
    get("gamma", fp.gamma);
    const double d = spec.d;
    if (spec.family == Family::r56_endpoint) fp.gamma = d * (1.0 / fp.p0 + 1.0 / fp.q - 1.0);
    if (spec.family == Family::r56_strict || spec.family == Family::r56_endpoint)
        fp.beta = fp.gamma + d * (1.0 - 1.0 / fp.p - 1.0 / fp.q);
    return fp;
}

/// Structural requirements plus, unless `control`, the divergence window of each family.
inline FamilyParams check_window(const CounterexampleSpec& spec) {
    using detail::dual;
    using detail::inside;
    const FamilyParams f = resolve(spec);
    const double d = f.d;
    const bool window = !spec.control;
    switch (f.family) {
        case Family::ex411:
        case Family::ex413:
            inside(f.p, 1.0, 2.0, "p", "1 < p < 2");
            if (window) inside(f.eps, 1.0 / dual(f.p), 1.0 / f.p, "eps", "1/p' < eps < 1/p");
            break;
        case Family::ex412:
            inside(f.p, 1.0, 2.0, "p", "1 < p < 2");
            inside(f.q, f.p, 2.0 + 1e-15, "q", "p < q <= 2");
            if (window) inside(f.eps, d / dual(f.p), d / dual(f.q), "eps", "d/p' < eps < d/q'");
            break;
        case Family::r56_strict:
        case Family::r56_endpoint: {
            inside(f.p0, 1.0, 2.0, "p0", "1 < p0 < 2");
            inside(f.p, f.p0, dual(f.p0), "p", "p0 < p < p0'");
            inside(f.q, f.p - 1e-15, dual(f.p0), "q", "p <= q < p0'");
            require(f.beta * f.p > -d, "beta p > -d", "weight not integrable");
            if (f.family == Family::r56_strict) {
                require(f.gamma >= 0.0, "gamma >= 0");
                if (window) {
                    inside(f.gamma, -1e-15, d * (1.0 / f.p0 + 1.0 / f.q - 1.0), "gamma", "gamma < d(1/p0 + 1/q - 1)");
                    inside(f.eps, d / dual(f.p0), d / f.q - f.gamma, "eps", "d/p0' < eps < d/q - gamma");
                }
            } else if (window) {
                inside(f.eta, 1.0 / dual(f.p0), 1.0 / f.q, "eta", "1/p0' < eta < 1/q");
            }
            break;
        }
        case Family::t61:
            inside(f.q0, 2.0, infinity, "q0", "2 < q0 < inf");
            if (window) inside(f.alpha, 1.0 / (f.q0 - 1.0), 1.0, "alpha", "1/(q0-1) < alpha < 1");
            break;
        case Family::pitt_type:
            require(f.r >= 1.0 && f.p >= 1.0 && f.q >= 1.0, "r, p, q >= 1");
            require(f.gamma * f.q < d, "gamma q < d", "weight not integrable");
            if (window) require(f.p * (d / f.r - f.beta) > d, "p (d/r - beta) > d", "coefficient side must converge");
            break;
        case Family::z_sharp:
            require(f.q >= 1.0 && std::isfinite(f.q), "1 <= q < inf");
            if (window) require(f.b < -1.0 / f.q, "b < -1/q", "b = " + std::to_string(f.b));
            break;
        case Family::z_loglog: inside(f.q, 1.0, infinity, "q", "1 < q < inf"); break;
        case Family::boch_b_eq:
            inside(f.p0, 1.0, 2.0 + 1e-15, "p0", "1 < p0 <= 2");
            require(f.q >= 1.0 && f.q < dual(f.p0), "1 <= q < p0'");
            if (window) inside(f.delta, 1.0 / dual(f.p0), 1.0 / f.q, "delta", "1/p0' < delta < 1/q");
            break;
        case Family::boch_b_gt:
            inside(f.p0, 1.0, 2.0 + 1e-15, "p0", "1 < p0 <= 2");
            require(f.q >= 1.0 && std::isfinite(f.q), "1 <= q < inf");
            if (window) {
                require(f.b > -1.0 / f.q, "b > -1/q", "b = " + std::to_string(f.b));
                inside(f.eps, 1.0 / dual(f.p0), f.b + 1.0 / f.q + 1.0 / dual(f.p0), "eps",
                       "1/p0' < eps < b + 1/q + 1/p0'");
            }
            break;
    }
    return f;
}

inline IndexNorm family_index_norm(Family f) {
    switch (f) {
        case Family::t61:
        case Family::pitt_type:
        case Family::z_sharp:
        case Family::z_loglog: return IndexNorm::max;
        default: return IndexNorm::euclid;
    }
}

/// Exponent r of the value space l^r carrying the coefficients.
inline double value_exponent(const FamilyParams& f) {
    using detail::dual;
    switch (f.family) {
        case Family::ex411:
        case Family::ex412: return dual(f.p);
        case Family::ex413: return f.p;
        case Family::r56_strict:
        case Family::r56_endpoint:
        case Family::boch_b_eq:
        case Family::boch_b_gt: return dual(f.p0);
        case Family::t61: return dual(f.q0);
        case Family::pitt_type: return f.r;
        case Family::z_sharp:
        case Family::z_loglog: return 1.0;
    }
    return 1.0;
}

/// log ||c_n|| as a function of rho = |n| >= 1 in the family's index norm.
inline double log_coefficient(const FamilyParams& f, double rho) {
    using detail::dual;
    const double d = f.d;
    const double lr = std::log(rho);
    const double l1 = std::log1p(lr);  // log(1 + log|n|)
    switch (f.family) {
        case Family::ex411: return -d / dual(f.p) * lr - f.eps * l1;
        case Family::ex412:
        case Family::r56_strict: return -f.eps * lr;
        case Family::ex413: return -d / f.p * lr - f.eps * l1;
        case Family::r56_endpoint: return -d / dual(f.p0) * lr - f.eta * l1;
        case Family::t61: {
            const double ls = std::log1p(rho);
            return -d / dual(f.q0) * ls - f.alpha / dual(f.q0) * std::log(ls);
        }
        case Family::pitt_type: return -d / f.r * std::log1p(rho);
        case Family::z_sharp: return -d * std::log1p(rho);
        case Family::z_loglog: return -d * std::log1p(rho) - l1;
        case Family::boch_b_eq: return -d / dual(f.p0) * (lr + l1 / d) - f.delta * std::log1p(l1);
        case Family::boch_b_gt: return -d / dual(f.p0) * lr - f.eps * l1;
    }
    return 0.0;
}

/// Support of every family: the box max|n_j| <= N without the origin.
inline std::vector<LatticePoint> family_support(int d, long N) {
    require(N >= 1, "N >= 1");
    std::vector<LatticePoint> out;
    const LatticeBox box(d, N);
    out.reserve(box.size() - 1);
    for (std::size_t i = 0; i < box.size(); ++i) {
        const auto n = box.at(i);
        if (n.k[0] != 0 || n.k[1] != 0) out.push_back(n);
    }
    return out;
}

inline constexpr std::size_t max_dense_entries = std::size_t{1} << 22;

/// Coefficient c_n = |c_n| e_{j(n)} with j(n) the position of n in the support, in l^r_{#support}.
/// For the max-norm families at d = 1 the coordinates are routed through the identity copy of l^r_{2N}.
inline std::pair<TrigPolynomial, ValueSpace> build_counterexample(const CounterexampleSpec& spec, long N) {
    const FamilyParams f = check_window(spec);
    const auto support = family_support(f.d, N);
    const ValueSpace space(value_exponent(f), support.size());
    const LatticeBox box(f.d, N);
    require(box.size() * space.m <= max_dense_entries, "dense size within limit",
            "N too large for a dense build; use the coefficient-list path");
    TrigPolynomial poly(f.d, N, space);
    const IndexNorm kind = family_index_norm(f.family);
    const bool via_copy = kind == IndexNorm::max && f.d == 1;
    std::optional<CoordinateEmbedding> copy;
    if (via_copy) copy.emplace(embed_l1_copy(N, 1, space.r));
    for (std::size_t j = 0; j < support.size(); ++j) {
        const double magnitude = std::exp(log_coefficient(f, index_norm(support[j], f.d, kind)));
        if (copy) {
            poly.set_coefficient(support[j], copy->apply(ValuePoint::basis(space, j, magnitude)));
        } else {
            poly.coefficient_entries(box.offset(support[j]))[j] = magnitude;
        }
    }
    return {std::move(poly), space};
}

// ---------------------------------------------------------------- evaluation backends

namespace detail {

/// (int_{[-1/2,1/2]^d} |t|^{w s} dt)^{1/s}.
inline double torus_weight(int d, double s, double w) {
    TrigPolynomial one(d, 0, ValueSpace(1.0, 1));
    one.coefficient_entries(0)[0] = 1.0;
    return weighted_lp_norm_torus(one, s, w);
}

/// LZ norm of the indicator of (0,1).
inline double unit_lz(const LZParams& lz) {
    return lz_norm_function(RearrangementCurve::steps({1.0}, {1.0}), lz);
}

/// sum_{n=1}^N exp(log_h(n)): direct up to 4096, Euler-Maclaurin beyond with the integral in u = log x.
template <class LogTerm>
double shell_sum(LogTerm&& log_h, double N) {
    constexpr double direct = 4096.0;
    CompensatedSum s;
    const double top = std::min(N, direct);
    for (double n = 1.0; n <= top; n += 1.0) s.add(std::exp(log_h(n)));
    if (N <= direct) return s.value();
    auto h = [&](double x) { return std::exp(log_h(x)); };
    auto dh = [&](double x) { return (h(x * (1.0 + 1e-5)) - h(x * (1.0 - 1e-5))) / (2e-5 * x); };
    const double a = std::log(direct), b = std::log(N);
    s.add(gauss_panels([&](double u) { return std::exp(log_h(std::exp(u)) + u); }, a, b, panel_count(b - a, 4)));
    s.add(0.5 * (h(N) - h(direct)));
    s.add((dh(N) - dh(direct)) / 12.0);
    return s.value();
}

}  // namespace detail

/// Norms read off a dense polynomial with the module evaluators (slow generic path).
struct PolynomialBackend {
    const TrigPolynomial& f;
    IndexNorm kind;
    QuadratureConfig quad;

    double coeff_weighted(double s, double w) const { return weighted_lp_norm_sequence(f, s, w, kind); }
    double coeff_lz(const LZParams& lz) const { return lz_norm_sequence(f.coefficient_norms(), lz); }
    double fn_weighted(double s, double w) const { return weighted_lp_norm_torus(f, s, w, quad); }
    double fn_lz(const LZParams& lz) const {
        return lz_norm_function(sample_rearrangement(f, default_grid(f, quad)), lz, quad);
    }
};

/// Coefficient norms as a list; ||f(t)||_X is the constant ||(c_n)||_{l^r} for these families.
struct ListBackend {
    std::vector<LatticePoint> indices;
    std::vector<double> norms;
    int d;
    IndexNorm kind;
    double r;

    double coeff_weighted(double s, double w) const { return weighted_lp_norm_sequence(indices, norms, d, s, w, kind); }
    double coeff_lz(const LZParams& lz) const { return lz_norm_sequence(norms, lz); }
    double fn_weighted(double s, double w) const {
        return lr_norm(std::span<const double>(norms), r) * detail::torus_weight(d, s, w);
    }
    double fn_lz(const LZParams& lz) const { return lr_norm(std::span<const double>(norms), r) * detail::unit_lz(lz); }
};

inline ListBackend list_backend(const FamilyParams& f, long N) {
    ListBackend b{family_support(f.d, N), {}, f.d, family_index_norm(f.family), value_exponent(f)};
    b.norms.reserve(b.indices.size());
    for (const auto& n : b.indices) b.norms.push_back(std::exp(log_coefficient(f, index_norm(n, f.d, b.kind))));
    return b;
}

/// d = 1 shell sums over n = 1..N (each shell {n, -n}), usable for N far beyond direct enumeration.
struct ShellBackend {
    FamilyParams f;
    double N;

    double power_sum(double s, double w) const {
        const double total = detail::shell_sum(
            [&](double n) { return s * log_coefficient(f, n) + w * s * std::log1p(n); }, N);
        return std::pow(2.0 * total, 1.0 / s);
    }
    double coeff_weighted(double s, double w) const { return power_sum(s, w); }
    /// The rearranged sequence repeats each |c_n| twice, at ranks 2n-1 and 2n.
    double coeff_lz(const LZParams& lz) const {
        require(std::isfinite(lz.q), "q < inf", "shell sums");
        const double inv_p = std::isinf(lz.p) ? 0.0 : 1.0 / lz.p;
        const double a = lz.log_exponent(false);
        auto log_g = [&](double k) {
            const double lk = std::log(k);
            return (lz.q * inv_p - 1.0) * lk + lz.q * detail::log_weight(lk, a, lz.loglog_exponent);
        };
        const double total = detail::shell_sum(
            [&](double n) {
                const double g1 = log_g(2.0 * n - 1.0), g2 = log_g(2.0 * n);
                const double top = std::max(g1, g2);
                return lz.q * log_coefficient(f, n) + top + std::log(std::exp(g1 - top) + std::exp(g2 - top));
            },
            N);
        return std::pow(total, 1.0 / lz.q);
    }
    double fn_weighted(double s, double w) const { return power_sum(value_exponent(f), 0.0) * detail::torus_weight(1, s, w); }
    double fn_lz(const LZParams& lz) const { return power_sum(value_exponent(f), 0.0) * detail::unit_lz(lz); }
};

/// Both sides of the family's inequality; lhs is the side that diverges.
template <class Backend>
SideValues family_sides(const FamilyParams& f, const Backend& be) {
    using detail::dual;
    const double d = f.d;
    switch (f.family) {
        case Family::ex411: return make_sides(be.coeff_weighted(f.p, -d * (2.0 - f.p) / f.p), be.fn_weighted(f.p, 0.0));
        case Family::ex412: {
            const double qd = dual(f.q);
            return make_sides(be.coeff_weighted(qd, 0.0), be.fn_weighted(qd, d * (qd - 2.0) / qd));
        }
        case Family::ex413: {
            const double pd = dual(f.p);
            return make_sides(be.fn_weighted(pd, 0.0), be.coeff_weighted(pd, d * (pd - 2.0) / pd));
        }
        case Family::r56_strict:
        case Family::r56_endpoint: return make_sides(be.coeff_weighted(f.q, -f.gamma), be.fn_weighted(f.p, f.beta));
        case Family::t61:
            return make_sides(be.fn_weighted(f.q0, 0.0), be.coeff_weighted(f.q0, d * (f.q0 - 2.0) / f.q0));
        case Family::pitt_type: return make_sides(be.fn_weighted(f.q, -f.gamma), be.coeff_weighted(f.p, f.beta));
        case Family::z_sharp: return make_sides(be.fn_lz({infinity, f.q, f.b}), be.coeff_lz({1.0, f.q, f.b + 1.0}));
        case Family::z_loglog: {
            const double qd = dual(f.q);
            return make_sides(be.fn_lz({infinity, qd, -1.0}), be.coeff_lz({1.0, qd, 1.0 / f.q}));
        }
        case Family::boch_b_eq:
        case Family::boch_b_gt: {
            const double pd = dual(f.p0);
            const double b = f.family == Family::boch_b_eq ? -1.0 / f.q : f.b;
            return make_sides(be.coeff_lz({pd, f.q, b + 1.0 / std::max(pd, f.q)}),
                              be.fn_lz({f.p0, f.q, b + 1.0 / std::min(f.p0, f.q)}));
        }
    }
    return {};
}

enum class EvalPath { automatic, generic, coefficient_list, shell_sum };

inline constexpr double coefficient_list_limit = 131072.0;  // 2^17

inline SideValues evaluate_sides(const CounterexampleSpec& spec, double N, EvalPath path = EvalPath::automatic,
                                 const QuadratureConfig& quad = {}) {
    const FamilyParams f = check_window(spec);
    require(N >= 1.0 && N == std::floor(N), "N a positive integer");
    if (path == EvalPath::automatic)
        path = (f.d == 1 && N > coefficient_list_limit) ? EvalPath::shell_sum : EvalPath::coefficient_list;
    switch (path) {
        case EvalPath::generic: {
            const auto built = build_counterexample(spec, static_cast<long>(N));
            return family_sides(f, PolynomialBackend{built.first, family_index_norm(f.family), quad});
        }
        case EvalPath::shell_sum:
            require(f.d == 1, "d = 1", "shell sums");
            return family_sides(f, ShellBackend{f, N});
        default:
            require(f.d == 1 || N <= 2048.0, "N <= 2048 for d = 2");
            require(N <= 4.0 * coefficient_list_limit, "N within coefficient-list limit");
            return family_sides(f, list_backend(f, static_cast<long>(N)));
    }
}

enum class Side { lhs, rhs };

struct GrowthSeries {
    Series lhs;
    Series rhs;
};

/// Both sides over the schedule; schedule points are independent and may run on `jobs` threads.
inline GrowthSeries growth_sides(const CounterexampleSpec& spec, unsigned jobs = 1, EvalPath path = EvalPath::automatic) {
    check_window(spec);
    const auto schedule = spec.truncations();
    require(schedule.size() >= 4, "schedule length >= 4");
    for (std::size_t i = 1; i < schedule.size(); ++i) require(schedule[i] > schedule[i - 1], "schedule increasing");
    std::vector<SideValues> values(schedule.size());
    parallel_for(schedule.size(), jobs, [&](std::size_t i) { values[i] = evaluate_sides(spec, schedule[i], path); });
    GrowthSeries out;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        out.lhs.push_back({schedule[i], values[i].lhs});
        out.rhs.push_back({schedule[i], values[i].rhs});
    }
    return out;
}

inline Series growth_series(const CounterexampleSpec& spec, Side side, unsigned jobs = 1) {
    auto both = growth_sides(spec, jobs);
    return side == Side::lhs ? std::move(both.lhs) : std::move(both.rhs);
}

// ---------------------------------------------------------------- expected growth and verdict

enum class RhsBehaviour { converges, grows_slower };

struct ExpectedGrowth {
    GrowthModel model = GrowthModel::log_power;
    GrowthAxis axis = GrowthAxis::one_plus_log;
    double lhs_power = 1.0;  // the fit works with the lhs raised to this power (a plain sum)
    double rhs_power = 1.0;
    double exponent = 0.0;  // growth exponent of the lhs (of lhs/rhs for T61)
    RhsBehaviour rhs = RhsBehaviour::converges;
    std::string_view note;
};

inline ExpectedGrowth expected_growth(const FamilyParams& f) {
    using detail::dual;
    const double d = f.d;
    using M = GrowthModel;
    using A = GrowthAxis;
    switch (f.family) {
        case Family::ex411:
            return {M::log_power, A::one_plus_log, f.p, dual(f.p), (1.0 - f.eps * f.p) / f.p,
                    RhsBehaviour::converges, "integral comparison: sum (1+log n)^{-eps p} / n"};
        case Family::ex412:
            return {M::power, A::n, dual(f.q), dual(f.p), d / dual(f.q) - f.eps, RhsBehaviour::converges,
                    "integral comparison: sum |n|^{-eps q'} over |n| <= N"};
        case Family::ex413:
            return {M::log_power, A::one_plus_log, f.p, dual(f.p), (1.0 - f.eps * f.p) / f.p,
                    RhsBehaviour::converges, "integral comparison: sum (1+log n)^{-eps p} / n"};
        case Family::r56_strict:
            return {M::power, A::n, f.q, dual(f.p0), d / f.q - f.eps - f.gamma, RhsBehaviour::converges,
                    "integral comparison: sum |n|^{-(eps+gamma) q}"};
        case Family::r56_endpoint:
            return {M::log_power, A::one_plus_log, f.q, dual(f.p0), (1.0 - f.eta * f.q) / f.q,
                    RhsBehaviour::converges, "integral comparison: sum (1+log n)^{-eta q} / n"};
        case Family::t61:
            return {M::log_power, A::log_n_plus_one, dual(f.q0), f.q0, (1.0 - f.alpha) / dual(f.q0),
                    RhsBehaviour::converges, "lhs^{q0'} ~ sum log(n+1)^{-alpha} / (n+1); rhs sum converges"};
        case Family::pitt_type:
            return {M::log_power, A::log_n_plus_one, f.r, f.p, 1.0 / f.r, RhsBehaviour::converges,
                    "lhs^r ~ sum 1/(n+1) ~ log(N+1)"};
        case Family::z_sharp:
            return {M::log_power, A::log_n_plus_one, 1.0, f.q, 1.0, RhsBehaviour::grows_slower,
                    "lhs ~ sum (n+1)^{-1} ~ log(N+1); rhs ~ log(N)^{b+1+1/q}"};
        case Family::z_loglog:
            return {M::loglog_power, A::one_plus_loglog, 1.0, dual(f.q), 1.0, RhsBehaviour::grows_slower,
                    "lhs ~ sum 1/((n+1)(1+log n)) ~ log log N; rhs ~ (log log N)^{1/q'}"};
        case Family::boch_b_eq:
            return {M::loglog_power, A::one_plus_loglog, f.q, dual(f.p0), (1.0 - f.delta * f.q) / f.q,
                    RhsBehaviour::converges, "lhs^q ~ sum (1+log(1+log n))^{-delta q} / (n log n)"};
        case Family::boch_b_gt: {
            const double pd = dual(f.p0);
            return {M::log_power, A::one_plus_log, f.q, pd, f.b + 1.0 / std::max(pd, f.q) + 1.0 / f.q - f.eps,
                    RhsBehaviour::converges, "lhs^q ~ sum (1+log n)^{(b + 1/max(p0',q) - eps) q} / n"};
        }
    }
    return {};
}

enum class Verdict { sharp, not_detected };

inline std::string_view to_string(Verdict v) { return v == Verdict::sharp ? "Sharp" : "NotDetected"; }

struct SharpnessReport {
    Family family = Family::ex411;
    Verdict verdict = Verdict::not_detected;
    GrowthSeries series;
    ExpectedGrowth expected;
    IncrementFit lhs_fit;
    IncrementFit rhs_fit;
    GrowthFit fit;           // lhs (lhs/rhs for T61) in the family's model
    GrowthFit free_fit;      // best candidate model chosen without the family's expectation
    double measured = 0.0;   // fitted exponent compared against expected.exponent
    double rhs_relative_increment = 0.0;
    std::string reason;      // empty when sharp
};

inline constexpr double exponent_tolerance = 0.15;
inline constexpr double min_r_squared = 0.9;

inline SharpnessReport sharpness_verdict(const CounterexampleSpec& spec, unsigned jobs = 1) {
    const FamilyParams f = check_window(spec);
    SharpnessReport rep;
    rep.family = f.family;
    rep.expected = expected_growth(f);
    rep.series = growth_sides(spec, jobs);
    rep.lhs_fit = fit_increments(rep.series.lhs, rep.expected.axis, rep.expected.lhs_power);
    rep.rhs_fit = fit_increments(rep.series.rhs, rep.expected.axis, rep.expected.rhs_power);
    rep.measured = rep.lhs_fit.exponent;
    if (f.family == Family::t61) rep.measured -= std::max(rep.rhs_fit.exponent, 0.0);
    rep.fit = {rep.expected.model, rep.measured, rep.lhs_fit.r_squared};
    Series top = rep.series.lhs;
    if (top.front().n > std::exp(1.0)) rep.free_fit = fit_growth(top);
    rep.rhs_relative_increment = relative_increment(rep.series.rhs);

    const double target = rep.expected.exponent;
    if (!(rep.lhs_fit.t > 0.0))
        rep.reason = "lhs does not diverge";
    else if (rep.lhs_fit.r_squared < min_r_squared)
        rep.reason = "lhs fit r^2 below 0.9";
    else if (!(std::abs(rep.measured - target) <= exponent_tolerance * std::abs(target)))
        rep.reason = "lhs exponent outside 15% of expected";
    else if (rep.expected.rhs == RhsBehaviour::converges && rep.rhs_fit.t > 0.0)
        rep.reason = "rhs does not converge";
    else if (rep.expected.rhs == RhsBehaviour::grows_slower && !(rep.rhs_fit.exponent < rep.lhs_fit.exponent))
        rep.reason = "rhs does not grow slower than lhs";
    rep.verdict = rep.reason.empty() ? Verdict::sharp : Verdict::not_detected;
    return rep;
}

}  // namespace pittlab
