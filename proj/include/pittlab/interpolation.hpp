#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "pittlab/common.hpp"
#include "pittlab/quadrature.hpp"
#include "pittlab/rearrange.hpp"

namespace pittlab {

/// Limiting interpolation parameters: theta in {0} u [0,1], fine index q, log exponent b.
struct InterpParams {
    double theta = 0.0;
    double q = 1.0;
    double b = 0.0;
};

inline void check_interp_params(const InterpParams& s) {
    require(s.theta >= 0.0 && s.theta <= 1.0, "0 <= theta <= 1");
    require(s.q >= 1.0, "q >= 1");
    const bool q_inf = std::isinf(s.q);
    if (s.theta == 0.0) {
        if (q_inf)
            require(s.b > 0.0, "b > 0 for theta = 0, q = inf");
        else
            require(s.b >= -1.0 / s.q, "b >= -1/q for theta = 0");
    } else if (s.theta == 1.0) {
        if (q_inf)
            require(s.b <= 0.0, "b <= 0 for theta = 1, q = inf");
        else
            require(s.b < -1.0 / s.q, "b < -1/q for theta = 1");
    }
}

/// K(t, f; L^1, L^inf) = int_0^t f*.
inline double k_functional(const RearrangementCurve& curve, double t) {
    require(t > 0.0, "t > 0");
    return curve.primitive(t);
}

/// K(t, f; L^inf, L^1) by optimal truncation at height lambda = f*(1/t): lambda + t int (f* - lambda)_+.
inline double k_functional_reversed(const RearrangementCurve& curve, double t) {
    require(t > 0.0, "t > 0");
    const double lambda = curve.value_at(1.0 / t);
    const double m = curve.measure_above(lambda);
    return lambda + t * (curve.primitive(m) - lambda * m);
}

namespace detail {

/// (int_0^1 (t^{-theta} (1+|log t|)^b K(t))^q dt/t)^{1/q} with u = -log t, given K and its kinks in u.
/// Beyond `linear_from` K(t) = slope * t exactly; pass slope < 0 when no such tail is known.
template <class K>
double limiting_integral(K&& kfun, const InterpParams& s, std::vector<double> kinks, double linear_from, double slope,
                         const QuadratureConfig& quad) {
    auto log_w = [&](double u) { return s.theta * u + s.b * std::log1p(u); };
    auto term = [&](double u) {
        const double t = std::exp(-u);
        const double k = t > 0.0 ? kfun(t) : 0.0;
        return k > 0.0 ? std::exp(log_w(u)) * k : 0.0;
    };
    const double u_end = slope >= 0.0 ? std::max(linear_from, 0.0) : quad.u_max;
    kinks.push_back(0.0);
    kinks.push_back(u_end);
    std::erase_if(kinks, [&](double u) { return !(u >= 0.0 && u <= u_end); });
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

    if (std::isinf(s.q)) {
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
            const int n = 16 * panel_count(kinks[i + 1] - kinks[i], quad.panels);
            for (int j = 0; j <= n; ++j) best = std::max(best, term(kinks[i] + (kinks[i + 1] - kinks[i]) * j / n));
        }
        best = std::max(best, term(u_end));
        if (slope > 0.0) {
            // slope e^{-u(1-theta)} (1+u)^b on [u_end, inf)
            if (s.theta == 1.0 && s.b == 0.0) return std::max(best, slope);
            if (s.theta == 1.0 && s.b > 0.0) return infinity;
            const int n = 64 * panel_count(quad.u_max, quad.panels);
            for (int j = 0; j <= n; ++j) {
                const double u = u_end + 4.0 * quad.u_max * j / n;
                best = std::max(best, slope * std::exp(-u * (1.0 - s.theta) + s.b * std::log1p(u)));
            }
        }
        return best;
    }

    const double q = s.q;
    CompensatedSum total;
    for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
        const double a = kinks[i], b = kinks[i + 1];
        total.add(gauss_panels([&](double u) { return std::pow(term(u), q); }, a, b, panel_count(b - a, quad.panels)));
    }
    if (slope > 0.0) {
        const double rate = q * (1.0 - s.theta);
        if (rate == 0.0 && q * s.b >= -1.0) return infinity;
        auto tail = [&](double u) { return std::pow(slope, q) * std::exp(-u * rate + q * s.b * std::log1p(u)); };
        if (rate == 0.0) {
            // (1+u)^{qb}: closed form
            total.add(std::pow(slope, q) * std::pow(1.0 + u_end, q * s.b + 1.0) / -(q * s.b + 1.0));
        } else {
            total.add(exp_sinh_tail(tail, u_end));
        }
    } else if (slope < 0.0) {
        const double t = exp_sinh_tail([&](double u) { return std::pow(term(u), q); }, u_end);
        if (!std::isfinite(t)) return infinity;
        total.add(t);
    }
    return std::pow(total.value(), 1.0 / q);
}

inline std::vector<double> curve_kinks(const RearrangementCurve& curve) {
    std::vector<double> out;
    for (double t : curve.breakpoints())
        if (t < 1.0) out.push_back(-std::log(t));
    return out;
}

}  // namespace detail

/// (int_0^1 (t^{-theta} (1+|log t|)^b K(t,f; L^1, L^inf))^q dt/t)^{1/q}, sup for q = inf.
inline double limiting_interp_norm(const RearrangementCurve& curve, const InterpParams& s,
                                   const QuadratureConfig& quad = {}) {
    check_interp_params(s);
    if (curve.primitive(std::min(curve.total_measure(), 1.0)) == 0.0) return 0.0;
    auto kfun = [&](double t) { return curve.primitive(t); };
    if (curve.is_step()) {
        const auto t = curve.breakpoints();
        const double first = t.empty() ? 1.0 : t.front();
        const double slope = curve.values().empty() ? 0.0 : curve.values().front();
        return detail::limiting_integral(kfun, s, detail::curve_kinks(curve), -std::log(std::min(first, 1.0)), slope,
                                         quad);
    }
    return detail::limiting_integral(kfun, s, {}, 0.0, -1.0, quad);
}

// ---------------------------------------------------------------- Hardy inequalities

/// Nonnegative step function on (0,1]: value v_k on (x_{k-1}, x_k], x_0 = 0, x_K = 1.
class StepProfile {
public:
    StepProfile(std::vector<double> edges, std::vector<double> values) : x_(std::move(edges)), v_(std::move(values)) {
        require(x_.size() == v_.size() && !x_.empty(), "one value per cell");
        double prev = 0.0;
        for (std::size_t k = 0; k < x_.size(); ++k) {
            require(x_[k] > prev, "edges strictly increasing");
            require(v_[k] >= 0.0 && std::isfinite(v_[k]), "psi >= 0");
            prev = x_[k];
        }
        require(near(x_.back(), 1.0), "last edge 1");
        x_.back() = 1.0;
        cum_.resize(x_.size() + 1, 0.0);
        for (std::size_t k = 0; k < x_.size(); ++k) cum_[k + 1] = cum_[k] + v_[k] * (x_[k] - (k ? x_[k - 1] : 0.0));
    }

    /// Samples f on cells whose edges are given, taking the value at each cell's geometric midpoint.
    static StepProfile sample(const std::function<double(double)>& f, std::vector<double> edges) {
        std::vector<double> values(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const double lo = k ? edges[k - 1] : edges[0] * 0.5;
            values[k] = f(std::sqrt(lo * edges[k]));
        }
        return {std::move(edges), std::move(values)};
    }

    std::span<const double> edges() const noexcept { return x_; }
    std::span<const double> values() const noexcept { return v_; }

    double at(double t) const {
        const auto it = std::lower_bound(x_.begin(), x_.end(), t);
        return it == x_.end() ? 0.0 : v_[static_cast<std::size_t>(it - x_.begin())];
    }

    /// int_0^t psi, exact.
    double primitive(double t) const {
        if (!(t > 0.0)) return 0.0;
        const auto it = std::lower_bound(x_.begin(), x_.end(), t);
        if (it == x_.end()) return cum_.back();
        const std::size_t k = static_cast<std::size_t>(it - x_.begin());
        return cum_[k] + v_[k] * (t - (k ? x_[k - 1] : 0.0));
    }

private:
    std::vector<double> x_;
    std::vector<double> v_;
    std::vector<double> cum_;
};

/// Geometric edges 2^{-levels}, ..., 1/2, 1 refined by `split` equal sub-cells per octave.
inline std::vector<double> dyadic_edges(int levels, int split = 1) {
    require(levels >= 1 && split >= 1, "levels, split >= 1");
    std::vector<double> out;
    for (int j = levels; j >= 1; --j) {
        const double lo = std::ldexp(1.0, -j), hi = 2.0 * lo;
        for (int i = 1; i <= split; ++i) out.push_back(lo + (hi - lo) * i / split);
    }
    out.insert(out.begin(), std::ldexp(1.0, -levels));
    return out;
}

enum class HardyVariant { i, iii };

struct HardySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Both sides of the logarithmic Hardy inequality for functions on (0,1); requires b + 1/q > 0.
/// i:   ((1 - log t)^b int_0^t psi)^q dt/t            vs (t (1 - log t)^{b+1} psi(t))^q dt/t
/// iii: ((1 + log(1 - log t))^b int_0^t psi)^q dt/(t(1 - log t))
///      vs (t (1 - log t)(1 + log(1 - log t))^{b+1} psi(t))^q dt/(t(1 - log t))
inline HardySides hardy_check_functions(const StepProfile& psi, double b, double q, HardyVariant variant,
                                        const QuadratureConfig& quad = {}) {
    require(q >= 1.0, "q >= 1");
    require(b + (std::isinf(q) ? 0.0 : 1.0 / q) > 0.0, "b + 1/q > 0");
    const bool loglog = variant == HardyVariant::iii;
    // log-weights in u = -log t, without the measure factor
    auto log_lhs_w = [&](double u) { return loglog ? b * std::log1p(std::log1p(u)) : b * std::log1p(u); };
    auto log_rhs_w = [&](double u) {
        return loglog ? -u + std::log1p(u) + (b + 1.0) * std::log1p(std::log1p(u)) : -u + (b + 1.0) * std::log1p(u);
    };
    auto lhs_term = [&](double u) {
        const double k = psi.primitive(std::exp(-u));
        return k > 0.0 ? std::exp(log_lhs_w(u)) * k : 0.0;
    };
    auto rhs_term = [&](double u) {
        const double v = psi.at(std::exp(-u));
        return v > 0.0 ? std::exp(log_rhs_w(u)) * v : 0.0;
    };
    auto measure = [&](double u) { return loglog ? 1.0 / (1.0 + u) : 1.0; };

    std::vector<double> kinks{0.0};
    for (double x : psi.edges())
        if (x < 1.0) kinks.push_back(-std::log(x));
    std::sort(kinks.begin(), kinks.end());
    const double last = kinks.back();
    const double end = last + quad.u_max;

    if (std::isinf(q)) {
        HardySides out;
        for (std::size_t i = 0; i + 1 <= kinks.size(); ++i) {
            const double a = kinks[i], c = i + 1 < kinks.size() ? kinks[i + 1] : end;
            const int n = 16 * panel_count(c - a, quad.panels);
            for (int j = 0; j <= n; ++j) {
                // rhs is evaluated inside each cell: psi jumps at the kinks
                const double u = a + (c - a) * (j + 0.5) / (n + 1);
                out.lhs = std::max(out.lhs, lhs_term(a + (c - a) * j / n));
                out.rhs = std::max(out.rhs, rhs_term(u));
            }
        }
        return out;
    }

    auto integrate = [&](auto&& term) {
        auto g = [&](double u) { return std::pow(term(u), q) * measure(u); };
        CompensatedSum s;
        for (std::size_t i = 0; i + 1 < kinks.size(); ++i)
            s.add(gauss_panels(g, kinks[i], kinks[i + 1], panel_count(kinks[i + 1] - kinks[i], quad.panels)));
        s.add(gauss_panels(g, last, end, panel_count(end - last, quad.panels)));
        s.add(exp_sinh_tail(g, end));
        return std::pow(s.value(), 1.0 / q);
    };
    return {integrate(lhs_term), integrate(rhs_term)};
}

/// Both sides of the Hardy inequality for sequences; requires b + 1/q < 0.
/// lhs: (sum_n ((1+log n)^b sum_{k<=n} c_k)^q / n)^{1/q}, the infinite tail past the support in closed form
/// plus Euler-Maclaurin corrections; rhs: (sum_n (n (1+log n)^{b+1} c_n)^q / n)^{1/q}.
inline HardySides hardy_check_sequences(std::span<const double> c, double b, double q) {
    require(q >= 1.0, "q >= 1");
    require(b + (std::isinf(q) ? 0.0 : 1.0 / q) < 0.0, "b + 1/q < 0");
    for (double x : c) require(x >= 0.0 && std::isfinite(x), "c_n >= 0");
    HardySides out;
    if (std::isinf(q)) {
        double partial = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double n = static_cast<double>(i + 1);
            partial += c[i];
            out.lhs = std::max(out.lhs, std::pow(1.0 + std::log(n), b) * partial);
            out.rhs = std::max(out.rhs, n * std::pow(1.0 + std::log(n), b + 1.0) * c[i]);
        }
        return out;
    }
    const double s = b * q;  // tail weight (1+log n)^s / n, s < -1
    CompensatedSum lhs, rhs, partial;
    std::size_t K = c.size();
    while (K > 0 && c[K - 1] == 0.0) --K;
    if (K == 0) return out;
    const std::size_t direct = std::max<std::size_t>(K, 10000);
    for (std::size_t i = 0; i < direct; ++i) {
        const double n = static_cast<double>(i + 1);
        const double L = std::log(n);
        if (i < K) {
            partial.add(c[i]);
            rhs.add(std::pow(n * std::pow(1.0 + L, b + 1.0) * c[i], q) / n);
        }
        lhs.add(std::pow(1.0 + L, s) * std::pow(partial.value(), q) / n);
    }
    // sum_{n > D} h(n), h(x) = (1+log x)^s / x: integral - h(D)/2 - h'(D)/12
    const double D = static_cast<double>(direct);
    const double L = std::log(D);
    const double integral = std::pow(1.0 + L, s + 1.0) / -(s + 1.0);
    const double h = std::pow(1.0 + L, s) / D;
    const double dh = std::pow(1.0 + L, s - 1.0) * (s - (1.0 + L)) / (D * D);
    lhs.add(std::pow(partial.value(), q) * (integral - 0.5 * h - dh / 12.0));
    return {std::pow(lhs.value(), 1.0 / q), std::pow(rhs.value(), 1.0 / q)};
}

inline constexpr std::size_t hardy_family_size = 20;

/// Fixed family of 20 nonnegative test functions on (0,1], sampled on `dyadic_edges(levels, split)`.
inline std::vector<StepProfile> hardy_profile_family(int levels = 40, int split = 2) {
    const auto edges = dyadic_edges(levels, split);
    auto L = [](double t) { return 1.0 - std::log(t); };
    const std::vector<std::function<double(double)>> members{
        [](double) { return 1.0; },
        [](double t) { return std::pow(t, -0.25); },
        [](double t) { return std::pow(t, -0.5); },
        [](double t) { return std::pow(t, -0.75); },
        [](double t) { return std::pow(t, -0.9); },
        [&](double t) { return std::pow(L(t), -1.5) / t; },
        [&](double t) { return std::pow(L(t), -2.0) / t; },
        [&](double t) { return std::pow(L(t), -3.0) / t; },
        [](double t) { return t <= 0.1 ? 1.0 : 0.0; },
        [](double t) { return t > 0.3 && t <= 0.6 ? 1.0 : 0.0; },
        [](double t) { return std::pow(t, -0.3) * (1.0 + std::pow(std::sin(20.0 * std::log(t)), 2)); },
        [](double t) { return std::abs(std::sin(1.0 / t)); },
        [](double t) { return std::exp(-1.0 / t); },
        [](double t) { return t * t; },
        [&](double t) { return std::pow(t, -0.5) * L(t); },
        [&](double t) { return std::pow(t, -0.5) / L(t); },
        [](double t) { return static_cast<long>(std::floor(-std::log2(t))) % 2 == 0 ? 1.0 : 0.0; },
        [](double t) { return -std::log(t); },
        [](double t) { return 1.0 / std::sqrt(1.0 - t + 1e-3); },
        [](double t) { return std::pow(t, -0.99); },
    };
    std::vector<StepProfile> out;
    for (const auto& f : members) out.push_back(StepProfile::sample(f, edges));
    return out;
}

/// Fixed family of 20 nonnegative sequences c_1..c_N.
inline std::vector<std::vector<double>> hardy_sequence_family(std::size_t N) {
    require(N >= 1, "N >= 1");
    auto L = [](double n) { return 1.0 + std::log(n); };
    const std::vector<std::function<double(double)>> members{
        [](double n) { return std::pow(n, -1.1); },
        [](double n) { return std::pow(n, -1.25); },
        [](double n) { return std::pow(n, -1.5); },
        [](double n) { return std::pow(n, -2.0); },
        [](double n) { return std::pow(n, -3.0); },
        [&](double n) { return 1.0 / (n * std::pow(L(n), 1.0)); },
        [&](double n) { return 1.0 / (n * std::pow(L(n), 2.0)); },
        [&](double n) { return 1.0 / (n * std::pow(L(n), 4.0)); },
        [](double n) { return n == 1.0 ? 1.0 : 0.0; },
        [](double n) { return n <= 10.0 ? 1.0 : 0.0; },
        [](double n) { return n >= 5.0 && n <= 50.0 ? 0.1 : 0.0; },
        [](double n) { return std::exp2(-n); },
        [](double n) { return std::pow(0.9, n); },
        [](double n) { return static_cast<long>(n) % 2 == 0 ? std::pow(n, -1.5) : 0.0; },
        [](double n) { return std::pow(n, -2.0) * (1.0 + std::sin(n)); },
        [](double n) { return std::pow(n, -1.5) * std::log1p(n); },
        [](double n) { return 1.0 / (n * n + 100.0); },
        [](double n) { return std::exp(-std::sqrt(n)); },
        [](double n) { return std::pow(n, -1.05) * std::exp(-n / 1.0e4); },
        [&](double n) { return 1.0 / (n * std::pow(L(n), 1.5) * std::log1p(L(n))); },
    };
    std::vector<std::vector<double>> out;
    for (const auto& f : members) {
        std::vector<double> c(N);
        for (std::size_t i = 0; i < N; ++i) c[i] = f(static_cast<double>(i + 1));
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------- reiteration

struct ReiterationBracket {
    double left = 0.0;    // ||f||_{L^{r,q}(log L)^{b + 1/min(p,q)}}
    double middle = 0.0;  // ||f||_{(L^1, L^{r,p})_{1,q;b}}
    double right = 0.0;   // ||f||_{L^{r,q}(log L)^{b + 1/max(p,q)}}
    double upper_constant = 0.0;  // middle / left
    double lower_constant = 0.0;  // right / middle
};

/// K(t, f; L^1, L^{r,p}) up to constants (Holmstedt):
/// int_0^{t^a} f* + t (int_{t^a}^mu (s^{1/r} f*(s))^p ds/s)^{1/p}, a = 1/(1 - 1/r).
inline double k_functional_l1_lorentz(const RearrangementCurve& curve, double r, double p, double t) {
    require(t > 0.0, "t > 0");
    require(r > 1.0 && std::isfinite(r), "1 < r < inf");
    require(p >= 1.0, "p >= 1");
    const double a = 1.0 / (1.0 - 1.0 / r);
    const double x = std::pow(t, a);
    if (!(x >= std::numeric_limits<double>::min())) return 0.0;  // t^a below the normal range: dropped
    const double mu = curve.total_measure();
    const double head = curve.primitive(x);
    if (x >= mu) return head;
    double tail = 0.0;
    if (curve.is_step()) {
        const auto bp = curve.breakpoints();
        const auto v = curve.values();
        double prev = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double lo = std::max(prev, x), hi = bp[k];
            prev = bp[k];
            if (hi <= lo || v[k] == 0.0) continue;
            if (std::isinf(p))
                tail = std::max(tail, std::pow(hi, 1.0 / r) * v[k]);
            else
                tail += std::pow(v[k], p) * (std::pow(hi, p / r) - std::pow(lo, p / r)) * r / p;
        }
    } else {
        // s = x e^{v}, v in [0, log(mu/x)]
        const double top = std::log(mu) - a * std::log(t);
        auto g = [&](double w) {
            const double s = x * std::exp(w);
            return std::pow(std::pow(s, 1.0 / r) * curve.value_at(s), p);
        };
        require(std::isfinite(p), "p < inf", "profile curves");
        tail = adaptive_integral(g, 0.0, top, 1e-12);
    }
    if (!std::isinf(p)) tail = std::pow(tail, 1.0 / p);
    return head + t * tail;
}

/// Left, middle and right norms of the chain
/// L^{r,q}(log L)^{b+1/min(p,q)} -> (L^1, L^{r,p})_{1,q;b} -> L^{r,q}(log L)^{b+1/max(p,q)}, 1/r = 1 - theta,
/// with the empirical constants of both embeddings.
inline ReiterationBracket reiteration_bracket_check(const RearrangementCurve& curve, double theta, double p, double q,
                                                    double b, const QuadratureConfig& quad = {}) {
    require(theta > 0.0 && theta < 1.0, "0 < theta < 1");
    require(p >= 1.0 && q >= 1.0, "p, q >= 1");
    require(b < -(std::isinf(q) ? 0.0 : 1.0 / q), "b < -1/q");
    const double r = 1.0 / (1.0 - theta);
    auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
    ReiterationBracket out;
    out.left = lz_norm_function(curve, {r, q, b + inv(std::min(p, q))}, quad);
    out.right = lz_norm_function(curve, {r, q, b + inv(std::max(p, q))}, quad);
    if (out.left == 0.0 && out.right == 0.0) return out;
    auto kfun = [&](double t) { return k_functional_l1_lorentz(curve, r, p, t); };
    std::vector<double> kinks;
    // K has kinks where t^a crosses a breakpoint
    for (double u : detail::curve_kinks(curve)) kinks.push_back(u * (1.0 - 1.0 / r));
    const InterpParams s{1.0, q, b};
    out.middle = detail::limiting_integral(kfun, s, kinks, 0.0, -1.0, quad);
    out.upper_constant = out.left > 0.0 ? out.middle / out.left : infinity;
    out.lower_constant = out.middle > 0.0 ? out.right / out.middle : infinity;
    return out;
}

}  // namespace pittlab
