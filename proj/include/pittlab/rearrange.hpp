#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pittlab/common.hpp"
#include "pittlab/quadrature.hpp"
#include "pittlab/trig_polynomial.hpp"
#include "pittlab/values.hpp"

namespace pittlab {

/// Non-increasing rearrangement f* on (0, total_measure).
/// Either a step function (value v_k on [t_{k-1}, t_k), t_0 = 0) or an analytic profile t -> f*(t).
class RearrangementCurve {
public:
    RearrangementCurve() = default;

    /// Step curve from the right endpoints t_1 < ... < t_K and values v_1 >= ... >= v_K >= 0.
    static RearrangementCurve steps(std::vector<double> breakpoints, std::vector<double> values) {
        require(breakpoints.size() == values.size(), "one value per cell");
        double prev_t = 0.0;
        double prev_v = infinity;
        for (std::size_t k = 0; k < values.size(); ++k) {
            require(breakpoints[k] > prev_t, "breakpoints strictly increasing");
            require(values[k] >= 0.0 && std::isfinite(values[k]), "values finite and nonnegative");
            require(values[k] <= prev_v, "values non-increasing");
            prev_t = breakpoints[k];
            prev_v = values[k];
        }
        RearrangementCurve c;
        c.t_ = std::move(breakpoints);
        c.v_ = std::move(values);
        c.measure_ = c.t_.empty() ? 0.0 : c.t_.back();
        return c;
    }

    /// Non-increasing nonnegative profile on (0, total_measure); total_measure may be infinite.
    static RearrangementCurve profile(std::function<double(double)> f, double total_measure) {
        require(total_measure > 0.0, "total measure > 0");
        RearrangementCurve c;
        c.profile_ = std::move(f);
        c.measure_ = total_measure;
        return c;
    }

    bool is_step() const noexcept { return !profile_; }
    double total_measure() const noexcept { return measure_; }
    std::span<const double> breakpoints() const noexcept { return t_; }
    std::span<const double> values() const noexcept { return v_; }
    std::size_t cells() const noexcept { return v_.size(); }

    double value_at(double t) const {
        if (!(t >= 0.0) || t >= measure_) return 0.0;
        if (profile_) return profile_(t);
        const auto it = std::upper_bound(t_.begin(), t_.end(), t);
        return it == t_.end() ? 0.0 : v_[static_cast<std::size_t>(it - t_.begin())];
    }

    /// Integral of f* over (0, t); exact on step curves.
    double primitive(double t) const {
        if (!(t > 0.0)) return 0.0;
        t = std::min(t, measure_);
        if (profile_) {
            // s = t e^{-u}: int_0^t f = t int_0^inf f(t e^{-u}) e^{-u} du
            auto g = [&](double u) {
                const double s = t * std::exp(-u);
                return s > 0.0 ? s * profile_(s) : 0.0;
            };
            return adaptive_integral(g, 0.0, 40.0, 1e-12) + exp_sinh_tail(g, 40.0);
        }
        CompensatedSum s;
        double prev = 0.0;
        for (std::size_t k = 0; k < v_.size() && prev < t; ++k) {
            const double hi = std::min(t_[k], t);
            s.add(v_[k] * (hi - prev));
            prev = t_[k];
        }
        return s.value();
    }

    /// |{f* > lambda}|.
    double measure_above(double lambda) const {
        if (profile_) {
            double hi = measure_;
            if (std::isinf(hi)) {
                hi = 1.0;
                while (profile_(hi) > lambda) {
                    hi *= 2.0;
                    if (hi > 1e300) return infinity;
                }
            }
            double lo = 0.0;
            for (int i = 0; i < 2000 && hi - lo > 1e-15 * hi; ++i) {
                const double mid = lo == 0.0 ? hi * 0.5 : 0.5 * (lo + hi);
                (profile_(mid) > lambda ? lo : hi) = mid;
                if (lo == 0.0 && hi < 1e-300) return 0.0;
            }
            return hi;
        }
        // values are non-increasing: find the last cell with v > lambda
        const auto it = std::partition_point(v_.begin(), v_.end(), [&](double v) { return v > lambda; });
        const std::size_t k = static_cast<std::size_t>(it - v_.begin());
        return k == 0 ? 0.0 : t_[k - 1];
    }

    RearrangementCurve scaled(double c) const {
        require(c >= 0.0, "scale >= 0");
        RearrangementCurve out = *this;
        if (profile_) {
            auto f = profile_;
            out.profile_ = [f, c](double t) { return c * f(t); };
        } else {
            for (auto& v : out.v_) v *= c;
        }
        return out;
    }

private:
    std::vector<double> t_;
    std::vector<double> v_;
    double measure_ = 0.0;
    std::function<double(double)> profile_;
};

/// Unit-measure cells, sorted descending.
inline RearrangementCurve rearrange_sequence(std::span<const double> norms) {
    std::vector<double> v(norms.begin(), norms.end());
    for (double x : v) require(x >= 0.0 && std::isfinite(x), "norms finite and nonnegative");
    std::sort(v.begin(), v.end(), std::greater<>());
    std::vector<double> t(v.size());
    std::iota(t.begin(), t.end(), 1.0);
    return RearrangementCurve::steps(std::move(t), std::move(v));
}

struct SampledCell {
    double measure = 0.0;
    double magnitude = 0.0;
};

inline RearrangementCurve rearrange_sampled(std::span<const SampledCell> samples) {
    std::vector<SampledCell> s(samples.begin(), samples.end());
    for (const auto& c : s) {
        require(c.measure > 0.0, "cell measure > 0");
        require(c.magnitude >= 0.0 && std::isfinite(c.magnitude), "magnitudes finite and nonnegative");
    }
    std::stable_sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.magnitude > b.magnitude; });
    std::vector<double> t, v;
    t.reserve(s.size());
    v.reserve(s.size());
    CompensatedSum acc;
    for (const auto& c : s) {
        acc.add(c.measure);
        t.push_back(acc.value());
        v.push_back(c.magnitude);
    }
    return RearrangementCurve::steps(std::move(t), std::move(v));
}

/// Rearrangement of t -> ||f(t)|| sampled on the uniform M^d grid of the torus.
inline RearrangementCurve sample_rearrangement(const TrigPolynomial& f, long M) {
    const auto samples = sample_on_grid(f, M);
    const double cell = 1.0 / static_cast<double>(samples.size());
    std::vector<SampledCell> cells;
    cells.reserve(samples.size());
    for (const auto& x : samples) cells.push_back({cell, norm(x)});
    return rearrange_sampled(cells);
}

/// Weight t^{1/p} (1+|log t|)^b (1+log(1+|log t|))^c in a q-mean; `split` replaces b by
/// alpha_0 on t <= 1 and alpha_inf on t > 1.
struct LZParams {
    double p = 1.0;
    double q = 1.0;
    double b = 0.0;
    double loglog_exponent = 0.0;
    std::optional<std::pair<double, double>> split;

    double log_exponent(bool small_t) const {
        if (!split) return b;
        return small_t ? split->first : split->second;
    }
};

namespace detail {

inline void check_lz_exponents(const LZParams& lz) {
    require(lz.p >= 1.0, "p >= 1");
    require(lz.q >= 1.0, "q >= 1");
}

/// log of (1+L)^a (1+log(1+L))^c with L = |log t|.
inline double log_weight(double abs_log, double a, double c) {
    double w = a * std::log1p(abs_log);
    if (c != 0.0) w += c * std::log1p(std::log1p(abs_log));
    return w;
}

}  // namespace detail

/// (sum_k (k^{1/p} (1+log k)^b x_k*)^q / k)^{1/q}, sup for q = inf.
inline double lz_norm_sequence(std::span<const double> norms, const LZParams& lz) {
    detail::check_lz_exponents(lz);
    std::vector<double> x(norms.begin(), norms.end());
    for (double v : x) require(v >= 0.0 && std::isfinite(v), "norms finite and nonnegative");
    std::sort(x.begin(), x.end(), std::greater<>());
    const double inv_p = std::isinf(lz.p) ? 0.0 : 1.0 / lz.p;
    const double a = lz.log_exponent(false);
    // log of the k-th weighted term, before the q-th power
    auto log_term = [&](std::size_t i) {
        const double k = static_cast<double>(i + 1);
        const double lk = std::log(k);
        return inv_p * lk + detail::log_weight(lk, a, lz.loglog_exponent) + std::log(x[i]);
    };
    double top = -infinity;
    for (std::size_t i = 0; i < x.size() && x[i] > 0.0; ++i) top = std::max(top, log_term(i));
    if (std::isinf(top)) return 0.0;
    if (std::isinf(lz.q)) return std::exp(top);
    CompensatedSum s;
    for (std::size_t i = 0; i < x.size() && x[i] > 0.0; ++i)
        s.add(std::exp(lz.q * (log_term(i) - top)) / static_cast<double>(i + 1));
    return std::exp(top) * std::pow(s.value(), 1.0 / lz.q);
}

inline double lz_norm_sequence(const std::vector<double>& norms, const LZParams& lz) {
    return lz_norm_sequence(std::span<const double>(norms), lz);
}

/// (int_0^mu (t^{1/p} w(t) f*(t))^q dt/t)^{1/q} under u = -log t. Returns +inf when the integral diverges.
inline double lz_norm_function(const RearrangementCurve& curve, const LZParams& lz, const QuadratureConfig& quad = {}) {
    detail::check_lz_exponents(lz);
    require(quad.u_max > 0.0 && quad.panels > 0, "quadrature u_max and panels positive");
    const double a0 = lz.log_exponent(true);
    const double ainf = lz.log_exponent(false);
    const double c = lz.loglog_exponent;
    if (std::isinf(lz.p) && !std::isinf(lz.q)) {
        const bool nontrivial = a0 + 1.0 / lz.q < 0.0 || (a0 + 1.0 / lz.q == 0.0 && c + 1.0 / lz.q < 0.0);
        require(nontrivial, "b + 1/q < 0 for p = inf", "the space is trivial otherwise");
    }
    const double inv_p = std::isinf(lz.p) ? 0.0 : 1.0 / lz.p;
    // log of the weight t^{1/p} w(t) at t = e^{-u}
    auto log_w = [&](double u) { return -u * inv_p + detail::log_weight(std::abs(u), u >= 0.0 ? a0 : ainf, c); };

    if (std::isinf(lz.q)) {
        double best = 0.0;
        auto probe = [&](double u, double v) {
            if (v > 0.0) best = std::max(best, std::exp(log_w(u)) * v);
        };
        auto probe_range = [&](double lo, double hi, double v, int n) {
            for (int i = 0; i <= n; ++i) probe(lo + (hi - lo) * i / n, v);
        };
        if (curve.is_step()) {
            const auto t = curve.breakpoints();
            const auto v = curve.values();
            for (std::size_t k = 0; k < v.size(); ++k) {
                const double hi = k == 0 ? infinity : -std::log(t[k - 1]);
                const double lo = -std::log(t[k]);
                if (std::isinf(hi)) {
                    if (inv_p == 0.0 && v[k] > 0.0 && (a0 > 0.0 || (a0 == 0.0 && c > 0.0))) return infinity;
                    probe_range(lo, std::max(lo, 0.0) + 4.0 * quad.u_max, v[k], 64 * quad.panels);
                    if (lo < 0.0) probe(0.0, v[k]);
                } else {
                    probe_range(lo, hi, v[k], 16);
                    if (lo < 0.0 && hi > 0.0) probe(0.0, v[k]);
                }
            }
            return best;
        }
        const double mu = curve.total_measure();
        const double lo = std::isinf(mu) ? -quad.u_max : -std::log(mu);
        const int n = panel_count(quad.u_max - lo, 64 * quad.panels);
        for (int i = 0; i <= n; ++i) {
            const double u = lo + (quad.u_max - lo) * i / n;
            probe(u, curve.value_at(std::exp(-u)));
        }
        return best;
    }

    const double q = lz.q;
    auto density = [&](double u) { return std::isinf(u) ? 0.0 : std::exp(q * log_w(u)); };
    CompensatedSum total;

    // tail of a constant-valued cell on [a, inf); +inf when it diverges
    auto constant_tail = [&](double a) -> double {
        if (inv_p > 0.0) return exp_sinh_tail(density, a);
        // p = inf: substitute s = log(1+u) so that log-power decay becomes exponential decay
        const double exponent = q * a0 + 1.0;
        if (exponent > 0.0 || (exponent == 0.0 && q * c >= -1.0)) return infinity;
        auto g = [&](double s) { return std::exp(s + q * (a0 * s + c * std::log1p(s))); };
        return exp_sinh_tail(g, std::log1p(a));
    };

    if (curve.is_step()) {
        const auto t = curve.breakpoints();
        const auto v = curve.values();
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0.0) break;
            const double vq = std::pow(v[k], q);
            const double lo = -std::log(t[k]);
            if (k == 0) {
                double head_end = std::max(lo, quad.u_max);
                double piece = 0.0;
                if (lo < 0.0 && head_end > 0.0) {
                    piece += gauss_panels(density, lo, 0.0, panel_count(-lo, quad.panels));
                    piece += gauss_panels(density, 0.0, head_end, panel_count(head_end, quad.panels));
                } else {
                    piece += gauss_panels(density, lo, head_end, panel_count(head_end - lo, quad.panels));
                }
                const double tail = constant_tail(head_end);
                if (std::isinf(tail)) return infinity;
                total.add(vq * (piece + tail));
                continue;
            }
            const double hi = -std::log(t[k - 1]);
            double piece = 0.0;
            if (lo < 0.0 && hi > 0.0) {
                piece = gauss_panels(density, lo, 0.0, panel_count(-lo, quad.panels)) +
                        gauss_panels(density, 0.0, hi, panel_count(hi, quad.panels));
            } else {
                piece = gauss_panels(density, lo, hi, panel_count(hi - lo, quad.panels));
            }
            total.add(vq * piece);
        }
        return std::pow(total.value(), 1.0 / q);
    }

    // analytic profile
    auto integrand = [&](double u) {
        const double t = std::exp(-u);
        if (t == 0.0 || std::isinf(t)) return 0.0;
        const double f = curve.value_at(t);
        if (!(f > 0.0)) return 0.0;
        return std::exp(q * (log_w(u) + std::log(f)));
    };
    const double mu = curve.total_measure();
    const double lo = std::isinf(mu) ? -quad.u_max : -std::log(mu);
    if (lo < 0.0) total.add(gauss_panels(integrand, lo, 0.0, panel_count(-lo, quad.panels)));
    const double start = std::max(lo, 0.0);
    total.add(gauss_panels(integrand, start, quad.u_max, panel_count(quad.u_max - start, quad.panels)));
    if (std::isinf(mu)) {
        const double back = capped_tail([&](double s) { return integrand(-s); }, quad.u_max);
        if (!std::isfinite(back)) return infinity;
        total.add(back);
    }
    const double tail = capped_tail(integrand, quad.u_max);
    if (!std::isfinite(tail)) return infinity;
    total.add(tail);
    return std::pow(total.value(), 1.0 / q);
}

/// (sum_n ||x_n||^p (|n|+1)^{w p})^{1/p}, sup for p = inf.
inline double weighted_lp_norm_sequence(std::span<const LatticePoint> indices, std::span<const double> norms, int d,
                                        double p, double w, IndexNorm kind = IndexNorm::euclid) {
    require(indices.size() == norms.size(), "one norm per index");
    require(p >= 1.0, "p >= 1");
    std::vector<double> logs;
    logs.reserve(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        require(norms[i] >= 0.0 && std::isfinite(norms[i]), "norms finite and nonnegative");
        if (norms[i] > 0.0) logs.push_back(std::log(norms[i]) + w * std::log1p(index_norm(indices[i], d, kind)));
    }
    if (logs.empty()) return 0.0;
    const double top = *std::max_element(logs.begin(), logs.end());
    if (std::isinf(p)) return std::exp(top);
    CompensatedSum s;
    for (double l : logs) s.add(std::exp(p * (l - top)));
    return std::exp(top) * std::pow(s.value(), 1.0 / p);
}

inline double weighted_lp_norm_sequence(const TrigPolynomial& f, double p, double w,
                                        IndexNorm kind = IndexNorm::euclid) {
    const auto idx = f.box().points();
    const auto norms = f.coefficient_norms();
    return weighted_lp_norm_sequence(idx, norms, f.dimension(), p, w, kind);
}

namespace detail {

/// Tensor Gauss-Legendre over [x0,x1] x [y0,y1] with panels of width about h.
template <class F>
double rectangle_integral(F&& g, double x0, double x1, double y0, double y1, double h) {
    const int nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / h)));
    const int ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / h)));
    auto row = [&](double y) { return gauss_panels([&](double x) { return g(x, y); }, x0, x1, nx); };
    return gauss_panels(row, y0, y1, ny);
}

}  // namespace detail

/// (int_{[-1/2,1/2]^d} ||f(t)||^p |t|^{w p} dt)^{1/p}; |t| Euclidean.
inline double weighted_lp_norm_torus(const TrigPolynomial& f, double p, double w, const QuadratureConfig& quad = {}) {
    require(p >= 1.0 && std::isfinite(p), "1 <= p < inf");
    const int d = f.dimension();
    const long N = f.degree();
    require(w * p > -static_cast<double>(d), "w p > -d", "weight not integrable at the origin");
    const long M = quad.grid_m > 0 ? quad.grid_m : std::max<long>(8 * N + 1, 64);
    require(M >= 2 * N + 1, "M >= 2N+1");

    std::vector<cplx> buf(f.space().m);
    auto fp = [&](double x, double y) {
        f.evaluate_into({x, y}, buf);
        return std::pow(lr_norm(std::span<const cplx>(buf), f.space().r), p);
    };

    if (w == 0.0) {
        // periodic trapezoid: exact for |f|^2 when M >= 2N+1
        CompensatedSum s;
        const double h = 1.0 / static_cast<double>(M);
        if (d == 1)
            for (long j = 0; j < M; ++j) s.add(fp(j * h, 0.0));
        else
            for (long i = 0; i < M; ++i)
                for (long j = 0; j < M; ++j) s.add(fp(i * h, j * h));
        const double cells = d == 1 ? static_cast<double>(M) : static_cast<double>(M) * M;
        return std::pow(s.value() / cells, 1.0 / p);
    }

    const double s_exp = w * p;
    const double h = 2.0 / static_cast<double>(M);
    if (d == 1) {
        auto g = [&](double t) { return (fp(t, 0.0) + fp(-t, 0.0)) * std::pow(t, s_exp); };
        const int per_unit = static_cast<int>(M / 2);
        return std::pow(graded_integral(g, 0.0, 0.5, s_exp, per_unit), 1.0 / p);
    }

    auto g = [&](double x, double y) {
        const double r = std::hypot(x, y);
        return fp(x, y) * std::pow(r, s_exp);
    };
    CompensatedSum total;
    double r = 0.5;
    constexpr int levels = 40;
    for (int j = 0; j < levels; ++j) {
        const double r2 = 0.5 * r;
        const double hh = std::min(h, r2);
        total.add(detail::rectangle_integral(g, -r, r, r2, r, hh));
        total.add(detail::rectangle_integral(g, -r, r, -r, -r2, hh));
        total.add(detail::rectangle_integral(g, -r, -r2, -r2, r2, hh));
        total.add(detail::rectangle_integral(g, r2, r, -r2, r2, hh));
        r = r2;
    }
    // innermost square: ||f(0)||^p int_{[-r,r]^2} |t|^s, the ring series of a pure power law
    auto pure = [&](double x, double y) { return std::pow(std::hypot(x, y), s_exp); };
    const double ring = detail::rectangle_integral(pure, -1, 1, 0.5, 1, 0.5) +
                        detail::rectangle_integral(pure, -1, 1, -1, -0.5, 0.5) +
                        detail::rectangle_integral(pure, -1, -0.5, -0.5, 0.5, 0.5) +
                        detail::rectangle_integral(pure, 0.5, 1, -0.5, 0.5, 0.5);
    const double unit_square = ring / (1.0 - std::pow(2.0, -(s_exp + 2.0)));
    total.add(fp(0.0, 0.0) * unit_square * std::pow(r, s_exp + 2.0));
    return std::pow(total.value(), 1.0 / p);
}

}  // namespace pittlab
