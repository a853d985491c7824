#pragma once

#include <bit>
#include <span>
#include <vector>

#include "pittlab/common.hpp"
#include "pittlab/quadrature.hpp"
#include "pittlab/trig_polynomial.hpp"
#include "pittlab/values.hpp"

namespace pittlab {

/// c_n = M^{-d} sum_j f(j/M) e^{-2 pi i n.j/M} for max|n_j| <= N. Samples in sample_on_grid order.
inline TrigPolynomial dft_coefficients(std::span<const ValuePoint> samples, int d, long M, long N) {
    require(d == 1 || d == 2, "d in {1,2}");
    require(M >= 2 * N + 1, "M >= 2N+1", "grid too coarse, coefficients would alias");
    const std::size_t count = d == 1 ? static_cast<std::size_t>(M) : static_cast<std::size_t>(M * M);
    require(samples.size() == count, "M^d samples");
    const ValueSpace space = samples.front().space();
    const std::size_t m = space.m;
    for (const auto& x : samples) require(x.space().m == m, "samples share a space");

    std::vector<cplx> twiddle(static_cast<std::size_t>(M));
    for (long j = 0; j < M; ++j) twiddle[static_cast<std::size_t>(j)] = std::polar(1.0, -2.0 * pi * j / M);
    auto root = [&](long n, long j) {
        long e = (n * j) % M;
        if (e < 0) e += M;
        return twiddle[static_cast<std::size_t>(e)];
    };

    TrigPolynomial f(d, N, space);
    const long side = 2 * N + 1;
    if (d == 1) {
        for (long n = -N; n <= N; ++n) {
            auto c = f.coefficient_entries(static_cast<std::size_t>(n + N));
            for (long j = 0; j < M; ++j) {
                const cplx w = root(n, j);
                const auto x = samples[static_cast<std::size_t>(j)].entries();
                for (std::size_t i = 0; i < m; ++i) c[i] += w * x[i];
            }
            for (auto& v : c) v /= static_cast<double>(M);
        }
        return f;
    }
    // separable: second axis first, then the first
    std::vector<cplx> partial(static_cast<std::size_t>(M * side) * m, cplx{0.0, 0.0});
    for (long a = 0; a < M; ++a)
        for (long n2 = -N; n2 <= N; ++n2) {
            cplx* out = partial.data() + static_cast<std::size_t>(a * side + n2 + N) * m;
            for (long b = 0; b < M; ++b) {
                const cplx w = root(n2, b);
                const auto x = samples[static_cast<std::size_t>(a * M + b)].entries();
                for (std::size_t i = 0; i < m; ++i) out[i] += w * x[i];
            }
        }
    const double scale = 1.0 / (static_cast<double>(M) * static_cast<double>(M));
    for (long n1 = -N; n1 <= N; ++n1)
        for (long n2 = -N; n2 <= N; ++n2) {
            auto c = f.coefficient_entries(f.box().offset({{n1, n2}}));
            for (long a = 0; a < M; ++a) {
                const cplx w = root(n1, a);
                const cplx* in = partial.data() + static_cast<std::size_t>(a * side + n2 + N) * m;
                for (std::size_t i = 0; i < m; ++i) c[i] += w * in[i];
            }
            for (auto& v : c) v *= scale;
        }
    return f;
}

inline ValuePoint trig_synthesis(const TrigPolynomial& f, const TorusPoint& t) { return f.evaluate(t); }

/// prod_j sin(pi x_j) / (pi x_j).
inline double sinc_product(std::span<const double> x) {
    double g = 1.0;
    for (double v : x) g *= v == 0.0 ? 1.0 : std::sin(pi * v) / (pi * v);
    return g;
}

/// f(t) = sum_{max|k_j| <= N} 1_{[-1/2,1/2]^d}(t/a + k) x_k.
class StepFunction {
public:
    StepFunction(int d, double a, long N, ValueSpace space) : a_(a), cells_(d, N, space) {
        require(a > 0.0, "scale a > 0");
    }

    int dimension() const noexcept { return cells_.dimension(); }
    double scale() const noexcept { return a_; }
    long radius() const noexcept { return cells_.degree(); }
    const ValueSpace& space() const noexcept { return cells_.space(); }
    const LatticeBox& box() const noexcept { return cells_.box(); }

    void set_cell(const LatticePoint& k, const ValuePoint& x) { cells_.set_coefficient(k, x); }
    ValuePoint cell(const LatticePoint& k) const { return cells_.coefficient(k); }
    std::vector<double> cell_norms() const { return cells_.coefficient_norms(); }

    /// The cell sum read as a trigonometric polynomial: f^(xi) = a^d g(a xi) P(a xi).
    const TrigPolynomial& cell_polynomial() const noexcept { return cells_; }

    ValuePoint value_at(const TorusPoint& t) const {
        LatticePoint k;
        for (int j = 0; j < dimension(); ++j) k.k[static_cast<std::size_t>(j)] = std::lround(-t[static_cast<std::size_t>(j)] / a_);
        return cells_.coefficient(k);
    }

    /// (int ||f||^p)^{1/p} = (a^d sum ||x_k||^p)^{1/p}.
    double lp_norm(double p) const {
        const auto n = cell_norms();
        if (std::isinf(p)) return n.empty() ? 0.0 : *std::max_element(n.begin(), n.end());
        CompensatedSum s;
        for (double v : n) s.add(std::pow(v, p));
        return std::pow(std::pow(a_, dimension()) * s.value(), 1.0 / p);
    }

private:
    double a_;
    TrigPolynomial cells_;
};

/// Closed-form Fourier transform with the e^{-2 pi i t.xi} convention.
inline ValuePoint step_ft(const StepFunction& f, const TorusPoint& xi) {
    const int d = f.dimension();
    const double a = f.scale();
    const TorusPoint axi{a * xi[0], d == 2 ? a * xi[1] : 0.0};
    const double g = sinc_product(std::span<const double>(axi.data(), static_cast<std::size_t>(d)));
    ValuePoint x = f.cell_polynomial().evaluate(axi);
    x *= std::pow(a, d) * g;
    return x;
}

struct WindowedNorm {
    double value = 0.0;       // norm of the windowed integral
    double tail_bound = 0.0;  // certified bound on what the region |xi| > window can add to the norm
};

/// (int_{-M}^{M} ||f^(xi)||^q |xi|^{-gamma q} d xi)^{1/q} for d = 1, with the analytic tail bound
/// from |g(xi)| <= 1/(pi |xi|).
inline WindowedNorm weighted_lq_norm_ft_line(const StepFunction& f, double q, double gamma, double window,
                                             const QuadratureConfig& quad = {}) {
    require(f.dimension() == 1, "d = 1 for line norms");
    require(q > 1.0 && std::isfinite(q), "q > 1", "tail not summable");
    require(gamma >= 0.0 && gamma < 1.0 / q, "0 <= gamma < 1/q");
    require(window > 0.0, "window > 0");
    const double tail_exp = 1.0 - q - gamma * q;
    require(tail_exp < 0.0, "tail exponent negative");

    const double s = -gamma * q;
    auto g = [&](double x) {
        const double plus = norm(step_ft(f, {x, 0.0}));
        const double minus = norm(step_ft(f, {-x, 0.0}));
        return (std::pow(plus, q) + std::pow(minus, q)) * std::pow(x, s);
    };
    // oscillation scale in xi is 1/(a (2N+1))
    const double freq = f.scale() * static_cast<double>(2 * f.radius() + 1);
    const int per_unit = std::max(8, static_cast<int>(std::ceil(freq * quad.panels / 2.0)));
    const double integral = graded_integral(g, 0.0, window, s, per_unit);

    CompensatedSum mass;
    for (double v : f.cell_norms()) mass.add(v);
    const double S = mass.value();
    const double tail = 2.0 * std::pow(S / pi, q) * std::pow(window, tail_exp) / (q - 1.0 + gamma * q);
    const double value = std::pow(integral, 1.0 / q);
    return {value, std::pow(integral + tail, 1.0 / q) - value};
}

/// (int_R ||f(t)||^p |t|^{beta p} dt)^{1/p} for d = 1, summed cell by cell in closed form.
inline double weighted_lp_norm_line(const StepFunction& f, double p, double beta) {
    require(f.dimension() == 1, "d = 1 for line norms");
    require(p >= 1.0 && std::isfinite(p), "1 <= p < inf");
    const double s = beta * p;
    require(s > -1.0, "beta p > -1", "weight not integrable at the origin");
    auto primitive = [&](double t) { return std::copysign(std::pow(std::abs(t), s + 1.0) / (s + 1.0), t); };
    const double a = f.scale();
    const auto norms = f.cell_norms();
    CompensatedSum acc;
    for (std::size_t i = 0; i < norms.size(); ++i) {
        if (norms[i] == 0.0) continue;
        const double k = static_cast<double>(f.box().at(i).k[0]);
        const double lo = a * (-k - 0.5), hi = a * (-k + 0.5);
        acc.add(std::pow(norms[i], p) * (primitive(hi) - primitive(lo)));
    }
    return std::pow(acc.value(), 1.0 / p);
}

struct TransferenceBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Range of (sum_m |g(xi+m)|^q)^{1/q} over the unit cell, raised to the d-th power: for a = 1 step
/// functions, ||f^||_{L^q(R^d)} / ||P||_{L^q(T^d)} lies in [lower, upper].
inline TransferenceBracket transference_constants(int d, double q, int samples = 1001) {
    require(d == 1 || d == 2, "d in {1,2}");
    require(q > 1.0 && std::isfinite(q), "q > 1");
    constexpr long terms = 2000;
    auto periodized = [&](double xi) {
        if (xi == 0.0) return 1.0;
        CompensatedSum s;
        for (long m = -terms; m <= terms; ++m) s.add(std::pow(std::abs(xi + static_cast<double>(m)), -q));
        // both tails, Euler-Maclaurin to first order
        const double K = static_cast<double>(terms) + 0.5;
        s.add(std::pow(K + xi, 1.0 - q) / (q - 1.0) + std::pow(K - xi, 1.0 - q) / (q - 1.0));
        return std::pow(std::abs(std::sin(pi * xi)) / pi, q) * s.value();
    };
    double lo = infinity, hi = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double xi = -0.5 + static_cast<double>(i) / (samples - 1);
        const double v = periodized(xi);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {std::pow(lo, static_cast<double>(d) / q), std::pow(hi, static_cast<double>(d) / q)};
}

enum class OnsSystem { trigonometric, walsh };

/// Walsh function in Paley order on [0, 1): product of Rademacher functions r_j for the set bits j of n.
inline double walsh_function(unsigned long n, double x) {
    double v = 1.0;
    for (int j = 0; n != 0; ++j, n >>= 1)
        if (n & 1UL)
            if (static_cast<unsigned long long>(std::floor(std::ldexp(x, j + 1))) & 1ULL) v = -v;
    return v;
}

/// phi_n(x): e^{2 pi i n x} (n in Z) or the Walsh function w_n (n >= 0).
inline cplx ons_function(OnsSystem system, long n, double x) {
    if (system == OnsSystem::trigonometric) return std::polar(1.0, 2.0 * pi * static_cast<double>(n) * x);
    require(n >= 0, "walsh index >= 0");
    return walsh_function(static_cast<unsigned long>(n), x);
}

/// In-place unnormalized Walsh-Hadamard transform (natural order) of a length-2^J array.
inline void fwht(std::span<cplx> a) {
    const std::size_t n = a.size();
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j) {
                const cplx x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
}

/// c_n = int f conj(phi_n). Trigonometric: n = -N..N on a uniform grid of size >= 2N+1.
/// Walsh: n = 0..N-1 on a dyadic grid of size 2^J >= N.
inline std::vector<ValuePoint> ons_coefficients(std::span<const ValuePoint> samples, OnsSystem system, long N) {
    require(!samples.empty(), "samples non-empty");
    const std::size_t M = samples.size();
    if (system == OnsSystem::trigonometric) {
        const auto f = dft_coefficients(samples, 1, static_cast<long>(M), N);
        std::vector<ValuePoint> out;
        for (long n = -N; n <= N; ++n) out.push_back(f.coefficient({{n, 0}}));
        return out;
    }
    require(std::has_single_bit(M), "walsh grid size a power of two");
    require(static_cast<long>(M) >= N, "walsh grid size >= N");
    const ValueSpace space = samples.front().space();
    const int J = std::countr_zero(M);
    auto bitrev = [J](std::size_t i) {
        std::size_t r = 0;
        for (int b = 0; b < J; ++b) r |= ((i >> b) & 1U) << (J - 1 - b);
        return r;
    };
    std::vector<ValuePoint> out(static_cast<std::size_t>(N), ValuePoint(space));
    std::vector<cplx> column(M);
    for (std::size_t c = 0; c < space.m; ++c) {
        for (std::size_t i = 0; i < M; ++i) column[bitrev(i)] = samples[i][c];
        fwht(column);
        for (long n = 0; n < N; ++n) out[static_cast<std::size_t>(n)][c] = column[static_cast<std::size_t>(n)] / static_cast<double>(M);
    }
    return out;
}

/// Samples of sum_n c_n phi_n on the dyadic grid i/M (Walsh, n = 0..) or uniform grid (trigonometric, n = -N..N).
inline std::vector<ValuePoint> ons_synthesis(std::span<const ValuePoint> coeffs, OnsSystem system, std::size_t M) {
    require(!coeffs.empty(), "coefficients non-empty");
    const ValueSpace space = coeffs.front().space();
    const long N = system == OnsSystem::trigonometric ? static_cast<long>(coeffs.size() / 2) : 0;
    std::vector<ValuePoint> out(M, ValuePoint(space));
    for (std::size_t i = 0; i < M; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(M);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            const long n = system == OnsSystem::trigonometric ? static_cast<long>(k) - N : static_cast<long>(k);
            const cplx phi = ons_function(system, n, x);
            for (std::size_t c = 0; c < space.m; ++c) out[i][c] += phi * coeffs[k][c];
        }
    }
    return out;
}

}  // namespace pittlab
