#pragma once

#include <array>
#include <span>
#include <vector>

#include "pittlab/common.hpp"
#include "pittlab/values.hpp"

namespace pittlab {

using TorusPoint = std::array<double, 2>;

/// f(t) = sum_{max|n_j| <= N} c_n e^{2 pi i n.t} with c_n in a value space l^r_m; d in {1, 2}.
class TrigPolynomial {
public:
    TrigPolynomial(int d, long N, ValueSpace space)
        : box_(d, N), space_(space), coeffs_(box_.size() * space.m, cplx{0.0, 0.0}) {}

    int dimension() const noexcept { return box_.dimension(); }
    long degree() const noexcept { return box_.radius(); }
    const ValueSpace& space() const noexcept { return space_; }
    const LatticeBox& box() const noexcept { return box_; }

    std::span<const cplx> coefficient_entries(std::size_t offset) const {
        return {coeffs_.data() + offset * space_.m, space_.m};
    }
    std::span<cplx> coefficient_entries(std::size_t offset) { return {coeffs_.data() + offset * space_.m, space_.m}; }

    ValuePoint coefficient(const LatticePoint& n) const {
        if (!box_.contains(n)) return ValuePoint(space_);
        auto e = coefficient_entries(box_.offset(n));
        return ValuePoint(space_, std::vector<cplx>(e.begin(), e.end()));
    }

    void set_coefficient(const LatticePoint& n, const ValuePoint& x) {
        require(box_.contains(n), "index within degree");
        require(x.space().m == space_.m, "dimension match", "coefficient");
        auto e = coefficient_entries(box_.offset(n));
        std::copy(x.entries().begin(), x.entries().end(), e.begin());
    }

    /// ||c_n||_X in box order.
    std::vector<double> coefficient_norms() const {
        std::vector<double> out(box_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = lr_norm(coefficient_entries(i), space_.r);
        return out;
    }

    void evaluate_into(const TorusPoint& t, std::span<cplx> out) const {
        const long N = degree();
        const std::size_t m = space_.m;
        std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
        std::vector<cplx> e1(static_cast<std::size_t>(2 * N + 1));
        for (long n = -N; n <= N; ++n)
            e1[static_cast<std::size_t>(n + N)] = std::polar(1.0, 2.0 * pi * static_cast<double>(n) * t[0]);
        if (dimension() == 1) {
            for (std::size_t i = 0; i < e1.size(); ++i) {
                const cplx* c = coeffs_.data() + i * m;
                for (std::size_t j = 0; j < m; ++j) out[j] += e1[i] * c[j];
            }
            return;
        }
        std::vector<cplx> e2(e1.size());
        for (long n = -N; n <= N; ++n)
            e2[static_cast<std::size_t>(n + N)] = std::polar(1.0, 2.0 * pi * static_cast<double>(n) * t[1]);
        const std::size_t s = e1.size();
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b) {
                const cplx w = e1[a] * e2[b];
                const cplx* c = coeffs_.data() + (a * s + b) * m;
                for (std::size_t j = 0; j < m; ++j) out[j] += w * c[j];
            }
    }

    ValuePoint evaluate(const TorusPoint& t) const {
        ValuePoint x(space_);
        evaluate_into(t, x.entries());
        return x;
    }

    double norm_at(const TorusPoint& t) const {
        std::vector<cplx> buf(space_.m);
        evaluate_into(t, buf);
        return lr_norm(std::span<const cplx>(buf), space_.r);
    }

private:
    LatticeBox box_;
    ValueSpace space_;
    std::vector<cplx> coeffs_;
};

/// Coefficient entries i.i.d. standard complex Gaussian, drawn from `stream` of `rng`.
inline TrigPolynomial random_polynomial(int d, long N, ValueSpace space, const CounterRng& rng, std::uint64_t stream) {
    TrigPolynomial f(d, N, space);
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < f.box().size(); ++i)
        for (auto& c : f.coefficient_entries(i)) {
            const double re = rng.normal(stream, k++);
            const double im = rng.normal(stream, k++);
            c = cplx{re, im} / std::sqrt(2.0);
        }
    return f;
}

/// Uniform grid j/M per axis; samples in lexicographic order (first axis major).
inline std::vector<ValuePoint> sample_on_grid(const TrigPolynomial& f, long M) {
    require(M >= 1, "M >= 1");
    const int d = f.dimension();
    const std::size_t count = d == 1 ? static_cast<std::size_t>(M) : static_cast<std::size_t>(M * M);
    std::vector<ValuePoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const long a = d == 1 ? static_cast<long>(i) : static_cast<long>(i) / M;
        const long b = d == 1 ? 0 : static_cast<long>(i) % M;
        out.push_back(f.evaluate({static_cast<double>(a) / M, static_cast<double>(b) / M}));
    }
    return out;
}

}  // namespace pittlab
