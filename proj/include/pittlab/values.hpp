#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <variant>
#include <vector>

#include "pittlab/common.hpp"

namespace pittlab {

/// The finite-dimensional space l^r_m over C, r in [1, inf].
struct ValueSpace {
    double r = 2.0;
    std::size_t m = 1;

    ValueSpace() = default;
    ValueSpace(double exponent, std::size_t dimension) : r(exponent), m(dimension) {
        require(r >= 1.0, "r >= 1", "got r = " + std::to_string(r));
        require(m >= 1, "m >= 1");
    }

    double dual_exponent() const { return conjugate_exponent(r); }
    ValueSpace dual() const { return {dual_exponent(), m}; }

    friend bool operator==(const ValueSpace&, const ValueSpace&) = default;
};

inline double lr_norm(std::span<const cplx> x, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (auto v : x) m = std::max(m, std::abs(v));
        return m;
    }
    // Scale by the largest modulus so that large r does not overflow.
    double scale = 0.0;
    for (auto v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    CompensatedSum s;
    for (auto v : x) s.add(std::pow(std::abs(v) / scale, r));
    return scale * std::pow(s.value(), 1.0 / r);
}

inline double lr_norm(std::span<const double> x, double r) {
    std::vector<cplx> z(x.begin(), x.end());
    return lr_norm(std::span<const cplx>(z), r);
}

class ValuePoint {
public:
    ValuePoint() = default;
    explicit ValuePoint(ValueSpace space) : space_(space), entries_(space.m, cplx{0.0, 0.0}) {}
    ValuePoint(ValueSpace space, std::vector<cplx> entries) : space_(space), entries_(std::move(entries)) {
        require(entries_.size() == space_.m, "entry count equals dimension");
    }

    static ValuePoint basis(ValueSpace space, std::size_t k, cplx scale = 1.0) {
        ValuePoint x(space);
        x.entries_.at(k) = scale;
        return x;
    }

    const ValueSpace& space() const noexcept { return space_; }
    std::span<const cplx> entries() const noexcept { return entries_; }
    std::span<cplx> entries() noexcept { return entries_; }
    cplx operator[](std::size_t i) const { return entries_[i]; }
    cplx& operator[](std::size_t i) { return entries_[i]; }

    ValuePoint& operator+=(const ValuePoint& y) {
        require(y.space_.m == space_.m, "dimension match");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += y.entries_[i];
        return *this;
    }
    ValuePoint& operator*=(cplx s) {
        for (auto& v : entries_) v *= s;
        return *this;
    }
    friend ValuePoint operator+(ValuePoint x, const ValuePoint& y) { return x += y; }
    friend ValuePoint operator*(cplx s, ValuePoint x) { return x *= s; }

private:
    ValueSpace space_;
    std::vector<cplx> entries_;
};

inline double norm(const ValuePoint& x) {
    for (auto v : x.entries())
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "finite entries");
    return lr_norm(x.entries(), x.space().r);
}

/// <x, y> = sum x_i conj(y_i), with y read in the dual space.
inline cplx dual_pair(const ValuePoint& x, const ValuePoint& y) {
    require(x.space().m == y.space().m, "dimension match", "dual_pair");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.space().m; ++i) s += x[i] * std::conj(y[i]);
    return s;
}

/// Norm-attaining dual element: y_i = sign(x_i) |x_i|^{r-1}, normalized in l^{r'}.
inline ValuePoint norming_functional(const ValuePoint& x) {
    const ValueSpace dual = x.space().dual();
    ValuePoint y(dual);
    const double r = x.space().r;
    if (std::isinf(r)) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < x.space().m; ++i)
            if (std::abs(x[i]) > std::abs(x[k])) k = i;
        if (std::abs(x[k]) > 0) y[k] = x[k] / std::abs(x[k]);
        return y;
    }
    for (std::size_t i = 0; i < x.space().m; ++i) {
        const double a = std::abs(x[i]);
        if (a > 0) y[i] = (x[i] / a) * std::pow(a, r - 1.0);
    }
    const double ny = norm(y);
    if (ny > 0) y *= 1.0 / ny;
    return y;
}

/// Linear embedding T: l^r_k -> l^r_m given by a coordinate injection.
class CoordinateEmbedding {
public:
    CoordinateEmbedding(ValueSpace domain, ValueSpace codomain, std::vector<std::size_t> target)
        : domain_(domain), codomain_(codomain), target_(std::move(target)) {
        require(target_.size() == domain_.m, "one target coordinate per domain coordinate");
        for (auto t : target_) require(t < codomain_.m, "target coordinate in range");
    }

    const ValueSpace& domain() const noexcept { return domain_; }
    const ValueSpace& codomain() const noexcept { return codomain_; }

    ValuePoint apply(const ValuePoint& a) const {
        require(a.space().m == domain_.m, "dimension match", "embedding input");
        ValuePoint out(codomain_);
        for (std::size_t i = 0; i < domain_.m; ++i) out[target_[i]] += a[i];
        return out;
    }

    /// Ratio sup/inf of ||Ta|| / ||a|| over basis vectors, their sum and alternating sums.
    double distortion() const {
        double lo = infinity, hi = 0.0;
        auto probe = [&](const ValuePoint& a) {
            const double na = norm(a);
            if (na == 0) return;
            const double ratio = norm(apply(a)) / na;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        };
        for (std::size_t i = 0; i < domain_.m; ++i) probe(ValuePoint::basis(domain_, i));
        ValuePoint ones(domain_), alt(domain_);
        for (std::size_t i = 0; i < domain_.m; ++i) {
            ones[i] = 1.0;
            alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
        }
        probe(ones);
        probe(alt);
        return hi / lo;
    }

private:
    ValueSpace domain_;
    ValueSpace codomain_;
    std::vector<std::size_t> target_;
};

/// Isometric copy of l^r_{(2N)^d} inside l^r_{(2N)^d} itself (identity, distortion 1).
inline CoordinateEmbedding embed_l1_copy(long N, int d, double r = 1.0) {
    require(N >= 1, "N >= 1");
    require(d == 1 || d == 2, "d in {1,2}");
    const std::size_t m = d == 1 ? static_cast<std::size_t>(2 * N) : static_cast<std::size_t>(4 * N * N);
    std::vector<std::size_t> id(m);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return {ValueSpace(r, m), ValueSpace(r, m), std::move(id)};
}

/// Counter-based generator: every draw is a pure function of (seed, stream, index).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const noexcept {
        return mix(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL)) ^ (index * 0xd1b54a32d192ed03ULL));
    }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform(std::uint64_t stream, std::uint64_t index) const noexcept {
        return static_cast<double>(bits(stream, index) >> 11) * 0x1.0p-53;
    }
    double normal(std::uint64_t stream, std::uint64_t index) const noexcept {
        const double u1 = 1.0 - uniform(stream, 2 * index);
        const double u2 = uniform(stream, 2 * index + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t seed_;
};

struct ExactEnumeration {};

enum class RandomSigns { steinhaus, rademacher };

struct MonteCarlo {
    std::uint64_t seed = 0;
    std::size_t trials = 10000;
    RandomSigns signs = RandomSigns::steinhaus;
};

using AveragingMethod = std::variant<ExactEnumeration, MonteCarlo>;

struct AverageEstimate {
    double value = 0.0;      // (E ||sum eps_n x_n||^moment)^{1/moment}
    double std_error = 0.0;  // standard error of the moment mean (0 for exact enumeration)
};

inline constexpr std::size_t max_enumerated_vectors = 20;

inline AverageEstimate rademacher_estimate(std::span<const ValuePoint> xs, double moment,
                                           const AveragingMethod& method) {
    require(moment >= 1.0, "moment >= 1");
    if (xs.empty()) return {};
    const ValueSpace space = xs.front().space();
    for (const auto& x : xs) require(x.space().m == space.m, "vectors share a space");
    const std::size_t n = xs.size();
    const std::size_t m = space.m;

    if (std::holds_alternative<ExactEnumeration>(method)) {
        require(n <= max_enumerated_vectors, "exact enumeration needs <= 20 vectors",
                "got " + std::to_string(n));
        // ||S|| = ||-S||, so fixing eps_0 = +1 halves the work. Gray-code walk over the rest.
        std::vector<cplx> s(m, 0.0);
        for (const auto& x : xs)
            for (std::size_t i = 0; i < m; ++i) s[i] += x[i];
        std::vector<int> sign(n, 1);
        const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
        CompensatedSum acc;
        acc.add(std::pow(lr_norm(s, space.r), moment));
        for (std::uint64_t g = 1; g < patterns; ++g) {
            const std::size_t flip = 1 + static_cast<std::size_t>(std::countr_zero(g));
            sign[flip] = -sign[flip];
            const double f = 2.0 * sign[flip];
            for (std::size_t i = 0; i < m; ++i) s[i] += f * xs[flip][i];
            acc.add(std::pow(lr_norm(s, space.r), moment));
        }
        return {std::pow(acc.value() / static_cast<double>(patterns), 1.0 / moment), 0.0};
    }

    const auto& mc = std::get<MonteCarlo>(method);
    require(mc.trials >= 100, "monte-carlo trials >= 100", "got " + std::to_string(mc.trials));
    CounterRng rng(mc.seed);
    std::vector<cplx> s(m);
    CompensatedSum acc, acc2;
    for (std::size_t t = 0; t < mc.trials; ++t) {
        std::fill(s.begin(), s.end(), cplx{0.0, 0.0});
        for (std::size_t k = 0; k < n; ++k) {
            const double u = rng.uniform(t, k);
            const cplx z = mc.signs == RandomSigns::steinhaus ? std::polar(1.0, 2.0 * pi * u)
                                                              : cplx{u < 0.5 ? -1.0 : 1.0, 0.0};
            for (std::size_t i = 0; i < m; ++i) s[i] += z * xs[k][i];
        }
        const double v = std::pow(lr_norm(s, space.r), moment);
        acc.add(v);
        acc2.add(v * v);
    }
    const double T = static_cast<double>(mc.trials);
    const double mean = acc.value() / T;
    const double var = std::max(0.0, acc2.value() / T - mean * mean);
    return {std::pow(mean, 1.0 / moment), std::sqrt(var / T)};
}

inline double rademacher_average(std::span<const ValuePoint> xs, double moment, const AveragingMethod& method) {
    return rademacher_estimate(xs, moment, method).value;
}

enum class TypeKind { type, cotype };

/// Largest type (or cotype) ratio over a family of finite vector tuples.
inline double type_cotype_constant(TypeKind kind, double exponent, std::span<const std::vector<ValuePoint>> family,
                                   double moment, const AveragingMethod& method) {
    require(!family.empty(), "family non-empty");
    if (kind == TypeKind::type)
        require(exponent >= 1.0 && exponent <= 2.0, "type exponent in [1,2]");
    else
        require(exponent >= 2.0, "cotype exponent >= 2");
    double best = 0.0;
    for (const auto& xs : family) {
        std::vector<double> norms;
        for (const auto& x : xs) norms.push_back(norm(x));
        const double power_mean = lr_norm(std::span<const double>(norms), exponent);
        const double avg = rademacher_average(xs, moment, method);
        double ratio = 0.0;
        if (kind == TypeKind::type)
            ratio = power_mean > 0 ? avg / power_mean : 0.0;
        else
            ratio = avg > 0 ? power_mean / avg : 0.0;
        best = std::max(best, ratio);
    }
    return best;
}

}  // namespace pittlab
