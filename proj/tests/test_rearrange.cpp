#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pittlab/rearrange.hpp"

using namespace pittlab;
using Catch::Approx;

namespace {

std::vector<double> random_norms(std::mt19937_64& gen, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = e(gen);
    return v;
}

}  // namespace

TEST_CASE("rearrange_sequence sorts into a non-increasing step curve", "[rearrange]") {
    const std::vector<double> a{3, 1, 2};
    const auto c = rearrange_sequence(a);
    CHECK(std::vector<double>(c.values().begin(), c.values().end()) == std::vector<double>{3, 2, 1});
    CHECK(std::vector<double>(c.breakpoints().begin(), c.breakpoints().end()) == std::vector<double>{1, 2, 3});

    const std::vector<double> flat(5, 0.7);
    const auto f = rearrange_sequence(flat);
    for (double v : f.values()) CHECK(v == 0.7);

    std::mt19937_64 gen(1);
    const auto x = random_norms(gen, 200);
    const auto r = rearrange_sequence(x);
    auto sorted = x;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> back(r.values().begin(), r.values().end());
    std::sort(back.begin(), back.end());
    CHECK(back == sorted);
    for (double p : {1.0, 2.0, infinity}) CHECK(lr_norm(r.values(), p) == Approx(lr_norm(x, p)).epsilon(1e-14));
}

TEST_CASE("rearrange_sampled", "[rearrange]") {
    const std::vector<SampledCell> one{{1.0, 0.4}};
    const auto c1 = rearrange_sampled(one);
    CHECK(c1.value_at(0.3) == 0.4);
    CHECK(c1.value_at(0.99) == 0.4);

    const std::vector<SampledCell> two{{0.5, 1.0}, {0.5, 2.0}};
    const auto c2 = rearrange_sampled(two);
    CHECK(c2.value_at(0.25) == 2.0);
    CHECK(c2.value_at(0.75) == 1.0);
    CHECK(c2.primitive(1.0) == Approx(1.5));

    const std::size_t M = 1 << 14;
    std::vector<SampledCell> sine;
    for (std::size_t j = 0; j < M; ++j)
        sine.push_back({1.0 / M, std::abs(std::sin(2.0 * pi * static_cast<double>(j) / M))});
    CHECK(rearrange_sampled(sine).primitive(1.0) == Approx(2.0 / pi).margin(1e-3));
}

TEST_CASE("equimeasurability of sampled rearrangements", "[rearrange][property]") {
    std::mt19937_64 gen(2);
    const auto x = random_norms(gen, 500);
    std::vector<SampledCell> cells;
    std::uniform_real_distribution<double> w(0.1, 2.0);
    for (double v : x) cells.push_back({w(gen), v});
    const auto curve = rearrange_sampled(cells);
    for (double lambda : {0.0, 0.05, 0.3, 1.0, 2.5, 10.0}) {
        double direct = 0.0;
        for (const auto& c : cells)
            if (c.magnitude > lambda) direct += c.measure;
        REQUIRE(curve.measure_above(lambda) == Approx(direct).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("rearrangement inequality for nonnegative sequences", "[rearrange][property]") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = random_norms(gen, 40), g = random_norms(gen, 40);
        double plain = 0.0, rearranged = 0.0;
        const auto fs = rearrange_sequence(f), gs = rearrange_sequence(g);
        for (std::size_t i = 0; i < f.size(); ++i) {
            plain += f[i] * g[i];
            rearranged += fs.values()[i] * gs.values()[i];
        }
        REQUIRE(plain <= rearranged * (1 + 1e-14));
    }
}

TEST_CASE("lz_norm_sequence: fixed values and oracles", "[rearrange]") {
    const std::vector<double> single{0.8};
    CHECK(lz_norm_sequence(single, {1.7, 3.0, 2.0}) == Approx(0.8).epsilon(1e-15));

    std::mt19937_64 gen(4);
    const auto x = random_norms(gen, 300);
    for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(lz_norm_sequence(x, {p, p, 0.0}) == Approx(lr_norm(x, p)).epsilon(1e-13));
    CHECK(lz_norm_sequence(x, {infinity, infinity, 0.0}) == Approx(*std::max_element(x.begin(), x.end())));

    std::vector<double> harmonic(10000);
    for (std::size_t k = 0; k < harmonic.size(); ++k) harmonic[k] = 1.0 / static_cast<double>(k + 1);
    long double s = 0;
    for (std::size_t k = harmonic.size(); k-- > 0;) s += 1.0L / ((k + 1.0L) * (k + 1.0L));
    CHECK(lz_norm_sequence(harmonic, {2.0, 2.0, 0.0}) == Approx(static_cast<double>(std::sqrt(s))).epsilon(1e-12));

    // general weights against a direct loop
    const double p = 1.5, q = 3.0, b = 0.5;
    auto sorted = x;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    long double acc = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const long double k = i + 1.0L;
        acc += std::pow(std::pow(k, 1.0L / p) * std::pow(1.0L + std::log(k), static_cast<long double>(b)) * sorted[i], q) / k;
    }
    CHECK(lz_norm_sequence(x, {p, q, b}) == Approx(static_cast<double>(std::pow(acc, 1.0L / q))).epsilon(1e-12));
}

TEST_CASE("lz_norm_function: analytic values", "[rearrange]") {
    const auto one = RearrangementCurve::steps({1.0}, {1.0});
    CHECK(lz_norm_function(one, {1.0, 1.0, 0.0}) == Approx(1.0).epsilon(1e-12));
    for (double a : {0.1, 0.5, 3.0})
        CHECK(lz_norm_function(RearrangementCurve::steps({a}, {1.0}), {1.0, 1.0, 0.0}) == Approx(a).epsilon(1e-12));
    const auto cube_root = RearrangementCurve::profile([](double t) { return std::pow(t, -1.0 / 3.0); }, 1.0);
    CHECK(lz_norm_function(cube_root, {2.0, 2.0, 0.0}) == Approx(std::sqrt(3.0)).margin(1e-6));
    // (int_0^1 (1 + |log t|)^2 dt)^{1/2} = sqrt(5)
    CHECK(lz_norm_function(one, {2.0, 2.0, 1.0}) == Approx(std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("lz_norm_function is monotone under domination", "[rearrange][property]") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_norms(gen, 30);
        auto y = x;
        std::uniform_real_distribution<double> bump(0.0, 0.5);
        for (auto& v : y) v += bump(gen);
        const LZParams lz{1.5, 2.5, -0.3};
        REQUIRE(lz_norm_function(rearrange_sequence(x), lz) <= lz_norm_function(rearrange_sequence(y), lz) * (1 + 1e-12));
    }
}

TEST_CASE("lz_norm_function converges under quadrature doubling", "[rearrange][property]") {
    const std::vector<RearrangementCurve> curves{
        RearrangementCurve::profile([](double t) { return std::pow(t, -0.25); }, 1.0),
        RearrangementCurve::profile([](double t) { return std::exp(-t); }, infinity),
        RearrangementCurve::profile([](double t) { return 1.0 / (1.0 + t * t); }, 5.0),
    };
    for (const auto& c : curves)
        for (const LZParams& lz : {LZParams{2.0, 1.0, 0.5}, LZParams{1.5, 3.0, -1.0}, LZParams{3.0, 2.0, 0.0, 1.0}}) {
            QuadratureConfig base;
            const double a = lz_norm_function(c, lz, base);
            const double b = lz_norm_function(c, lz, base.doubled());
            REQUIRE(std::abs(a / b - 1.0) < 1e-6);
        }
}

TEST_CASE("lz_norm_function rejects trivial spaces", "[rearrange][domain]") {
    const auto one = RearrangementCurve::steps({1.0}, {1.0});
    CHECK_THROWS_AS(lz_norm_function(one, {infinity, 2.0, 0.0}), DomainError);
    CHECK(lz_norm_function(one, {infinity, 2.0, -1.0}) > 0.0);
    CHECK_THROWS_AS(lz_norm_function(one, {0.5, 2.0, 0.0}), DomainError);
}

TEST_CASE("weighted_lp_norm_sequence", "[rearrange]") {
    const std::vector<LatticePoint> origin{{{0, 0}}};
    const std::vector<double> v{2.5};
    CHECK(weighted_lp_norm_sequence(origin, v, 1, 2.0, 3.0) == 2.5);
    const std::vector<LatticePoint> one{{{1, 0}}};
    CHECK(weighted_lp_norm_sequence(one, v, 1, 2.0, 1.0) == Approx(5.0).epsilon(1e-15));

    std::mt19937_64 gen(6);
    const auto x = random_norms(gen, 64);
    std::vector<LatticePoint> idx;
    for (long n = -31; n <= 32; ++n) idx.push_back({{n, 0}});
    const double p = 1.7, w = -0.4;
    long double acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += std::pow(x[i] * std::pow(std::abs(idx[i].k[0]) + 1.0L, static_cast<long double>(w)), p);
    CHECK(weighted_lp_norm_sequence(idx, x, 1, p, w) == Approx(static_cast<double>(std::pow(acc, 1.0L / p))).epsilon(1e-12));

    std::vector<LatticePoint> idx2;
    for (long a = -4; a <= 3; ++a)
        for (long b = -4; b <= 3; ++b) idx2.push_back({{a, b}});
    long double acc2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc2 += std::pow(x[i] * std::pow(std::hypot(static_cast<double>(idx2[i].k[0]), static_cast<double>(idx2[i].k[1])) + 1.0L,
                                         static_cast<long double>(w)), p);
    CHECK(weighted_lp_norm_sequence(idx2, x, 2, p, w) == Approx(static_cast<double>(std::pow(acc2, 1.0L / p))).epsilon(1e-12));
}

TEST_CASE("weighted_lp_norm_torus: analytic values", "[rearrange]") {
    TrigPolynomial c(1, 0, ValueSpace(2.0, 2));
    c.set_coefficient({{0, 0}}, ValuePoint(ValueSpace(2.0, 2), {3.0, 4.0}));
    CHECK(weighted_lp_norm_torus(c, 3.0, 0.0) == Approx(5.0).epsilon(1e-14));

    TrigPolynomial one(1, 0, ValueSpace(2.0, 1));
    one.set_coefficient({{0, 0}}, ValuePoint::basis(ValueSpace(2.0, 1), 0));
    CHECK(weighted_lp_norm_torus(one, 1.0, 1.0) == Approx(0.25).margin(1e-8));
    CHECK(weighted_lp_norm_torus(one, 2.0, -0.25) == Approx(std::sqrt(2.0 * std::pow(0.5, 0.5) / 0.5)).epsilon(1e-8));

    TrigPolynomial one2(2, 0, ValueSpace(2.0, 1));
    one2.set_coefficient({{0, 0}}, ValuePoint::basis(ValueSpace(2.0, 1), 0));
    // int over the unit square of |t| = (sqrt 2 + asinh 1) / 6
    CHECK(weighted_lp_norm_torus(one2, 1.0, 1.0) == Approx((std::sqrt(2.0) + std::asinh(1.0)) / 6.0).epsilon(1e-8));
}

TEST_CASE("weighted_lp_norm_torus: unweighted p = 2 equals the coefficient norm", "[rearrange]") {
    const CounterRng rng(11);
    for (int d : {1, 2}) {
        const auto f = random_polynomial(d, d == 1 ? 20 : 5, ValueSpace(2.0, 3), rng, static_cast<std::uint64_t>(d));
        CHECK(weighted_lp_norm_torus(f, 2.0, 0.0) ==
              Approx(lr_norm(std::span<const double>(f.coefficient_norms()), 2.0)).epsilon(1e-10));
    }
}

TEST_CASE("weighted_lp_norm_torus rejects non-integrable weights", "[rearrange][domain]") {
    TrigPolynomial one(1, 0, ValueSpace(2.0, 1));
    CHECK_THROWS_AS(weighted_lp_norm_torus(one, 2.0, -0.5), DomainError);
    CHECK_THROWS_AS(weighted_lp_norm_torus(one, infinity, 0.0), DomainError);
}
