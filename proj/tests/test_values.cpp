#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pittlab/values.hpp"

using namespace pittlab;
using Catch::Approx;

namespace {

ValuePoint random_point(std::mt19937_64& gen, ValueSpace space) {
    std::normal_distribution<double> n;
    ValuePoint x(space);
    for (std::size_t i = 0; i < space.m; ++i) x[i] = {n(gen), n(gen)};
    return x;
}

double brute_norm(const ValuePoint& x) {
    const double r = x.space().r;
    if (std::isinf(r)) {
        double m = 0;
        for (auto v : x.entries()) m = std::max(m, std::abs(v));
        return m;
    }
    long double s = 0;
    for (auto v : x.entries()) s += std::pow(static_cast<long double>(std::abs(v)), r);
    return static_cast<double>(std::pow(s, 1.0L / r));
}

}  // namespace

TEST_CASE("norm: fixed values", "[values]") {
    CHECK(norm(ValuePoint(ValueSpace(3.0, 5))) == 0.0);
    ValuePoint x(ValueSpace(2.0, 2));
    x[0] = 3.0;
    x[1] = 4.0;
    CHECK(norm(x) == Approx(5.0).epsilon(1e-15));
    for (double r : {1.0, 1.5, 2.0, 3.0, infinity})
        for (std::size_t k = 0; k < 4; ++k) CHECK(norm(ValuePoint::basis(ValueSpace(r, 4), k)) == 1.0);
}

TEST_CASE("norm: agrees with direct summation and survives large r", "[values]") {
    std::mt19937_64 gen(1);
    for (double r : {1.0, 1.5, 2.0, 3.0, 7.5, infinity}) {
        const auto x = random_point(gen, ValueSpace(r, 9));
        CHECK(norm(x) == Approx(brute_norm(x)).epsilon(1e-13));
    }
    ValuePoint big(ValueSpace(400.0, 3));
    big[0] = 1e200;
    big[1] = 1e200;
    CHECK(norm(big) == Approx(1e200 * std::pow(2.0, 1.0 / 400.0)).epsilon(1e-13));
}

TEST_CASE("norm axioms on random inputs", "[values][property]") {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> n;
    for (double r : {1.0, 1.5, 2.0, 3.0, infinity}) {
        const ValueSpace space(r, 6);
        for (int i = 0; i < 1000; ++i) {
            const auto x = random_point(gen, space);
            const auto y = random_point(gen, space);
            const cplx s{n(gen), n(gen)};
            REQUIRE(norm(x) >= 0.0);
            REQUIRE(norm(s * x) == Approx(std::abs(s) * norm(x)).epsilon(1e-12));
            REQUIRE(norm(x + y) <= norm(x) + norm(y) + 1e-12);
        }
    }
}

TEST_CASE("space exponent must be at least one", "[values][domain]") {
    CHECK_THROWS_AS(ValueSpace(0.5, 2), DomainError);
    CHECK_THROWS_AS(ValueSpace(2.0, 0), DomainError);
}

TEST_CASE("dual pairing: Hoelder bound and norming functional", "[values][property]") {
    const auto e = ValuePoint::basis(ValueSpace(2.0, 3), 0);
    CHECK(dual_pair(e, e) == cplx{1.0, 0.0});
    CHECK(dual_pair(ValuePoint::basis(ValueSpace(2.0, 3), 0), ValuePoint::basis(ValueSpace(2.0, 3), 2)) == cplx{});

    std::mt19937_64 gen(3);
    for (double r : {1.0, 1.5, 2.0, 3.0, infinity}) {
        const ValueSpace space(r, 5);
        for (int i = 0; i < 1000; ++i) {
            const auto x = random_point(gen, space);
            const auto y = random_point(gen, space.dual());
            REQUIRE(std::abs(dual_pair(x, y)) <= norm(x) * norm(y) * (1 + 1e-12));
        }
        const auto x = random_point(gen, space);
        const auto j = norming_functional(x);
        CHECK(norm(j) == Approx(1.0).epsilon(1e-12));
        CHECK(dual_pair(x, j).real() == Approx(norm(x)).epsilon(1e-12));
        CHECK(std::abs(dual_pair(x, j).imag()) < 1e-12 * norm(x));
    }
}

TEST_CASE("coordinate embeddings", "[values]") {
    const auto id = embed_l1_copy(1, 1);
    CHECK(id.domain() == ValueSpace(1.0, 2));
    CHECK(id.codomain() == ValueSpace(1.0, 2));
    CHECK(id.distortion() == 1.0);
    const auto big = embed_l1_copy(5, 2, 1.5);
    CHECK(big.domain().m == 100);
    for (std::size_t k = 0; k < big.domain().m; ++k) REQUIRE(norm(big.apply(ValuePoint::basis(big.domain(), k))) == 1.0);
    CHECK(big.distortion() == Approx(1.0));
}

TEST_CASE("counter rng is a pure function of its coordinates", "[values]") {
    const CounterRng a(9), b(9), c(10);
    CHECK(a.bits(3, 4) == b.bits(3, 4));
    CHECK(a.bits(3, 4) != c.bits(3, 4));
    CHECK(a.bits(3, 4) != a.bits(4, 3));
    double mean = 0.0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = a.uniform(0, i);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        mean += u;
    }
    CHECK(mean / 100000 == Approx(0.5).margin(0.005));
}

TEST_CASE("rademacher average: fixed values", "[values]") {
    const ValueSpace l1(1.0, 6), l2(2.0, 6);
    std::vector<ValuePoint> single{ValuePoint::basis(l2, 2, 3.0)};
    CHECK(rademacher_average(single, 2.0, ExactEnumeration{}) == Approx(3.0));
    std::vector<ValuePoint> e1, e2;
    for (std::size_t k = 0; k < 6; ++k) {
        e1.push_back(ValuePoint::basis(l1, k));
        e2.push_back(ValuePoint::basis(l2, k));
    }
    CHECK(rademacher_average(e1, 1.0, ExactEnumeration{}) == Approx(6.0).epsilon(1e-14));
    CHECK(rademacher_average(e2, 2.0, ExactEnumeration{}) == Approx(std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("rademacher average: exact enumeration matches a direct sign loop", "[values]") {
    std::mt19937_64 gen(4);
    const ValueSpace space(1.5, 3);
    std::vector<ValuePoint> xs;
    for (int k = 0; k < 7; ++k) xs.push_back(random_point(gen, space));
    for (double moment : {1.0, 2.0, 3.0}) {
        long double acc = 0;
        for (unsigned mask = 0; mask < (1u << xs.size()); ++mask) {
            ValuePoint s(space);
            for (std::size_t k = 0; k < xs.size(); ++k) s += cplx((mask >> k) & 1u ? -1.0 : 1.0) * xs[k];
            acc += std::pow(static_cast<long double>(brute_norm(s)), moment);
        }
        const double oracle = static_cast<double>(std::pow(acc / (1u << xs.size()), 1.0L / moment));
        CHECK(rademacher_average(xs, moment, ExactEnumeration{}) == Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("rademacher average: invariant under permutations and sign flips", "[values][property]") {
    std::mt19937_64 gen(5);
    const ValueSpace space(3.0, 4);
    std::vector<ValuePoint> xs;
    for (int k = 0; k < 9; ++k) xs.push_back(random_point(gen, space));
    const double base = rademacher_average(xs, 2.0, ExactEnumeration{});
    for (int trial = 0; trial < 10; ++trial) {
        auto ys = xs;
        std::shuffle(ys.begin(), ys.end(), gen);
        for (auto& y : ys)
            if (gen() & 1u) y *= -1.0;
        REQUIRE(rademacher_average(ys, 2.0, ExactEnumeration{}) == Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("rademacher average: monte carlo within three standard errors", "[values][property]") {
    std::mt19937_64 gen(6);
    for (std::size_t n : {3u, 8u, 12u}) {
        const ValueSpace space(1.5, 5);
        std::vector<ValuePoint> xs;
        for (std::size_t k = 0; k < n; ++k) xs.push_back(random_point(gen, space));
        const double moment = 2.0;
        const double exact = rademacher_average(xs, moment, ExactEnumeration{});
        const auto mc = rademacher_estimate(xs, moment, MonteCarlo{17, 10000, RandomSigns::rademacher});
        // compare moment means, where the standard error lives
        CHECK(std::abs(std::pow(mc.value, moment) - std::pow(exact, moment)) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("rademacher average: rejects oversized enumeration and too few trials", "[values][domain]") {
    const ValueSpace space(2.0, 1);
    std::vector<ValuePoint> xs(21, ValuePoint::basis(space, 0));
    CHECK_THROWS_AS(rademacher_average(xs, 2.0, ExactEnumeration{}), DomainError);
    CHECK_THROWS_AS(rademacher_average(xs, 2.0, MonteCarlo{1, 10}), DomainError);
}

TEST_CASE("type and cotype constants", "[values]") {
    const ValueSpace l1(1.0, 5);
    std::vector<std::vector<ValuePoint>> singles{{ValuePoint::basis(l1, 0, 2.0)}, {ValuePoint::basis(l1, 3)}};
    CHECK(type_cotype_constant(TypeKind::type, 2.0, singles, 2.0, ExactEnumeration{}) == Approx(1.0));
    CHECK(type_cotype_constant(TypeKind::cotype, 2.0, singles, 2.0, ExactEnumeration{}) == Approx(1.0));

    std::vector<ValuePoint> basis;
    for (std::size_t k = 0; k < 5; ++k) basis.push_back(ValuePoint::basis(l1, k));
    const std::vector<std::vector<ValuePoint>> family{basis};
    CHECK(type_cotype_constant(TypeKind::type, 2.0, family, 2.0, ExactEnumeration{}) >= std::sqrt(5.0) - 1e-12);
    CHECK_THROWS_AS(type_cotype_constant(TypeKind::type, 2.5, family, 2.0, ExactEnumeration{}), DomainError);
    CHECK_THROWS_AS(type_cotype_constant(TypeKind::cotype, 1.5, family, 2.0, ExactEnumeration{}), DomainError);
}
