#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "pittlab/growth_fit.hpp"

using namespace pittlab;
using Catch::Approx;

namespace {

Series dyadic_series(const std::function<double(double)>& value, int lo = 4, int hi = 20) {
    Series s;
    for (int k = lo; k <= hi; ++k) {
        const double n = std::ldexp(1.0, k);
        s.push_back({n, value(n)});
    }
    return s;
}

}  // namespace

TEST_CASE("least_squares recovers an exact line", "[growth_fit]") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0}, y{1.0, 3.0, 5.0, 7.0};
    const auto f = least_squares(x, y);
    CHECK(f.slope == Approx(2.0));
    CHECK(f.intercept == Approx(1.0));
    CHECK(f.r_squared == Approx(1.0));
}

TEST_CASE("fit_growth: constant series is bounded", "[growth_fit]") {
    const auto fit = fit_growth(dyadic_series([](double) { return 5.0; }));
    CHECK(fit.model == GrowthModel::bounded);
    CHECK(fit.exponent == 0.0);
}

TEST_CASE("fit_growth: log and loglog powers", "[growth_fit]") {
    const auto log_fit = fit_growth(dyadic_series([](double n) { return std::pow(std::log(n), 0.25); }));
    CHECK(log_fit.model == GrowthModel::log_power);
    CHECK(log_fit.exponent == Approx(0.25).margin(0.02));
    CHECK(log_fit.r_squared >= 0.99);

    const auto loglog_fit = fit_growth(dyadic_series([](double n) { return std::log(std::log(n)); }, 4, 60));
    CHECK(loglog_fit.model == GrowthModel::loglog_power);
    CHECK(loglog_fit.exponent == Approx(1.0).margin(0.1));
    CHECK(loglog_fit.r_squared >= 0.95);

    const auto power_fit = fit_growth(dyadic_series([](double n) { return 3.0 * std::sqrt(n); }));
    CHECK(power_fit.model == GrowthModel::power);
    CHECK(power_fit.exponent == Approx(0.5).margin(1e-10));
}

TEST_CASE("fit_growth rejects short or non-positive series", "[growth_fit][domain]") {
    CHECK_THROWS_AS(fit_growth(Series{{8, 1}, {16, 1}, {32, 1}}), DomainError);
    CHECK_THROWS_AS(fit_growth(Series{{8, 1}, {16, 0}, {32, 1}, {64, 1}}), DomainError);
}

TEST_CASE("fit_increments: offset growth laws", "[growth_fit]") {
    // S = 7 + 2 X^{0.4} on the 1 + log N axis, value = S^{1/2}
    const auto grows = dyadic_series([](double n) { return std::sqrt(7.0 + 2.0 * std::pow(1.0 + std::log(n), 0.4)); });
    const auto g = fit_increments(grows, GrowthAxis::one_plus_log, 2.0);
    CHECK(g.t == Approx(0.4).margin(2e-4));
    CHECK(g.exponent == Approx(0.2).margin(1e-4));
    CHECK(g.r_squared > 0.999);

    // S = 3 - X^{-0.5}: converging
    const auto conv = dyadic_series([](double n) { return 3.0 - std::pow(1.0 + std::log(n), -0.5); });
    CHECK(fit_increments(conv, GrowthAxis::one_plus_log, 1.0).t == Approx(-0.5).margin(2e-4));

    // S = 1 + log X: the t = 0 model
    const auto logx = dyadic_series([](double n) { return 1.0 + std::log(std::log1p(n)); });
    CHECK(std::abs(fit_increments(logx, GrowthAxis::log_n_plus_one, 1.0).t) < 2e-4);

    const auto flat = dyadic_series([](double) { return 2.0; });
    const auto f = fit_increments(flat, GrowthAxis::n, 1.0);
    CHECK(f.t == 0.0);
    CHECK(f.r_squared == 1.0);
}

TEST_CASE("growth axes round-trip through their names", "[growth_fit]") {
    for (auto a : {GrowthAxis::n, GrowthAxis::one_plus_log, GrowthAxis::log_n_plus_one, GrowthAxis::one_plus_loglog})
        CHECK(axis_from_string(to_string(a)) == a);
    CHECK_THROWS_AS(axis_from_string("sqrt N"), DomainError);
    CHECK(axis_value(GrowthAxis::one_plus_loglog, std::exp(1.0)) == Approx(1.0 + std::log(2.0)));
}

TEST_CASE("relative_increment of the last step", "[growth_fit]") {
    CHECK(relative_increment(Series{{1, 4.0}, {2, 5.0}}) == Approx(0.2));
    CHECK(relative_increment(Series{{1, 4.0}, {2, 4.0}}) == 0.0);
}
