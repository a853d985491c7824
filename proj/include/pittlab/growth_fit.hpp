#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pittlab/common.hpp"

namespace pittlab {

struct SeriesPoint {
    double n = 0.0;
    double value = 0.0;
};

using Series = std::vector<SeriesPoint>;

enum class GrowthModel { bounded, log_power, loglog_power, power };

inline std::string_view to_string(GrowthModel m) {
    switch (m) {
        case GrowthModel::bounded: return "bounded";
        case GrowthModel::log_power: return "log_power";
        case GrowthModel::loglog_power: return "loglog_power";
        case GrowthModel::power: return "power";
    }
    return "bounded";
}

struct GrowthFit {
    GrowthModel model = GrowthModel::bounded;
    double exponent = 0.0;
    double r_squared = 1.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

/// Ordinary least squares y = slope x + intercept.
inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, "at least two paired samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return f;
}

/// Candidate-model fit: log-log least squares of the values against N, log N and log log N;
/// `bounded` when the top half of the series varies by less than 2% relative.
inline GrowthFit fit_growth(const Series& series) {
    require(series.size() >= 4, "at least 4 points");
    for (const auto& p : series) {
        require(p.value > 0.0 && std::isfinite(p.value), "positive values");
        require(p.n > std::exp(1.0), "N > e for log log axes");
    }
    const std::size_t half = series.size() / 2;
    double lo = infinity, hi = 0.0, mean = 0.0;
    for (std::size_t i = half; i < series.size(); ++i) {
        lo = std::min(lo, series[i].value);
        hi = std::max(hi, series[i].value);
        mean += series[i].value;
    }
    mean /= static_cast<double>(series.size() - half);
    if ((hi - lo) / mean < 0.02) return {GrowthModel::bounded, 0.0, 1.0};

    std::vector<double> y, x_power, x_log, x_loglog;
    for (const auto& p : series) {
        y.push_back(std::log(p.value));
        x_power.push_back(std::log(p.n));
        x_log.push_back(std::log(std::log(p.n)));
        x_loglog.push_back(std::log(std::log(std::log(p.n))));
    }
    GrowthFit best{GrowthModel::bounded, 0.0, -1.0};
    auto consider = [&](GrowthModel m, const std::vector<double>& x) {
        const LineFit f = least_squares(x, y);
        if (f.r_squared > best.r_squared) best = {m, f.slope, f.r_squared};
    };
    consider(GrowthModel::log_power, x_log);
    consider(GrowthModel::loglog_power, x_loglog);
    consider(GrowthModel::power, x_power);
    return best;
}

/// Natural abscissa of a growth model.
enum class GrowthAxis { n, one_plus_log, log_n_plus_one, one_plus_loglog };

inline std::string_view to_string(GrowthAxis a) {
    switch (a) {
        case GrowthAxis::n: return "N";
        case GrowthAxis::one_plus_log: return "1+log N";
        case GrowthAxis::log_n_plus_one: return "log(N+1)";
        case GrowthAxis::one_plus_loglog: return "1+log(1+log N)";
    }
    return "N";
}

inline GrowthAxis axis_from_string(std::string_view name) {
    for (auto a : {GrowthAxis::n, GrowthAxis::one_plus_log, GrowthAxis::log_n_plus_one, GrowthAxis::one_plus_loglog})
        if (to_string(a) == name) return a;
    throw DomainError("known growth axis", std::string(name));
}

inline double axis_value(GrowthAxis axis, double n) {
    switch (axis) {
        case GrowthAxis::n: return n;
        case GrowthAxis::one_plus_log: return 1.0 + std::log(n);
        case GrowthAxis::log_n_plus_one: return std::log1p(n);
        case GrowthAxis::one_plus_loglog: return 1.0 + std::log1p(std::log(n));
    }
    return n;
}

struct IncrementFit {
    double t = 0.0;          // S = value^power grows like X^t (t = 0: like log X; t < 0: converges)
    double exponent = 0.0;   // t / power, the growth exponent of the value itself
    double r_squared = 0.0;  // levels S against X^t (or log X) with intercept
};

/// Fit S_k = value_k^power by S ~ A + B X^t on the model's axis, using increments so that the unknown
/// constant A drops out: log|dS_k| is regressed on log|d(X^t)_k| with unit slope, t chosen by grid search.
inline IncrementFit fit_increments(const Series& series, GrowthAxis axis, double power, double t_lo = -2.0,
                                   double t_hi = 3.0, double t_step = 1e-4) {
    require(series.size() >= 4, "at least 4 points");
    require(power > 0.0, "power > 0");
    std::vector<double> X, S;
    for (const auto& p : series) {
        require(p.value > 0.0 && std::isfinite(p.value), "positive values");
        X.push_back(axis_value(axis, p.n));
        S.push_back(std::pow(p.value, power));
    }
    std::vector<double> ly;
    std::vector<std::size_t> used;
    for (std::size_t k = 0; k + 1 < S.size(); ++k) {
        const double dS = std::abs(S[k + 1] - S[k]);
        if (dS > 0.0) {
            ly.push_back(std::log(dS));
            used.push_back(k);
        }
    }
    if (ly.size() < 2) return {0.0, 0.0, 1.0};

    auto transformed = [&](double x, double t) { return t == 0.0 ? std::log(x) : std::pow(x, t); };
    double best_t = 0.0, best_err = infinity;
    const long steps = static_cast<long>(std::round((t_hi - t_lo) / t_step));
    std::vector<double> lg(ly.size());
    for (long i = 0; i <= steps; ++i) {
        double t = t_lo + static_cast<double>(i) * t_step;
        if (std::abs(t) < 0.5 * t_step) t = 0.0;
        bool ok = true;
        for (std::size_t j = 0; j < used.size(); ++j) {
            const std::size_t k = used[j];
            const double dx = std::abs(transformed(X[k + 1], t) - transformed(X[k], t));
            if (!(dx > 0.0) || !std::isfinite(dx)) {
                ok = false;
                break;
            }
            lg[j] = std::log(dx);
        }
        if (!ok) continue;
        double mean = 0.0;
        for (std::size_t j = 0; j < ly.size(); ++j) mean += ly[j] - lg[j];
        mean /= static_cast<double>(ly.size());
        double err = 0.0;
        for (std::size_t j = 0; j < ly.size(); ++j) err += std::pow(ly[j] - lg[j] - mean, 2);
        if (err < best_err) {
            best_err = err;
            best_t = t;
        }
    }
    std::vector<double> xt(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) xt[k] = transformed(X[k], best_t);
    const LineFit levels = least_squares(xt, S);
    return {best_t, best_t / power, levels.r_squared};
}

/// Relative change of the last step, |v_K - v_{K-1}| / v_K.
inline double relative_increment(const Series& series) {
    require(series.size() >= 2, "at least 2 points");
    const double a = series[series.size() - 2].value;
    const double b = series.back().value;
    return std::abs(b - a) / std::abs(b);
}

}  // namespace pittlab
