#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>

#include "effidx/error.hpp"

namespace effidx::stats {

inline double mean(std::span<const double> x) noexcept {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Unbiased (n - 1) sample variance.
inline double variance(std::span<const double> x) noexcept {
    if (x.size() < 2) return 0.0;
    const double mu = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - mu) * (v - mu);
    return ss / static_cast<double>(x.size() - 1);
}

inline double stddev(std::span<const double> x) noexcept { return std::sqrt(variance(x)); }

/// Lag-k sample autocorrelation with the usual 1/n normalization.
inline double autocorrelation(std::span<const double> x, std::size_t lag) noexcept {
    const double mu = mean(x);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        den += (x[t] - mu) * (x[t] - mu);
        if (t + lag < x.size()) num += (x[t] - mu) * (x[t + lag] - mu);
    }
    return den > 0.0 ? num / den : 0.0;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares of y on x with intercept, centred formulation.
inline LinearFit ols(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorKind::DegenerateRegressor, "regressor has zero variance");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

}  // namespace effidx::stats
