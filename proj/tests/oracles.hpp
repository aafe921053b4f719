#pragma once

// Reference computations used only by tests. Each one is a direct
// transcription of the defining formula and shares no code with the library.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace effidx::testing {

/// |sum_{t=1}^T (x_t - mean) e^{-i t lambda_j}|^2 / (2 pi T) by direct summation.
inline std::vector<double> naive_periodogram(std::span<const double> x) {
    const std::size_t n = x.size();
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(n);
    std::vector<double> out;
    for (std::size_t j = 1; j <= n / 2; ++j) {
        const long double lambda = 2.0L * std::numbers::pi_v<long double> * j / n;
        long double re = 0.0L, im = 0.0L;
        for (std::size_t t = 1; t <= n; ++t) {
            const long double v = x[t - 1] - mean;
            re += v * std::cos(lambda * t);
            im -= v * std::sin(lambda * t);
        }
        out.push_back(static_cast<double>((re * re + im * im) / (2.0L * std::numbers::pi_v<long double> * n)));
    }
    return out;
}

/// Approximate entropy by the textbook double loop over all template pairs,
/// self-matches included.
inline double naive_apen(std::span<const double> x, std::size_t m, double r_multiple) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (x[i] - mean) / sd;

    const auto phi = [&](std::size_t dim) {
        const std::size_t count = n - dim + 1;
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t c = 0;
            for (std::size_t j = 0; j < count; ++j) {
                double d = 0.0;
                for (std::size_t k = 0; k < dim; ++k) d = std::max(d, std::abs(u[i + k] - u[j + k]));
                if (d <= r_multiple) ++c;
            }
            sum += std::log(static_cast<double>(c) / static_cast<double>(count));
        }
        return sum / static_cast<double>(count);
    };
    return phi(m) - phi(m + 1);
}

struct Line {
    double slope, intercept;
};

/// OLS via the raw normal equations in extended precision.
inline Line normal_equations_ols(std::span<const double> x, std::span<const double> y) {
    long double n = x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {static_cast<double>(slope), static_cast<double>((sy - slope * sx) / n)};
}

/// Monte Carlo mean of f(seed) over seeds base..base+reps-1.
inline double mc_mean(std::size_t reps, const std::function<double(std::uint64_t)>& f, std::uint64_t base = 1000) {
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i) sum += f(base + i);
    return sum / static_cast<double>(reps);
}

}  // namespace effidx::testing
