#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>

#include <fmt/format.h>

#include "effidx/error.hpp"
#include "effidx/ingest.hpp"

namespace effidx {

enum class FractalMethod { HallWood, Genton };

constexpr std::string_view to_string(FractalMethod m) noexcept {
    return m == FractalMethod::HallWood ? "hall-wood" : "genton";
}

/// Fractal dimension of a path, reported inside (1, 2].
struct FractalEstimate {
    double value = 1.5;
    double raw = 1.5;  // before clamping
    FractalMethod method = FractalMethod::HallWood;
    bool clamped = false;
};

inline constexpr double kFractalFloor = 1.0 + 1e-6;
inline constexpr double kFractalCeiling = 2.0;

namespace detail {

inline FractalEstimate clamp_dimension(double raw, FractalMethod method) {
    FractalEstimate e{raw, raw, method, false};
    if (raw < kFractalFloor) {
        e.value = kFractalFloor;
        e.clamped = true;
    } else if (raw > kFractalCeiling) {
        e.value = kFractalCeiling;
        e.clamped = true;
    }
    return e;
}

inline void check_path_length(std::span<const double> x) {
    if (x.size() < kMinSeriesLength) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("fractal dimension needs n >= {} points, got {}", kMinSeriesLength, x.size()));
    }
}

}  // namespace detail

/// Sum of absolute scale-l increments, (l/n) * sum_i |x[i l] - x[(i-1) l]|,
/// over the n = size - 1 increments of the observation grid.
inline double hall_wood_deviation(std::span<const double> x, std::size_t l) {
    const std::size_t n = x.size() - 1;
    double sum = 0.0;
    for (std::size_t i = 1; i <= n / l; ++i) sum += std::abs(x[i * l] - x[(i - 1) * l]);
    return static_cast<double>(l) / static_cast<double>(n) * sum;
}

/// Hall-Wood estimator with L = 2.
inline FractalEstimate hall_wood(std::span<const double> x) {
    detail::check_path_length(x);
    const double a1 = hall_wood_deviation(x, 1);
    const double a2 = hall_wood_deviation(x, 2);
    if (!(a1 > 0.0) || !(a2 > 0.0)) {
        throw Error(ErrorKind::DegeneratePath, "path has no variation at scale 1 or 2");
    }
    const double raw = 2.0 - (std::log(a2) - std::log(a1)) / std::numbers::ln2;
    return detail::clamp_dimension(raw, FractalMethod::HallWood);
}

/// Lag-l variogram, sum_{i=l}^{n-1} (x[i] - x[i-l])^2 / (2 (n - l)).
inline double variogram(std::span<const double> x, std::size_t l) {
    const std::size_t n = x.size();
    double sum = 0.0;
    for (std::size_t i = l; i < n; ++i) {
        const double d = x[i] - x[i - l];
        sum += d * d;
    }
    return sum / (2.0 * static_cast<double>(n - l));
}

/// Variogram (Genton) estimator with L = 2.
inline FractalEstimate genton(std::span<const double> x) {
    detail::check_path_length(x);
    const double v1 = variogram(x, 1);
    const double v2 = variogram(x, 2);
    if (!(v1 > 0.0) || !(v2 > 0.0)) {
        throw Error(ErrorKind::DegeneratePath, "path has zero variogram at lag 1 or 2");
    }
    const double raw = 2.0 - (std::log(v2) - std::log(v1)) / (2.0 * std::numbers::ln2);
    return detail::clamp_dimension(raw, FractalMethod::Genton);
}

inline FractalEstimate hall_wood(const LogSeries& log_prices) {
    require_kind(log_prices, SeriesKind::LogPrice);
    return hall_wood(log_prices.view());
}

inline FractalEstimate genton(const LogSeries& log_prices) {
    require_kind(log_prices, SeriesKind::LogPrice);
    return genton(log_prices.view());
}

}  // namespace effidx
