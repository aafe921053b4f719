#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "effidx/error.hpp"
#include "effidx/fft.hpp"
#include "effidx/ingest.hpp"
#include "effidx/optimize.hpp"
#include "effidx/stats.hpp"

namespace effidx {

/// Periodogram ordinates at the Fourier frequencies 2*pi*j/T, j = 1..floor(T/2).
struct Periodogram {
    std::vector<double> frequencies;
    std::vector<double> ordinates;
    std::size_t series_length = 0;

    std::size_t size() const noexcept { return ordinates.size(); }
};

/// Number of lowest Fourier frequencies used by the semi-parametric estimators.
struct Bandwidth {
    std::size_t m = 0;
    double exponent = 0.6;

    /// m = floor(T^exponent).
    static Bandwidth for_length(std::size_t series_length, double exponent = 0.6) {
        if (!(exponent > 0.0 && exponent < 1.0)) {
            throw Error(ErrorKind::Validation, fmt::format("bandwidth exponent {} outside (0,1)", exponent));
        }
        // The small offset keeps exact powers such as 4096^0.5 from flooring down.
        const auto m = static_cast<std::size_t>(
            std::floor(std::pow(static_cast<double>(series_length), exponent) + 1e-9));
        return checked(m, exponent, series_length);
    }

    static Bandwidth fixed(std::size_t m, std::size_t series_length) {
        return checked(m, std::log(static_cast<double>(m)) / std::log(static_cast<double>(series_length)),
                       series_length);
    }

private:
    static Bandwidth checked(std::size_t m, double exponent, std::size_t series_length) {
        if (m < 2 || m > series_length / 2) {
            throw Error(ErrorKind::Validation,
                        fmt::format("bandwidth m = {} outside [2, {}] for T = {}", m, series_length / 2,
                                    series_length));
        }
        return {m, exponent};
    }
};

enum class HurstMethod { LocalWhittle, Gph };

constexpr std::string_view to_string(HurstMethod m) noexcept {
    return m == HurstMethod::LocalWhittle ? "local-whittle" : "gph";
}

struct HurstEstimate {
    double value = 0.5;
    HurstMethod method = HurstMethod::LocalWhittle;
    std::size_t m_used = 0;
    double std_error = 0.0;  // asymptotic
};

/// Upper end of the admissible Hurst range [0, 1).
inline constexpr double kHurstUpper = 0.999;

/// I(lambda_j) = |sum_t x_t exp(-i t lambda_j)|^2 / (2 pi T) on the demeaned
/// series, for j = 1..floor(T/2).
inline Periodogram periodogram(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < kMinSeriesLength) {
        throw Error(ErrorKind::TooShort, fmt::format("periodogram needs T >= {}, got {}", kMinSeriesLength, n));
    }
    const double mu = stats::mean(x);
    std::vector<double> centred(n);
    std::transform(x.begin(), x.end(), centred.begin(), [mu](double v) { return v - mu; });
    const auto spectrum = fft::forward_real(centred);

    Periodogram p;
    p.series_length = n;
    const std::size_t count = n / 2;
    p.frequencies.resize(count);
    p.ordinates.resize(count);
    const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
    for (std::size_t j = 1; j <= count; ++j) {
        p.frequencies[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        p.ordinates[j - 1] = std::norm(spectrum[j]) * scale;
    }
    return p;
}

inline Periodogram periodogram(const LogSeries& returns) {
    require_kind(returns, SeriesKind::LogReturn);
    return periodogram(returns.view());
}

namespace detail {

inline void check_bandwidth(const Periodogram& p, const Bandwidth& b) {
    if (b.m < 2 || b.m > p.size()) {
        throw Error(ErrorKind::Validation,
                    fmt::format("bandwidth m = {} exceeds the {} available ordinates", b.m, p.size()));
    }
}

}  // namespace detail

/// Local Whittle objective
///   R(H) = log(mean_j lambda_j^(2H-1) I_j) - (2H-1) mean_j log lambda_j
/// over the first m ordinates.
inline double whittle_objective(const Periodogram& p, std::size_t m, double h) {
    const double e = 2.0 * h - 1.0;
    double weighted = 0.0;
    double log_freq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double log_lambda = std::log(p.frequencies[j]);
        weighted += std::exp(e * log_lambda) * p.ordinates[j];
        log_freq += log_lambda;
    }
    const double md = static_cast<double>(m);
    return std::log(weighted / md) - e * log_freq / md;
}

namespace detail {

struct WhittleSlope {
    double first = 0.0;
    double second = 0.0;
};

// dR/dH and d2R/dH2. With w_j = lambda_j^(2H-1) I_j and the w-weighted mean
// and variance of log lambda_j: R' = 2 (E_w[log lambda] - mean log lambda),
// R'' = 4 Var_w[log lambda] >= 0, so R is convex in H.
inline WhittleSlope whittle_slope(const Periodogram& p, std::size_t m, double h) {
    const double e = 2.0 * h - 1.0;
    double w_sum = 0.0, w_log = 0.0, w_log2 = 0.0, log_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double log_lambda = std::log(p.frequencies[j]);
        const double w = std::exp(e * log_lambda) * p.ordinates[j];
        w_sum += w;
        w_log += w * log_lambda;
        w_log2 += w * log_lambda * log_lambda;
        log_sum += log_lambda;
    }
    const double mean_w = w_log / w_sum;
    return {2.0 * (mean_w - log_sum / static_cast<double>(m)), 4.0 * (w_log2 / w_sum - mean_w * mean_w)};
}

}  // namespace detail

/// Minimizes R(H) over [0, 0.999]: 101-point grid scan, golden-section
/// refinement to 1e-6 inside the bracketing cell, then Newton polishing of an
/// interior minimum so the result does not depend on rounding in R.
inline HurstEstimate local_whittle(const Periodogram& p, const Bandwidth& b) {
    detail::check_bandwidth(p, b);
    const bool any_positive =
        std::any_of(p.ordinates.begin(), p.ordinates.begin() + static_cast<std::ptrdiff_t>(b.m),
                    [](double v) { return v > 0.0; });
    if (!any_positive) {
        throw Error(ErrorKind::DegenerateSpectrum, "all low-frequency ordinates are zero");
    }
    const auto objective = [&](double h) { return whittle_objective(p, b.m, h); };
    const auto coarse = optimize::grid_then_golden(objective, 0.0, kHurstUpper, 101, 1e-6);
    double h = coarse.x;
    if (h > 0.0 && h < kHurstUpper) {
        for (int iter = 0; iter < 50; ++iter) {
            const auto slope = detail::whittle_slope(p, b.m, h);
            if (!(slope.second > 0.0)) break;
            const double next = std::clamp(h - slope.first / slope.second, 0.0, kHurstUpper);
            const double step = next - h;
            h = next;
            if (std::abs(step) < 1e-14) break;
        }
        if (!(objective(h) <= coarse.value + 1e-12)) h = coarse.x;
    }
    return {std::clamp(h, 0.0, kHurstUpper), HurstMethod::LocalWhittle, b.m,
            1.0 / (2.0 * std::sqrt(static_cast<double>(b.m)))};
}

/// Log-periodogram regression of log I_j on log(4 sin^2(lambda_j / 2)) with
/// intercept; H = 0.5 - slope.
inline HurstEstimate gph(const Periodogram& p, const Bandwidth& b) {
    detail::check_bandwidth(p, b);
    if (b.m < 3) {
        throw Error(ErrorKind::TooFewFrequencies, fmt::format("log-periodogram regression needs m >= 3, got {}", b.m));
    }
    std::vector<double> regressor(b.m);
    std::vector<double> response(b.m);
    for (std::size_t j = 0; j < b.m; ++j) {
        if (!(p.ordinates[j] > 0.0)) {
            throw Error(ErrorKind::ZeroOrdinate, fmt::format("periodogram ordinate {} is zero", j + 1));
        }
        const double s = std::sin(p.frequencies[j] / 2.0);
        regressor[j] = std::log(4.0 * s * s);
        response[j] = std::log(p.ordinates[j]);
    }
    const auto fit = stats::ols(regressor, response);
    return {std::clamp(0.5 - fit.slope, 0.0, kHurstUpper), HurstMethod::Gph, b.m,
            std::numbers::pi / std::sqrt(24.0 * static_cast<double>(b.m))};
}

}  // namespace effidx
