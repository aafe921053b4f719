#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "effidx/error.hpp"
#include "effidx/ingest.hpp"
#include "effidx/stats.hpp"

namespace effidx {

/// Embedding dimension and tolerance (as a multiple of the sample standard
/// deviation) for approximate entropy.
struct ApEnConfig {
    int embedding = 2;
    double tolerance = 0.2;

    void validate() const {
        if (embedding < 1) {
            throw Error(ErrorKind::Validation, fmt::format("ApEn embedding must be >= 1, got {}", embedding));
        }
        if (!(tolerance > 0.0 && tolerance <= 1.0)) {
            throw Error(ErrorKind::Validation, fmt::format("ApEn tolerance must lie in (0, 1], got {}", tolerance));
        }
    }
};

struct EntropyEstimate {
    double raw = 0.0;       // nats
    double rescaled = 0.0;  // ~[0, 1], may exceed 1 in finite samples
};

namespace detail {

struct MatchCounts {
    std::vector<std::uint32_t> m;         // per template of length m, self-match included
    std::vector<std::uint32_t> m_plus_1;  // per template of length m + 1
};

// Rows are interleaved across workers because row i only scans j > i.
inline void count_rows(std::span<const double> u, std::size_t m, double r, std::size_t first,
                       std::size_t stride, MatchCounts& out) {
    const std::size_t n_m = u.size() - m + 1;
    const std::size_t n_m1 = u.size() - m;
    for (std::size_t i = first; i < n_m; i += stride) {
        for (std::size_t j = i + 1; j < n_m; ++j) {
            bool close = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (std::abs(u[i + k] - u[j + k]) > r) {
                    close = false;
                    break;
                }
            }
            if (!close) continue;
            ++out.m[i];
            ++out.m[j];
            if (j < n_m1 && std::abs(u[i + m] - u[j + m]) <= r) {
                ++out.m_plus_1[i];
                ++out.m_plus_1[j];
            }
        }
    }
}

inline double phi(std::span<const std::uint32_t> counts) {
    const double n = static_cast<double>(counts.size());
    double sum = 0.0;
    for (auto c : counts) sum += std::log(static_cast<double>(c) / n);
    return sum / n;
}

}  // namespace detail

/// Approximate entropy Phi^m(r) - Phi^(m+1)(r) of the standardized series,
/// counting self-matches. Pair counts are accumulated as integers, so the
/// multi-threaded path is bitwise identical to the sequential one.
inline double apen_raw(std::span<const double> x, const ApEnConfig& config = {},
                       unsigned threads = 0) {
    config.validate();
    const std::size_t n = x.size();
    const auto m = static_cast<std::size_t>(config.embedding);
    if (n < kMinSeriesLength || n <= m + 1) {
        throw Error(ErrorKind::TooShort, fmt::format("approximate entropy needs T >= {} and T > m + 1, got T = {}",
                                                     kMinSeriesLength, n));
    }
    const double sd = stats::stddev(x);
    if (!(sd > 0.0)) throw Error(ErrorKind::ZeroVariance, "cannot standardize a constant series");
    const double mu = stats::mean(x);
    std::vector<double> u(n);
    std::transform(x.begin(), x.end(), u.begin(), [=](double v) { return (v - mu) / sd; });
    const double r = config.tolerance;

    const std::size_t n_m = n - m + 1;
    const std::size_t n_m1 = n - m;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n / 512)));

    std::vector<detail::MatchCounts> partial(threads);
    for (auto& p : partial) {
        p.m.assign(n_m, 0);
        p.m_plus_1.assign(n_m1, 0);
    }
    if (threads == 1) {
        detail::count_rows(u, m, r, 0, 1, partial[0]);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] { detail::count_rows(u, m, r, t, threads, partial[t]); });
        }
    }

    std::vector<std::uint32_t> cm(n_m, 1);
    std::vector<std::uint32_t> cm1(n_m1, 1);
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < n_m; ++i) cm[i] += p.m[i];
        for (std::size_t i = 0; i < n_m1; ++i) cm1[i] += p.m_plus_1[i];
    }
    return detail::phi(cm) - detail::phi(cm1);
}

inline double apen_raw(const LogSeries& returns, const ApEnConfig& config = {}, unsigned threads = 0) {
    require_kind(returns, SeriesKind::LogReturn);
    return apen_raw(returns.view(), config, threads);
}

/// Limiting ApEn of an iid uniform process, -log(r / sqrt(3)), with r the
/// configured tolerance applied to the unit-variance series.
inline double apen_ceiling(const ApEnConfig& config) {
    return -std::log(config.tolerance / std::sqrt(3.0));
}

inline EntropyEstimate apen_rescaled(double raw, const ApEnConfig& config = {}) {
    if (!(raw >= 0.0)) throw Error(ErrorKind::Validation, fmt::format("raw ApEn must be >= 0, got {}", raw));
    const double ceiling = apen_ceiling(config);
    if (!(ceiling > 0.0)) {
        throw Error(ErrorKind::BadTolerance,
                    fmt::format("tolerance {} gives a non-positive normalization constant", config.tolerance));
    }
    return {raw, raw / ceiling};
}

}  // namespace effidx
