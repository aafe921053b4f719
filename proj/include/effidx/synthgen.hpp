#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "effidx/error.hpp"
#include "effidx/fft.hpp"
#include "effidx/ingest.hpp"

namespace effidx::synth {

/// Seeded normal variates. std::mt19937_64's output sequence is fixed by the
/// standard; uniforms are taken from the top 53 bits and turned into normals
/// with Box-Muller, so streams agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double gaussian() {
        if (cached_) {
            const double v = *cached_;
            cached_.reset();
            return v;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        cached_ = radius * std::sin(angle);
        return radius * std::cos(angle);
    }

    std::vector<double> gaussians(std::size_t n) {
        std::vector<double> out(n);
        for (auto& v : out) v = gaussian();
        return out;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::optional<double> cached_;
};

/// Autocovariance of unit-variance fractional Gaussian noise,
/// gamma(k) = (|k+1|^2H - 2|k|^2H + |k-1|^2H) / 2.
inline double fgn_autocovariance(double hurst, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(std::abs(k - 1.0), two_h));
}

inline void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw Error(ErrorKind::BadSpec, fmt::format("hurst must lie in (0,1), got {}", hurst));
    }
}

/// Exact fGn sample by circulant embedding of the autocovariance (Davies-Harte).
inline std::vector<double> fgn_values(double hurst, std::size_t n, std::uint64_t seed) {
    check_hurst(hurst);
    Rng rng(seed);
    if (n == 0) return {};
    if (n == 1) return {rng.gaussian()};

    // First row of the 2(n-1) circulant: gamma(0..n-1), then gamma(n-2..1).
    const std::size_t size = 2 * (n - 1);
    std::vector<std::complex<double>> row(size);
    for (std::size_t k = 0; k < n; ++k) row[k] = fgn_autocovariance(hurst, k);
    for (std::size_t k = n; k < size; ++k) row[k] = row[size - k];
    const auto eigen = fft::forward(row);

    std::vector<std::complex<double>> weighted(size);
    for (std::size_t k = 0; k < size; ++k) {
        double lambda = eigen[k].real();
        if (lambda < -1e-8) {
            throw Error(ErrorKind::EmbeddingFailure,
                        fmt::format("circulant eigenvalue {} at index {} is negative", lambda, k));
        }
        if (lambda < 0.0) lambda = 0.0;
        const double a = rng.gaussian();
        const double b = rng.gaussian();
        weighted[k] = std::sqrt(lambda / static_cast<double>(size)) * std::complex<double>(a, b);
    }
    const auto mixed = fft::forward(weighted);
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = mixed[t].real();
    return out;
}

inline LogSeries fgn(double hurst, std::size_t n, std::uint64_t seed) {
    return {fmt::format("fgn-h{:.2f}-s{}", hurst, seed), fgn_values(hurst, n, seed), SeriesKind::LogReturn};
}

/// Fractional Brownian motion path of n points: 0 followed by the cumulative
/// sum of an (n-1)-point fGn draw with the same seed.
inline LogSeries fbm(double hurst, std::size_t n, std::uint64_t seed) {
    check_hurst(hurst);
    LogSeries out{fmt::format("fbm-h{:.2f}-s{}", hurst, seed), {}, SeriesKind::LogPrice};
    if (n == 0) return out;
    const auto increments = fgn_values(hurst, n - 1, seed);
    out.values.reserve(n);
    double level = 0.0;
    out.values.push_back(level);
    for (double g : increments) {
        level += g;
        out.values.push_back(level);
    }
    return out;
}

inline LogSeries iid_gaussian(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return {fmt::format("iid-s{}", seed), rng.gaussians(n), SeriesKind::LogReturn};
}

inline constexpr std::size_t kAr1BurnIn = 1000;

/// Stationary AR(1), x_t = phi x_{t-1} + e_t with unit-variance innovations.
inline LogSeries ar1(double phi, std::size_t n, std::uint64_t seed) {
    if (!(std::abs(phi) < 1.0)) throw Error(ErrorKind::BadSpec, fmt::format("|phi| must be < 1, got {}", phi));
    Rng rng(seed);
    double x = 0.0;
    for (std::size_t t = 0; t < kAr1BurnIn; ++t) x = phi * x + rng.gaussian();
    LogSeries out{fmt::format("ar1-p{:.2f}-s{}", phi, seed), std::vector<double>(n), SeriesKind::LogReturn};
    for (auto& v : out.values) {
        x = phi * x + rng.gaussian();
        v = x;
    }
    return out;
}

/// sin(2 pi t / period), t = 0..n-1.
inline LogSeries sine(std::size_t n, double period) {
    if (!(period > 0.0)) throw Error(ErrorKind::BadSpec, fmt::format("sine period must be > 0, got {}", period));
    LogSeries out{fmt::format("sine-p{:g}", period), std::vector<double>(n), SeriesKind::LogReturn};
    for (std::size_t t = 0; t < n; ++t) {
        out.values[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
    }
    return out;
}

/// (1 - weight) * sine + weight * iid noise.
inline LogSeries mixture(double weight, std::size_t n, double period, std::uint64_t seed) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw Error(ErrorKind::BadSpec, fmt::format("mixture weight must lie in [0,1], got {}", weight));
    }
    auto out = sine(n, period);
    out.symbol = fmt::format("mix-w{:.2f}-s{}", weight, seed);
    Rng rng(seed);
    for (auto& v : out.values) v = (1.0 - weight) * v + weight * rng.gaussian();
    return out;
}

// ---------------------------------------------------------------------------

enum class GeneratorKind { Fgn, Fbm, IidGaussian, Ar1, Sine, Mixture };

inline std::optional<GeneratorKind> parse_generator_kind(std::string_view s) {
    if (s == "fgn") return GeneratorKind::Fgn;
    if (s == "fbm") return GeneratorKind::Fbm;
    if (s == "iid-gaussian" || s == "iid") return GeneratorKind::IidGaussian;
    if (s == "ar1") return GeneratorKind::Ar1;
    if (s == "sine") return GeneratorKind::Sine;
    if (s == "mixture") return GeneratorKind::Mixture;
    return std::nullopt;
}

constexpr std::string_view to_string(GeneratorKind k) noexcept {
    switch (k) {
        case GeneratorKind::Fgn: return "fgn";
        case GeneratorKind::Fbm: return "fbm";
        case GeneratorKind::IidGaussian: return "iid-gaussian";
        case GeneratorKind::Ar1: return "ar1";
        case GeneratorKind::Sine: return "sine";
        case GeneratorKind::Mixture: return "mixture";
    }
    return "unknown";
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Fgn;
    std::optional<double> hurst;   // fgn, fbm
    std::optional<double> phi;     // ar1
    std::optional<double> period;  // sine, mixture
    std::optional<double> weight;  // mixture
    std::size_t length = 0;
    std::uint64_t seed = 0;

    void validate() const {
        const auto need = [&](const std::optional<double>& v, bool required, std::string_view name) {
            if (required && !v) {
                throw Error(ErrorKind::BadSpec, fmt::format("{} requires parameter {}", to_string(kind), name));
            }
            if (!required && v) {
                throw Error(ErrorKind::BadSpec, fmt::format("{} does not take parameter {}", to_string(kind), name));
            }
        };
        need(hurst, kind == GeneratorKind::Fgn || kind == GeneratorKind::Fbm, "hurst");
        need(phi, kind == GeneratorKind::Ar1, "phi");
        need(period, kind == GeneratorKind::Sine || kind == GeneratorKind::Mixture, "period");
        need(weight, kind == GeneratorKind::Mixture, "weight");
        if (length < 2) throw Error(ErrorKind::BadSpec, fmt::format("length must be >= 2, got {}", length));
        if (hurst) check_hurst(*hurst);
        if (phi && !(std::abs(*phi) < 1.0)) throw Error(ErrorKind::BadSpec, "|phi| must be < 1");
    }

    /// Whether the generated values are log prices (a path) rather than returns.
    bool is_path() const noexcept { return kind == GeneratorKind::Fbm; }
};

inline LogSeries generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case GeneratorKind::Fgn: return fgn(*spec.hurst, spec.length, spec.seed);
        case GeneratorKind::Fbm: return fbm(*spec.hurst, spec.length, spec.seed);
        case GeneratorKind::IidGaussian: return iid_gaussian(spec.length, spec.seed);
        case GeneratorKind::Ar1: return ar1(*spec.phi, spec.length, spec.seed);
        case GeneratorKind::Sine: return sine(spec.length, *spec.period);
        case GeneratorKind::Mixture: return mixture(*spec.weight, spec.length, *spec.period, spec.seed);
    }
    throw Error(ErrorKind::BadSpec, "unknown generator kind");
}

/// Business days (Mon-Fri) starting at the first weekday on or after `start`.
inline std::vector<Date> business_days(std::size_t n, Date start = Date{std::chrono::year{2000},
                                                                           std::chrono::January,
                                                                           std::chrono::day{3}}) {
    std::vector<Date> out;
    out.reserve(n);
    std::chrono::sys_days day{start};
    while (out.size() < n) {
        const std::chrono::weekday wd{day};
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.emplace_back(day);
        day += std::chrono::days{1};
    }
    return out;
}

inline constexpr double kSynthBasePrice = 100.0;
inline constexpr double kSynthReturnScale = 0.01;

/// Price series of `spec.length` rows whose log returns are
/// kSynthReturnScale times a draw from the generator. Path generators are
/// used as the log price directly; return generators are drawn with
/// length - 1 points and cumulated from zero.
inline PriceSeries to_price_series(const GeneratorSpec& spec, std::string symbol) {
    spec.validate();
    std::vector<double> log_price;
    if (spec.is_path()) {
        log_price = generate(spec).values;
    } else {
        GeneratorSpec returns_spec = spec;
        returns_spec.length = spec.length - 1;
        const auto returns = generate(returns_spec);
        log_price.reserve(spec.length);
        double level = 0.0;
        log_price.push_back(level);
        for (double r : returns.values) {
            level += r;
            log_price.push_back(level);
        }
    }
    PriceSeries out;
    out.symbol = std::move(symbol);
    out.dates = business_days(spec.length);
    out.prices.reserve(spec.length);
    for (double s : log_price) out.prices.push_back(kSynthBasePrice * std::exp(kSynthReturnScale * s));
    return out;
}

}  // namespace effidx::synth
