#pragma once

#include <string>
#include <vector>

#include <fmt/format.h>

#include "effidx/entropy.hpp"
#include "effidx/fractal.hpp"
#include "effidx/index.hpp"
#include "effidx/ingest.hpp"
#include "effidx/spectral.hpp"

namespace effidx {

struct AnalysisConfig {
    double bandwidth_exponent = 0.6;
    ApEnConfig apen;
    IndexBenchmarks benchmarks;
    unsigned apen_threads = 1;
};

struct AssetAnalysis {
    EfficiencyReport report;
    HurstEstimate local_whittle;
    HurstEstimate gph;
    FractalEstimate hall_wood;
    FractalEstimate genton;
    EntropyEstimate entropy;
    std::vector<std::string> warnings;
};

/// Full per-asset pipeline: fractal dimension on log prices, Hurst exponent
/// and approximate entropy on log returns, composed into the index.
inline AssetAnalysis analyze_asset(const PriceSeries& prices, const AnalysisConfig& config = {}) {
    AssetAnalysis out;
    const auto log_prices = to_log_prices(prices);
    const auto returns = to_log_returns(log_prices);

    out.hall_wood = hall_wood(log_prices);
    out.genton = genton(log_prices);

    const auto pgram = periodogram(returns);
    const auto bandwidth = Bandwidth::for_length(returns.size(), config.bandwidth_exponent);
    out.local_whittle = local_whittle(pgram, bandwidth);
    out.gph = effidx::gph(pgram, bandwidth);

    double raw = apen_raw(returns, config.apen, config.apen_threads);
    if (raw < 0.0) {
        out.warnings.push_back(fmt::format("negative approximate entropy {:.3g} floored at 0", raw));
        raw = 0.0;
    }
    out.entropy = apen_rescaled(raw, config.apen);

    for (const auto* fe : {&out.hall_wood, &out.genton}) {
        if (fe->clamped) {
            out.warnings.push_back(
                fmt::format("{} dimension {:.6f} clamped to {:.6f}", to_string(fe->method), fe->raw, fe->value));
        }
    }

    const MeasureSet measures{out.local_whittle.value, out.gph.value, out.hall_wood.value, out.genton.value,
                              out.entropy.rescaled};
    out.report = efficiency_index(prices.symbol, prices.group, measures, config.benchmarks);
    return out;
}

}  // namespace effidx
