#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "effidx/error.hpp"
#include "effidx/ingest.hpp"
#include "effidx/stats.hpp"

namespace effidx {

/// The five raw estimates of one asset. The index uses the Hurst and
/// fractal-dimension averages and the rescaled entropy.
struct MeasureSet {
    double h_lw = 0.5;
    double h_gph = 0.5;
    double d_hw = 1.5;
    double d_g = 1.5;
    double apen_rescaled = 1.0;

    double h_avg() const noexcept { return (h_lw + h_gph) / 2.0; }
    double d_avg() const noexcept { return (d_hw + d_g) / 2.0; }
};

struct MeasureBenchmark {
    double target;
    double range;

    double deviation_squared(double estimate) const noexcept {
        const double z = (estimate - target) / range;
        return z * z;
    }
};

/// Efficient-market values and ranges of each measure.
struct IndexBenchmarks {
    MeasureBenchmark hurst{0.5, 1.0};
    MeasureBenchmark fractal{1.5, 1.0};
    MeasureBenchmark entropy{1.0, 2.0};
};

/// Squared normalized deviations; their sum is ei^2.
struct Contributions {
    double h = 0.0;
    double d = 0.0;
    double ae = 0.0;

    double total() const noexcept { return h + d + ae; }

    struct Shares {
        double h, d, ae;
    };
    Shares shares() const noexcept {
        const double t = total();
        if (!(t > 0.0)) return {0.0, 0.0, 0.0};
        return {h / t, d / t, ae / t};
    }
};

struct EfficiencyReport {
    std::string symbol;
    std::string group{kUngrouped};
    MeasureSet measures;
    double ei = 0.0;
    Contributions contributions;
    std::size_t rank = 0;  // 1 = most efficient, 0 = unranked
};

/// Euclidean distance of the normalized measures from the efficient market.
/// Entropy values above 1 enter as-is.
inline EfficiencyReport efficiency_index(const MeasureSet& m, const IndexBenchmarks& b = {}) {
    EfficiencyReport r;
    r.measures = m;
    r.contributions.h = b.hurst.deviation_squared(m.h_avg());
    r.contributions.d = b.fractal.deviation_squared(m.d_avg());
    r.contributions.ae = b.entropy.deviation_squared(m.apen_rescaled);
    r.ei = std::sqrt(r.contributions.total());
    return r;
}

inline EfficiencyReport efficiency_index(std::string symbol, std::string group, const MeasureSet& m,
                                         const IndexBenchmarks& b = {}) {
    auto r = efficiency_index(m, b);
    r.symbol = std::move(symbol);
    r.group = std::move(group);
    return r;
}

/// Ascending by ei, ties broken by symbol; assigns ranks 1..N.
inline std::vector<EfficiencyReport> rank(std::vector<EfficiencyReport> reports) {
    std::sort(reports.begin(), reports.end(), [](const EfficiencyReport& a, const EfficiencyReport& b) {
        if (a.ei != b.ei) return a.ei < b.ei;
        return a.symbol < b.symbol;
    });
    for (std::size_t i = 0; i < reports.size(); ++i) reports[i].rank = i + 1;
    return reports;
}

struct GroupMean {
    std::string group;
    double mean_ei = 0.0;
    std::size_t count = 0;
};

namespace detail {

template <class GroupOf>
std::vector<GroupMean> group_means_by(std::span<const EfficiencyReport> reports, GroupOf&& group_of) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& r : reports) {
        auto& slot = acc[group_of(r)];
        slot.first += r.ei;
        ++slot.second;
    }
    std::vector<GroupMean> out;
    out.reserve(acc.size());
    for (const auto& [group, sum_count] : acc) {
        out.push_back({group, sum_count.first / static_cast<double>(sum_count.second), sum_count.second});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const GroupMean& a, const GroupMean& b) { return a.mean_ei < b.mean_ei; });
    return out;
}

}  // namespace detail

/// Mean ei per manifest group, ascending by mean (ties by group name).
inline std::vector<GroupMean> group_means(std::span<const EfficiencyReport> reports, const Manifest& manifest) {
    return detail::group_means_by(reports, [&](const EfficiencyReport& r) {
        const auto* entry = manifest.find(r.symbol);
        if (!entry) throw Error(ErrorKind::UnknownSymbol, fmt::format("'{}' not in manifest", r.symbol));
        return entry->group;
    });
}

/// Mean ei per group using each report's own group label.
inline std::vector<GroupMean> group_means(std::span<const EfficiencyReport> reports) {
    return detail::group_means_by(reports, [](const EfficiencyReport& r) { return r.group; });
}

/// OLS of d_avg on h_avg.
inline stats::LinearFit dh_regression(std::span<const EfficiencyReport> reports) {
    if (reports.size() < 3) {
        throw Error(ErrorKind::DegenerateRegressor,
                    fmt::format("D-H regression needs at least 3 reports, got {}", reports.size()));
    }
    std::vector<double> h;
    std::vector<double> d;
    h.reserve(reports.size());
    d.reserve(reports.size());
    for (const auto& r : reports) {
        h.push_back(r.measures.h_avg());
        d.push_back(r.measures.d_avg());
    }
    if (std::all_of(h.begin(), h.end(), [&](double v) { return v == h.front(); })) {
        throw Error(ErrorKind::DegenerateRegressor, "all h_avg values are equal");
    }
    return stats::ols(h, d);
}

}  // namespace effidx
