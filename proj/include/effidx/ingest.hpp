#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "effidx/csv.hpp"
#include "effidx/error.hpp"

namespace effidx {

/// Estimators below this length are meaningless; loaders reject shorter input.
inline constexpr std::size_t kMinSeriesLength = 64;

inline constexpr std::string_view kUngrouped = "ungrouped";

using Date = std::chrono::year_month_day;

/// Strict ISO-8601 calendar date, `YYYY-MM-DD`.
inline std::optional<Date> parse_date(std::string_view s) noexcept {
    s = csv::trim(s);
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    const auto y = digits(0, 4);
    const auto m = digits(5, 2);
    const auto d = digits(8, 2);
    if (!y || !m || !d) return std::nullopt;
    const Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                    std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

inline std::string format_date(const Date& d) {
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                       static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

/// Daily price observations of one asset.
struct PriceSeries {
    std::string symbol;
    std::string group{kUngrouped};
    std::vector<Date> dates;
    std::vector<double> prices;

    std::size_t size() const noexcept { return prices.size(); }
};

enum class SeriesKind { LogPrice, LogReturn };

constexpr std::string_view to_string(SeriesKind k) noexcept {
    return k == SeriesKind::LogPrice ? "log-price" : "log-return";
}

struct LogSeries {
    std::string symbol;
    std::vector<double> values;
    SeriesKind kind = SeriesKind::LogPrice;

    std::size_t size() const noexcept { return values.size(); }
    std::span<const double> view() const noexcept { return values; }
};

inline void require_kind(const LogSeries& s, SeriesKind expected) {
    if (s.kind != expected) {
        throw Error(ErrorKind::WrongKind, fmt::format("{}: expected {} series, got {}", s.symbol,
                                                      to_string(expected), to_string(s.kind)));
    }
}

namespace detail {

inline bool getline_counted(std::istream& in, std::string& line, std::size_t& line_no) {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

inline std::string_view strip_bom(std::string_view s) noexcept {
    if (s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
    return s;
}

}  // namespace detail

/// Parses the `date,price` CSV format without the minimum-length check.
/// Malformed rows raise Parse; domain violations raise Validation. Both name
/// the offending line.
inline PriceSeries parse_series(std::istream& in, std::string symbol) {
    PriceSeries out;
    out.symbol = std::move(symbol);

    std::string line;
    std::size_t line_no = 0;
    if (!detail::getline_counted(in, line, line_no)) {
        throw Error(ErrorKind::Parse, fmt::format("{}: empty file, expected header 'date,price'", out.symbol));
    }
    const auto header = csv::split(detail::strip_bom(line));
    if (!header || header->size() != 2 || (*header)[0] != "date" || (*header)[1] != "price") {
        throw Error(ErrorKind::Parse, fmt::format("{}: line 1: expected header 'date,price'", out.symbol));
    }

    while (detail::getline_counted(in, line, line_no)) {
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (!fields || fields->size() != 2) {
            throw Error(ErrorKind::Parse,
                        fmt::format("{}: line {}: expected 2 fields 'date,price'", out.symbol, line_no));
        }
        const auto date = parse_date((*fields)[0]);
        if (!date) {
            throw Error(ErrorKind::Parse,
                        fmt::format("{}: line {}: bad date '{}'", out.symbol, line_no, (*fields)[0]));
        }
        const auto price = csv::parse_double((*fields)[1]);
        if (!price) {
            throw Error(ErrorKind::Parse, fmt::format("{}: line {}: missing or malformed price '{}'",
                                                      out.symbol, line_no, (*fields)[1]));
        }
        if (!std::isfinite(*price) || *price <= 0.0) {
            throw Error(ErrorKind::Validation, fmt::format("{}: line {}: price must be positive and finite, got {}",
                                                           out.symbol, line_no, (*fields)[1]));
        }
        if (!out.dates.empty() &&
            std::chrono::sys_days{*date} <= std::chrono::sys_days{out.dates.back()}) {
            throw Error(ErrorKind::Validation,
                        fmt::format("{}: line {}: date {} not strictly after {}", out.symbol, line_no,
                                    format_date(*date), format_date(out.dates.back())));
        }
        out.dates.push_back(*date);
        out.prices.push_back(*price);
    }
    return out;
}

/// Parses and enforces the minimum length.
inline PriceSeries read_series(std::istream& in, std::string symbol) {
    PriceSeries s = parse_series(in, std::move(symbol));
    if (s.size() < kMinSeriesLength) {
        throw Error(ErrorKind::TooShort, fmt::format("{}: {} observations, need at least {}", s.symbol,
                                                     s.size(), kMinSeriesLength));
    }
    return s;
}

inline PriceSeries load_series(const std::filesystem::path& path, std::string symbol) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
    return read_series(in, std::move(symbol));
}

/// Symbol defaults to the filename stem.
inline PriceSeries load_series(const std::filesystem::path& path) {
    return load_series(path, path.stem().string());
}

inline void write_series(std::ostream& out, std::span<const Date> dates, std::span<const double> prices) {
    out << "date,price\n";
    for (std::size_t i = 0; i < prices.size(); ++i) {
        out << format_date(dates[i]) << ',' << fmt::format("{:.12f}", prices[i]) << '\n';
    }
}

inline LogSeries to_log_prices(const PriceSeries& s) {
    LogSeries out{s.symbol, {}, SeriesKind::LogPrice};
    out.values.reserve(s.size());
    for (double p : s.prices) out.values.push_back(std::log(p));
    return out;
}

inline LogSeries to_log_returns(const LogSeries& s) {
    require_kind(s, SeriesKind::LogPrice);
    if (s.size() < 2) {
        throw Error(ErrorKind::TooShort, fmt::format("{}: need at least 2 log prices", s.symbol));
    }
    LogSeries out{s.symbol, {}, SeriesKind::LogReturn};
    out.values.reserve(s.size() - 1);
    for (std::size_t t = 1; t < s.size(); ++t) out.values.push_back(s.values[t] - s.values[t - 1]);
    return out;
}

// ---------------------------------------------------------------------------
// Manifest

struct ManifestEntry {
    std::string full_name;
    std::string short_name;
    std::string group;
};

class Manifest {
public:
    void insert(std::string symbol, ManifestEntry entry) {
        if (!entries_.emplace(symbol, std::move(entry)).second) {
            throw Error(ErrorKind::Validation, fmt::format("duplicate manifest symbol '{}'", symbol));
        }
    }

    const ManifestEntry* find(std::string_view symbol) const {
        const auto it = entries_.find(std::string(symbol));
        return it == entries_.end() ? nullptr : &it->second;
    }

    std::string group_of(std::string_view symbol) const {
        const auto* e = find(symbol);
        return e ? e->group : std::string(kUngrouped);
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::map<std::string, ManifestEntry, std::less<>>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, ManifestEntry, std::less<>> entries_;
};

/// Header must contain `symbol`, `full_name` and `group`; `short_name` is
/// optional and defaults to the full name. Column order is free.
inline Manifest read_manifest(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::getline_counted(in, line, line_no)) {
        throw Error(ErrorKind::Parse, "manifest: empty file");
    }
    const auto header = csv::split(detail::strip_bom(line));
    if (!header) throw Error(ErrorKind::Parse, "manifest: line 1: malformed header");
    std::optional<std::size_t> col_symbol, col_full, col_short, col_group;
    for (std::size_t i = 0; i < header->size(); ++i) {
        const auto& h = (*header)[i];
        if (h == "symbol") col_symbol = i;
        else if (h == "full_name") col_full = i;
        else if (h == "short_name") col_short = i;
        else if (h == "group") col_group = i;
    }
    if (!col_symbol || !col_full || !col_group) {
        throw Error(ErrorKind::Parse, "manifest: line 1: header must contain symbol,full_name,group");
    }

    Manifest manifest;
    while (detail::getline_counted(in, line, line_no)) {
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (!fields || fields->size() != header->size()) {
            throw Error(ErrorKind::Parse, fmt::format("manifest: line {}: expected {} fields", line_no,
                                                      header->size()));
        }
        const auto& f = *fields;
        if (f[*col_symbol].empty()) {
            throw Error(ErrorKind::Parse, fmt::format("manifest: line {}: empty symbol", line_no));
        }
        ManifestEntry e{f[*col_full], col_short ? f[*col_short] : f[*col_full], f[*col_group]};
        if (e.short_name.empty()) e.short_name = e.full_name;
        manifest.insert(f[*col_symbol], std::move(e));
    }
    return manifest;
}

inline Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open manifest '{}'", path.string()));
    return read_manifest(in);
}

inline void write_manifest(std::ostream& out, const Manifest& manifest) {
    out << "symbol,full_name,short_name,group\n";
    for (const auto& [symbol, e] : manifest.entries()) {
        out << csv::quote(symbol) << ',' << csv::quote(e.full_name) << ',' << csv::quote(e.short_name) << ','
            << csv::quote(e.group) << '\n';
    }
}

}  // namespace effidx
