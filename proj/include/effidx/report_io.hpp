#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "effidx/csv.hpp"
#include "effidx/error.hpp"
#include "effidx/index.hpp"

namespace effidx::report_io {

inline constexpr std::array<std::string_view, 14> kColumns = {
    "symbol", "group", "h_lw", "h_gph", "h_avg", "d_hw", "d_g",
    "d_avg",  "apen",  "ei",   "rank",  "contrib_h", "contrib_d", "contrib_ae"};

inline std::string header_line() {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) out.push_back(',');
        out += kColumns[i];
    }
    return out;
}

/// Fixed six-decimal formatting so identical inputs give identical bytes.
inline void write_csv(std::ostream& out, std::span<const EfficiencyReport> reports) {
    out << header_line() << '\n';
    for (const auto& r : reports) {
        const auto& m = r.measures;
        out << csv::quote(r.symbol) << ',' << csv::quote(r.group) << ','
            << fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{:.6f},{:.6f},{:.6f}", m.h_lw,
                           m.h_gph, m.h_avg(), m.d_hw, m.d_g, m.d_avg(), m.apen_rescaled, r.ei, r.rank,
                           r.contributions.h, r.contributions.d, r.contributions.ae)
            << '\n';
    }
}

/// Reads the report CSV. Averages are recomputed from their components;
/// ei, rank and contributions are taken from the file.
inline std::vector<EfficiencyReport> read_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    const auto next = [&] {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };
    if (!next()) throw Error(ErrorKind::Parse, "report: empty file");
    const auto header = csv::split(line);
    if (!header || header->size() != kColumns.size()) {
        throw Error(ErrorKind::Parse, fmt::format("report: line 1: expected header '{}'", header_line()));
    }
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if ((*header)[i] != kColumns[i]) {
            throw Error(ErrorKind::Parse, fmt::format("report: line 1: expected header '{}'", header_line()));
        }
    }

    std::vector<EfficiencyReport> out;
    while (next()) {
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split(line);
        if (!f || f->size() != kColumns.size()) {
            throw Error(ErrorKind::Parse, fmt::format("report: line {}: expected {} fields", line_no, kColumns.size()));
        }
        const auto num = [&](std::size_t col) {
            const auto v = csv::parse_double((*f)[col]);
            if (!v) {
                throw Error(ErrorKind::Parse,
                            fmt::format("report: line {}: column {} is not a number", line_no, kColumns[col]));
            }
            return *v;
        };
        EfficiencyReport r;
        r.symbol = (*f)[0];
        r.group = (*f)[1];
        r.measures = {num(2), num(3), num(5), num(6), num(8)};
        r.ei = num(9);
        const auto rank = csv::parse_int((*f)[10]);
        if (!rank || *rank < 0) {
            throw Error(ErrorKind::Parse, fmt::format("report: line {}: bad rank '{}'", line_no, (*f)[10]));
        }
        r.rank = static_cast<std::size_t>(*rank);
        r.contributions = {num(11), num(12), num(13)};
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::ordered_json to_json(const EfficiencyReport& r) {
    const auto shares = r.contributions.shares();
    nlohmann::ordered_json j;
    j["symbol"] = r.symbol;
    j["group"] = r.group;
    j["h_lw"] = r.measures.h_lw;
    j["h_gph"] = r.measures.h_gph;
    j["h_avg"] = r.measures.h_avg();
    j["d_hw"] = r.measures.d_hw;
    j["d_g"] = r.measures.d_g;
    j["d_avg"] = r.measures.d_avg();
    j["apen"] = r.measures.apen_rescaled;
    j["ei"] = r.ei;
    j["rank"] = r.rank;
    j["contrib_h"] = r.contributions.h;
    j["contrib_d"] = r.contributions.d;
    j["contrib_ae"] = r.contributions.ae;
    j["share_h"] = shares.h;
    j["share_d"] = shares.d;
    j["share_ae"] = shares.ae;
    return j;
}

inline nlohmann::ordered_json to_json(std::span<const EfficiencyReport> reports) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

inline EfficiencyReport from_json(const nlohmann::ordered_json& j) {
    try {
        EfficiencyReport r;
        r.symbol = j.at("symbol").get<std::string>();
        r.group = j.at("group").get<std::string>();
        r.measures = {j.at("h_lw").get<double>(), j.at("h_gph").get<double>(), j.at("d_hw").get<double>(),
                      j.at("d_g").get<double>(), j.at("apen").get<double>()};
        r.ei = j.at("ei").get<double>();
        r.rank = j.at("rank").get<std::size_t>();
        r.contributions = {j.at("contrib_h").get<double>(), j.at("contrib_d").get<double>(),
                           j.at("contrib_ae").get<double>()};
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, fmt::format("report json: {}", e.what()));
    }
}

inline void write_json(std::ostream& out, std::span<const EfficiencyReport> reports) {
    out << to_json(reports).dump(2) << '\n';
}

inline void save_csv(const std::filesystem::path& path, std::span<const EfficiencyReport> reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
    write_csv(out, reports);
}

inline void save_json(const std::filesystem::path& path, std::span<const EfficiencyReport> reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
    write_json(out, reports);
}

inline std::vector<EfficiencyReport> load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open report '{}'", path.string()));
    return read_csv(in);
}

}  // namespace effidx::report_io
