#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "effidx/pipeline.hpp"
#include "effidx/report_io.hpp"
#include "svg.hpp"

namespace effidx::app {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
    out << text;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
}

std::optional<Manifest> maybe_manifest(const RunConfig& cfg) {
    if (cfg.manifest_path.empty()) return std::nullopt;
    return load_manifest(cfg.manifest_path);
}

std::string label_for(const EfficiencyReport& r, const std::optional<Manifest>& manifest) {
    if (manifest) {
        if (const auto* e = manifest->find(r.symbol)) return e->short_name;
    }
    return r.symbol;
}

std::vector<EfficiencyReport> load_reports(const RunConfig& cfg) {
    const auto path = resolve_report(cfg.input_dir);
    if (!fs::is_regular_file(path)) {
        throw Error(ErrorKind::MissingReport, fmt::format("'{}' not found", path.string()));
    }
    auto reports = report_io::load_csv(path);
    if (reports.empty()) throw Error(ErrorKind::Validation, fmt::format("'{}' has no rows", path.string()));
    return reports;
}

struct Slot {
    std::optional<EfficiencyReport> report;
    std::vector<std::string> warnings;
    std::string error;
};

template <class Body>
int guarded(std::ostream& diag, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        diag << "ERROR " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace

fs::path resolve_report(const fs::path& input) {
    if (input.empty()) return "report.csv";
    if (fs::is_directory(input)) return input / "report.csv";
    return input;
}

AnalyzeResult cmd_analyze(const RunConfig& cfg, std::ostream& diag) {
    AnalyzeResult result;
    try {
        if (!(cfg.bandwidth_exponent > 0.0 && cfg.bandwidth_exponent < 1.0)) {
            throw Error(ErrorKind::Validation, "bandwidth exponent must lie in (0,1)");
        }
        if (!fs::is_directory(cfg.input_dir)) {
            throw Error(ErrorKind::Io, fmt::format("input directory '{}' does not exist", cfg.input_dir.string()));
        }
        const auto manifest = maybe_manifest(cfg);

        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(cfg.input_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            diag << "ERROR no input series in '" << cfg.input_dir.string() << "'\n";
            result.exit_code = kExitData;
            return result;
        }

        AnalysisConfig analysis;
        analysis.bandwidth_exponent = cfg.bandwidth_exponent;
        analysis.apen = {cfg.apen_embedding, cfg.apen_tolerance};
        analysis.apen.validate();

        std::vector<Slot> slots(files.size());
        std::atomic<std::size_t> next{0};
        const auto work = [&] {
            for (std::size_t i = next++; i < files.size(); i = next++) {
                try {
                    auto series = load_series(files[i]);
                    if (manifest) series.group = manifest->group_of(series.symbol);
                    auto out = analyze_asset(series, analysis);
                    slots[i].report = std::move(out.report);
                    slots[i].warnings = std::move(out.warnings);
                } catch (const Error& e) {
                    slots[i].error = e.what();
                }
            }
        };
        unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, files.size()));
        if (threads <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        }

        std::vector<EfficiencyReport> reports;
        for (std::size_t i = 0; i < files.size(); ++i) {
            const auto symbol = files[i].stem().string();
            for (const auto& w : slots[i].warnings) diag << "WARN " << symbol << ' ' << w << '\n';
            if (slots[i].report) {
                reports.push_back(std::move(*slots[i].report));
            } else {
                diag << "WARN " << symbol << ' ' << slots[i].error << '\n';
                result.failed.push_back(symbol);
            }
        }
        if (reports.empty()) {
            diag << "ERROR all " << files.size() << " input series failed\n";
            result.exit_code = kExitData;
            return result;
        }

        result.reports = rank(std::move(reports));
        ensure_dir(cfg.output_dir);
        report_io::save_csv(cfg.output_dir / "report.csv", result.reports);
        report_io::save_json(cfg.output_dir / "report.json", result.reports);
    } catch (const Error& e) {
        diag << "ERROR " << e.what() << '\n';
        result.exit_code = kExitData;
    }
    return result;
}

int cmd_rank(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const auto manifest = maybe_manifest(cfg);
        const auto ranked = rank(load_reports(cfg));
        ensure_dir(cfg.output_dir);
        report_io::save_csv(cfg.output_dir / "rank.csv", ranked);

        std::ostringstream contrib;
        contrib << "symbol,group,rank,contrib_h,contrib_d,contrib_ae,share_h,share_d,share_ae\n";
        for (const auto& r : ranked) {
            const auto s = r.contributions.shares();
            contrib << csv::quote(r.symbol) << ',' << csv::quote(r.group) << ',' << r.rank << ','
                    << fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}", r.contributions.h,
                                   r.contributions.d, r.contributions.ae, s.h, s.d, s.ae)
                    << '\n';
        }
        write_text(cfg.output_dir / "contributions.csv", contrib.str());

        if (cfg.emit_svg) {
            std::vector<std::string> labels;
            std::vector<double> ei;
            for (const auto& r : ranked) {
                labels.push_back(label_for(r, manifest));
                ei.push_back(r.ei);
            }
            write_text(cfg.output_dir / "ei_ranking.svg",
                       svg::bar_chart("Efficiency Index (most efficient first)", labels, ei, "EI"));

            const std::vector<std::string> names = {"Hurst exponent", "Fractal dimension", "Approximate entropy"};
            const auto stacked = [&](const std::vector<EfficiencyReport>& order, std::string_view title) {
                std::vector<std::string> lab;
                std::vector<std::vector<double>> series(3);
                for (const auto& r : order) {
                    lab.push_back(label_for(r, manifest));
                    series[0].push_back(r.contributions.h);
                    series[1].push_back(r.contributions.d);
                    series[2].push_back(r.contributions.ae);
                }
                return svg::stacked_bar_chart(title, lab, names, series, "EI squared contribution");
            };
            write_text(cfg.output_dir / "contributions.svg", stacked(ranked, "Contributions to EI squared"));
            auto by_group = ranked;
            std::stable_sort(by_group.begin(), by_group.end(),
                             [](const EfficiencyReport& a, const EfficiencyReport& b) { return a.group < b.group; });
            write_text(cfg.output_dir / "contributions_by_group.svg",
                       stacked(by_group, "Contributions to EI squared by group"));
        }
        return kExitOk;
    });
}

int cmd_groups(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const auto manifest = maybe_manifest(cfg);
        const auto reports = load_reports(cfg);
        const auto means = manifest ? group_means(reports, *manifest) : group_means(reports);
        ensure_dir(cfg.output_dir);
        std::ostringstream out;
        out << "group,mean_ei,count\n";
        for (const auto& g : means) out << csv::quote(g.group) << ',' << fmt::format("{:.6f}", g.mean_ei) << ',' << g.count << '\n';
        write_text(cfg.output_dir / "groups.csv", out.str());
        if (cfg.emit_svg) {
            std::vector<std::string> labels;
            std::vector<double> values;
            for (const auto& g : means) {
                labels.push_back(g.group);
                values.push_back(g.mean_ei);
            }
            write_text(cfg.output_dir / "groups.svg",
                       svg::bar_chart("Average Efficiency Index by group", labels, values, "mean EI"));
        }
        return kExitOk;
    });
}

int cmd_scatter(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const auto reports = rank(load_reports(cfg));
        const auto fit = dh_regression(reports);
        ensure_dir(cfg.output_dir);
        std::ostringstream out;
        out << "symbol,h_avg,d_avg\n";
        std::vector<double> hs;
        std::vector<double> ds;
        for (const auto& r : reports) {
            hs.push_back(r.measures.h_avg());
            ds.push_back(r.measures.d_avg());
            out << csv::quote(r.symbol) << ',' << fmt::format("{:.6f},{:.6f}", hs.back(), ds.back()) << '\n';
        }
        out << fmt::format("#fit,{:.6f},{:.6f}\n", fit.slope, fit.intercept);
        write_text(cfg.output_dir / "scatter.csv", out.str());
        if (cfg.emit_svg) {
            write_text(cfg.output_dir / "scatter.svg",
                       svg::scatter_chart("Fractal dimension vs Hurst exponent", hs, ds, fit.slope, fit.intercept,
                                          "H (average)", "D (average)"));
        }
        return kExitOk;
    });
}

int cmd_synth(const synth::GeneratorSpec& spec, const fs::path& out, std::ostream& info, std::ostream& diag) {
    try {
        spec.validate();
    } catch (const Error& e) {
        diag << "ERROR " << e.what() << '\n';
        return kExitUsage;
    }
    return guarded(diag, [&] {
        const auto series = synth::to_price_series(spec, out.stem().string());
        if (out.has_parent_path()) ensure_dir(out.parent_path());
        std::ofstream file(out, std::ios::binary);
        if (!file) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", out.string()));
        write_series(file, series.dates, series.prices);
        info << "seed " << spec.seed << '\n';
        return kExitOk;
    });
}

}  // namespace effidx::app
