// effidx: efficiency index of financial time series from the command line.

#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace effidx;

    CLI::App app{"Long-memory, fractal-dimension and entropy based market efficiency ranking"};
    app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
    app.require_subcommand(1);

    app::RunConfig cfg;
    std::string input, manifest, out;
    app.add_option("--input", input, "Directory of price CSVs (analyze) or report.csv / its directory");
    app.add_option("--manifest", manifest, "Manifest CSV: symbol,full_name,group");
    app.add_option("--out", out, "Output directory (analyze/rank/groups/scatter) or CSV file (synth)");
    app.add_option("--bandwidth-exp", cfg.bandwidth_exponent, "Bandwidth exponent, m = floor(T^e)")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--apen-m", cfg.apen_embedding, "ApEn embedding dimension")->check(CLI::PositiveNumber);
    app.add_option("--apen-r", cfg.apen_tolerance, "ApEn tolerance as a multiple of the standard deviation")
        ->check(CLI::Range(0.0, 1.0));
    app.add_flag("--svg", cfg.emit_svg, "Also write SVG charts");
    app.add_option("--threads", cfg.threads, "Worker threads for analyze (0 = all cores)");

    std::uint64_t seed = 0;
    std::string kind = "fgn";
    double hurst = 0.0, phi = 0.0, period = 20.0, weight = 0.5;
    std::size_t length = 4096;
    auto* seed_opt = app.add_option("--seed", seed, "Generator seed (random if omitted)");
    app.add_option("--kind", kind, "synth: fgn, fbm, iid-gaussian, ar1, sine, mixture");
    auto* hurst_opt = app.add_option("--hurst", hurst, "synth: Hurst exponent (fgn, fbm)");
    auto* phi_opt = app.add_option("--phi", phi, "synth: AR(1) coefficient");
    auto* period_opt = app.add_option("--period", period, "synth: sine period in samples (default 20)");
    auto* weight_opt = app.add_option("--weight", weight, "synth: noise weight for mixture (default 0.5)");
    app.add_option("--length", length, "synth: number of rows (default 4096)");

    auto* analyze = app.add_subcommand("analyze", "Estimate measures and the efficiency index for every series");
    auto* rank = app.add_subcommand("rank", "Rank assets from report.csv; contribution decomposition");
    auto* groups = app.add_subcommand("groups", "Average efficiency index per group");
    auto* scatter = app.add_subcommand("scatter", "Fractal dimension vs Hurst exponent with OLS fit");
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic price CSV");
    for (auto* sub : {analyze, rank, groups, scatter, synth_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return app::kExitUsage;
    }

    cfg.input_dir = input;
    cfg.manifest_path = manifest;
    if (!out.empty()) cfg.output_dir = out;

    if (analyze->parsed()) {
        if (input.empty()) {
            std::cerr << "ERROR analyze requires --input <dir>\n";
            return app::kExitUsage;
        }
        const auto result = app::cmd_analyze(cfg, std::cerr);
        if (result.exit_code == app::kExitOk) {
            std::cout << "analyzed " << result.reports.size() << " series, " << result.failed.size()
                      << " excluded; wrote " << (cfg.output_dir / "report.csv").string() << '\n';
        }
        return result.exit_code;
    }
    if (rank->parsed()) return app::cmd_rank(cfg, std::cerr);
    if (groups->parsed()) return app::cmd_groups(cfg, std::cerr);
    if (scatter->parsed()) return app::cmd_scatter(cfg, std::cerr);

    // synth
    const auto parsed_kind = synth::parse_generator_kind(kind);
    if (!parsed_kind) {
        std::cerr << "ERROR BadSpec: unknown generator kind '" << kind << "'\n";
        return app::kExitUsage;
    }
    if (out.empty()) {
        std::cerr << "ERROR synth requires --out <file.csv>\n";
        return app::kExitUsage;
    }
    synth::GeneratorSpec spec;
    spec.kind = *parsed_kind;
    spec.length = length;
    spec.seed = seed_opt->count() ? seed : std::random_device{}();
    const bool wants_hurst = spec.kind == synth::GeneratorKind::Fgn || spec.kind == synth::GeneratorKind::Fbm;
    const bool wants_period = spec.kind == synth::GeneratorKind::Sine || spec.kind == synth::GeneratorKind::Mixture;
    if (wants_hurst || hurst_opt->count()) spec.hurst = hurst_opt->count() ? hurst : 0.5;
    if (spec.kind == synth::GeneratorKind::Ar1 || phi_opt->count()) spec.phi = phi;
    if (wants_period || period_opt->count()) spec.period = period;
    if (spec.kind == synth::GeneratorKind::Mixture || weight_opt->count()) spec.weight = weight;
    return app::cmd_synth(spec, out, std::cout, std::cerr);
}
