// Batch driver: config file in, table bundle out.
//
//   analyze --config run.cfg [--seed N] [--out DIR] [--format csv|markdown] [--indicator ruble|oil|all]
//
// Exit codes: 0 every triple succeeded, 1 some triples failed (bundle still written),
// 2 configuration, input or output error.

#include <CLI11.hpp>
#include <cstdint>
#include <fmt/core.h>
#include <optional>
#include <string>

#include "varflow/config.hpp"
#include "varflow/error.hpp"
#include "varflow/report.hpp"
#include "varflow/workflow.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VAR workflow over topic volumes and economic indicators"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> indicator;
    bool quiet = false;
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--seed", seed, "bootstrap seed (overrides the config)");
    app.add_option("--out", out, "output directory (overrides the config)");
    app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "markdown"}));
    app.add_option("--indicator", indicator, "indicator key to run, or 'all'");
    app.add_flag("-q,--quiet", quiet, "only print errors");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    varflow::RunConfig config;
    try {
        config = varflow::load_config(config_path);
        if (seed) {
            config.seed = *seed;
        }
        if (out) {
            config.out = std::filesystem::absolute(*out);
        }
        if (format) {
            config.format = *format == "csv" ? varflow::TableFormat::csv : varflow::TableFormat::markdown;
        }
        if (indicator) {
            config.run_indicators.clear();
            if (*indicator != "all") {
                config.run_indicators.push_back(*indicator);
            }
        }
        config.validate();
    } catch (const varflow::Error& e) {
        fmt::print(stderr, "analyze: {}\n", e.what());
        return kExitConfig;
    }

    varflow::ReportBundle bundle;
    try {
        bundle = varflow::run_workflow(config);
    } catch (const varflow::Error& e) {
        fmt::print(stderr, "analyze: {}\n", e.what());
        return kExitConfig;
    }

    try {
        const auto files = varflow::emit_tables(bundle, config.out, config.format);
        if (!quiet) {
            fmt::print("posts loaded: {}, retained by lexicon: {}\n", bundle.posts_loaded, bundle.posts_retained);
            fmt::print("triples: {}, failed: {}\n", bundle.triples.size(), bundle.failures());
            fmt::print("wrote {} files to {}\n", files.size(), config.out.string());
        }
    } catch (const varflow::Error& e) {
        fmt::print(stderr, "analyze: {}\n", e.what());
        return kExitConfig;
    }

    for (const auto& t : bundle.triples) {
        if (!t.ok()) {
            fmt::print(stderr, "failed: {} | {} | {} at {}: {}\n", t.page, t.topic, t.indicator, t.failed_stage, t.error);
        }
    }
    return bundle.failures() == 0 ? kExitOk : kExitPartial;
}
