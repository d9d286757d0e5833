#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varflow/corpus.hpp"
#include "varflow/stationarity.hpp"
#include "varflow/var.hpp"

namespace varflow {

enum class TableFormat { csv, markdown };

struct IndicatorConfig {
    std::string key;    ///< short id used on the command line ("ruble", "oil")
    std::string label;  ///< series name in tables ("Ruble")
    std::filesystem::path path;
    IndicatorKind kind = IndicatorKind::monthly_mean;
    InverseOrder order = InverseOrder::invert_then_average;
};

/// Everything a run needs. Paths are absolute once loaded.
struct RunConfig {
    std::filesystem::path posts;
    std::optional<std::filesystem::path> labels;
    std::filesystem::path lexicon;
    std::vector<IndicatorConfig> indicators;
    DateWindow window{};
    std::vector<std::string> pages;
    std::vector<std::string> topics;
    std::vector<InterruptionSpec> interruptions;

    double alpha = 0.05;
    int max_d = 2;
    AdfRegression adf_regression = AdfRegression::constant_and_trend;
    std::optional<int> adf_lag;
    int max_lag = 6;
    LagCriterion criterion = LagCriterion::sc;
    bool include_constant = true;
    bool include_trend = true;
    int drop_leading = 0;
    int granger_d_max = 0;
    int irf_horizon = 10;
    int irf_reps = 500;
    double irf_ci = 0.95;
    bool irf_orthogonalized = true;
    std::uint64_t seed = 0;
    int ljung_box_lags = 10;
    int ljung_box_fit_df = 0;

    std::vector<std::string> run_indicators;  ///< empty runs every indicator
    std::filesystem::path out = "report";
    TableFormat format = TableFormat::csv;

    /// Throws ConfigError when a field is out of range or inconsistent.
    void validate() const;
    [[nodiscard]] const IndicatorConfig& indicator(std::string_view key) const;
    [[nodiscard]] std::vector<const IndicatorConfig*> selected_indicators() const;
};

/// Parses the flat `key = value` format; relative paths resolve against `base_dir`.
[[nodiscard]] RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                                     std::string_view source = "<config>");
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Serializes a config in the same format (absolute paths); parse_config reads it back.
[[nodiscard]] std::string format_config(const RunConfig& config);

[[nodiscard]] std::string_view to_string(TableFormat f);
[[nodiscard]] std::string_view to_string(IndicatorKind k);
[[nodiscard]] std::string_view to_string(InverseOrder o);
[[nodiscard]] std::string_view to_string(AdfRegression r);

}  // namespace varflow
