#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "varflow/config.hpp"
#include "varflow/inference.hpp"
#include "varflow/var.hpp"
#include "varflow/workflow.hpp"

namespace varflow {

/// Rendered table; every cell is final text so CSV and markdown carry the same numbers.
struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string note;
};

[[nodiscard]] std::string render(const Table& table, TableFormat format);

/// "4506.965**"
[[nodiscard]] std::string format_estimate(const CoefficientCell& cell);
/// "4506.965** (1551.461)"
[[nodiscard]] std::string format_cell(const CoefficientCell& cell);

/// Topic-equation coefficients for every triple of one indicator, one column per triple.
/// Rows: "<indicator> (-i)" lags, dummies, Constant, Trend, Num.Obs., R2, R2 Adj. With
/// `own_lags` the topic's own lags ("Topic (-i)") follow each indicator lag; by default they
/// are fitted but left out of the table.
[[nodiscard]] Table var_table(const ReportBundle& bundle, std::string_view indicator, bool own_lags = false);
[[nodiscard]] Table granger_table(const ReportBundle& bundle, std::string_view indicator);
[[nodiscard]] Table adf_table(const ReportBundle& bundle, std::string_view indicator);
[[nodiscard]] Table lag_table(const ReportBundle& bundle, std::string_view indicator);
[[nodiscard]] Table johansen_table(const ReportBundle& bundle, std::string_view indicator);
[[nodiscard]] Table ljung_box_table(const ReportBundle& bundle, std::string_view indicator);
[[nodiscard]] Table error_table(const ReportBundle& bundle);

/// `horizon,point,lower,upper`, one row per horizon 0..H.
[[nodiscard]] std::string irf_csv(const IrfResult& irf);
/// `month,topic,count,normalized`
[[nodiscard]] std::string topic_shares_csv(std::span<const TopicShare> shares);

/// Full-precision statistics of the bundle as JSON text.
[[nodiscard]] std::string statistics_json(const ReportBundle& bundle);

/// Writes every table, IRF file, topic-share file, statistics and manifest into `out`.
/// Files are staged in a sibling directory and swapped in at the end, so `out` is either
/// the previous bundle or the complete new one. Returns paths relative to `out`.
/// Throws IoError when the location is not writable.
std::vector<std::filesystem::path> emit_tables(const ReportBundle& bundle, const std::filesystem::path& out,
                                               TableFormat format);

/// File-name-safe form of a page or topic name.
[[nodiscard]] std::string slug(std::string_view text);

}  // namespace varflow
