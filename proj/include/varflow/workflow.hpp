#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varflow/config.hpp"
#include "varflow/corpus.hpp"
#include "varflow/diagnostics.hpp"
#include "varflow/inference.hpp"
#include "varflow/stationarity.hpp"
#include "varflow/var.hpp"

namespace varflow {

/// Knobs for one (topic, indicator) analysis; a subset of RunConfig.
struct TripleOptions {
    StationarityOptions stationarity;
    int max_lag = 6;
    LagCriterion criterion = LagCriterion::sc;
    bool include_constant = true;
    bool include_trend = true;
    int drop_leading = 0;
    int granger_d_max = 0;
    IrfOptions irf;
    int ljung_box_lags = 10;
    int ljung_box_fit_df = 0;

    static TripleOptions from_config(const RunConfig& config);
};

/// Results of the full VAR workflow for one (page, topic, indicator) triple.
/// Stages that ran before a failure keep their results.
struct TripleReport {
    std::string page;
    std::string topic;
    std::string indicator;        ///< indicator key
    std::string indicator_label;  ///< endogenous series name of the indicator

    std::optional<StationarityResult> indicator_stationarity;
    std::optional<StationarityResult> topic_stationarity;
    std::optional<PanelDataset> data;
    std::optional<LagSelection> lag;
    std::optional<VarModel> model;
    std::optional<GrangerResult> granger_indicator_to_topic;
    std::optional<GrangerResult> granger_topic_to_indicator;
    std::optional<IrfResult> irf;
    std::optional<JohansenResult> johansen;
    std::vector<LjungBoxResult> ljung_box;

    std::string failed_stage;  ///< empty on success
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return failed_stage.empty(); }
};

/// Stable per-triple bootstrap seed, independent of which other triples run.
[[nodiscard]] std::uint64_t triple_seed(std::uint64_t seed, std::string_view page, std::string_view topic,
                                        std::string_view indicator);

/// stationarity -> align -> lag selection -> VAR with dummies -> Granger both ways -> IRF ->
/// Johansen and Ljung-Box. Endogenous order is (indicator, topic); the IRF traces an
/// indicator shock on the topic. Never throws for analysis failures; they are recorded.
[[nodiscard]] TripleReport analyze_triple(const TimeSeries& topic, const TimeSeries& indicator,
                                          std::span<const TimeSeries> dummies, const TripleOptions& options);

struct TopicShare {
    MonthStamp month;
    std::string topic;
    double count = 0.0;
    double normalized = 0.0;
};

struct ReportBundle {
    RunConfig config;
    std::vector<TopicSeries> topic_series;
    std::vector<TimeSeries> indicator_series;
    std::vector<TimeSeries> dummies;
    std::vector<TopicShare> topic_shares;
    std::vector<TripleReport> triples;
    std::size_t posts_loaded = 0;
    std::size_t posts_retained = 0;

    [[nodiscard]] std::size_t failures() const noexcept;
};

/// Loads inputs, filters by lexicon, aggregates, builds indicators and dummies, and runs
/// analyze_triple for every (page, topic, selected indicator). Input and configuration
/// problems throw; per-triple failures are recorded in the bundle.
[[nodiscard]] ReportBundle run_workflow(const RunConfig& config);

/// Per-topic monthly totals across pages, min-max normalized.
[[nodiscard]] std::vector<TopicShare> topic_shares(std::span<const TopicSeries> series);

}  // namespace varflow
