#include "varflow/workflow.hpp"

#include <fmt/core.h>
#include <map>

#include "varflow/error.hpp"
#include "varflow/linalg.hpp"

namespace varflow {

TripleOptions TripleOptions::from_config(const RunConfig& config) {
    TripleOptions o;
    o.stationarity.alpha = config.alpha;
    o.stationarity.max_d = config.max_d;
    o.stationarity.regression = config.adf_regression;
    o.stationarity.lag = config.adf_lag;
    o.max_lag = config.max_lag;
    o.criterion = config.criterion;
    o.include_constant = config.include_constant;
    o.include_trend = config.include_trend;
    o.drop_leading = config.drop_leading;
    o.granger_d_max = config.granger_d_max;
    o.irf.horizon = config.irf_horizon;
    o.irf.boot_reps = config.irf_reps;
    o.irf.ci_level = config.irf_ci;
    o.irf.orthogonalized = config.irf_orthogonalized;
    o.irf.seed = config.seed;
    o.ljung_box_lags = config.ljung_box_lags;
    o.ljung_box_fit_df = config.ljung_box_fit_df;
    return o;
}

std::uint64_t triple_seed(std::uint64_t seed, std::string_view page, std::string_view topic,
                          std::string_view indicator) {
    // FNV-1a over the triple with separators.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    };
    mix(page);
    mix(topic);
    mix(indicator);
    return derive_seed(seed, h);
}

TripleReport analyze_triple(const TimeSeries& topic, const TimeSeries& indicator, std::span<const TimeSeries> dummies,
                            const TripleOptions& options) {
    TripleReport rep;
    rep.topic = topic.name();
    rep.indicator_label = indicator.name();
    std::string stage;
    try {
        if (topic.name() == indicator.name()) {
            stage = "configuration";
            throw ConfigError(fmt::format("topic and indicator share the name '{}'", topic.name()));
        }
        stage = "stationarity";
        rep.indicator_stationarity = ensure_stationary(indicator, options.stationarity);
        rep.topic_stationarity = ensure_stationary(topic, options.stationarity);

        stage = "align";
        const std::vector<TimeSeries> pair{rep.indicator_stationarity->series, rep.topic_stationarity->series};
        const auto aligned = align(pair);
        PanelDataset data = PanelDataset::from_series(aligned, dummies, options.include_constant, options.include_trend);
        if (options.drop_leading > 0) {
            data = data.drop_leading(options.drop_leading);
        }
        rep.data = data;

        stage = "lag selection";
        rep.lag = select_lag(data, options.max_lag, options.criterion);
        const int p = rep.lag->p;

        stage = "var";
        rep.model = fit_var(data, p);

        stage = "granger";
        rep.granger_indicator_to_topic =
            toda_yamamoto_granger(data, p, options.granger_d_max, indicator.name(), topic.name());
        rep.granger_topic_to_indicator =
            toda_yamamoto_granger(data, p, options.granger_d_max, topic.name(), indicator.name());

        stage = "irf";
        rep.irf = irf(*rep.model, indicator.name(), topic.name(), options.irf);

        stage = "johansen";
        rep.johansen = johansen_trace(data, p);

        stage = "ljung-box";
        rep.ljung_box = ljung_box(*rep.model, options.ljung_box_lags, options.ljung_box_fit_df);
    } catch (const std::exception& e) {
        rep.failed_stage = stage;
        rep.error = e.what();
    }
    return rep;
}

std::size_t ReportBundle::failures() const noexcept {
    std::size_t n = 0;
    for (const auto& t : triples) {
        n += t.ok() ? 0 : 1;
    }
    return n;
}

std::vector<TopicShare> topic_shares(std::span<const TopicSeries> series) {
    std::map<std::string, std::vector<double>> totals;
    std::map<std::string, MonthStamp> starts;
    for (const auto& s : series) {
        auto& v = totals[s.topic];
        if (v.empty()) {
            v.assign(s.series.size(), 0.0);
            starts.emplace(s.topic, s.series.start());
        }
        if (v.size() != s.series.size() || starts.at(s.topic) != s.series.start()) {
            throw AlignmentError(fmt::format("topic '{}' series are not aligned", s.topic));
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += s.series[i];
        }
    }
    std::vector<TopicShare> out;
    for (const auto& [topic, values] : totals) {
        const TimeSeries total(topic, starts.at(topic), values, SeriesRole::topic_count);
        const TimeSeries norm = min_max_normalize(total);
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.push_back({total.month_at(i), topic, values[i], norm[i]});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.month < b.month; });
    return out;
}

ReportBundle run_workflow(const RunConfig& config) {
    config.validate();
    ReportBundle bundle;
    bundle.config = config;
    const MonthRange months = config.window.months();

    PostLoadOptions load_options;
    load_options.pages = config.pages;
    load_options.window = config.window;
    std::vector<Post> posts = load_posts(config.posts, load_options);
    bundle.posts_loaded = posts.size();
    if (config.labels) {
        join_labels(posts, load_labels(*config.labels));
    }
    const Lexicon lexicon = Lexicon::load(config.lexicon);
    std::vector<Post> retained = lexicon_filter(posts, lexicon);
    bundle.posts_retained = retained.size();

    // Posts labeled with topics outside the configured vocabulary (e.g. the outlier topic) are
    // not analyzed but must still carry a label.
    AggregateOptions agg;
    agg.window = months;
    agg.pages = config.pages;
    agg.topics = config.topics;
    for (auto& s : aggregate_monthly(retained, agg)) {
        if (std::find(config.topics.begin(), config.topics.end(), s.topic) != config.topics.end()) {
            bundle.topic_series.push_back(std::move(s));
        }
    }
    bundle.topic_shares = topic_shares(bundle.topic_series);

    for (const auto& spec : config.interruptions) {
        bundle.dummies.push_back(build_interruption(months, spec));
    }

    const TripleOptions base = TripleOptions::from_config(config);
    for (const IndicatorConfig* ind : config.selected_indicators()) {
        TimeSeries series = load_indicator(ind->path, ind->kind, ind->label, months, ind->order);
        bundle.indicator_series.push_back(series);
        for (const auto& page : config.pages) {
            for (const auto& topic : config.topics) {
                const auto it = std::find_if(bundle.topic_series.begin(), bundle.topic_series.end(),
                                             [&](const TopicSeries& s) { return s.page == page && s.topic == topic; });
                TripleOptions options = base;
                options.irf.seed = triple_seed(config.seed, page, topic, ind->key);
                TripleReport rep = analyze_triple(it->series.renamed(topic), series, bundle.dummies, options);
                rep.page = page;
                rep.indicator = ind->key;
                bundle.triples.push_back(std::move(rep));
            }
        }
    }
    return bundle;
}

}  // namespace varflow
