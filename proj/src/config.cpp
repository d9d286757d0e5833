#include "varflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/core.h>
#include <fmt/ranges.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "varflow/error.hpp"

namespace varflow {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep = ',') {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        const std::string item = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("'{}' expects a number, got '{}'", key, value));
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "yes" || value == "1") {
        return true;
    }
    if (value == "false" || value == "no" || value == "0") {
        return false;
    }
    throw ConfigError(fmt::format("'{}' expects true or false, got '{}'", key, value));
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
    const std::filesystem::path p{std::string(value)};
    return std::filesystem::absolute(p.is_absolute() ? p : base / p).lexically_normal();
}

std::string format_double(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view to_string(TableFormat f) { return f == TableFormat::csv ? "csv" : "markdown"; }
std::string_view to_string(IndicatorKind k) { return k == IndicatorKind::inverse_rate ? "inverse_rate" : "monthly_mean"; }
std::string_view to_string(InverseOrder o) {
    return o == InverseOrder::invert_then_average ? "invert_then_average" : "average_then_invert";
}
std::string_view to_string(AdfRegression r) {
    return r == AdfRegression::constant ? "constant" : "constant_and_trend";
}

void RunConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
    }
    if (max_lag < 1) {
        throw ConfigError(fmt::format("max_lag must be >= 1, got {}", max_lag));
    }
    if (irf_horizon < 1) {
        throw ConfigError(fmt::format("irf.horizon must be >= 1, got {}", irf_horizon));
    }
    if (irf_reps < 0 || !(irf_ci > 0.0 && irf_ci < 1.0)) {
        throw ConfigError("irf.reps must be >= 0 and irf.ci in (0, 1)");
    }
    if (max_d < 0 || granger_d_max < 0 || drop_leading < 0) {
        throw ConfigError("max_d, granger.d_max and sample.drop_leading must be >= 0");
    }
    if (ljung_box_lags < 1 || ljung_box_fit_df < 0 || ljung_box_lags - ljung_box_fit_df < 1) {
        throw ConfigError("ljung_box.lags must exceed ljung_box.fit_df");
    }
    if (posts.empty() || lexicon.empty()) {
        throw ConfigError("config must name 'posts' and 'lexicon' files");
    }
    if (indicators.empty()) {
        throw ConfigError("config defines no indicator");
    }
    if (pages.empty() || topics.empty()) {
        throw ConfigError("config must list 'pages' and 'topics'");
    }
    if (window.last < window.first) {
        throw ConfigError("window end precedes its start");
    }
    std::set<std::string> keys;
    for (const auto& ind : indicators) {
        if (ind.path.empty()) {
            throw ConfigError(fmt::format("indicator '{}' has no path", ind.key));
        }
        if (!keys.insert(ind.key).second) {
            throw ConfigError(fmt::format("indicator '{}' defined twice", ind.key));
        }
    }
    for (const auto& key : run_indicators) {
        (void)indicator(key);
    }
    for (const auto& spec : interruptions) {
        if (!window.contains(spec.cutoff)) {
            throw ConfigError(fmt::format("interruption '{}' cutoff {} lies outside the study window", spec.name,
                                          format_date(spec.cutoff)));
        }
    }
}

const IndicatorConfig& RunConfig::indicator(std::string_view key) const {
    for (const auto& ind : indicators) {
        if (ind.key == key) {
            return ind;
        }
    }
    throw ConfigError(fmt::format("unknown indicator '{}'", key));
}

std::vector<const IndicatorConfig*> RunConfig::selected_indicators() const {
    std::vector<const IndicatorConfig*> out;
    for (const auto& ind : indicators) {
        if (run_indicators.empty() ||
            std::find(run_indicators.begin(), run_indicators.end(), ind.key) != run_indicators.end()) {
            out.push_back(&ind);
        }
    }
    return out;
}

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir, std::string_view source) {
    RunConfig cfg;
    std::map<std::string, IndicatorConfig> indicators;
    std::vector<std::string> indicator_order;
    std::set<std::string> seen;
    std::optional<std::chrono::year_month_day> window_start;
    std::optional<std::chrono::year_month_day> window_end;

    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, number));
        }
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        const auto fail = [&](const std::string& msg) {
            return ConfigError(fmt::format("{}:{}: {}", source, number, msg));
        };
        if (key != "interruption" && !seen.insert(key).second) {
            throw fail(fmt::format("duplicate key '{}'", key));
        }
        try {
            if (key == "posts") {
                cfg.posts = resolve(base_dir, value);
            } else if (key == "labels") {
                if (!value.empty()) {
                    cfg.labels = resolve(base_dir, value);
                }
            } else if (key == "lexicon") {
                cfg.lexicon = resolve(base_dir, value);
            } else if (key == "window.start") {
                window_start = parse_iso_date(value);
            } else if (key == "window.end") {
                window_end = parse_iso_date(value);
            } else if (key == "pages") {
                cfg.pages = split_list(value);
            } else if (key == "topics") {
                cfg.topics = split_list(value);
            } else if (key == "interruption") {
                const auto bar = value.rfind('|');
                if (bar == std::string::npos) {
                    throw fail("interruption expects 'name | YYYY-MM-DD'");
                }
                cfg.interruptions.push_back(
                    {trim(std::string_view(value).substr(0, bar)), parse_iso_date(trim(std::string_view(value).substr(bar + 1)))});
            } else if (key.starts_with("indicator.")) {
                const auto parts = split_list(key, '.');
                if (parts.size() != 3) {
                    throw fail(fmt::format("unknown key '{}'", key));
                }
                if (!indicators.contains(parts[1])) {
                    indicator_order.push_back(parts[1]);
                    indicators[parts[1]].key = parts[1];
                    indicators[parts[1]].label = parts[1];
                }
                auto& ind = indicators[parts[1]];
                if (parts[2] == "path") {
                    ind.path = resolve(base_dir, value);
                } else if (parts[2] == "label") {
                    ind.label = value;
                } else if (parts[2] == "kind") {
                    if (value == "inverse_rate") {
                        ind.kind = IndicatorKind::inverse_rate;
                    } else if (value == "monthly_mean") {
                        ind.kind = IndicatorKind::monthly_mean;
                    } else {
                        throw fail(fmt::format("indicator kind must be inverse_rate or monthly_mean, got '{}'", value));
                    }
                } else if (parts[2] == "order") {
                    if (value == "invert_then_average") {
                        ind.order = InverseOrder::invert_then_average;
                    } else if (value == "average_then_invert") {
                        ind.order = InverseOrder::average_then_invert;
                    } else {
                        throw fail(fmt::format("unknown inversion order '{}'", value));
                    }
                } else {
                    throw fail(fmt::format("unknown key '{}'", key));
                }
            } else if (key == "alpha") {
                cfg.alpha = parse_number<double>(key, value);
            } else if (key == "max_d") {
                cfg.max_d = parse_number<int>(key, value);
            } else if (key == "adf.regression") {
                if (value == "constant") {
                    cfg.adf_regression = AdfRegression::constant;
                } else if (value == "constant_and_trend") {
                    cfg.adf_regression = AdfRegression::constant_and_trend;
                } else {
                    throw fail(fmt::format("unknown ADF regression '{}'", value));
                }
            } else if (key == "adf.lag") {
                if (value == "auto") {
                    cfg.adf_lag.reset();
                } else {
                    cfg.adf_lag = parse_number<int>(key, value);
                }
            } else if (key == "max_lag") {
                cfg.max_lag = parse_number<int>(key, value);
            } else if (key == "criterion") {
                if (value == "SC" || value == "sc") {
                    cfg.criterion = LagCriterion::sc;
                } else if (value == "BIC" || value == "bic") {
                    cfg.criterion = LagCriterion::bic;
                } else {
                    throw fail(fmt::format("criterion must be SC or BIC, got '{}'", value));
                }
            } else if (key == "var.constant") {
                cfg.include_constant = parse_bool(key, value);
            } else if (key == "var.trend") {
                cfg.include_trend = parse_bool(key, value);
            } else if (key == "sample.drop_leading") {
                cfg.drop_leading = parse_number<int>(key, value);
            } else if (key == "granger.d_max") {
                cfg.granger_d_max = parse_number<int>(key, value);
            } else if (key == "irf.horizon") {
                cfg.irf_horizon = parse_number<int>(key, value);
            } else if (key == "irf.reps") {
                cfg.irf_reps = parse_number<int>(key, value);
            } else if (key == "irf.ci") {
                cfg.irf_ci = parse_number<double>(key, value);
            } else if (key == "irf.orthogonalized") {
                cfg.irf_orthogonalized = parse_bool(key, value);
            } else if (key == "seed") {
                cfg.seed = parse_number<std::uint64_t>(key, value);
            } else if (key == "ljung_box.lags") {
                cfg.ljung_box_lags = parse_number<int>(key, value);
            } else if (key == "ljung_box.fit_df") {
                cfg.ljung_box_fit_df = parse_number<int>(key, value);
            } else if (key == "run.indicators") {
                cfg.run_indicators = value == "all" ? std::vector<std::string>{} : split_list(value);
            } else if (key == "out") {
                cfg.out = resolve(base_dir, value);
            } else if (key == "format") {
                if (value == "csv") {
                    cfg.format = TableFormat::csv;
                } else if (value == "markdown") {
                    cfg.format = TableFormat::markdown;
                } else {
                    throw fail(fmt::format("format must be csv or markdown, got '{}'", value));
                }
            } else {
                throw fail(fmt::format("unknown key '{}'", key));
            }
        } catch (const ParseError& e) {
            throw fail(e.what());
        }
    }
    if (!window_start || !window_end) {
        throw ConfigError(fmt::format("{}: window.start and window.end are required", source));
    }
    cfg.window = {*window_start, *window_end};
    for (const auto& key : indicator_order) {
        cfg.indicators.push_back(indicators[key]);
    }
    if (!seen.contains("out")) {
        cfg.out = resolve(base_dir, "report");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    }
    const auto base = std::filesystem::absolute(path).parent_path();
    return parse_config(in, base, path.string());
}

std::string format_config(const RunConfig& c) {
    std::ostringstream os;
    os << "posts = " << c.posts.string() << '\n';
    if (c.labels) {
        os << "labels = " << c.labels->string() << '\n';
    }
    os << "lexicon = " << c.lexicon.string() << '\n';
    for (const auto& ind : c.indicators) {
        os << "indicator." << ind.key << ".path = " << ind.path.string() << '\n';
        os << "indicator." << ind.key << ".label = " << ind.label << '\n';
        os << "indicator." << ind.key << ".kind = " << to_string(ind.kind) << '\n';
        os << "indicator." << ind.key << ".order = " << to_string(ind.order) << '\n';
    }
    os << "window.start = " << format_date(c.window.first) << '\n';
    os << "window.end = " << format_date(c.window.last) << '\n';
    os << "pages = " << fmt::format("{}", fmt::join(c.pages, ", ")) << '\n';
    os << "topics = " << fmt::format("{}", fmt::join(c.topics, ", ")) << '\n';
    for (const auto& spec : c.interruptions) {
        os << "interruption = " << spec.name << " | " << format_date(spec.cutoff) << '\n';
    }
    os << "alpha = " << format_double(c.alpha) << '\n';
    os << "max_d = " << c.max_d << '\n';
    os << "adf.regression = " << to_string(c.adf_regression) << '\n';
    os << "adf.lag = " << (c.adf_lag ? std::to_string(*c.adf_lag) : std::string("auto")) << '\n';
    os << "max_lag = " << c.max_lag << '\n';
    os << "criterion = " << (c.criterion == LagCriterion::sc ? "SC" : "BIC") << '\n';
    os << "var.constant = " << (c.include_constant ? "true" : "false") << '\n';
    os << "var.trend = " << (c.include_trend ? "true" : "false") << '\n';
    os << "sample.drop_leading = " << c.drop_leading << '\n';
    os << "granger.d_max = " << c.granger_d_max << '\n';
    os << "irf.horizon = " << c.irf_horizon << '\n';
    os << "irf.reps = " << c.irf_reps << '\n';
    os << "irf.ci = " << format_double(c.irf_ci) << '\n';
    os << "irf.orthogonalized = " << (c.irf_orthogonalized ? "true" : "false") << '\n';
    os << "seed = " << c.seed << '\n';
    os << "ljung_box.lags = " << c.ljung_box_lags << '\n';
    os << "ljung_box.fit_df = " << c.ljung_box_fit_df << '\n';
    os << "run.indicators = " << (c.run_indicators.empty() ? std::string("all") : fmt::format("{}", fmt::join(c.run_indicators, ", "))) << '\n';
    os << "out = " << c.out.string() << '\n';
    os << "format = " << to_string(c.format) << '\n';
    return os.str();
}

}  // namespace varflow
