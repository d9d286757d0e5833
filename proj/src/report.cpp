#include "varflow/report.hpp"

#include <chrono>
#include <fmt/core.h>
#include <fmt/ranges.h>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <unistd.h>

#include "varflow/csv.hpp"
#include "varflow/error.hpp"

namespace varflow {

namespace {

constexpr std::string_view kVersion = "1.0.0";

std::string fixed(double v, int digits) {
    std::string s = fmt::format("{:.{}f}", v, digits);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
        s.erase(0, 1);  // no "-0.000"
    }
    return s;
}

std::string granger_stars(double p) {
    // Granger tables use the three-level scheme without the 10% marker.
    const std::string s = significance_stars(p);
    return s == "+" ? "" : s;
}

std::string md_escape(std::string_view cell) {
    std::string out;
    for (char c : cell) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<const TripleReport*> triples_for(const ReportBundle& bundle, std::string_view indicator) {
    std::vector<const TripleReport*> out;
    for (const auto& t : bundle.triples) {
        if (t.indicator == indicator) {
            out.push_back(&t);
        }
    }
    return out;
}

std::string column_title(const TripleReport& t) { return fmt::format("{} {}", t.page, t.topic); }

std::string indicator_label(const ReportBundle& bundle, std::string_view indicator) {
    return bundle.config.indicator(indicator).label;
}

}  // namespace

std::string render(const Table& table, TableFormat format) {
    std::string out;
    if (format == TableFormat::csv) {
        std::vector<std::string> cells;
        for (const auto& h : table.header) {
            cells.push_back(csv_escape(h));
        }
        out += fmt::format("{}\n", fmt::join(cells, ","));
        for (const auto& row : table.rows) {
            cells.clear();
            for (const auto& c : row) {
                cells.push_back(csv_escape(c));
            }
            out += fmt::format("{}\n", fmt::join(cells, ","));
        }
        return out;
    }
    if (!table.title.empty()) {
        out += fmt::format("### {}\n\n", table.title);
    }
    std::vector<std::string> cells;
    for (const auto& h : table.header) {
        cells.push_back(md_escape(h));
    }
    out += fmt::format("| {} |\n", fmt::join(cells, " | "));
    out += "|";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += i == 0 ? " :--- |" : " ---: |";
    }
    out += "\n";
    for (const auto& row : table.rows) {
        cells.clear();
        for (const auto& c : row) {
            cells.push_back(md_escape(c));
        }
        out += fmt::format("| {} |\n", fmt::join(cells, " | "));
    }
    if (!table.note.empty()) {
        out += fmt::format("\n{}\n", table.note);
    }
    return out;
}

std::string format_estimate(const CoefficientCell& cell) { return fixed(cell.estimate, 3) + cell.stars; }

std::string format_cell(const CoefficientCell& cell) {
    return fmt::format("{} ({})", format_estimate(cell), fixed(cell.std_error, 3));
}

Table var_table(const ReportBundle& bundle, std::string_view indicator, bool own_lags) {
    const auto triples = triples_for(bundle, indicator);
    const std::string label = indicator_label(bundle, indicator);
    Table table;
    table.title = fmt::format("VAR estimates for monthly topic volume on {}", label);
    table.note = "+ p < 0.10, * p < 0.05, ** p < 0.01, *** p < 0.001";
    if (!own_lags) {
        table.note += "; the topic's own lags are estimated but not shown";
    }
    table.header.emplace_back("");

    int max_p = 0;
    std::vector<std::pair<const TripleReport*, CoefficientTable>> columns;
    for (const auto* t : triples) {
        if (!t->model) {
            continue;
        }
        max_p = std::max(max_p, t->model->p);
        columns.emplace_back(t, coefficient_table(*t->model, t->topic));
        table.header.push_back(column_title(*t));
    }

    std::vector<std::string> terms;
    for (int lag = 1; lag <= max_p; ++lag) {
        terms.push_back(fmt::format("{} (-{})", label, lag));
        if (own_lags) {
            terms.push_back(fmt::format("Topic (-{})", lag));
        }
    }
    for (const auto& d : bundle.dummies) {
        terms.push_back(d.name());
    }
    if (bundle.config.include_constant) {
        terms.emplace_back("Constant");
    }
    if (bundle.config.include_trend) {
        terms.emplace_back("Trend");
    }

    for (const auto& term : terms) {
        std::vector<std::string> row{term};
        for (const auto& [t, coef] : columns) {
            std::string cell;
            for (const auto& r : coef.rows) {
                std::string name = r.term;
                const std::string own = t->topic + " (-";
                if (name.starts_with(own)) {
                    name = "Topic (-" + name.substr(own.size());
                }
                if (name == term) {
                    cell = format_cell(r.cell);
                    break;
                }
            }
            row.push_back(std::move(cell));
        }
        table.rows.push_back(std::move(row));
    }
    std::vector<std::string> nobs{"Num.Obs."};
    std::vector<std::string> r2{"R2"};
    std::vector<std::string> r2_adj{"R2 Adj."};
    for (const auto& [t, coef] : columns) {
        nobs.push_back(std::to_string(coef.nobs));
        r2.push_back(fixed(coef.r2, 3));
        r2_adj.push_back(fixed(coef.r2_adj, 3));
    }
    table.rows.push_back(std::move(nobs));
    table.rows.push_back(std::move(r2));
    table.rows.push_back(std::move(r2_adj));
    return table;
}

Table granger_table(const ReportBundle& bundle, std::string_view indicator) {
    Table table;
    table.title = fmt::format("Granger causality tests on {}", indicator_label(bundle, indicator));
    table.header = {"Page", "Topic", "Cause", "Effect", "Wald", "df", "P Value"};
    table.note = "* p < 0.05, ** p < 0.01, *** p < 0.001";
    for (const auto* t : triples_for(bundle, indicator)) {
        for (const auto* g : {&t->granger_indicator_to_topic, &t->granger_topic_to_indicator}) {
            if (*g) {
                const auto& r = **g;
                table.rows.push_back({t->page, t->topic, r.cause, r.effect, fixed(r.wald_stat, 4),
                                      std::to_string(r.df), fixed(r.p_value, 4) + granger_stars(r.p_value)});
            }
        }
    }
    return table;
}

Table adf_table(const ReportBundle& bundle, std::string_view indicator) {
    Table table;
    table.title = fmt::format("ADF tests, models on {}", indicator_label(bundle, indicator));
    table.header = {"Page", "Topic", "Series", "d", "Statistic", "Lags", "P_Value"};
    for (const auto* t : triples_for(bundle, indicator)) {
        for (const auto* s : {&t->topic_stationarity, &t->indicator_stationarity}) {
            if (*s) {
                const auto& r = **s;
                const AdfResult& last = r.tests.back();
                table.rows.push_back({t->page, t->topic, r.series.name(), std::to_string(r.d),
                                      fixed(last.statistic, 3), std::to_string(last.lag_order),
                                      fixed(last.p_value, 3)});
            }
        }
    }
    return table;
}

Table lag_table(const ReportBundle& bundle, std::string_view indicator) {
    Table table;
    table.title = fmt::format("Lag selections (SC), models on {}", indicator_label(bundle, indicator));
    table.header = {"Page", "Topic", "SC_Value"};
    const int max_lag = bundle.config.max_lag;
    for (int p = 1; p <= max_lag; ++p) {
        table.header.push_back(fmt::format("SC({})", p));
    }
    for (const auto* t : triples_for(bundle, indicator)) {
        if (t->lag) {
            std::vector<std::string> row{t->page, t->topic, std::to_string(t->lag->p)};
            for (double c : t->lag->criteria) {
                row.push_back(fixed(c, 4));
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

Table johansen_table(const ReportBundle& bundle, std::string_view indicator) {
    Table table;
    table.title = fmt::format("Johansen trace test, models on {}", indicator_label(bundle, indicator));
    table.header = {"Page", "Topic", "r", "Trace", "10%", "5%", "1%", "P Value"};
    table.note = "p-values clamped to [0.01, 0.99]; rejection criterion p < 0.05";
    for (const auto* t : triples_for(bundle, indicator)) {
        if (!t->johansen) {
            continue;
        }
        const auto& j = *t->johansen;
        for (std::size_t r = 0; r < j.trace_stats.size(); ++r) {
            table.rows.push_back({t->page, t->topic, fmt::format("r <= {}", j.rank_hypotheses[r]),
                                  fixed(j.trace_stats[r], 3), fixed(j.critical_values[r][0], 2),
                                  fixed(j.critical_values[r][1], 2), fixed(j.critical_values[r][2], 2),
                                  fixed(j.p_values[r], 8)});
        }
    }
    return table;
}

Table ljung_box_table(const ReportBundle& bundle, std::string_view indicator) {
    const std::string label = indicator_label(bundle, indicator);
    Table table;
    table.title = fmt::format("Ljung-Box tests on VAR residuals, models on {}", label);
    table.header = {"Page", "Topic", "Q DV", "P Value DV", fmt::format("Q {}", label), fmt::format("P Value {}", label)};
    for (const auto* t : triples_for(bundle, indicator)) {
        if (t->ljung_box.size() != 2) {
            continue;
        }
        // Endogenous order is (indicator, topic); the topic is the dependent variable.
        const auto& dv = t->ljung_box[1];
        const auto& ind = t->ljung_box[0];
        table.rows.push_back({t->page, t->topic, fixed(dv.statistic, 3), fixed(dv.p_value, 3),
                              fixed(ind.statistic, 3), fixed(ind.p_value, 3)});
    }
    return table;
}

Table error_table(const ReportBundle& bundle) {
    Table table;
    table.title = "Failed analyses";
    table.header = {"Page", "Topic", "Indicator", "Stage", "Error"};
    for (const auto& t : bundle.triples) {
        if (!t.ok()) {
            table.rows.push_back({t.page, t.topic, t.indicator, t.failed_stage, t.error});
        }
    }
    return table;
}

std::string irf_csv(const IrfResult& irf) {
    std::string out = "horizon,point,lower,upper\n";
    for (std::size_t h = 0; h < irf.point.size(); ++h) {
        out += fmt::format("{},{},{},{}\n", h, irf.point[h], irf.lower[h], irf.upper[h]);
    }
    return out;
}

std::string topic_shares_csv(std::span<const TopicShare> shares) {
    std::string out = "month,topic,count,normalized\n";
    for (const auto& s : shares) {
        out += fmt::format("{},{},{},{}\n", s.month.to_string(), csv_escape(s.topic), s.count, s.normalized);
    }
    return out;
}

namespace {

using nlohmann::json;

json adf_json(const StationarityResult& s) {
    json tests = json::array();
    for (const auto& t : s.tests) {
        tests.push_back({{"statistic", t.statistic},
                         {"p_value", t.p_value},
                         {"lag_order", t.lag_order},
                         {"nobs", t.nobs},
                         {"regression", std::string(to_string(t.regression))}});
    }
    return {{"series", s.series.name()}, {"d", s.d}, {"tests", tests}};
}

json granger_json(const GrangerResult& g) {
    return {{"cause", g.cause}, {"effect", g.effect}, {"wald_stat", g.wald_stat}, {"df", g.df},
            {"p_value", g.p_value}, {"d_max", g.d_max}, {"stars", granger_stars(g.p_value)}};
}

json model_json(const VarModel& m) {
    json eqs = json::array();
    for (const auto& name : m.data.endog_names) {
        const CoefficientTable t = coefficient_table(m, name);
        json rows = json::array();
        for (const auto& r : t.rows) {
            rows.push_back({{"term", r.term},
                            {"estimate", r.cell.estimate},
                            {"std_error", r.cell.std_error},
                            {"t_value", r.cell.t_value},
                            {"p_value", r.cell.p_value},
                            {"stars", r.cell.stars}});
        }
        eqs.push_back({{"equation", name}, {"rows", rows}, {"nobs", t.nobs}, {"r2", t.r2}, {"r2_adj", t.r2_adj},
                       {"residual_df", m.residual_dof()}});
    }
    json sigma = json::array();
    for (Eigen::Index i = 0; i < m.sigma.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.sigma.cols(); ++j) {
            row.push_back(m.sigma(i, j));
        }
        sigma.push_back(std::move(row));
    }
    return {{"p", m.p}, {"nobs", m.nobs()}, {"start", m.data.start.plus(static_cast<int>(m.first_row)).to_string()},
            {"equations", eqs}, {"sigma", sigma}, {"spectral_radius", m.spectral_radius()}};
}

}  // namespace

std::string statistics_json(const ReportBundle& bundle) {
    json triples = json::array();
    for (const auto& t : bundle.triples) {
        json j = {{"page", t.page}, {"topic", t.topic}, {"indicator", t.indicator}, {"ok", t.ok()}};
        if (!t.ok()) {
            j["failed_stage"] = t.failed_stage;
            j["error"] = t.error;
        }
        if (t.indicator_stationarity) {
            j["adf_indicator"] = adf_json(*t.indicator_stationarity);
        }
        if (t.topic_stationarity) {
            j["adf_topic"] = adf_json(*t.topic_stationarity);
        }
        if (t.lag) {
            j["lag_selection"] = {{"p", t.lag->p}, {"criteria", t.lag->criteria}, {"common_nobs", t.lag->common_nobs}};
        }
        if (t.model) {
            j["var"] = model_json(*t.model);
        }
        if (t.granger_indicator_to_topic) {
            j["granger"] = json::array({granger_json(*t.granger_indicator_to_topic)});
        }
        if (t.granger_topic_to_indicator) {
            j["granger"].push_back(granger_json(*t.granger_topic_to_indicator));
        }
        if (t.irf) {
            const auto& r = *t.irf;
            j["irf"] = {{"impulse", r.impulse}, {"response", r.response}, {"horizon", r.horizon},
                        {"orthogonalized", r.orthogonalized}, {"boot_reps", r.boot_reps}, {"ci_level", r.ci_level},
                        {"seed", r.seed}, {"stable", r.stable}, {"spectral_radius", r.spectral_radius},
                        {"point", r.point}, {"lower", r.lower}, {"upper", r.upper}};
        }
        if (t.johansen) {
            const auto& r = *t.johansen;
            json cv = json::array();
            for (const auto& c : r.critical_values) {
                cv.push_back({c[0], c[1], c[2]});
            }
            j["johansen"] = {{"lag", r.lag}, {"nobs", r.nobs}, {"eigenvalues", r.eigenvalues},
                             {"trace_stats", r.trace_stats}, {"critical_values_10_5_1", cv}, {"p_values", r.p_values}};
        }
        if (!t.ljung_box.empty()) {
            json lb = json::array();
            for (const auto& r : t.ljung_box) {
                lb.push_back({{"series", r.series}, {"statistic", r.statistic}, {"lags", r.lags},
                              {"fit_df", r.fit_df}, {"p_value", r.p_value}});
            }
            j["ljung_box"] = lb;
        }
        triples.push_back(std::move(j));
    }
    const json root = {{"posts_loaded", bundle.posts_loaded},
                       {"posts_retained", bundle.posts_retained},
                       {"failures", bundle.failures()},
                       {"triples", triples}};
    return root.dump(2) + "\n";
}

std::string slug(std::string_view text) {
    std::string out;
    for (unsigned char c : text) {
        if (c >= 0x80) {
            out.push_back(static_cast<char>(c));  // keep UTF-8 letters intact
        } else if (std::isalnum(c) != 0) {
            out.push_back(static_cast<char>(std::tolower(c)));
        } else if (!out.empty() && out.back() != '-') {
            out.push_back('-');
        }
    }
    while (!out.empty() && out.back() == '-') {
        out.pop_back();
    }
    return out.empty() ? "x" : out;
}

std::vector<std::filesystem::path> emit_tables(const ReportBundle& bundle, const std::filesystem::path& out,
                                               TableFormat format) {
    namespace fs = std::filesystem;
    const fs::path target = fs::absolute(out).lexically_normal();
    const fs::path staging = target.parent_path() / fmt::format(".{}.staging-{}", target.filename().string(), ::getpid());
    std::vector<fs::path> written;
    std::error_code ec;
    fs::remove_all(staging, ec);
    if (!fs::create_directories(staging, ec) || ec) {
        throw IoError(fmt::format("cannot create output directory '{}': {}", staging.string(), ec.message()));
    }
    const auto write = [&](const fs::path& rel, const std::string& content) {
        const fs::path full = staging / rel;
        fs::create_directories(full.parent_path());
        std::ofstream f(full, std::ios::binary);
        f << content;
        if (!f) {
            throw IoError(fmt::format("cannot write '{}'", full.string()));
        }
        written.push_back(rel);
    };

    try {
        const std::string ext = format == TableFormat::csv ? ".csv" : ".md";
        for (const IndicatorConfig* ind : bundle.config.selected_indicators()) {
            const std::string& key = ind->key;
            write(key + "_var" + ext, render(var_table(bundle, key), format));
            write(key + "_var_full" + ext, render(var_table(bundle, key, true), format));
            write(key + "_granger" + ext, render(granger_table(bundle, key), format));
            write(key + "_adf" + ext, render(adf_table(bundle, key), format));
            write(key + "_lags" + ext, render(lag_table(bundle, key), format));
            write(key + "_johansen" + ext, render(johansen_table(bundle, key), format));
            write(key + "_ljungbox" + ext, render(ljung_box_table(bundle, key), format));
        }
        for (const auto& t : bundle.triples) {
            if (t.irf) {
                write(fs::path("irf") / t.indicator / fmt::format("{}__{}.csv", slug(t.page), slug(t.topic)),
                      irf_csv(*t.irf));
            }
        }
        write("topic_shares.csv", topic_shares_csv(bundle.topic_shares));
        write("errors" + ext, render(error_table(bundle), format));
        write("statistics.json", statistics_json(bundle));

        RunConfig manifest_cfg = bundle.config;
        manifest_cfg.out = target;
        manifest_cfg.format = format;
        write("manifest.cfg", format_config(manifest_cfg));
        const auto now = std::chrono::system_clock::now();
        nlohmann::json manifest = {
            {"tool", "varflow"},
            {"version", std::string(kVersion)},
            {"created_unix", std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()},
            {"seed", bundle.config.seed},
            {"format", std::string(to_string(format))},
            {"triples", bundle.triples.size()},
            {"failures", bundle.failures()},
            {"config_file", "manifest.cfg"},
        };
        nlohmann::json files = nlohmann::json::array();
        for (const auto& p : written) {
            files.push_back(p.generic_string());
        }
        manifest["files"] = files;
        write("manifest.json", manifest.dump(2) + "\n");
    } catch (...) {
        fs::remove_all(staging, ec);
        throw;
    }

    const fs::path previous = target.parent_path() / fmt::format(".{}.previous-{}", target.filename().string(), ::getpid());
    if (fs::exists(target)) {
        fs::rename(target, previous, ec);
        if (ec) {
            fs::remove_all(staging);
            throw IoError(fmt::format("cannot replace '{}': {}", target.string(), ec.message()));
        }
    }
    fs::rename(staging, target, ec);
    if (ec) {
        if (fs::exists(previous)) {
            fs::rename(previous, target);
        }
        throw IoError(fmt::format("cannot move bundle into '{}': {}", target.string(), ec.message()));
    }
    fs::remove_all(previous, ec);
    return written;
}

}  // namespace varflow
