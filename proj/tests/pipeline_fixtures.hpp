#pragma once

// Shared pipeline fixtures: the hand-counted 12-post corpus and the 20 lexicon cases.

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "support.hpp"
#include "varflow/corpus.hpp"

namespace varflow::testing {

inline DateWindow fixture_window() {
    return DateWindow{parse_iso_date("2021-01-01"), parse_iso_date("2021-03-31")};
}

/// Hand count of tests/data/fixture_posts.csv, months 2021-01..2021-03.
inline const std::map<std::pair<std::string, std::string>, std::vector<double>>& fixture_hand_counts() {
    static const std::map<std::pair<std::string, std::string>, std::vector<double>> counts{
        {{"RT DE", "Sanctions"}, {2, 1, 0}},
        {{"RT DE", "Covid"}, {0, 2, 1}},
        {{"RT Español", "Sanctions"}, {1, 0, 2}},
        {{"RT Español", "Covid"}, {1, 1, 1}},
    };
    return counts;
}

struct LexiconCase {
    std::string language;
    bool expected = false;
    std::string text;
};

inline std::vector<LexiconCase> word_boundary_cases() {
    std::ifstream in(data_dir() / "word_boundary_cases.tsv");
    std::vector<LexiconCase> cases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto a = line.find('\t');
        const auto b = line.find('\t', a + 1);
        cases.push_back({line.substr(0, a), line.substr(a + 1, b - a - 1) == "1", line.substr(b + 1)});
    }
    return cases;
}

/// Runs the fixture through load -> label join -> lexicon filter -> aggregation.
inline std::vector<TopicSeries> fixture_series() {
    PostLoadOptions load;
    load.pages = {"RT DE", "RT Español"};
    load.window = fixture_window();
    auto posts = load_posts(data_dir() / "fixture_posts.csv", load);
    join_labels(posts, load_labels(data_dir() / "fixture_labels.csv"));
    const auto lexicon = Lexicon::load(data_dir() / "fixture_lexicon.tsv");
    const auto kept = lexicon_filter(posts, lexicon);
    AggregateOptions agg;
    agg.window = fixture_window().months();
    agg.pages = load.pages;
    agg.topics = {"Sanctions", "Covid"};
    return aggregate_monthly(kept, agg);
}

}  // namespace varflow::testing
