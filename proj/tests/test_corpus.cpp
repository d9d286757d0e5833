#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pipeline_fixtures.hpp"
#include "support.hpp"
#include "varflow/corpus.hpp"
#include "varflow/csv.hpp"
#include "varflow/error.hpp"

using namespace varflow;

namespace {

std::vector<double> values(const TimeSeries& t) { return {t.values().begin(), t.values().end()}; }

Post make_post(std::string id, std::string page, std::string date, std::string lang, std::string text,
               std::optional<std::string> topic) {
    return Post{std::move(id), std::move(page), parse_iso_date(date), std::move(lang), std::move(text), std::move(topic)};
}

const char* kHeader = "id,page,date,language,text,topic_label\n";

}  // namespace

TEST_SUITE("corpus-pipeline") {

TEST_CASE("csv reader handles quoting, BOM and blank lines") {
    std::istringstream in("\xEF\xBB\xBF" "a,b\n\"x, y\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",2\r\n");
    const auto rows = read_csv(in, "t");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].fields == std::vector<std::string>{"a", "b"});
    CHECK(rows[1].fields == std::vector<std::string>{"x, y", "say \"hi\""});
    CHECK(rows[2].fields == std::vector<std::string>{"multi\nline", "2"});
    CHECK(rows[2].line == 4);
    std::istringstream bad("a,b\n\"open,1\n");
    CHECK_THROWS_AS((void)read_csv(bad, "t"), ParseError);
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("q\"") == "\"q\"\"\"");
}

TEST_CASE("posts loading examples") {
    SUBCASE("header only gives an empty collection") {
        std::istringstream in(kHeader);
        CHECK(read_posts(in).empty());
    }
    SUBCASE("five valid rows") {
        std::istringstream in(std::string(kHeader) +
                              "1,RT,2020-01-01,en,a,Covid\n"
                              "2,RT,2020-01-02,en,b,\n"
                              "3,RT,2020-02-01T10:00:00,en,\"c, d\",Covid\n"
                              "4,RT DE,2020-03-01,de,e,Sanctions\n"
                              "5,RT DE,2020-03-05,de,f,Sanctions\n");
        const auto posts = read_posts(in);
        REQUIRE(posts.size() == 5);
        CHECK_FALSE(posts[1].topic_label.has_value());
        CHECK(posts[2].text == "c, d");
        CHECK(posts[3].page == "RT DE");
    }
    SUBCASE("bad date names the row and column") {
        std::istringstream in(std::string(kHeader) + "1,RT,2020-01-01,en,a,Covid\n2,RT,01/02/2020,en,b,Covid\n");
        try {
            (void)read_posts(in, {}, "posts.csv");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("posts.csv") != std::string::npos);
            CHECK(msg.find("row 2") != std::string::npos);
            CHECK(msg.find("'date'") != std::string::npos);
        }
    }
    SUBCASE("unknown page, wrong field count, missing column, out-of-window date") {
        PostLoadOptions opts;
        opts.pages = {"RT"};
        std::istringstream unknown(std::string(kHeader) + "1,Other,2020-01-01,en,a,Covid\n");
        CHECK_THROWS_AS((void)read_posts(unknown, opts), ParseError);
        std::istringstream fields(std::string(kHeader) + "1,RT,2020-01-01,en\n");
        CHECK_THROWS_AS((void)read_posts(fields), ParseError);
        std::istringstream missing("id,page,date,text\n");
        CHECK_THROWS_AS((void)read_posts(missing), ParseError);
        opts.window = DateWindow{parse_iso_date("2020-02-01"), parse_iso_date("2020-03-01")};
        std::istringstream early(std::string(kHeader) + "1,RT,2020-01-01,en,a,Covid\n");
        CHECK_THROWS_AS((void)read_posts(early, opts), ParseError);
    }
}

TEST_CASE("label join fills only missing labels") {
    std::vector<Post> posts{make_post("1", "RT", "2020-01-01", "en", "x", std::nullopt),
                            make_post("2", "RT", "2020-01-01", "en", "x", std::string("Covid"))};
    std::istringstream in("id,topic_label\n1,Sanctions\n2,Bitcoin\n");
    join_labels(posts, read_labels(in));
    CHECK(posts[0].topic_label == "Sanctions");
    CHECK(posts[1].topic_label == "Covid");
}

TEST_CASE("lexicon word-boundary fixture") {
    const auto lexicon = Lexicon::load(varflow::testing::data_dir() / "fixture_lexicon.tsv");
    const auto cases = varflow::testing::word_boundary_cases();
    REQUIRE(cases.size() == 20);
    for (const auto& c : cases) {
        CAPTURE(c.text);
        CHECK(lexicon.matches(c.language, c.text) == c.expected);
    }
}

TEST_CASE("lexicon parsing, modes and normalization") {
    std::istringstream in("# comment\nen\tSanctions\nen\tsanctions\nes\tcriptomoneda\nes\tcriptomoneda\n"
                          "!mode\ten\tsubstring\n\nar\tروبل\n");
    auto lex = Lexicon::parse(in);
    CHECK(lex.terms("en") == std::vector<std::string>{"sanctions"});
    CHECK(lex.terms("es").size() == 1);
    CHECK(lex.mode("en") == MatchMode::substring);
    CHECK(lex.mode("ar") == MatchMode::substring);
    CHECK(lex.mode("ar-EG") == MatchMode::substring);
    CHECK(lex.mode("es") == MatchMode::word_boundary);
    CHECK(lex.has_language("ar"));
    CHECK_FALSE(lex.has_language("fr"));
    // Substring override now accepts the sanctimonious-type hit for "sanct".
    lex.add("en", "sanct");
    CHECK(lex.matches("en", "The sanctimonious speech"));
    CHECK_THROWS_AS((void)lex.matches("fr", "bonjour"), ConfigError);
    CHECK_THROWS_AS(lex.add("en", "   "), ConfigError);

    std::istringstream bad_mode("!mode\ten\tfuzzy\n");
    CHECK_THROWS_AS((void)Lexicon::parse(bad_mode), Error);
    std::istringstream no_tab("en sanctions\n");
    CHECK_THROWS_AS((void)Lexicon::parse(no_tab), Error);

    CHECK(normalize_text("ＳＡＮＣＴＩＯＮＳ", MatchMode::word_boundary) == "sanctions");
    CHECK(normalize_text("Straße", MatchMode::word_boundary) == "strasse");
    CHECK(normalize_text("عُقُوبَات", MatchMode::substring) == "عقوبات");
    CHECK(normalize_text("روـبل", MatchMode::substring) == "روبل");
}

TEST_CASE("the sample lexicon keeps the duplicated term once") {
    const auto lex = Lexicon::load(varflow::testing::data_dir().parent_path().parent_path() / "data" / "lexicon.tsv");
    const auto es = lex.terms("es");
    CHECK(std::count(es.begin(), es.end(), "criptomoneda") == 1);
    CHECK(lex.has_language("en"));
    CHECK(lex.has_language("de"));
    CHECK(lex.has_language("fr"));
    CHECK(lex.has_language("ar"));
}

TEST_CASE("lexicon filter examples and properties") {
    Lexicon lex;
    lex.add("en", "sanctions");
    lex.add("en", "ruble");
    const std::vector<Post> posts{
        make_post("1", "RT", "2020-01-01", "en", "New sanctions hit the ruble", "S"),
        make_post("2", "RT", "2020-01-01", "en", "The sanctimonious speech", "S"),
        make_post("3", "RT", "2020-01-01", "en", "Ruble rallies", "S"),
    };
    const auto kept = lexicon_filter(posts, lex);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].id == "1");
    CHECK(kept[1].id == "3");
    CHECK(lexicon_filter(kept, lex).size() == kept.size());
    CHECK(lexicon_filter(std::vector<Post>{}, lex).empty());
    const std::vector<Post> french{make_post("4", "RT", "2020-01-01", "fr", "sanctions", "S")};
    CHECK_THROWS_AS((void)lexicon_filter(french, lex), ConfigError);
}

TEST_CASE("12-post fixture produces the hand-counted series") {
    const auto series = varflow::testing::fixture_series();
    const auto& expected = varflow::testing::fixture_hand_counts();
    REQUIRE(series.size() == expected.size());
    double total = 0.0;
    for (const auto& s : series) {
        CAPTURE(s.page);
        CAPTURE(s.topic);
        CHECK(s.series.start() == MonthStamp{2021, 1});
        CHECK(values(s.series) == expected.at({s.page, s.topic}));
        CHECK(s.series.name() == s.page + " | " + s.topic);
        for (double v : s.series.values()) {
            total += v;
        }
    }
    CHECK(total == 12.0);
}

TEST_CASE("aggregation details") {
    SUBCASE("three posts in one month count as three") {
        const std::vector<Post> posts{make_post("1", "P", "2020-05-01", "en", "x", "T"),
                                      make_post("2", "P", "2020-05-11", "en", "x", "T"),
                                      make_post("3", "P", "2020-05-31", "en", "x", "T")};
        const auto s = aggregate_monthly(posts);
        REQUIRE(s.size() == 1);
        CHECK(values(s[0].series) == std::vector<double>{3});
    }
    SUBCASE("explicit zeros across the window and conservation") {
        const std::vector<Post> posts{make_post("1", "P", "2020-02-01", "en", "x", "A"),
                                      make_post("2", "Q", "2020-04-01", "en", "x", "B")};
        AggregateOptions o;
        o.window = MonthRange{MonthStamp{2020, 1}, MonthStamp{2020, 5}};
        o.pages = {"P", "Q"};
        o.topics = {"A", "B"};
        const auto s = aggregate_monthly(posts, o);
        REQUIRE(s.size() == 4);
        double total = 0.0;
        for (const auto& t : s) {
            CHECK(t.series.size() == 5);
            CHECK(t.series.role() == SeriesRole::topic_count);
            for (double v : t.series.values()) {
                total += v;
            }
        }
        CHECK(total == 2.0);
    }
    SUBCASE("unlabeled posts are listed") {
        const std::vector<Post> posts{make_post("a1", "P", "2020-02-01", "en", "x", std::nullopt),
                                      make_post("a2", "P", "2020-02-01", "en", "x", "A"),
                                      make_post("a3", "P", "2020-02-01", "en", "x", std::string())};
        try {
            (void)aggregate_monthly(posts);
            FAIL("expected DegenerateInputError");
        } catch (const DegenerateInputError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("a1") != std::string::npos);
            CHECK(msg.find("a3") != std::string::npos);
            CHECK(msg.find("a2") == std::string::npos);
        }
    }
}

TEST_CASE("interruption dummies") {
    const MonthRange window{MonthStamp{2021, 10}, MonthStamp{2022, 4}};
    const auto war = build_interruption(window, {"war", parse_iso_date("2022-02-24")});
    CHECK(values(war) == std::vector<double>{0, 0, 0, 0, 1, 1, 1});
    CHECK(war.role() == SeriesRole::dummy);
    CHECK(war.name() == "war");
    const auto first = build_interruption(window, {"f", parse_iso_date("2021-10-01")});
    CHECK(values(first) == std::vector<double>(7, 1.0));
    const auto last = build_interruption(window, {"l", parse_iso_date("2022-04-30")});
    CHECK(values(last) == std::vector<double>{0, 0, 0, 0, 0, 0, 1});
    CHECK_THROWS_AS((void)build_interruption(window, {"x", parse_iso_date("2022-05-01")}), ConfigError);
    CHECK_THROWS_AS((void)build_interruption(window, {"x", parse_iso_date("2021-09-30")}), ConfigError);
    double prev = 0.0;
    for (double v : war.values()) {
        CHECK((v == 0.0 || v == 1.0));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("indicator aggregation") {
    SUBCASE("flat 80 RUB per USD gives 0.0125") {
        std::vector<IndicatorObservation> rows;
        for (int d = 1; d <= 28; ++d) {
            rows.push_back({std::chrono::year_month_day{std::chrono::year{2022}, std::chrono::month{2},
                                                        std::chrono::day{static_cast<unsigned>(d)}},
                            80.0});
        }
        const auto s = monthly_indicator(rows, IndicatorKind::inverse_rate, "Ruble");
        REQUIRE(s.size() == 1);
        CHECK(s[0] == doctest::Approx(0.0125).epsilon(1e-14));
        // 1 RUB buys 1.5 USD when the quoted rate is 2/3 RUB per USD.
        const std::vector<IndicatorObservation> strong{{parse_iso_date("2022-03-01"), 2.0 / 3.0}};
        CHECK(monthly_indicator(strong, IndicatorKind::inverse_rate, "Ruble")[0] == doctest::Approx(1.5));
    }
    SUBCASE("monthly means of prices") {
        std::istringstream in("date,value\n2023-01-05,60\n2023-01-20,62\n2023-02-01,70\n");
        const auto rows = read_indicator_rows(in);
        CHECK(values(monthly_indicator(rows, IndicatorKind::monthly_mean, "Urals")) == std::vector<double>{61, 70});
        std::istringstream monthly("date,value\n2023-01,60\n2023-02,70\n");
        CHECK(values(monthly_indicator(read_indicator_rows(monthly), IndicatorKind::monthly_mean, "Urals")) ==
              std::vector<double>{60, 70});
    }
    SUBCASE("inversion order matters and is selectable") {
        std::istringstream in("date,value\n2023-01-05,50\n2023-01-20,100\n");
        const auto rows = read_indicator_rows(in);
        const double ita = monthly_indicator(rows, IndicatorKind::inverse_rate, "r")[0];
        const double ati =
            monthly_indicator(rows, IndicatorKind::inverse_rate, "r", std::nullopt, InverseOrder::average_then_invert)[0];
        CHECK(ita == doctest::Approx((0.02 + 0.01) / 2.0));
        CHECK(ati == doctest::Approx(1.0 / 75.0));
    }
    SUBCASE("daily inversion round trip") {
        std::vector<IndicatorObservation> rows;
        const auto x = varflow::testing::white_noise(40, 2);
        for (std::size_t i = 0; i < x.size(); ++i) {
            rows.push_back({parse_iso_date("2020-01-01"), 70.0 + x[i]});
        }
        const auto inv = invert_observations(rows);
        const auto back = invert_observations(inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(std::abs(back[i].value - rows[i].value) <= 1e-12);
        }
    }
    SUBCASE("errors") {
        const std::vector<IndicatorObservation> zero{{parse_iso_date("2020-01-01"), 0.0}};
        CHECK_THROWS_AS((void)monthly_indicator(zero, IndicatorKind::inverse_rate, "r"), DomainError);
        CHECK_NOTHROW((void)monthly_indicator(zero, IndicatorKind::monthly_mean, "r"));
        const std::vector<IndicatorObservation> gap{{parse_iso_date("2020-01-01"), 1.0},
                                                    {parse_iso_date("2020-03-01"), 1.0}};
        CHECK_THROWS_AS((void)monthly_indicator(gap, IndicatorKind::monthly_mean, "r"), GapError);
        const std::vector<IndicatorObservation> ok{{parse_iso_date("2020-01-01"), 1.0}};
        CHECK_THROWS_AS((void)monthly_indicator(ok, IndicatorKind::monthly_mean, "r",
                                                MonthRange{MonthStamp{2020, 1}, MonthStamp{2020, 2}}),
                        GapError);
        std::istringstream bad("date,value\n2020-01-01,abc\n");
        CHECK_THROWS_AS((void)read_indicator_rows(bad), ParseError);
    }
}

}  // TEST_SUITE
