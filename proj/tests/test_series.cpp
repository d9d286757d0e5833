#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "varflow/error.hpp"
#include "varflow/month.hpp"
#include "varflow/series.hpp"

using namespace varflow;
using varflow::testing::series;

TEST_SUITE("series-core") {

TEST_CASE("month stamps parse, step and compare") {
    const MonthStamp m = MonthStamp::parse("2018-09");
    CHECK(m == MonthStamp{2018, 9});
    CHECK(MonthStamp::parse("2022-02-24") == MonthStamp{2022, 2});
    CHECK(m.plus(4) == MonthStamp{2019, 1});
    CHECK(m.plus(-9) == MonthStamp{2017, 12});
    CHECK(MonthStamp{2023, 9}.months_since(m) == 60);
    CHECK(MonthStamp{2024, 2}.last_day() == parse_iso_date("2024-02-29"));
    CHECK(m.to_string() == "2018-09");
    CHECK_THROWS_AS(MonthStamp::parse("2018-13"), ParseError);
    CHECK_THROWS_AS(MonthStamp::parse("Sept 2018"), ParseError);
    CHECK_THROWS_AS((MonthStamp{2018, 0}), Error);
}

TEST_CASE("iso dates accept a time suffix and reject garbage") {
    CHECK(format_date(parse_iso_date("2021-03-11T08:30:00")) == "2021-03-11");
    CHECK(format_date(parse_iso_date("2021-03-11 08:30")) == "2021-03-11");
    CHECK_THROWS_AS(parse_iso_date("2021-02-30"), ParseError);
    CHECK_THROWS_AS(parse_iso_date("11/03/2021"), ParseError);
}

TEST_CASE("time series validates its values") {
    CHECK_THROWS_AS(series("x", {}), DegenerateInputError);
    CHECK_THROWS_AS(series("x", {1.0, NAN}), DomainError);
    CHECK_THROWS_AS(series("x", {1.0, INFINITY}), DomainError);
    const auto ts = series("x", {1, 2, 3}, MonthStamp{2018, 11});
    CHECK(ts.end() == MonthStamp{2019, 1});
    CHECK(ts.month_at(2) == MonthStamp{2019, 1});
    CHECK_THROWS_AS((void)ts.slice(MonthStamp{2018, 10}, MonthStamp{2018, 12}), AlignmentError);
    const auto s = ts.slice(MonthStamp{2018, 12}, MonthStamp{2019, 1});
    CHECK(s.size() == 2);
    CHECK(s[0] == 2.0);
}

TEST_CASE("difference examples") {
    auto vals = [](const TimeSeries& t) { return std::vector<double>(t.values().begin(), t.values().end()); };
    CHECK(vals(difference(series("c", {5, 5, 5, 5}), 1)) == std::vector<double>{0, 0, 0});
    CHECK(vals(difference(series("g", {1, 2, 4, 8}), 1)) == std::vector<double>{1, 2, 4});
    CHECK(vals(difference(series("g", {1, 2, 4, 8}), 2)) == std::vector<double>{1, 2});
    CHECK(difference(series("g", {1, 2, 4, 8}), 2).start() == MonthStamp{2000, 3});
    CHECK_THROWS_AS((void)difference(series("g", {1, 2}), 0), DomainError);
    CHECK_THROWS_AS((void)difference(series("g", {1, 2}), 2), DegenerateInputError);
    CHECK_THROWS_AS((void)difference(series("g", {1, 2, 3}), -1), Error);
}

TEST_CASE("difference then cumulative sum reconstructs the series") {
    const auto x = varflow::testing::white_noise(200, 3);
    const auto ts = series("x", x);
    const auto d = difference(ts, 1);
    double acc = x[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        acc += d[i];
        CHECK(std::abs(acc - x[i + 1]) <= 1e-12);
    }
}

TEST_CASE("acf definition and zero-variance error") {
    const auto x = varflow::testing::white_noise(50, 4);
    const auto r = acf(x, 5);
    CHECK(r.correlations.size() == 6);
    CHECK(r.correlations[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(r.partials.has_value());
    const std::vector<double> flat{2, 2, 2, 2};
    CHECK_THROWS_AS((void)acf(flat, 2), DegenerateInputError);
}

TEST_CASE("acf uses the 1/n denominator") {
    // Hand computation for [1, 2, 3, 4]: mean 2.5, deviations -1.5 -0.5 0.5 1.5.
    const std::vector<double> x{1, 2, 3, 4};
    const auto r = acf(x, 2);
    const double c0 = (2.25 + 0.25 + 0.25 + 2.25) / 4.0;
    const double c1 = (-1.5 * -0.5 + -0.5 * 0.5 + 0.5 * 1.5) / 4.0;
    const double c2 = (-1.5 * 0.5 + -0.5 * 1.5) / 4.0;
    CHECK(r.correlations[1] == doctest::Approx(c1 / c0).epsilon(1e-14));
    CHECK(r.correlations[2] == doctest::Approx(c2 / c0).epsilon(1e-14));
}

TEST_CASE("acf is invariant under positive affine maps") {
    const auto x = varflow::testing::ar1(300, 0.6, 11);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = 3.7 * x[i] - 12.0;
    }
    const auto a = acf(x, 12, true);
    const auto b = acf(y, 12, true);
    for (std::size_t k = 0; k <= 12; ++k) {
        CHECK(std::abs(a.correlations[k] - b.correlations[k]) <= 1e-10);
    }
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(std::abs((*a.partials)[k] - (*b.partials)[k]) <= 1e-10);
    }
}

TEST_CASE("white noise autocorrelations stay inside 2/sqrt(n)") {
    // Over 100 seeds, at least 8 of 10 lags inside the band in every seed.
    int good_seeds = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = acf(varflow::testing::white_noise(1000, seed), 10);
        int inside = 0;
        for (std::size_t k = 1; k <= 10; ++k) {
            inside += std::abs(r.correlations[k]) < 2.0 / std::sqrt(1000.0) ? 1 : 0;
        }
        good_seeds += inside >= 8 ? 1 : 0;
    }
    CHECK(good_seeds >= 95);
}

TEST_CASE("AR(1) lag-one autocorrelation near phi") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = acf(varflow::testing::ar1(2000, 0.8, seed), 3, true);
        CHECK(r.correlations[1] >= 0.75);
        CHECK(r.correlations[1] <= 0.85);
        CHECK((*r.partials)[0] == doctest::Approx(r.correlations[1]));
        CHECK(std::abs((*r.partials)[1]) < 0.1);
    }
}

TEST_CASE("align trims to the intersection") {
    const auto a = TimeSeries("a", MonthStamp{2018, 9}, std::vector<double>(61, 1.0));
    const auto b = TimeSeries("b", MonthStamp{2019, 1}, std::vector<double>(60, 2.0));
    const std::vector<TimeSeries> in{a, b};
    const auto out = align(in);
    REQUIRE(out.size() == 2);
    for (const auto& s : out) {
        CHECK(s.start() == MonthStamp{2019, 1});
        CHECK(s.end() == MonthStamp{2023, 9});
    }
    CHECK(align(out)[0].range() == out[0].range());  // idempotent
    CHECK(align(out)[1].values().size() == out[1].values().size());

    const std::vector<TimeSeries> same{a, a.renamed("a2")};
    CHECK(align(same)[0].size() == a.size());
}

TEST_CASE("align reports disjoint series by name") {
    const auto a = TimeSeries("first", MonthStamp{2018, 1}, std::vector<double>(6, 1.0));
    const auto b = TimeSeries("second", MonthStamp{2019, 1}, std::vector<double>(6, 1.0));
    const std::vector<TimeSeries> in{a, b};
    try {
        (void)align(in);
        FAIL("expected AlignmentError");
    } catch (const AlignmentError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("first") != std::string::npos);
        CHECK(msg.find("second") != std::string::npos);
    }
}

TEST_CASE("min-max normalization examples") {
    auto vals = [](const TimeSeries& t) { return std::vector<double>(t.values().begin(), t.values().end()); };
    CHECK(vals(min_max_normalize(series("a", {0, 5, 10}))) == std::vector<double>{0, 0.5, 1});
    CHECK(vals(min_max_normalize(series("a", {3, 3, 3}))) == std::vector<double>{0, 0, 0});
    CHECK(vals(min_max_normalize(series("a", {2, 4}))) == std::vector<double>{0, 1});
    const auto normalized = min_max_normalize(series("n", varflow::testing::white_noise(100, 1)));
    for (double v : normalized.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

}  // TEST_SUITE
