#include <doctest.h>

#include <cmath>
#include <fmt/core.h>
#include <map>

#include "oracle_data.hpp"
#include "support.hpp"
#include "varflow/error.hpp"
#include "varflow/var.hpp"

using namespace varflow;

namespace {

// statsmodels parameter label -> our regressor label.
std::string our_name(const std::string& sm) {
    static const std::map<std::string, std::string> fixed{
        {"const", "Constant"}, {"trend", "Trend"}, {"exog0", "covid"}, {"exog1", "war"}};
    if (auto it = fixed.find(sm); it != fixed.end()) {
        return it->second;
    }
    // "L2.y1" -> "y1 (-2)"
    const auto dot = sm.find('.');
    return fmt::format("{} (-{})", sm.substr(dot + 1), sm.substr(1, dot - 1));
}

Eigen::Index row_of(const VarModel& m, const std::string& name) {
    for (std::size_t i = 0; i < m.regressor_names.size(); ++i) {
        if (m.regressor_names[i] == name) {
            return static_cast<Eigen::Index>(i);
        }
    }
    FAIL("missing regressor " << name);
    return -1;
}

}  // namespace

TEST_SUITE("var-engine") {

TEST_CASE("regressor layout and labels") {
    const auto data = varflow::testing::oracle_panel().dataset();
    std::vector<std::string> names;
    const Eigen::MatrixXd x = var_design(data, 2, 2, &names);
    CHECK(names == std::vector<std::string>{"y1 (-1)", "y2 (-1)", "y1 (-2)", "y2 (-2)", "covid", "war", "Constant", "Trend"});
    CHECK(x.rows() == data.periods() - 2);
    CHECK(x(0, 0) == data.endog(1, 0));
    CHECK(x(0, 3) == data.endog(0, 1));
    CHECK(x(0, 6) == 1.0);
    CHECK(x(0, 7) == 3.0);  // dataset row 2 -> trend 3
    CHECK(x(5, 4) == data.exog(7, 0));
    CHECK_THROWS_AS((void)var_design(data, 2, 1), Error);
}

TEST_CASE("OLS estimates match statsmodels VAR") {
    const auto data = varflow::testing::oracle_panel().dataset();
    for (int p : {1, 2}) {
        CAPTURE(p);
        const auto& frozen = varflow::testing::oracle_values().at("var").at(std::to_string(p));
        const VarModel m = fit_var(data, p);
        CHECK(m.nobs() == frozen.at("nobs").get<Eigen::Index>());
        const auto names = frozen.at("names").get<std::vector<std::string>>();
        const auto params = frozen.at("params").get<std::vector<std::vector<double>>>();
        const auto stderr_ = frozen.at("stderr").get<std::vector<std::vector<double>>>();
        for (std::size_t i = 0; i < names.size(); ++i) {
            const Eigen::Index row = row_of(m, our_name(names[i]));
            for (Eigen::Index eq = 0; eq < 2; ++eq) {
                CAPTURE(names[i]);
                const double expected = params[i][static_cast<std::size_t>(eq)];
                CHECK(m.coef(row, eq) == doctest::Approx(expected).epsilon(1e-8));
                CHECK(m.std_errors(row, eq) ==
                      doctest::Approx(stderr_[i][static_cast<std::size_t>(eq)]).epsilon(1e-8));
            }
        }
        const auto sigma = frozen.at("sigma_u").get<std::vector<std::vector<double>>>();
        for (Eigen::Index i = 0; i < 2; ++i) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                CHECK(m.sigma(i, j) ==
                      doctest::Approx(sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("lag selection matches statsmodels BIC") {
    const auto data = varflow::testing::oracle_panel().dataset();
    const auto sel = select_lag(data, 6, LagCriterion::bic);
    const auto& frozen = varflow::testing::oracle_values();
    CHECK(sel.p == frozen.at("bic_selected").get<int>());
    CHECK(sel.common_nobs == data.periods() - 6);
    const auto bic = frozen.at("bic_values").get<std::vector<double>>();
    // statsmodels also reports lag 0; its values differ from ours by a constant offset
    // because it counts deterministic terms the same way at every lag.
    REQUIRE(bic.size() == 7);
    for (std::size_t p = 1; p + 1 < bic.size(); ++p) {
        const double ours = sel.criteria[p] - sel.criteria[p - 1];
        const double theirs = bic[p + 1] - bic[p];
        CHECK(ours == doctest::Approx(theirs).epsilon(1e-8));
    }
    const auto sc = select_lag(data, 6, LagCriterion::sc);
    CHECK(sc.criteria == sel.criteria);
}

TEST_CASE("normal equations, refit identity and R-squared two ways") {
    const auto data = varflow::testing::oracle_panel().dataset();
    const VarModel m = fit_var(data, 2);
    const Eigen::MatrixXd x = m.design();
    const Eigen::MatrixXd score = x.transpose() * m.residuals;
    const Eigen::MatrixXd y = m.fitted() + m.residuals;
    CHECK(score.cwiseAbs().maxCoeff() <= 1e-6 * (x.cwiseAbs().maxCoeff() * y.cwiseAbs().maxCoeff() * x.rows()));

    for (Eigen::Index eq = 0; eq < 2; ++eq) {
        const Eigen::VectorXd yhat = m.fitted().col(eq);
        const Eigen::VectorXd yy = y.col(eq);
        const double my = yy.mean();
        const double sst = (yy.array() - my).square().sum();
        const double ssr = m.residuals.col(eq).squaredNorm();
        CHECK(m.r2(eq) == doctest::Approx(1.0 - ssr / sst).epsilon(1e-10));
        const double mh = yhat.mean();
        const double cov = ((yy.array() - my) * (yhat.array() - mh)).sum();
        const double corr2 = cov * cov / (sst * (yhat.array() - mh).square().sum());
        CHECK(std::abs(m.r2(eq) - corr2) <= 1e-10);
        const double n = static_cast<double>(m.nobs());
        const double k = static_cast<double>(m.num_regressors());
        CHECK(m.r2_adj(eq) == doctest::Approx(1.0 - (1.0 - m.r2(eq)) * (n - 1.0) / (n - k)).epsilon(1e-12));
    }

    // Regressing fitted + residuals on the same design returns the same coefficients.
    PanelDataset again = data;
    again.endog.bottomRows(m.nobs()) = y;
    const VarModel m2 = fit_var(again, 2);
    CHECK((m2.coef - m.coef).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("lag selection is scale invariant") {
    auto data = varflow::testing::oracle_panel().dataset();
    const int base = select_lag(data, 6).p;
    data.endog.col(1) *= 1000.0;
    CHECK(select_lag(data, 6).p == base);
    data.endog.col(0) *= 0.001;
    CHECK(select_lag(data, 6).p == base);
}

TEST_CASE("lag selection ties go to the smaller lag") {
    // Identical criteria at every lag can only happen in degenerate settings; we check the
    // tie-break rule directly through the returned criteria instead.
    const auto data = varflow::testing::oracle_panel().dataset();
    const auto sel = select_lag(data, 4);
    const auto best = std::min_element(sel.criteria.begin(), sel.criteria.end());
    CHECK(sel.p == static_cast<int>(best - sel.criteria.begin()) + 1);
}

TEST_CASE("select_lag recovers VAR(1) and VAR(2) orders") {
    int hits1 = 0;
    int hits2 = 0;
    VarProcess p1 = varflow::testing::bivariate_var1(0.7, 0.2, -0.3, 0.6);
    VarProcess p2;
    Eigen::MatrixXd a1(2, 2);
    Eigen::MatrixXd a2(2, 2);
    a1 << 0.4, 0.1, 0.0, 0.3;
    a2 << -0.45, 0.2, 0.1, 0.35;
    p2.lags = {a1, a2};
    p2.intercept = Eigen::Vector2d(0.0, 0.0);
    p2.sigma = Eigen::Matrix2d::Identity();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto d1 = simulate_var(p1, 200, seed, varflow::testing::constant_only());
        hits1 += select_lag(d1, 6).p == 1 ? 1 : 0;
        const auto d2 = simulate_var(p2, 400, 1000 + seed, varflow::testing::constant_only());
        hits2 += select_lag(d2, 6).p == 2 ? 1 : 0;
    }
    CHECK(hits1 >= 90);
    CHECK(hits2 >= 90);
}

TEST_CASE("significance stars") {
    CHECK(significance_stars(0.049) == "*");
    CHECK(significance_stars(0.0009) == "***");
    CHECK(significance_stars(0.12) == "");
    CHECK(significance_stars(0.004) == "**");
    CHECK(significance_stars(0.0999) == "+");
    CHECK(significance_stars(0.10) == "");
    CHECK(significance_stars(0.05) == "+");
    CHECK(significance_stars(0.01) == "*");
    CHECK(significance_stars(0.001) == "**");
}

TEST_CASE("coefficient table rows and lookups") {
    const auto data = varflow::testing::oracle_panel().dataset();
    const VarModel m = fit_var(data, 1);
    const auto t = coefficient_table(m, "y2");
    CHECK(t.equation == "y2");
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[0].term == "y1 (-1)");
    CHECK(t.rows[5].term == "Trend");
    CHECK(t.nobs == m.nobs());
    for (const auto& r : t.rows) {
        CHECK(r.cell.t_value == doctest::Approx(r.cell.estimate / r.cell.std_error));
        CHECK(r.cell.stars == significance_stars(r.cell.p_value));
    }
    CHECK_THROWS_AS((void)coefficient_table(m, "nope"), LookupError);
}

TEST_CASE("fit_var error paths") {
    auto data = varflow::testing::oracle_panel().dataset();
    SUBCASE("too few observations") {
        PanelDataset small = data.drop_leading(data.periods() - 8);
        CHECK_THROWS_AS((void)fit_var(small, 2), DegenerateInputError);
    }
    SUBCASE("duplicate series are collinear") {
        data.endog.col(1) = 2.0 * data.endog.col(0);
        try {
            (void)fit_var(data, 1);
            FAIL("expected SingularDesignError");
        } catch (const SingularDesignError& e) {
            CHECK(std::string(e.what()).find("(-1)") != std::string::npos);
        }
    }
    SUBCASE("dummy that never switches duplicates the constant") {
        data.exog.col(1).setOnes();
        CHECK_THROWS_AS((void)fit_var(data, 1), SingularDesignError);
    }
    SUBCASE("non step dummy is rejected") {
        data.exog(40, 0) = 0.0;
        CHECK_THROWS_AS((void)fit_var(data, 1), Error);
    }
}

TEST_CASE("simulate_var contracts") {
    SUBCASE("zero dynamics give seeded white noise") {
        VarProcess proc;
        proc.lags = {Eigen::MatrixXd::Zero(2, 2)};
        proc.intercept = Eigen::Vector2d::Zero();
        proc.sigma = Eigen::Matrix2d::Identity();
        const auto d = simulate_var(proc, 4000, 1, varflow::testing::constant_only());
        for (Eigen::Index j = 0; j < 2; ++j) {
            const Eigen::VectorXd c = d.endog.col(j);
            const double mean = c.mean();
            const double var = (c.array() - mean).square().mean();
            CHECK(std::abs(mean) < 0.06);
            CHECK(var == doctest::Approx(1.0).epsilon(0.06));
            const std::vector<double> v(c.data(), c.data() + c.size());
            CHECK(std::abs(acf(v, 1).correlations[1]) < 0.05);
        }
    }
    SUBCASE("deterministic in the seed") {
        const auto proc = varflow::testing::bivariate_var1(0.5, 0.1, 0.0, 0.4);
        const auto a = simulate_var(proc, 100, 77);
        const auto b = simulate_var(proc, 100, 77);
        const auto c = simulate_var(proc, 100, 78);
        CHECK(a.endog == b.endog);
        CHECK(a.endog != c.endog);
    }
    SUBCASE("diagonal 0.5 gives lag-one autocorrelation near 0.5") {
        VarProcess proc = varflow::testing::bivariate_var1(0.5, 0.0, 0.0, 0.5);
        const auto d = simulate_var(proc, 5000, 3, varflow::testing::constant_only());
        for (Eigen::Index j = 0; j < 2; ++j) {
            const Eigen::VectorXd c = d.endog.col(j);
            const std::vector<double> v(c.data(), c.data() + c.size());
            const double r1 = acf(v, 1).correlations[1];
            CHECK(r1 >= 0.45);
            CHECK(r1 <= 0.55);
        }
    }
    SUBCASE("parameter errors") {
        VarProcess proc = varflow::testing::bivariate_var1(0.5, 0.0, 0.0, 0.5);
        proc.sigma << 1.0, 2.0, 2.0, 1.0;
        CHECK_THROWS_AS((void)simulate_var(proc, 100, 1), ParameterError);
        proc.sigma = Eigen::Matrix2d::Identity();
        SimulationOptions opts;
        opts.burn_in = 10;
        CHECK_THROWS_AS((void)simulate_var(proc, 100, 1, opts), ParameterError);
        proc.lags = {Eigen::MatrixXd::Zero(3, 3)};
        CHECK_THROWS_AS((void)simulate_var(proc, 100, 1), ParameterError);
    }
    SUBCASE("exogenous dummies and names") {
        VarProcess proc = varflow::testing::bivariate_var1(0.3, 0.0, 0.0, 0.3);
        proc.exog_coef = Eigen::MatrixXd(2, 1);
        proc.exog_coef << 5.0, -5.0;
        SimulationOptions opts = varflow::testing::constant_only();
        opts.endog_names = {"topic", "ruble"};
        opts.exog_names = {"war"};
        opts.exog = Eigen::MatrixXd::Zero(600, 1);
        opts.exog.bottomRows(300).setOnes();
        const auto d = simulate_var(proc, 600, 5, opts);
        CHECK(d.endog_names == std::vector<std::string>{"topic", "ruble"});
        const VarModel m = fit_var(d, 1);
        const Eigen::Index war = row_of(m, "war");
        CHECK(std::abs(m.coef(war, 0) - 5.0) < 3.0 * m.std_errors(war, 0));
        CHECK(std::abs(m.coef(war, 1) + 5.0) < 3.0 * m.std_errors(war, 1));
    }
}

TEST_CASE("companion matrix and spectral radius") {
    const auto data = varflow::testing::oracle_panel().dataset();
    const VarModel m = fit_var(data, 2);
    const Eigen::MatrixXd c = m.companion();
    CHECK(c.rows() == 4);
    CHECK(c.block(0, 0, 2, 2) == m.lag_matrix(1));
    CHECK(c.block(0, 2, 2, 2) == m.lag_matrix(2));
    CHECK(c.block(2, 0, 2, 2) == Eigen::Matrix2d::Identity());
    const std::vector<Eigen::MatrixXd> lags{m.lag_matrix(1), m.lag_matrix(2)};
    CHECK(m.spectral_radius() == doctest::Approx(spectral_radius(lags)));
    const std::vector<Eigen::MatrixXd> unit{Eigen::MatrixXd::Identity(2, 2)};
    CHECK(spectral_radius(unit) == doctest::Approx(1.0));
}

}  // TEST_SUITE
