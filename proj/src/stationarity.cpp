#include "varflow/stationarity.hpp"

#include <array>
#include <cmath>
#include <fmt/core.h>

#include "varflow/error.hpp"
#include "varflow/linalg.hpp"

namespace varflow {

namespace {

constexpr std::array<double, 6> kTableSizes{25, 50, 100, 250, 500, 100000};
constexpr std::array<double, 8> kTableProbs{0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};

// Rows: probabilities; columns: sample sizes.
using DfTable = std::array<std::array<double, 6>, 8>;

// Fuller (1976), tau_mu.
constexpr DfTable kConstantTable{{
    {-3.75, -3.58, -3.51, -3.46, -3.44, -3.43},
    {-3.33, -3.22, -3.17, -3.14, -3.13, -3.12},
    {-3.00, -2.93, -2.89, -2.88, -2.87, -2.86},
    {-2.63, -2.60, -2.58, -2.57, -2.57, -2.57},
    {-0.37, -0.40, -0.42, -0.42, -0.43, -0.44},
    {0.00, -0.03, -0.05, -0.06, -0.07, -0.07},
    {0.34, 0.29, 0.26, 0.24, 0.24, 0.23},
    {0.72, 0.66, 0.63, 0.62, 0.61, 0.60},
}};

// Banerjee et al. (1993), tau_tau.
constexpr DfTable kTrendTable{{
    {-4.38, -4.15, -4.04, -3.99, -3.98, -3.96},
    {-3.95, -3.80, -3.73, -3.69, -3.68, -3.66},
    {-3.60, -3.50, -3.45, -3.43, -3.42, -3.41},
    {-3.24, -3.18, -3.15, -3.13, -3.13, -3.12},
    {-1.14, -1.19, -1.22, -1.23, -1.24, -1.25},
    {-0.80, -0.87, -0.90, -0.92, -0.93, -0.94},
    {-0.50, -0.58, -0.62, -0.64, -0.65, -0.66},
    {-0.15, -0.24, -0.28, -0.31, -0.32, -0.33},
}};

}  // namespace

int adf_default_lag(std::size_t n) {
    if (n < 2) {
        return 0;
    }
    return static_cast<int>(std::trunc(std::cbrt(static_cast<double>(n - 1))));
}

double adf_p_value(double statistic, std::size_t nobs, AdfRegression regression) {
    const DfTable& table = regression == AdfRegression::constant ? kConstantTable : kTrendTable;
    std::array<double, 8> crit{};
    for (std::size_t i = 0; i < crit.size(); ++i) {
        crit[i] = interpolate_clamped(kTableSizes, table[i], static_cast<double>(nobs));
    }
    return interpolate_clamped(crit, kTableProbs, statistic);
}

AdfResult adf_test(const TimeSeries& ts, AdfRegression regression, std::optional<int> lag) {
    const int k = lag.value_or(adf_default_lag(ts.size()));
    if (k < 0) {
        throw DomainError(fmt::format("ADF lag order must be >= 0, got {}", k));
    }
    const auto n = ts.size();
    if (n < static_cast<std::size_t>(k) + 10) {
        throw DegenerateInputError(fmt::format(
            "series '{}' has {} values; ADF with {} lags needs at least {}", ts.name(), n, k, k + 10));
    }
    const auto y = ts.values();
    std::vector<double> dy(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dy[i] = y[i + 1] - y[i];
    }

    // Row r regresses dy[t] with t = k + r.
    const auto rows = static_cast<Eigen::Index>(dy.size() - static_cast<std::size_t>(k));
    const bool trend = regression == AdfRegression::constant_and_trend;
    const Eigen::Index cols = 2 + (trend ? 1 : 0) + k;
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd resp(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto t = static_cast<std::size_t>(k + r);
        resp(r) = dy[t];
        Eigen::Index c = 0;
        x(r, c++) = y[t];  // lagged level y_{t-1} in the dy indexing
        x(r, c++) = 1.0;
        if (trend) {
            x(r, c++) = static_cast<double>(t + 1);
        }
        for (int i = 1; i <= k; ++i) {
            x(r, c++) = dy[t - static_cast<std::size_t>(i)];
        }
    }

    std::vector<std::string> names{"lagged level", "constant"};
    if (trend) {
        names.emplace_back("trend");
    }
    for (int i = 1; i <= k; ++i) {
        names.push_back(fmt::format("lagged difference {}", i));
    }
    const OlsFit fit = ols(x, resp, names);
    const double dof = static_cast<double>(rows - cols);
    if (!(dof > 0.0)) {
        throw DegenerateInputError("ADF regression has no residual degrees of freedom");
    }
    const double s2 = fit.residuals.squaredNorm() / dof;
    const double se = std::sqrt(s2 * fit.xtx_inv(0, 0));
    if (!(se > 0.0)) {
        throw DegenerateInputError(fmt::format("series '{}' is fitted exactly by the ADF regression", ts.name()));
    }

    AdfResult out;
    out.statistic = fit.coef(0, 0) / se;
    out.lag_order = k;
    out.regression = regression;
    out.nobs = static_cast<std::size_t>(rows);
    out.p_value = adf_p_value(out.statistic, out.nobs, regression);
    return out;
}

StationarityResult ensure_stationary(const TimeSeries& ts, const StationarityOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha < 1.0) || options.max_d < 0) {
        throw ConfigError("ensure_stationary needs alpha in (0, 1) and max_d >= 0");
    }
    std::vector<AdfResult> tests;
    TimeSeries current = ts;
    for (int d = 0;; ++d) {
        tests.push_back(adf_test(current, options.regression, options.lag));
        if (tests.back().p_value < options.alpha) {
            return {std::move(current), d, std::move(tests)};
        }
        if (d == options.max_d) {
            break;
        }
        current = difference(current, 1);
    }
    throw NonStationarityError(fmt::format("series '{}' is not stationary after {} differences (ADF p = {:.3f})",
                                           ts.name(), options.max_d, tests.back().p_value));
}

}  // namespace varflow
