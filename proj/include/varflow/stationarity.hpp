#pragma once

#include <optional>
#include <vector>

#include "varflow/series.hpp"

namespace varflow {

enum class AdfRegression { constant, constant_and_trend };

struct AdfResult {
    double statistic = 0.0;  ///< t-statistic of the lagged level
    double p_value = 0.0;    ///< table-interpolated, clamped to [0.01, 0.99]
    int lag_order = 0;       ///< number of lagged differences
    AdfRegression regression = AdfRegression::constant_and_trend;
    std::size_t nobs = 0;    ///< rows in the test regression
};

/// Default lag order trunc((n - 1)^(1/3)).
[[nodiscard]] int adf_default_lag(std::size_t n);

/// Augmented Dickey-Fuller test of the unit-root null.
///
/// Regresses dy_t on [1, t,] y_{t-1} and dy_{t-1..t-k}. The p-value is interpolated in the
/// Dickey-Fuller tables (Fuller 1976 for the constant case, Banerjee et al. 1993 for
/// constant plus trend), first across sample sizes, then across probabilities.
/// Requires ts.size() >= lag + 10.
[[nodiscard]] AdfResult adf_test(const TimeSeries& ts,
                                 AdfRegression regression = AdfRegression::constant_and_trend,
                                 std::optional<int> lag = std::nullopt);

/// p-value for a given statistic and regression sample size.
[[nodiscard]] double adf_p_value(double statistic, std::size_t nobs, AdfRegression regression);

struct StationarityOptions {
    double alpha = 0.05;
    int max_d = 2;
    AdfRegression regression = AdfRegression::constant_and_trend;
    std::optional<int> lag;
};

struct StationarityResult {
    TimeSeries series;              ///< the d-times differenced input
    int d = 0;
    std::vector<AdfResult> tests;   ///< tests[i] is the ADF result on the i-times differenced series
};

/// Differences until the ADF test rejects at `alpha`.
/// Throws NonStationarityError when the max_d-differenced series still does not reject.
[[nodiscard]] StationarityResult ensure_stationary(const TimeSeries& ts, const StationarityOptions& options = {});

}  // namespace varflow
