#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "varflow/var.hpp"

namespace varflow {

struct LjungBoxResult {
    std::string series;
    double statistic = 0.0;
    int lags = 0;
    int fit_df = 0;
    double p_value = 1.0;

    [[nodiscard]] int df() const noexcept { return lags - fit_df; }
};

/// Q = n(n+2) sum_{k=1..lags} r(k)^2 / (n-k), referred to chi-square(lags - fit_df).
/// Throws DegenerateInputError when lags >= n or the series is constant, DomainError when
/// lags - fit_df < 1.
[[nodiscard]] LjungBoxResult ljung_box(std::span<const double> residual, int lags = 10, int fit_df = 0,
                                       std::string name = {});

/// Ljung-Box on every equation's residuals of a fitted VAR.
[[nodiscard]] std::vector<LjungBoxResult> ljung_box(const VarModel& model, int lags = 10, int fit_df = 0);

struct JohansenResult {
    std::vector<double> eigenvalues;               ///< descending, K entries
    std::vector<int> rank_hypotheses;              ///< r = 0..K-1
    std::vector<double> trace_stats;               ///< non-increasing in r
    std::vector<std::array<double, 3>> critical_values;  ///< 10%, 5%, 1% per r
    std::vector<double> p_values;                  ///< clamped to [0.01, 0.99]
    int lag = 0;
    Eigen::Index nobs = 0;
};

/// Johansen trace test with the constant restricted to the cointegrating relation.
///
/// Short-run terms are lag - 1 lagged differences plus the dataset's exogenous dummies
/// (dummies constant over the effective sample are dropped). Eigenvalues come from the
/// canonical correlations of the reduced-rank regression. Critical values and p-values
/// are interpolated in tabulated quantiles of the asymptotic trace distribution for K - r
/// common trends (K - r <= 6).
[[nodiscard]] JohansenResult johansen_trace(const PanelDataset& data, int lag);

/// Quantiles of the asymptotic restricted-constant trace distribution with `dims` common
/// trends; entry i is the (i+1)% quantile. Throws LookupError for unsupported dims.
[[nodiscard]] std::span<const double> johansen_trace_quantiles(int dims);

/// Upper-tail probability for `stat`, clamped to [0.01, 0.99].
[[nodiscard]] double johansen_trace_p_value(double stat, int dims);

}  // namespace varflow
