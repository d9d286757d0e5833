#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varflow/month.hpp"
#include "varflow/series.hpp"

namespace varflow {

/// Endogenous and exogenous series on a shared monthly grid, plus deterministic-term flags.
struct PanelDataset {
    MonthStamp start{2000, 1};
    std::vector<std::string> endog_names;
    Eigen::MatrixXd endog;  ///< T x K, one column per series
    std::vector<std::string> exog_names;
    Eigen::MatrixXd exog;   ///< T x E step dummies
    bool include_constant = true;
    bool include_trend = true;

    [[nodiscard]] Eigen::Index periods() const noexcept { return endog.rows(); }
    [[nodiscard]] Eigen::Index num_endog() const noexcept { return endog.cols(); }
    [[nodiscard]] Eigen::Index num_exog() const noexcept { return exog.cols(); }
    [[nodiscard]] Eigen::Index endog_index(std::string_view name) const;

    /// Checks shapes, finiteness, name counts, and that dummies are 0/1 and non-decreasing.
    void validate() const;

    /// Builds a dataset from already aligned endogenous series; exogenous series are sliced
    /// to the endogenous range (they must cover it).
    static PanelDataset from_series(std::span<const TimeSeries> endog, std::span<const TimeSeries> exog,
                                    bool include_constant = true, bool include_trend = true);

    /// Drops the first `rows` periods.
    [[nodiscard]] PanelDataset drop_leading(Eigen::Index rows) const;
};

/// Fitted VAR(p), estimated equation by equation with OLS.
///
/// Regressors are ordered: lag 1 of every endogenous series, lag 2, ..., lag p, the
/// exogenous dummies, the constant, the trend. The trend at dataset row t is t + 1.
struct VarModel {
    int p = 0;
    PanelDataset data;
    Eigen::Index first_row = 0;   ///< first dataset row used as a response
    std::vector<std::string> regressor_names;
    Eigen::MatrixXd coef;         ///< regressors x K; column j is equation j
    Eigen::MatrixXd std_errors;   ///< regressors x K
    Eigen::MatrixXd xtx_inv;      ///< (X'X)^-1, shared by all equations
    Eigen::MatrixXd residuals;    ///< nobs x K
    Eigen::MatrixXd sigma;        ///< residual covariance, SSR / (nobs - regressors)
    Eigen::VectorXd r2;
    Eigen::VectorXd r2_adj;

    [[nodiscard]] Eigen::Index num_endog() const noexcept { return data.num_endog(); }
    [[nodiscard]] Eigen::Index nobs() const noexcept { return residuals.rows(); }
    [[nodiscard]] Eigen::Index num_regressors() const noexcept { return coef.rows(); }
    [[nodiscard]] double residual_dof() const noexcept {
        return static_cast<double>(nobs() - num_regressors());
    }

    /// K x K coefficient matrix of lag i (1-based); entry (eq, var).
    [[nodiscard]] Eigen::MatrixXd lag_matrix(int i) const;
    /// K x E exogenous coefficients.
    [[nodiscard]] Eigen::MatrixXd exog_coef() const;
    /// Zero vector when the model has no constant.
    [[nodiscard]] Eigen::VectorXd intercept() const;
    /// Zero vector when the model has no trend.
    [[nodiscard]] Eigen::VectorXd trend_coef() const;

    /// Covariance of the coefficients of one equation, sigma(eq, eq) * (X'X)^-1.
    [[nodiscard]] Eigen::MatrixXd coef_cov(Eigen::Index equation) const;

    [[nodiscard]] Eigen::MatrixXd companion() const;
    [[nodiscard]] double spectral_radius() const;

    [[nodiscard]] Eigen::MatrixXd design() const;
    [[nodiscard]] Eigen::MatrixXd fitted() const;
    [[nodiscard]] Eigen::Index equation_index(std::string_view name) const;
};

/// Design matrix rows first_row..T-1 for a VAR(p). first_row must be >= p.
[[nodiscard]] Eigen::MatrixXd var_design(const PanelDataset& data, int p, Eigen::Index first_row,
                                         std::vector<std::string>* names = nullptr);

/// OLS fit of a VAR(p). Responses start at `first_row` (default p).
/// Throws SingularDesignError naming collinear regressors and DegenerateInputError when
/// the sample cannot identify the model.
[[nodiscard]] VarModel fit_var(const PanelDataset& data, int p, std::optional<Eigen::Index> first_row = std::nullopt);

enum class LagCriterion { sc, bic };

struct LagSelection {
    int p = 1;
    std::vector<double> criteria;  ///< criteria[i] is the value at lag i + 1
    Eigen::Index common_nobs = 0;
};

/// Minimizes ln det(Sigma_ml(p)) + ln(T*)/T* * (regressors per equation * K) over p = 1..max_lag,
/// on the common sample available at max_lag. Ties go to the smaller lag.
/// SC and BIC name the same criterion.
[[nodiscard]] LagSelection select_lag(const PanelDataset& data, int max_lag = 6,
                                      LagCriterion criterion = LagCriterion::sc);

/// One coefficient estimate with its significance marker.
struct CoefficientCell {
    double estimate = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 1.0;
    std::string stars;
};

struct CoefficientRow {
    std::string term;
    CoefficientCell cell;
};

struct CoefficientTable {
    std::string equation;
    std::vector<CoefficientRow> rows;  ///< lags, dummies, constant, trend
    Eigen::Index nobs = 0;
    double r2 = 0.0;
    double r2_adj = 0.0;
};

/// "+" p < 0.10, "*" p < 0.05, "**" p < 0.01, "***" p < 0.001, else "".
[[nodiscard]] std::string significance_stars(double p_value);

/// Regression table for one equation; p-values from Student t with nobs - regressors df.
[[nodiscard]] CoefficientTable coefficient_table(const VarModel& model, std::string_view equation);

/// Data-generating parameters of a VAR with exogenous and deterministic terms.
struct VarProcess {
    std::vector<Eigen::MatrixXd> lags;  ///< A_1..A_p, each K x K
    Eigen::MatrixXd exog_coef;          ///< K x E (may be empty)
    Eigen::VectorXd intercept;          ///< K (may be empty)
    Eigen::VectorXd trend;              ///< K (may be empty)
    Eigen::MatrixXd sigma;              ///< K x K innovation covariance
};

struct SimulationOptions {
    MonthStamp start{2000, 1};
    std::vector<std::string> endog_names;  ///< defaults to y1..yK
    std::vector<std::string> exog_names;
    Eigen::MatrixXd exog;                  ///< T x E, held at its first row during burn-in
    int burn_in = 100;
    bool include_constant = true;
    bool include_trend = true;
};

/// Simulates T periods after discarding `burn_in` (>= 100) periods. Deterministic in `seed`.
/// Throws ParameterError for a non positive definite sigma or inconsistent shapes.
[[nodiscard]] PanelDataset simulate_var(const VarProcess& process, Eigen::Index periods, std::uint64_t seed,
                                        const SimulationOptions& options = {});

/// Largest eigenvalue modulus of the companion matrix of A_1..A_p.
[[nodiscard]] double spectral_radius(std::span<const Eigen::MatrixXd> lags);

}  // namespace varflow
