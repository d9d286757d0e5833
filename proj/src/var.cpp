#include "varflow/var.hpp"

#include <cmath>
#include <fmt/core.h>
#include <random>

#include "varflow/error.hpp"
#include "varflow/linalg.hpp"

namespace varflow {

Eigen::Index PanelDataset::endog_index(std::string_view name) const {
    for (std::size_t i = 0; i < endog_names.size(); ++i) {
        if (endog_names[i] == name) {
            return static_cast<Eigen::Index>(i);
        }
    }
    throw LookupError(fmt::format("no endogenous series named '{}'", name));
}

void PanelDataset::validate() const {
    if (endog.cols() < 1 || endog.rows() < 1) {
        throw DegenerateInputError("dataset has no endogenous observations");
    }
    if (static_cast<Eigen::Index>(endog_names.size()) != endog.cols()) {
        throw ParameterError(fmt::format("{} endogenous names for {} series", endog_names.size(), endog.cols()));
    }
    if (exog.cols() > 0 && exog.rows() != endog.rows()) {
        throw ParameterError(fmt::format("exogenous block has {} rows, endogenous {}", exog.rows(), endog.rows()));
    }
    if (static_cast<Eigen::Index>(exog_names.size()) != exog.cols()) {
        throw ParameterError(fmt::format("{} exogenous names for {} series", exog_names.size(), exog.cols()));
    }
    if (!endog.allFinite() || !exog.allFinite()) {
        throw DomainError("dataset contains non-finite values");
    }
    for (Eigen::Index j = 0; j < exog.cols(); ++j) {
        for (Eigen::Index t = 0; t < exog.rows(); ++t) {
            const double v = exog(t, j);
            if (v != 0.0 && v != 1.0) {
                throw DomainError(fmt::format("dummy '{}' has non 0/1 value {} at row {}", exog_names[static_cast<std::size_t>(j)], v, t));
            }
            if (t > 0 && v < exog(t - 1, j)) {
                throw DomainError(fmt::format("dummy '{}' decreases at row {}", exog_names[static_cast<std::size_t>(j)], t));
            }
        }
    }
}

PanelDataset PanelDataset::from_series(std::span<const TimeSeries> endog, std::span<const TimeSeries> exog,
                                       bool include_constant, bool include_trend) {
    if (endog.empty()) {
        throw DegenerateInputError("dataset needs at least one endogenous series");
    }
    const MonthRange range = endog.front().range();
    PanelDataset out;
    out.start = range.first;
    out.include_constant = include_constant;
    out.include_trend = include_trend;
    const auto periods = static_cast<Eigen::Index>(range.size());
    out.endog.resize(periods, static_cast<Eigen::Index>(endog.size()));
    for (std::size_t j = 0; j < endog.size(); ++j) {
        if (endog[j].start() != range.first || endog[j].end() != range.last) {
            throw AlignmentError(fmt::format("series '{}' is not aligned with '{}'", endog[j].name(),
                                             endog.front().name()));
        }
        out.endog_names.push_back(endog[j].name());
        for (Eigen::Index t = 0; t < periods; ++t) {
            out.endog(t, static_cast<Eigen::Index>(j)) = endog[j][static_cast<std::size_t>(t)];
        }
    }
    out.exog.resize(periods, static_cast<Eigen::Index>(exog.size()));
    for (std::size_t j = 0; j < exog.size(); ++j) {
        const TimeSeries s = exog[j].slice(range.first, range.last);
        out.exog_names.push_back(s.name());
        for (Eigen::Index t = 0; t < periods; ++t) {
            out.exog(t, static_cast<Eigen::Index>(j)) = s[static_cast<std::size_t>(t)];
        }
    }
    out.validate();
    return out;
}

PanelDataset PanelDataset::drop_leading(Eigen::Index rows) const {
    if (rows < 0 || rows >= periods()) {
        throw DegenerateInputError(fmt::format("cannot drop {} of {} periods", rows, periods()));
    }
    PanelDataset out = *this;
    out.start = start.plus(static_cast<int>(rows));
    out.endog = endog.bottomRows(periods() - rows);
    out.exog = exog.cols() > 0 ? Eigen::MatrixXd(exog.bottomRows(periods() - rows))
                               : Eigen::MatrixXd(periods() - rows, 0);
    return out;
}

Eigen::MatrixXd var_design(const PanelDataset& data, int p, Eigen::Index first_row,
                           std::vector<std::string>* names) {
    const Eigen::Index k = data.num_endog();
    const Eigen::Index e = data.num_exog();
    const Eigen::Index cols = k * p + e + (data.include_constant ? 1 : 0) + (data.include_trend ? 1 : 0);
    const Eigen::Index rows = data.periods() - first_row;
    if (first_row < p || rows < 1) {
        throw DegenerateInputError(fmt::format("no usable rows for a VAR({}) starting at row {}", p, first_row));
    }
    Eigen::MatrixXd x(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = first_row + r;
        Eigen::Index c = 0;
        for (int lag = 1; lag <= p; ++lag) {
            x.block(r, c, 1, k) = data.endog.row(t - lag);
            c += k;
        }
        if (e > 0) {
            x.block(r, c, 1, e) = data.exog.row(t);
            c += e;
        }
        if (data.include_constant) {
            x(r, c++) = 1.0;
        }
        if (data.include_trend) {
            x(r, c++) = static_cast<double>(t + 1);
        }
    }
    if (names != nullptr) {
        names->clear();
        for (int lag = 1; lag <= p; ++lag) {
            for (const auto& n : data.endog_names) {
                names->push_back(fmt::format("{} (-{})", n, lag));
            }
        }
        for (const auto& n : data.exog_names) {
            names->push_back(n);
        }
        if (data.include_constant) {
            names->emplace_back("Constant");
        }
        if (data.include_trend) {
            names->emplace_back("Trend");
        }
    }
    return x;
}

VarModel fit_var(const PanelDataset& data, int p, std::optional<Eigen::Index> first_row) {
    if (p < 1) {
        throw DomainError(fmt::format("VAR lag order must be >= 1, got {}", p));
    }
    data.validate();
    const Eigen::Index start = first_row.value_or(p);
    VarModel m;
    m.p = p;
    m.data = data;
    m.first_row = start;
    const Eigen::MatrixXd x = var_design(data, p, start, &m.regressor_names);
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (n <= k) {
        throw DegenerateInputError(fmt::format("VAR({}) needs more than {} observations, have {}", p, k, n));
    }
    const Eigen::MatrixXd y = data.endog.bottomRows(n);
    OlsFit fit = ols(x, y, m.regressor_names);
    m.coef = std::move(fit.coef);
    m.residuals = std::move(fit.residuals);
    m.xtx_inv = std::move(fit.xtx_inv);
    const double dof = static_cast<double>(n - k);
    m.sigma = (m.residuals.transpose() * m.residuals) / dof;

    const Eigen::Index neq = data.num_endog();
    m.std_errors.resize(k, neq);
    m.r2.resize(neq);
    m.r2_adj.resize(neq);
    const Eigen::VectorXd diag = m.xtx_inv.diagonal();
    for (Eigen::Index j = 0; j < neq; ++j) {
        m.std_errors.col(j) = (diag.array() * m.sigma(j, j)).sqrt();
        const double ssr = m.residuals.col(j).squaredNorm();
        const auto yj = y.col(j);
        double sst = 0.0;
        double r2_dof = static_cast<double>(n);
        if (data.include_constant) {
            sst = (yj.array() - yj.mean()).square().sum();
            r2_dof -= 1.0;
        } else {
            sst = yj.squaredNorm();
        }
        const double r2 = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 0.0;
        m.r2(j) = r2;
        m.r2_adj(j) = 1.0 - (1.0 - r2) * r2_dof / dof;
    }
    return m;
}

Eigen::MatrixXd VarModel::lag_matrix(int i) const {
    if (i < 1 || i > p) {
        throw LookupError(fmt::format("lag {} outside 1..{}", i, p));
    }
    const Eigen::Index k = num_endog();
    return coef.block(k * (i - 1), 0, k, k).transpose();
}

Eigen::MatrixXd VarModel::exog_coef() const {
    const Eigen::Index k = num_endog();
    return coef.block(k * p, 0, data.num_exog(), k).transpose();
}

Eigen::VectorXd VarModel::intercept() const {
    const Eigen::Index k = num_endog();
    if (!data.include_constant) {
        return Eigen::VectorXd::Zero(k);
    }
    return coef.row(k * p + data.num_exog()).transpose();
}

Eigen::VectorXd VarModel::trend_coef() const {
    const Eigen::Index k = num_endog();
    if (!data.include_trend) {
        return Eigen::VectorXd::Zero(k);
    }
    return coef.row(coef.rows() - 1).transpose();
}

Eigen::MatrixXd VarModel::coef_cov(Eigen::Index equation) const { return sigma(equation, equation) * xtx_inv; }

Eigen::MatrixXd VarModel::companion() const {
    std::vector<Eigen::MatrixXd> lags;
    for (int i = 1; i <= p; ++i) {
        lags.push_back(lag_matrix(i));
    }
    const Eigen::Index k = num_endog();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k * p, k * p);
    for (int i = 0; i < p; ++i) {
        c.block(0, k * i, k, k) = lags[static_cast<std::size_t>(i)];
    }
    if (p > 1) {
        c.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
    }
    return c;
}

double VarModel::spectral_radius() const {
    return companion().eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd VarModel::design() const { return var_design(data, p, first_row); }

Eigen::MatrixXd VarModel::fitted() const { return design() * coef; }

Eigen::Index VarModel::equation_index(std::string_view name) const { return data.endog_index(name); }

LagSelection select_lag(const PanelDataset& data, int max_lag, LagCriterion /*criterion*/) {
    if (max_lag < 1) {
        throw DomainError(fmt::format("max_lag must be >= 1, got {}", max_lag));
    }
    data.validate();
    const Eigen::Index k = data.num_endog();
    const Eigen::Index common = data.periods() - max_lag;
    const Eigen::Index widest = k * max_lag + data.num_exog() + (data.include_constant ? 1 : 0) +
                                (data.include_trend ? 1 : 0);
    if (common <= widest) {
        throw DegenerateInputError(fmt::format(
            "{} periods cannot support lag selection up to {} ({} regressors per equation)", data.periods(),
            max_lag, widest));
    }
    LagSelection out;
    out.common_nobs = common;
    const double t_star = static_cast<double>(common);
    double best = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= max_lag; ++p) {
        const VarModel m = fit_var(data, p, max_lag);
        const Eigen::MatrixXd sigma_ml = (m.residuals.transpose() * m.residuals) / t_star;
        const Eigen::LLT<Eigen::MatrixXd> llt(sigma_ml);
        if (llt.info() != Eigen::Success) {
            throw DegenerateInputError(fmt::format("residual covariance at lag {} is singular", p));
        }
        const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        const double params = static_cast<double>(m.num_regressors() * k);
        const double value = log_det + std::log(t_star) / t_star * params;
        out.criteria.push_back(value);
        if (value < best) {
            best = value;
            out.p = p;
        }
    }
    return out;
}

std::string significance_stars(double p_value) {
    if (p_value < 0.001) {
        return "***";
    }
    if (p_value < 0.01) {
        return "**";
    }
    if (p_value < 0.05) {
        return "*";
    }
    if (p_value < 0.10) {
        return "+";
    }
    return "";
}

CoefficientTable coefficient_table(const VarModel& model, std::string_view equation) {
    const Eigen::Index eq = model.equation_index(equation);
    CoefficientTable table;
    table.equation = std::string(equation);
    table.nobs = model.nobs();
    table.r2 = model.r2(eq);
    table.r2_adj = model.r2_adj(eq);
    const double dof = model.residual_dof();
    for (Eigen::Index i = 0; i < model.num_regressors(); ++i) {
        CoefficientCell cell;
        cell.estimate = model.coef(i, eq);
        cell.std_error = model.std_errors(i, eq);
        cell.t_value = cell.std_error > 0.0 ? cell.estimate / cell.std_error : 0.0;
        cell.p_value = student_t_two_sided(cell.t_value, dof);
        cell.stars = significance_stars(cell.p_value);
        table.rows.push_back({model.regressor_names[static_cast<std::size_t>(i)], std::move(cell)});
    }
    return table;
}

double spectral_radius(std::span<const Eigen::MatrixXd> lags) {
    if (lags.empty()) {
        return 0.0;
    }
    const Eigen::Index k = lags.front().rows();
    const auto p = static_cast<Eigen::Index>(lags.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k * p, k * p);
    for (Eigen::Index i = 0; i < p; ++i) {
        c.block(0, k * i, k, k) = lags[static_cast<std::size_t>(i)];
    }
    if (p > 1) {
        c.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
    }
    return c.eigenvalues().cwiseAbs().maxCoeff();
}

PanelDataset simulate_var(const VarProcess& process, Eigen::Index periods, std::uint64_t seed,
                          const SimulationOptions& options) {
    const Eigen::Index k = process.sigma.rows();
    if (k < 1 || process.sigma.cols() != k) {
        throw ParameterError("innovation covariance must be square and non-empty");
    }
    if (!process.sigma.isApprox(process.sigma.transpose())) {
        throw ParameterError("innovation covariance is not symmetric");
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(process.sigma);
    if (llt.info() != Eigen::Success) {
        throw ParameterError("innovation covariance is not positive definite");
    }
    for (const auto& a : process.lags) {
        if (a.rows() != k || a.cols() != k) {
            throw ParameterError("lag matrices must be K x K");
        }
    }
    const Eigen::Index e = options.exog.cols();
    if (e > 0 && (options.exog.rows() != periods || process.exog_coef.rows() != k || process.exog_coef.cols() != e)) {
        throw ParameterError("exogenous data must be T x E with K x E coefficients");
    }
    if ((process.intercept.size() != 0 && process.intercept.size() != k) ||
        (process.trend.size() != 0 && process.trend.size() != k)) {
        throw ParameterError("intercept and trend must have K entries");
    }
    if (options.burn_in < 100) {
        throw ParameterError(fmt::format("burn-in must be at least 100 periods, got {}", options.burn_in));
    }
    if (periods < 1) {
        throw ParameterError("simulation needs at least one period");
    }

    const Eigen::MatrixXd chol = llt.matrixL();
    const Eigen::Index burn = options.burn_in;
    const Eigen::Index total = burn + periods;
    const auto p = static_cast<Eigen::Index>(process.lags.size());
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(total, k);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(k);
    for (Eigen::Index t = 0; t < total; ++t) {
        for (Eigen::Index i = 0; i < k; ++i) {
            z(i) = normal(rng);
        }
        Eigen::VectorXd v = chol * z;
        for (Eigen::Index lag = 1; lag <= p && t - lag >= 0; ++lag) {
            v += process.lags[static_cast<std::size_t>(lag - 1)] * y.row(t - lag).transpose();
        }
        if (e > 0) {
            const Eigen::Index row = t < burn ? 0 : t - burn;
            v += process.exog_coef * options.exog.row(row).transpose();
        }
        if (process.intercept.size() == k) {
            v += process.intercept;
        }
        if (process.trend.size() == k) {
            v += process.trend * static_cast<double>(t - burn + 1);
        }
        y.row(t) = v.transpose();
    }

    PanelDataset out;
    out.start = options.start;
    out.endog = y.bottomRows(periods);
    if (options.endog_names.empty()) {
        for (Eigen::Index i = 0; i < k; ++i) {
            out.endog_names.push_back(fmt::format("y{}", i + 1));
        }
    } else {
        out.endog_names = options.endog_names;
    }
    out.exog = e > 0 ? options.exog : Eigen::MatrixXd(periods, 0);
    out.exog_names = options.exog_names;
    if (e > 0 && out.exog_names.empty()) {
        for (Eigen::Index i = 0; i < e; ++i) {
            out.exog_names.push_back(fmt::format("x{}", i + 1));
        }
    }
    out.include_constant = options.include_constant;
    out.include_trend = options.include_trend;
    out.validate();
    return out;
}

}  // namespace varflow
