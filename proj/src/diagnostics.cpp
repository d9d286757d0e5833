#include "varflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>

#include "varflow/error.hpp"
#include "varflow/linalg.hpp"

namespace varflow {

namespace detail {
extern const int kJohansenMaxDims;
extern const std::array<std::array<double, 99>, 6> kJohansenTraceQuantiles;
}  // namespace detail

LjungBoxResult ljung_box(std::span<const double> residual, int lags, int fit_df, std::string name) {
    const auto n = static_cast<int>(residual.size());
    if (lags < 1 || lags >= n) {
        throw DegenerateInputError(fmt::format("Ljung-Box needs 1 <= lags < length, got {} lags for {} values", lags, n));
    }
    if (fit_df < 0 || lags - fit_df < 1) {
        throw DomainError(fmt::format("Ljung-Box degrees of freedom {} - {} must be >= 1", lags, fit_df));
    }
    const AcfResult r = acf(residual, static_cast<std::size_t>(lags));
    double sum = 0.0;
    for (int k = 1; k <= lags; ++k) {
        const double rk = r.correlations[static_cast<std::size_t>(k)];
        sum += rk * rk / static_cast<double>(n - k);
    }
    LjungBoxResult out;
    out.series = std::move(name);
    out.statistic = static_cast<double>(n) * (n + 2.0) * sum;
    out.lags = lags;
    out.fit_df = fit_df;
    out.p_value = chi_square_sf(out.statistic, out.df());
    return out;
}

std::vector<LjungBoxResult> ljung_box(const VarModel& model, int lags, int fit_df) {
    std::vector<LjungBoxResult> out;
    for (Eigen::Index j = 0; j < model.num_endog(); ++j) {
        const Eigen::VectorXd col = model.residuals.col(j);
        out.push_back(ljung_box(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), lags,
                                fit_df, model.data.endog_names[static_cast<std::size_t>(j)]));
    }
    return out;
}

std::span<const double> johansen_trace_quantiles(int dims) {
    if (dims < 1 || dims > detail::kJohansenMaxDims) {
        throw LookupError(fmt::format("no trace distribution table for {} common trends", dims));
    }
    return detail::kJohansenTraceQuantiles[static_cast<std::size_t>(dims - 1)];
}

double johansen_trace_p_value(double stat, int dims) {
    const auto q = johansen_trace_quantiles(dims);
    // Upper-tail probability of each tabulated quantile: 0.99 down to 0.01.
    std::array<double, 99> tail{};
    for (std::size_t i = 0; i < tail.size(); ++i) {
        tail[i] = static_cast<double>(99 - i) / 100.0;
    }
    return std::clamp(interpolate_clamped(q, tail, stat), 0.01, 0.99);
}

namespace {

Eigen::MatrixXd partial_out(const Eigen::MatrixXd& y, const Eigen::MatrixXd& z) {
    if (z.cols() == 0) {
        return y;
    }
    return ols(z, y).residuals;
}

Eigen::LLT<Eigen::MatrixXd> checked_llt(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw DegenerateInputError(fmt::format("Johansen moment matrix {} is singular", what));
    }
    return llt;
}

}  // namespace

JohansenResult johansen_trace(const PanelDataset& data, int lag) {
    data.validate();
    const Eigen::Index k = data.num_endog();
    if (k < 2) {
        throw DegenerateInputError("Johansen test needs at least two series");
    }
    if (lag < 1) {
        throw DomainError(fmt::format("Johansen lag must be >= 1, got {}", lag));
    }
    if (k > detail::kJohansenMaxDims) {
        throw LookupError(fmt::format("Johansen tables cover at most {} series", detail::kJohansenMaxDims));
    }
    const Eigen::Index t_total = data.periods();
    // Responses are rows lag..T-1 of the level data.
    const Eigen::Index n = t_total - lag;
    const Eigen::MatrixXd& y = data.endog;

    std::vector<Eigen::Index> dummy_cols;
    for (Eigen::Index j = 0; j < data.num_exog(); ++j) {
        const auto col = data.exog.col(j).tail(n);
        if (col.maxCoeff() != col.minCoeff()) {
            dummy_cols.push_back(j);
        }
    }
    const Eigen::Index short_run = k * (lag - 1) + static_cast<Eigen::Index>(dummy_cols.size());
    if (n <= short_run + k + 1) {
        throw DegenerateInputError(fmt::format("{} periods cannot support a Johansen test with lag {}", t_total, lag));
    }

    Eigen::MatrixXd z0(n, k);
    Eigen::MatrixXd z1(n, short_run);
    Eigen::MatrixXd zk(n, k + 1);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index t = lag + r;
        z0.row(r) = y.row(t) - y.row(t - 1);
        Eigen::Index c = 0;
        for (int i = 1; i < lag; ++i) {
            z1.block(r, c, 1, k) = y.row(t - i) - y.row(t - i - 1);
            c += k;
        }
        for (Eigen::Index j : dummy_cols) {
            z1(r, c++) = data.exog(t, j);
        }
        zk.block(r, 0, 1, k) = y.row(t - 1);
        zk(r, k) = 1.0;
    }

    const Eigen::MatrixXd r0 = partial_out(z0, z1);
    const Eigen::MatrixXd rk = partial_out(zk, z1);
    const double scale = 1.0 / static_cast<double>(n);
    const Eigen::MatrixXd s00 = r0.transpose() * r0 * scale;
    const Eigen::MatrixXd s0k = r0.transpose() * rk * scale;
    const Eigen::MatrixXd skk = rk.transpose() * rk * scale;

    const auto llt00 = checked_llt(s00, "S00");
    const auto lltkk = checked_llt(skk, "Skk");
    // Symmetric form L^-1 Sk0 S00^-1 S0k L^-T with Skk = L L'.
    const Eigen::MatrixXd lk = lltkk.matrixL();
    const Eigen::MatrixXd left = lk.triangularView<Eigen::Lower>().solve(s0k.transpose());
    const Eigen::MatrixXd m = left * llt00.solve(left.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    std::vector<double> lambda(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    lambda.resize(static_cast<std::size_t>(k));
    for (double& l : lambda) {
        l = std::clamp(l, 0.0, 1.0 - 1e-15);
    }

    JohansenResult out;
    out.eigenvalues = lambda;
    out.lag = lag;
    out.nobs = n;
    for (Eigen::Index r = 0; r < k; ++r) {
        double stat = 0.0;
        for (Eigen::Index i = r; i < k; ++i) {
            stat -= static_cast<double>(n) * std::log1p(-lambda[static_cast<std::size_t>(i)]);
        }
        const int dims = static_cast<int>(k - r);
        const auto q = johansen_trace_quantiles(dims);
        out.rank_hypotheses.push_back(static_cast<int>(r));
        out.trace_stats.push_back(stat);
        out.critical_values.push_back({q[89], q[94], q[98]});
        out.p_values.push_back(johansen_trace_p_value(stat, dims));
    }
    return out;
}

}  // namespace varflow
