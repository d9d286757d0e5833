#include "varflow/inference.hpp"

#include <algorithm>
#include <fmt/core.h>
#include <random>
#include <thread>

#include "varflow/error.hpp"
#include "varflow/linalg.hpp"

namespace varflow {

GrangerResult granger_wald(const VarModel& model, int restricted_lags, std::string_view cause,
                           std::string_view effect) {
    const Eigen::Index c = model.equation_index(cause);
    const Eigen::Index e = model.equation_index(effect);
    if (c == e) {
        throw ConfigError("Granger cause and effect must be different series");
    }
    if (restricted_lags < 1 || restricted_lags > model.p) {
        throw DomainError(fmt::format("cannot restrict {} lags of a VAR({})", restricted_lags, model.p));
    }
    const Eigen::Index k = model.num_endog();
    std::vector<Eigen::Index> idx;
    for (int lag = 1; lag <= restricted_lags; ++lag) {
        idx.push_back(k * (lag - 1) + c);
    }
    const auto q = static_cast<Eigen::Index>(idx.size());
    const Eigen::MatrixXd cov = model.coef_cov(e);
    Eigen::VectorXd b(q);
    Eigen::MatrixXd v(q, q);
    for (Eigen::Index i = 0; i < q; ++i) {
        b(i) = model.coef(idx[static_cast<std::size_t>(i)], e);
        for (Eigen::Index j = 0; j < q; ++j) {
            v(i, j) = cov(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(v);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) {
        throw DegenerateInputError(
            fmt::format("restricted coefficient covariance for '{}' -> '{}' is singular", cause, effect));
    }
    GrangerResult out;
    out.cause = std::string(cause);
    out.effect = std::string(effect);
    out.wald_stat = std::max(0.0, b.dot(ldlt.solve(b)));
    out.df = restricted_lags;
    out.p_value = chi_square_sf(out.wald_stat, out.df);
    out.lag = restricted_lags;
    out.d_max = model.p - restricted_lags;
    return out;
}

GrangerResult toda_yamamoto_granger(const PanelDataset& data, int p, int d_max, std::string_view cause,
                                    std::string_view effect) {
    if (p < 1 || d_max < 0) {
        throw DomainError(fmt::format("Toda-Yamamoto needs p >= 1 and d_max >= 0 (got {}, {})", p, d_max));
    }
    const VarModel model = fit_var(data, p + d_max);
    return granger_wald(model, p, cause, effect);
}

std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon) {
    const Eigen::Index k = model.num_endog();
    std::vector<Eigen::MatrixXd> lags;
    for (int i = 1; i <= model.p; ++i) {
        lags.push_back(model.lag_matrix(i));
    }
    std::vector<Eigen::MatrixXd> phi;
    phi.push_back(Eigen::MatrixXd::Identity(k, k));
    for (int h = 1; h <= horizon; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
        for (int i = 1; i <= std::min(h, model.p); ++i) {
            acc += phi[static_cast<std::size_t>(h - i)] * lags[static_cast<std::size_t>(i - 1)];
        }
        phi.push_back(std::move(acc));
    }
    return phi;
}

Eigen::MatrixXd residual_cholesky(const VarModel& model) {
    const Eigen::LLT<Eigen::MatrixXd> llt(model.sigma);
    if (llt.info() != Eigen::Success) {
        throw CholeskyError("residual covariance is not positive definite");
    }
    return llt.matrixL();
}

namespace {

std::vector<double> response_path(const VarModel& model, Eigen::Index impulse, Eigen::Index response, int horizon,
                                  bool orthogonalized) {
    const auto phi = ma_coefficients(model, horizon);
    std::vector<double> out(static_cast<std::size_t>(horizon) + 1);
    if (orthogonalized) {
        const Eigen::MatrixXd chol = residual_cholesky(model);
        for (int h = 0; h <= horizon; ++h) {
            out[static_cast<std::size_t>(h)] = (phi[static_cast<std::size_t>(h)] * chol)(response, impulse);
        }
    } else {
        for (int h = 0; h <= horizon; ++h) {
            out[static_cast<std::size_t>(h)] = phi[static_cast<std::size_t>(h)](response, impulse);
        }
    }
    return out;
}

std::vector<double> bootstrap_replicate(const VarModel& model, const Eigen::MatrixXd& centered, Eigen::Index impulse,
                                        Eigen::Index response, const IrfOptions& options, std::uint64_t stream) {
    std::mt19937_64 rng(derive_seed(options.seed, stream));
    std::uniform_int_distribution<Eigen::Index> pick(0, centered.rows() - 1);

    PanelDataset boot = model.data;
    const Eigen::Index k = model.num_endog();
    const Eigen::MatrixXd x = model.design();
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const Eigen::Index t = model.first_row + r;
        Eigen::RowVectorXd row(x.cols());
        Eigen::Index c = 0;
        for (int lag = 1; lag <= model.p; ++lag) {
            row.segment(c, k) = boot.endog.row(t - lag);
            c += k;
        }
        row.tail(x.cols() - c) = x.row(r).tail(x.cols() - c);
        boot.endog.row(t) = row * model.coef + centered.row(pick(rng));
    }
    const VarModel refit = fit_var(boot, model.p, model.first_row);
    return response_path(refit, impulse, response, options.horizon, options.orthogonalized);
}

}  // namespace

IrfResult irf(const VarModel& model, std::string_view impulse, std::string_view response, const IrfOptions& options) {
    if (options.horizon < 1) {
        throw DomainError(fmt::format("IRF horizon must be >= 1, got {}", options.horizon));
    }
    if (options.boot_reps < 0 || !(options.ci_level > 0.0 && options.ci_level < 1.0)) {
        throw DomainError("IRF needs boot_reps >= 0 and ci_level in (0, 1)");
    }
    const Eigen::Index imp = model.equation_index(impulse);
    const Eigen::Index resp = model.equation_index(response);

    IrfResult out;
    out.impulse = std::string(impulse);
    out.response = std::string(response);
    out.horizon = options.horizon;
    out.orthogonalized = options.orthogonalized;
    out.boot_reps = options.boot_reps;
    out.ci_level = options.ci_level;
    out.seed = options.seed;
    out.spectral_radius = model.spectral_radius();
    out.stable = out.spectral_radius < 1.0;
    out.point = response_path(model, imp, resp, options.horizon, options.orthogonalized);

    if (options.boot_reps == 0) {
        out.lower = out.point;
        out.upper = out.point;
        return out;
    }

    Eigen::MatrixXd centered = model.residuals.rowwise() - model.residuals.colwise().mean();
    const auto reps = static_cast<std::size_t>(options.boot_reps);
    std::vector<std::vector<double>> draws(reps);
    const unsigned workers = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(reps)));
    if (workers == 1) {
        for (std::size_t r = 0; r < reps; ++r) {
            draws[r] = bootstrap_replicate(model, centered, imp, resp, options, r);
        }
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t r = w; r < reps; r += workers) {
                            draws[r] = bootstrap_replicate(model, centered, imp, resp, options, r);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    const double tail = (1.0 - options.ci_level) / 2.0;
    out.lower.resize(out.point.size());
    out.upper.resize(out.point.size());
    std::vector<double> column(reps);
    for (std::size_t h = 0; h < out.point.size(); ++h) {
        for (std::size_t r = 0; r < reps; ++r) {
            column[r] = draws[r][h];
        }
        out.lower[h] = quantile(column, tail);
        out.upper[h] = quantile(column, 1.0 - tail);
    }
    return out;
}

}  // namespace varflow
