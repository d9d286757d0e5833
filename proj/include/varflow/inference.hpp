#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "varflow/var.hpp"

namespace varflow {

struct GrangerResult {
    std::string cause;
    std::string effect;
    double wald_stat = 0.0;
    int df = 0;           ///< number of restricted lags, p
    double p_value = 1.0; ///< chi-square(df) upper tail
    int lag = 0;
    int d_max = 0;
};

/// Toda-Yamamoto Granger test: fits VAR(p + d_max) and Wald-tests that the first p lags of
/// `cause` in the `effect` equation are zero. The d_max extra lags stay unrestricted.
[[nodiscard]] GrangerResult toda_yamamoto_granger(const PanelDataset& data, int p, int d_max,
                                                  std::string_view cause, std::string_view effect);

/// Wald test on an already fitted model, restricting lags 1..restricted_lags.
[[nodiscard]] GrangerResult granger_wald(const VarModel& model, int restricted_lags, std::string_view cause,
                                         std::string_view effect);

/// MA coefficients Phi_0 = I, Phi_h = sum_{i=1..min(h,p)} Phi_{h-i} A_i, for h = 0..horizon.
[[nodiscard]] std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon);

/// Lower Cholesky factor of the residual covariance. Throws CholeskyError if not PD.
[[nodiscard]] Eigen::MatrixXd residual_cholesky(const VarModel& model);

struct IrfOptions {
    int horizon = 10;
    bool orthogonalized = true;
    int boot_reps = 500;
    double ci_level = 0.95;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct IrfResult {
    std::string impulse;
    std::string response;
    int horizon = 0;
    std::vector<double> point;  ///< horizon + 1 entries
    std::vector<double> lower;
    std::vector<double> upper;
    bool orthogonalized = true;
    int boot_reps = 0;
    double ci_level = 0.95;
    std::uint64_t seed = 0;
    double spectral_radius = 0.0;
    bool stable = true;  ///< false when the companion spectral radius is >= 1
};

/// Impulse responses with residual-bootstrap percentile bands.
///
/// Each replicate draws centered residuals with replacement, rebuilds the sample recursively
/// from the fitted coefficients and the original initial values, and refits. Replicate r uses
/// its own RNG stream derived from (seed, r), so bands do not depend on `threads`.
[[nodiscard]] IrfResult irf(const VarModel& model, std::string_view impulse, std::string_view response,
                            const IrfOptions& options = {});

}  // namespace varflow
