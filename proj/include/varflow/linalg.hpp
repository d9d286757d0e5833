#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace varflow {

/// Multi-response least squares fit of Y (n x m) on X (n x k).
struct OlsFit {
    Eigen::MatrixXd coef;       ///< k x m
    Eigen::MatrixXd residuals;  ///< n x m
    Eigen::MatrixXd xtx_inv;    ///< k x k, (X'X)^-1
};

/// Solves by column-pivoted QR. Throws SingularDesignError naming the columns that
/// are linear combinations of the others (names come from `column_names` when given).
[[nodiscard]] OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                         std::span<const std::string> column_names = {});

/// Upper-tail probability of a chi-square(df) variate.
[[nodiscard]] double chi_square_sf(double x, double df);

/// Two-sided p-value of a Student t statistic.
[[nodiscard]] double student_t_two_sided(double t, double df);

/// Piecewise-linear interpolation with end clamping (R's approx(..., rule = 2)).
/// `xs` must be strictly increasing.
[[nodiscard]] double interpolate_clamped(std::span<const double> xs, std::span<const double> ys, double x);

/// Type-7 sample quantile of an unsorted sample.
[[nodiscard]] double quantile(std::vector<double> sample, double prob);

/// SplitMix64 mix of (seed, stream); used to give every replicate its own RNG stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace varflow
