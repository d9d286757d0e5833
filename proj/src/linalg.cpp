#include "varflow/linalg.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <fmt/core.h>
#include <fmt/ranges.h>

#include "varflow/error.hpp"

namespace varflow {

OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, std::span<const std::string> column_names) {
    if (x.rows() != y.rows()) {
        throw ParameterError(fmt::format("design has {} rows but response has {}", x.rows(), y.rows()));
    }
    if (x.rows() < x.cols()) {
        throw DegenerateInputError(
            fmt::format("{} observations cannot identify {} coefficients", x.rows(), x.cols()));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < x.cols()) {
        const auto& perm = qr.colsPermutation().indices();
        std::vector<std::string> dropped;
        for (Eigen::Index i = qr.rank(); i < x.cols(); ++i) {
            const auto col = static_cast<std::size_t>(perm[i]);
            dropped.push_back(col < column_names.size() ? column_names[col] : fmt::format("column {}", col));
        }
        throw SingularDesignError(
            fmt::format("design matrix is rank deficient; collinear columns: {}", fmt::join(dropped, ", ")));
    }

    OlsFit fit;
    fit.coef = qr.solve(y);
    fit.residuals = y - x * fit.coef;

    const Eigen::Index k = x.cols();
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd inner = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    fit.xtx_inv = perm * inner * perm.transpose();
    return fit;
}

double chi_square_sf(double x, double df) {
    if (!(x > 0.0)) {
        return 1.0;
    }
    const boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double student_t_two_sided(double t, double df) {
    if (!std::isfinite(t)) {
        return 0.0;
    }
    const boost::math::students_t_distribution<double> dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double interpolate_clamped(std::span<const double> xs, std::span<const double> ys, double x) {
    if (x <= xs.front()) {
        return ys.front();
    }
    if (x >= xs.back()) {
        return ys.back();
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

double quantile(std::vector<double> sample, double prob) {
    if (sample.empty()) {
        throw DegenerateInputError("quantile of an empty sample");
    }
    std::sort(sample.begin(), sample.end());
    const double h = (static_cast<double>(sample.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sample.size() - 1);
    return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace varflow
