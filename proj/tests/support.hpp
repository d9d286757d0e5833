#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "varflow/series.hpp"
#include "varflow/var.hpp"

namespace varflow::testing {

inline std::filesystem::path data_dir() { return VARFLOW_TEST_DATA_DIR; }

inline std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) {
        v = z(rng);
    }
    return out;
}

inline std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed) {
    auto e = white_noise(n + 200, seed);
    std::vector<double> out(n);
    double y = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        y = phi * y + e[i];
        if (i >= 200) {
            out[i - 200] = y;
        }
    }
    return out;
}

inline std::vector<double> cumsum(std::vector<double> x) {
    for (std::size_t i = 1; i < x.size(); ++i) {
        x[i] += x[i - 1];
    }
    return x;
}

inline TimeSeries series(std::string name, std::vector<double> values, MonthStamp start = MonthStamp{2000, 1}) {
    return TimeSeries(std::move(name), start, std::move(values));
}

/// Bivariate VAR(1) process with constant and no trend.
inline VarProcess bivariate_var1(double a11, double a12, double a21, double a22) {
    VarProcess proc;
    Eigen::MatrixXd a(2, 2);
    a << a11, a12, a21, a22;
    proc.lags = {a};
    proc.intercept = Eigen::Vector2d(0.5, -0.2);
    proc.sigma = Eigen::Matrix2d::Identity();
    return proc;
}

inline SimulationOptions constant_only() {
    SimulationOptions o;
    o.include_trend = false;
    return o;
}

}  // namespace varflow::testing
