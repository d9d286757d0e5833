// Generates the tabulated quantiles of the asymptotic Johansen trace distribution
// (constant restricted to the cointegrating space) by Monte Carlo simulation of the
// discretized Brownian functional
//   tr{ int dW F' (int F F')^-1 int F dW' },  F = (W', 1)'.
// Output is a C++ source file written to stdout.
//
//   johansen_table_gen [--reps N] [--steps T] [--max-dims M] [--seed S] > src/johansen_tables.cpp

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <fmt/core.h>
#include <random>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Johansen trace quantile table generator"};
    int reps = 100000;
    int steps = 1000;
    int max_dims = 6;
    std::uint64_t seed = 20240101;
    app.add_option("--reps", reps);
    app.add_option("--steps", steps);
    app.add_option("--max-dims", max_dims);
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    fmt::print("// Generated by tools/johansen_table_gen --reps {} --steps {} --max-dims {} --seed {}\n", reps,
               steps, max_dims, seed);
    fmt::print("// Quantiles 1%..99% of the restricted-constant Johansen trace distribution.\n\n");
    fmt::print("#include <array>\n\nnamespace varflow::detail {{\n\n");
    fmt::print("extern const int kJohansenMaxDims = {};\n", max_dims);
    fmt::print("extern const std::array<std::array<double, 99>, {}> kJohansenTraceQuantiles{{{{\n", max_dims);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(steps));
    for (int m = 1; m <= max_dims; ++m) {
        std::vector<double> stats(static_cast<std::size_t>(reps));
        for (int r = 0; r < reps; ++r) {
            Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
            Eigen::VectorXd f(m + 1);
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m + 1);
            Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m + 1, m + 1);
            Eigen::VectorXd e(m);
            for (int t = 0; t < steps; ++t) {
                for (int i = 0; i < m; ++i) {
                    e(i) = normal(rng) * scale;
                }
                f.head(m) = w;
                f(m) = 1.0;
                a.noalias() += e * f.transpose();
                b.selfadjointView<Eigen::Lower>().rankUpdate(f, 1.0 / steps);
                w += e;
            }
            const Eigen::MatrixXd bf = b.selfadjointView<Eigen::Lower>();
            stats[static_cast<std::size_t>(r)] = (a * bf.ldlt().solve(a.transpose())).trace();
        }
        std::sort(stats.begin(), stats.end());
        fmt::print("    {{{{");
        for (int q = 1; q <= 99; ++q) {
            const double h = (reps - 1) * (q / 100.0);
            const auto lo = static_cast<std::size_t>(h);
            const auto hi = std::min(lo + 1, stats.size() - 1);
            const double v = stats[lo] + (h - static_cast<double>(lo)) * (stats[hi] - stats[lo]);
            fmt::print("{}{:.4f}", q == 1 ? "" : (q % 8 == 1 ? ",\n      " : ", "), v);
        }
        fmt::print("}}}},\n");
    }
    fmt::print("}}}};\n\n}}  // namespace varflow::detail\n");
    return 0;
}
