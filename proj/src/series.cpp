#include "varflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <numeric>

#include "varflow/error.hpp"

namespace varflow {

TimeSeries::TimeSeries(std::string name, MonthStamp start, std::vector<double> values, SeriesRole role)
    : name_(std::move(name)), start_(start), values_(std::move(values)), role_(role) {
    if (values_.empty()) {
        throw DegenerateInputError(fmt::format("series '{}' is empty", name_));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError(fmt::format("series '{}' has a non-finite value at {}", name_,
                                          start_.plus(static_cast<int>(i)).to_string()));
        }
    }
}

MonthStamp TimeSeries::end() const noexcept { return month_at(values_.size() - 1); }

MonthStamp TimeSeries::month_at(std::size_t i) const noexcept { return start_.plus(static_cast<int>(i)); }

TimeSeries TimeSeries::slice(MonthStamp first, MonthStamp last) const {
    if (first < start_ || end() < last || last < first) {
        throw AlignmentError(fmt::format("series '{}' ({}..{}) does not cover {}..{}", name_,
                                         start_.to_string(), end().to_string(), first.to_string(),
                                         last.to_string()));
    }
    const auto offset = static_cast<std::ptrdiff_t>(first.months_since(start_));
    const auto count = static_cast<std::ptrdiff_t>(last.months_since(first) + 1);
    return {name_, first, std::vector<double>(values_.begin() + offset, values_.begin() + offset + count),
            role_};
}

TimeSeries TimeSeries::renamed(std::string name) const { return {std::move(name), start_, values_, role_}; }

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    return {name_, start_, std::move(values), role_};
}

TimeSeries difference(const TimeSeries& ts, int d) {
    if (d < 1) {
        throw DomainError(fmt::format("difference order must be >= 1, got {}", d));
    }
    if (ts.size() <= static_cast<std::size_t>(d)) {
        throw DegenerateInputError(fmt::format("series '{}' has {} values; cannot difference {} times",
                                               ts.name(), ts.size(), d));
    }
    std::vector<double> v(ts.values().begin(), ts.values().end());
    for (int k = 0; k < d; ++k) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            v[i] = v[i + 1] - v[i];
        }
        v.pop_back();
    }
    return {ts.name(), ts.start().plus(d), std::move(v), ts.role()};
}

AcfResult acf(std::span<const double> x, std::size_t max_lag, bool with_pacf) {
    const std::size_t n = x.size();
    if (max_lag < 1 || n <= max_lag) {
        throw DegenerateInputError(
            fmt::format("acf needs 1 <= max_lag < length, got max_lag {} for length {}", max_lag, n));
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double c0 = 0.0;
    for (double v : x) {
        c0 += (v - mean) * (v - mean);
    }
    if (!(c0 > 0.0)) {
        throw DegenerateInputError("acf of a zero-variance series is undefined");
    }

    AcfResult out;
    out.max_lag = max_lag;
    out.correlations.assign(max_lag + 1, 0.0);
    out.correlations[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < n; ++t) {
            ck += (x[t] - mean) * (x[t - k] - mean);
        }
        out.correlations[k] = std::clamp(ck / c0, -1.0, 1.0);
    }

    if (with_pacf) {
        // Durbin-Levinson recursion on the sample autocorrelations.
        const auto& r = out.correlations;
        std::vector<double> partial(max_lag);
        std::vector<double> phi(max_lag + 1, 0.0);
        std::vector<double> prev(max_lag + 1, 0.0);
        double v = 1.0;
        for (std::size_t k = 1; k <= max_lag; ++k) {
            double num = r[k];
            for (std::size_t j = 1; j < k; ++j) {
                num -= prev[j] * r[k - j];
            }
            const double a = v > 0.0 ? num / v : 0.0;
            phi[k] = a;
            for (std::size_t j = 1; j < k; ++j) {
                phi[j] = prev[j] - a * prev[k - j];
            }
            v *= (1.0 - a * a);
            partial[k - 1] = std::clamp(a, -1.0, 1.0);
            prev = phi;
        }
        out.partials = std::move(partial);
    }
    return out;
}

AcfResult acf(const TimeSeries& ts, std::size_t max_lag, bool with_pacf) {
    return acf(ts.values(), max_lag, with_pacf);
}

std::vector<TimeSeries> align(std::span<const TimeSeries> series) {
    if (series.empty()) {
        return {};
    }
    auto latest_start = std::max_element(series.begin(), series.end(),
                                         [](const auto& a, const auto& b) { return a.start() < b.start(); });
    auto earliest_end = std::min_element(series.begin(), series.end(),
                                         [](const auto& a, const auto& b) { return a.end() < b.end(); });
    const MonthStamp first = latest_start->start();
    const MonthStamp last = earliest_end->end();
    if (last < first) {
        throw AlignmentError(fmt::format("series '{}' ({}..{}) and '{}' ({}..{}) share no month",
                                         earliest_end->name(), earliest_end->start().to_string(),
                                         last.to_string(), latest_start->name(), first.to_string(),
                                         latest_start->end().to_string()));
    }
    std::vector<TimeSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        out.push_back(s.slice(first, last));
    }
    return out;
}

TimeSeries min_max_normalize(const TimeSeries& ts) {
    const auto v = ts.values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double range = *hi - *lo;
    std::vector<double> out(v.size(), 0.0);
    if (range > 0.0) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = std::clamp((v[i] - *lo) / range, 0.0, 1.0);
        }
    }
    return ts.with_values(std::move(out));
}

}  // namespace varflow
