#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varflow/month.hpp"

namespace varflow {

enum class SeriesRole { topic_count, indicator, dummy };

/// Contiguous monthly series of finite values. Immutable once constructed.
class TimeSeries {
public:
    /// Throws DegenerateInputError if `values` is empty and DomainError if any value is not finite.
    TimeSeries(std::string name, MonthStamp start, std::vector<double> values,
               SeriesRole role = SeriesRole::indicator);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] MonthStamp start() const noexcept { return start_; }
    [[nodiscard]] MonthStamp end() const noexcept;
    [[nodiscard]] MonthRange range() const noexcept { return {start_, end()}; }
    [[nodiscard]] SeriesRole role() const noexcept { return role_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] MonthStamp month_at(std::size_t i) const noexcept;

    /// Sub-series covering [first, last]. Throws AlignmentError when the range is not covered.
    [[nodiscard]] TimeSeries slice(MonthStamp first, MonthStamp last) const;

    [[nodiscard]] TimeSeries renamed(std::string name) const;
    [[nodiscard]] TimeSeries with_values(std::vector<double> values) const;

private:
    std::string name_;
    MonthStamp start_;
    std::vector<double> values_;
    SeriesRole role_;
};

struct AcfResult {
    std::size_t max_lag = 0;
    /// correlations[k] for k = 0..max_lag; correlations[0] == 1.
    std::vector<double> correlations;
    /// partials[k-1] is the PACF at lag k, k = 1..max_lag.
    std::optional<std::vector<double>> partials;
};

/// d-th order difference. The start month advances by d.
/// Throws DegenerateInputError when the series has d or fewer values.
[[nodiscard]] TimeSeries difference(const TimeSeries& ts, int d = 1);

/// Sample autocorrelations with the 1/n denominator; PACF by Durbin-Levinson when requested.
[[nodiscard]] AcfResult acf(std::span<const double> x, std::size_t max_lag, bool with_pacf = false);
[[nodiscard]] AcfResult acf(const TimeSeries& ts, std::size_t max_lag, bool with_pacf = false);

/// Trims every series to the intersection of their month ranges.
/// Throws AlignmentError naming the series whose range is disjoint from the rest.
[[nodiscard]] std::vector<TimeSeries> align(std::span<const TimeSeries> series);

/// (x - min) / (max - min); a constant series maps to zeros.
[[nodiscard]] TimeSeries min_max_normalize(const TimeSeries& ts);

}  // namespace varflow
