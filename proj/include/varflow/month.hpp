#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace varflow {

/// A calendar month. Months are the only time unit the library works in.
class MonthStamp {
public:
    /// Throws DomainError when month is outside 1..12.
    MonthStamp(int year, int month);

    static MonthStamp from_date(std::chrono::year_month_day date);

    /// Parses "YYYY-MM" or "YYYY-MM-DD" (the day is ignored).
    static MonthStamp parse(std::string_view text);

    [[nodiscard]] int year() const noexcept { return year_; }
    [[nodiscard]] int month() const noexcept { return month_; }

    [[nodiscard]] MonthStamp plus(int months) const noexcept;

    /// Signed number of months from `other` to this month.
    [[nodiscard]] int months_since(MonthStamp other) const noexcept;

    [[nodiscard]] std::chrono::year_month_day first_day() const noexcept;
    [[nodiscard]] std::chrono::year_month_day last_day() const noexcept;

    /// "YYYY-MM"
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const MonthStamp&, const MonthStamp&) = default;
    friend std::strong_ordering operator<=>(const MonthStamp&, const MonthStamp&) = default;

private:
    int year_;
    int month_;
};

/// Inclusive range of months.
struct MonthRange {
    MonthStamp first;
    MonthStamp last;

    [[nodiscard]] int size() const noexcept { return last.months_since(first) + 1; }
    [[nodiscard]] bool contains(MonthStamp m) const noexcept { return first <= m && m <= last; }
    friend bool operator==(const MonthRange&, const MonthRange&) = default;
};

/// Parses an ISO-8601 date ("YYYY-MM-DD", optionally followed by 'T' or ' ' and a time).
/// Throws ParseError on malformed input.
std::chrono::year_month_day parse_iso_date(std::string_view text);

std::string format_date(std::chrono::year_month_day date);

}  // namespace varflow
