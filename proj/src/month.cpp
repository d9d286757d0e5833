#include "varflow/month.hpp"

#include <charconv>
#include <fmt/core.h>

#include "varflow/error.hpp"

namespace varflow {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(fmt::format("invalid date '{}'", whole));
    }
    return value;
}

}  // namespace

MonthStamp::MonthStamp(int year, int month) : year_(year), month_(month) {
    if (month < 1 || month > 12) {
        throw DomainError(fmt::format("month {} outside 1..12", month));
    }
}

MonthStamp MonthStamp::from_date(std::chrono::year_month_day date) {
    return {static_cast<int>(date.year()), static_cast<int>(static_cast<unsigned>(date.month()))};
}

MonthStamp MonthStamp::parse(std::string_view text) {
    if (text.size() == 7 && text[4] == '-') {
        try {
            return {parse_int(text.substr(0, 4), text), parse_int(text.substr(5, 2), text)};
        } catch (const DomainError&) {
            throw ParseError(fmt::format("invalid month '{}'", text));
        }
    }
    return from_date(parse_iso_date(text));
}

MonthStamp MonthStamp::plus(int months) const noexcept {
    const int index = year_ * 12 + (month_ - 1) + months;
    const int year = index >= 0 ? index / 12 : (index - 11) / 12;
    return {year, index - year * 12 + 1};
}

int MonthStamp::months_since(MonthStamp other) const noexcept {
    return (year_ - other.year_) * 12 + (month_ - other.month_);
}

std::chrono::year_month_day MonthStamp::first_day() const noexcept {
    namespace chr = std::chrono;
    return chr::year{year_} / chr::month{static_cast<unsigned>(month_)} / chr::day{1};
}

std::chrono::year_month_day MonthStamp::last_day() const noexcept {
    namespace chr = std::chrono;
    const chr::year_month_day_last ymdl{chr::year{year_},
                                        chr::month_day_last{chr::month{static_cast<unsigned>(month_)}}};
    return chr::year_month_day{ymdl};
}

std::string MonthStamp::to_string() const { return fmt::format("{:04d}-{:02d}", year_, month_); }

std::chrono::year_month_day parse_iso_date(std::string_view text) {
    if (text.size() < 10 || text[4] != '-' || text[7] != '-' ||
        (text.size() > 10 && text[10] != 'T' && text[10] != ' ')) {
        throw ParseError(fmt::format("invalid date '{}'", text));
    }
    namespace chr = std::chrono;
    const chr::year_month_day date{chr::year{parse_int(text.substr(0, 4), text)},
                                   chr::month{static_cast<unsigned>(parse_int(text.substr(5, 2), text))},
                                   chr::day{static_cast<unsigned>(parse_int(text.substr(8, 2), text))}};
    if (!date.ok()) {
        throw ParseError(fmt::format("invalid date '{}'", text));
    }
    return date;
}

std::string format_date(std::chrono::year_month_day date) {
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                       static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

}  // namespace varflow
