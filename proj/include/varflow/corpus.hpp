#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "varflow/month.hpp"
#include "varflow/series.hpp"

namespace varflow {

struct Post {
    std::string id;
    std::string page;
    std::chrono::year_month_day date;
    std::string language;
    std::string text;
    std::optional<std::string> topic_label;
};

/// Inclusive calendar-date window.
struct DateWindow {
    std::chrono::year_month_day first;
    std::chrono::year_month_day last;

    [[nodiscard]] bool contains(std::chrono::year_month_day d) const noexcept { return first <= d && d <= last; }
    [[nodiscard]] MonthRange months() const { return {MonthStamp::from_date(first), MonthStamp::from_date(last)}; }
};

struct PostLoadOptions {
    std::vector<std::string> pages;     ///< allowed pages; empty accepts any page
    std::optional<DateWindow> window;   ///< posts outside are rejected
};

/// Reads the posts CSV (header `id,page,date,language,text,topic_label`).
/// Throws ParseError with the row number and column for malformed rows, unknown pages,
/// and dates outside the window.
[[nodiscard]] std::vector<Post> read_posts(std::istream& in, const PostLoadOptions& options = {},
                                           std::string_view source = "<posts>");
[[nodiscard]] std::vector<Post> load_posts(const std::filesystem::path& path, const PostLoadOptions& options = {});

/// Reads an `id,topic_label` CSV.
[[nodiscard]] std::unordered_map<std::string, std::string> load_labels(const std::filesystem::path& path);
[[nodiscard]] std::unordered_map<std::string, std::string> read_labels(std::istream& in,
                                                                       std::string_view source = "<labels>");

/// Fills missing topic labels from `labels`; labels already present in the posts file are kept.
void join_labels(std::vector<Post>& posts, const std::unordered_map<std::string, std::string>& labels);

enum class MatchMode { word_boundary, substring };

/// Per-language term lists in normalized (NFKC + casefold) form.
///
/// Languages default to word-boundary matching, except Arabic ("ar", "ar-*") which matches
/// substrings after diacritics and tatweel are stripped.
class Lexicon {
public:
    /// Adds a term; duplicates after normalization are merged. Throws ConfigError for empty terms.
    void add(std::string_view language, std::string_view term);
    void set_mode(std::string_view language, MatchMode mode);

    [[nodiscard]] bool has_language(std::string_view language) const;
    [[nodiscard]] MatchMode mode(std::string_view language) const;
    [[nodiscard]] std::vector<std::string> languages() const;
    /// Normalized terms of one language, UTF-8.
    [[nodiscard]] std::vector<std::string> terms(std::string_view language) const;
    [[nodiscard]] std::size_t size() const noexcept;

    /// True iff at least one term of `language` occurs in `text` under that language's mode.
    /// Throws ConfigError for an unknown language.
    [[nodiscard]] bool matches(std::string_view language, std::string_view text) const;

    /// Format: one `language<TAB>term` per line; `#` starts a comment line;
    /// `!mode<TAB>language<TAB>word_boundary|substring` overrides a language's mode.
    /// A tag such as "ar-EG" falls back to its primary subtag when not listed itself.
    static Lexicon parse(std::istream& in, std::string_view source = "<lexicon>");
    static Lexicon load(const std::filesystem::path& path);

private:
    struct Entry {
        MatchMode mode = MatchMode::word_boundary;
        std::vector<std::u16string> terms;
        std::vector<std::string> sources;  ///< terms as given, for re-normalization
    };
    /// Exact language tag first, then its primary subtag.
    [[nodiscard]] const Entry* find(std::string_view language) const;
    [[nodiscard]] const Entry& lookup(std::string_view language) const;

    std::map<std::string, Entry, std::less<>> languages_;
};

/// Normalizes text the way the lexicon does for `mode` (UTF-8 in, UTF-8 out).
[[nodiscard]] std::string normalize_text(std::string_view text, MatchMode mode);

/// Keeps posts whose text matches the lexicon for the post's language.
/// Throws ConfigError when a post's language is missing from the lexicon.
[[nodiscard]] std::vector<Post> lexicon_filter(std::span<const Post> posts, const Lexicon& lexicon);

struct TopicSeries {
    std::string page;
    std::string topic;
    TimeSeries series;
};

struct AggregateOptions {
    std::optional<MonthRange> window;  ///< defaults to the months spanned by the posts
    std::vector<std::string> pages;    ///< when set (with topics), every page x topic series is emitted
    std::vector<std::string> topics;
};

/// Monthly post counts per (page, topic), with explicit zeros across the window.
/// Series are ordered by page, then topic. Throws DegenerateInputError listing posts
/// without a topic label.
[[nodiscard]] std::vector<TopicSeries> aggregate_monthly(std::span<const Post> posts,
                                                         const AggregateOptions& options = {});

struct InterruptionSpec {
    std::string name;
    std::chrono::year_month_day cutoff;
};

/// Step dummy: a month is 1 iff its last day is on or after the cutoff.
/// Throws ConfigError when the cutoff lies outside the window.
[[nodiscard]] TimeSeries build_interruption(MonthRange window, const InterruptionSpec& spec);

enum class IndicatorKind { inverse_rate, monthly_mean };
enum class InverseOrder { invert_then_average, average_then_invert };

struct IndicatorObservation {
    std::chrono::year_month_day date;
    double value = 0.0;
};

/// Reads a `date,value` CSV (daily or monthly rows; "YYYY-MM" rows are dated the 1st).
[[nodiscard]] std::vector<IndicatorObservation> read_indicator_rows(std::istream& in,
                                                                    std::string_view source = "<indicator>");
[[nodiscard]] std::vector<IndicatorObservation> load_indicator_rows(const std::filesystem::path& path);

/// Element-wise reciprocal of the observations. Throws DomainError for values <= 0.
[[nodiscard]] std::vector<IndicatorObservation> invert_observations(std::span<const IndicatorObservation> rows);

/// Monthly means (of reciprocals for inverse_rate). The result covers `window` when given,
/// otherwise the observed months. Throws GapError when a month in range has no observation.
[[nodiscard]] TimeSeries monthly_indicator(std::span<const IndicatorObservation> rows, IndicatorKind kind,
                                           std::string name, std::optional<MonthRange> window = std::nullopt,
                                           InverseOrder order = InverseOrder::invert_then_average);

[[nodiscard]] TimeSeries load_indicator(const std::filesystem::path& path, IndicatorKind kind, std::string name,
                                        std::optional<MonthRange> window = std::nullopt,
                                        InverseOrder order = InverseOrder::invert_then_average);

}  // namespace varflow
