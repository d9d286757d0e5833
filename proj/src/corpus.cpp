#include "varflow/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/core.h>
#include <fmt/ranges.h>
#include <fstream>
#include <set>
#include <sstream>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "varflow/csv.hpp"
#include "varflow/error.hpp"

namespace varflow {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool is_arabic(std::string_view language) { return language == "ar" || language.starts_with("ar-"); }

bool is_arabic_mark(UChar32 c) {
    return (c >= 0x0610 && c <= 0x061A) || (c >= 0x064B && c <= 0x065F) || c == 0x0670 ||
           (c >= 0x06D6 && c <= 0x06DC) || (c >= 0x06DF && c <= 0x06E8) || (c >= 0x06EA && c <= 0x06ED);
}

constexpr UChar32 kTatweel = 0x0640;

icu::UnicodeString normalize(std::string_view text, MatchMode mode) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc_cf = icu::Normalizer2::getNFKCCasefoldInstance(status);
    if (U_FAILURE(status)) {
        throw Error(fmt::format("ICU normalizer unavailable: {}", u_errorName(status)));
    }
    const auto src = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    icu::UnicodeString out = nfkc_cf->normalize(src, status);
    if (U_FAILURE(status)) {
        throw Error(fmt::format("normalization failed: {}", u_errorName(status)));
    }
    if (mode == MatchMode::substring) {
        icu::UnicodeString stripped;
        for (int32_t i = 0; i < out.length();) {
            const UChar32 c = out.char32At(i);
            if (c != kTatweel && !is_arabic_mark(c)) {
                stripped.append(c);
            }
            i += U16_LENGTH(c);
        }
        out = stripped;
    }
    return out;
}

bool is_word_char(UChar32 c) {
    return u_isUAlphabetic(c) || u_isdigit(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0 || c == u'_';
}

std::u16string to_u16(const icu::UnicodeString& s) {
    return {reinterpret_cast<const char16_t*>(s.getBuffer()), static_cast<std::size_t>(s.length())};
}

bool contains_term(const icu::UnicodeString& text, const std::u16string& term, MatchMode mode) {
    const icu::UnicodeString needle(false, term.data(), static_cast<int32_t>(term.size()));
    for (int32_t pos = text.indexOf(needle); pos >= 0; pos = text.indexOf(needle, pos + 1)) {
        if (mode == MatchMode::substring) {
            return true;
        }
        const int32_t end = pos + needle.length();
        const bool left_ok = pos == 0 || !is_word_char(text.char32At(pos - 1));
        const bool right_ok = end >= text.length() || !is_word_char(text.char32At(end));
        if (left_ok && right_ok) {
            return true;
        }
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Posts

std::vector<Post> read_posts(std::istream& in, const PostLoadOptions& options, std::string_view source) {
    const auto records = read_csv(in, source);
    if (records.empty()) {
        throw ParseError(fmt::format("{}: missing header", source));
    }
    const CsvHeader header(records.front(), source);
    const std::size_t c_id = header.require("id");
    const std::size_t c_page = header.require("page");
    const std::size_t c_date = header.require("date");
    const std::size_t c_lang = header.require("language");
    const std::size_t c_text = header.require("text");
    const std::size_t c_topic = header.require("topic_label");

    std::vector<Post> posts;
    posts.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const auto where = [&](std::string_view column) {
            return fmt::format("{}: row {} (line {}), column '{}'", source, r, rec.line, column);
        };
        if (rec.fields.size() != header.size()) {
            throw ParseError(fmt::format("{}: row {} (line {}): expected {} fields, got {}", source, r, rec.line,
                                         header.size(), rec.fields.size()));
        }
        Post p;
        p.id = rec.fields[c_id];
        if (p.id.empty()) {
            throw ParseError(fmt::format("{}: empty id", where("id")));
        }
        p.page = rec.fields[c_page];
        if (!options.pages.empty() &&
            std::find(options.pages.begin(), options.pages.end(), p.page) == options.pages.end()) {
            throw ParseError(fmt::format("{}: unknown page '{}'", where("page"), p.page));
        }
        try {
            p.date = parse_iso_date(rec.fields[c_date]);
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("{}: {}", where("date"), e.what()));
        }
        if (options.window && !options.window->contains(p.date)) {
            throw ParseError(fmt::format("{}: date {} outside the study window {}..{}", where("date"),
                                         format_date(p.date), format_date(options.window->first),
                                         format_date(options.window->last)));
        }
        p.language = rec.fields[c_lang];
        if (p.language.empty()) {
            throw ParseError(fmt::format("{}: empty language", where("language")));
        }
        p.text = rec.fields[c_text];
        if (!rec.fields[c_topic].empty()) {
            p.topic_label = rec.fields[c_topic];
        }
        posts.push_back(std::move(p));
    }
    return posts;
}

std::vector<Post> load_posts(const std::filesystem::path& path, const PostLoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open posts file '{}'", path.string()));
    }
    return read_posts(in, options, path.string());
}

std::unordered_map<std::string, std::string> read_labels(std::istream& in, std::string_view source) {
    const auto records = read_csv(in, source);
    if (records.empty()) {
        throw ParseError(fmt::format("{}: missing header", source));
    }
    const CsvHeader header(records.front(), source);
    const std::size_t c_id = header.require("id");
    const std::size_t c_topic = header.require("topic_label");
    std::unordered_map<std::string, std::string> labels;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size()) {
            throw ParseError(fmt::format("{}: row {} (line {}): expected {} fields, got {}", source, r, rec.line,
                                         header.size(), rec.fields.size()));
        }
        if (rec.fields[c_topic].empty()) {
            throw ParseError(fmt::format("{}: row {} (line {}), column 'topic_label': empty label", source, r,
                                         rec.line));
        }
        const auto [it, inserted] = labels.emplace(rec.fields[c_id], rec.fields[c_topic]);
        if (!inserted && it->second != rec.fields[c_topic]) {
            throw ParseError(fmt::format("{}: row {}: conflicting labels for id '{}'", source, r, rec.fields[c_id]));
        }
    }
    return labels;
}

std::unordered_map<std::string, std::string> load_labels(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open labels file '{}'", path.string()));
    }
    return read_labels(in, path.string());
}

void join_labels(std::vector<Post>& posts, const std::unordered_map<std::string, std::string>& labels) {
    for (auto& p : posts) {
        if (!p.topic_label) {
            if (const auto it = labels.find(p.id); it != labels.end()) {
                p.topic_label = it->second;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lexicon

std::string normalize_text(std::string_view text, MatchMode mode) {
    std::string out;
    normalize(text, mode).toUTF8String(out);
    return out;
}

void Lexicon::add(std::string_view language, std::string_view term) {
    if (language.empty()) {
        throw ConfigError("lexicon entry without a language");
    }
    auto it = languages_.find(language);
    if (it == languages_.end()) {
        Entry e;
        e.mode = is_arabic(language) ? MatchMode::substring : MatchMode::word_boundary;
        it = languages_.emplace(std::string(language), std::move(e)).first;
    }
    const std::string trimmed = trim(term);
    if (trimmed.empty()) {
        throw ConfigError(fmt::format("empty lexicon term for language '{}'", language));
    }
    // Terms are normalized with the substring rules too for Arabic so that both sides agree.
    std::u16string norm = to_u16(normalize(trimmed, it->second.mode));
    if (norm.empty()) {
        throw ConfigError(fmt::format("lexicon term '{}' is empty after normalization", trimmed));
    }
    auto& terms = it->second.terms;
    if (std::find(terms.begin(), terms.end(), norm) == terms.end()) {
        terms.push_back(std::move(norm));
        it->second.sources.push_back(trimmed);
    }
}

void Lexicon::set_mode(std::string_view language, MatchMode mode) {
    auto it = languages_.find(language);
    if (it == languages_.end()) {
        it = languages_.emplace(std::string(language), Entry{}).first;
    }
    if (it->second.mode == mode) {
        return;
    }
    // Re-normalize existing terms under the new mode.
    Entry old = std::move(it->second);
    it->second = Entry{mode, {}, {}};
    for (const auto& term : old.sources) {
        add(language, term);
    }
}

const Lexicon::Entry* Lexicon::find(std::string_view language) const {
    if (const auto it = languages_.find(language); it != languages_.end()) {
        return &it->second;
    }
    // "ar-EG" falls back to "ar".
    if (const auto dash = language.find('-'); dash != std::string_view::npos) {
        if (const auto it = languages_.find(language.substr(0, dash)); it != languages_.end()) {
            return &it->second;
        }
    }
    return nullptr;
}

const Lexicon::Entry& Lexicon::lookup(std::string_view language) const {
    const Entry* entry = find(language);
    if (entry == nullptr) {
        throw ConfigError(fmt::format("language '{}' is not in the lexicon", language));
    }
    return *entry;
}

bool Lexicon::has_language(std::string_view language) const { return find(language) != nullptr; }

MatchMode Lexicon::mode(std::string_view language) const {
    const Entry& entry = lookup(language);
    return entry.mode;
}

std::vector<std::string> Lexicon::languages() const {
    std::vector<std::string> out;
    for (const auto& [lang, entry] : languages_) {
        out.push_back(lang);
    }
    return out;
}

std::vector<std::string> Lexicon::terms(std::string_view language) const {
    const Entry& entry = lookup(language);
    std::vector<std::string> out;
    for (const auto& t : entry.terms) {
        std::string s;
        icu::UnicodeString(false, t.data(), static_cast<int32_t>(t.size())).toUTF8String(s);
        out.push_back(std::move(s));
    }
    return out;
}

std::size_t Lexicon::size() const noexcept {
    std::size_t n = 0;
    for (const auto& [lang, entry] : languages_) {
        n += entry.terms.size();
    }
    return n;
}

bool Lexicon::matches(std::string_view language, std::string_view text) const {
    const Entry& entry = lookup(language);
    const icu::UnicodeString norm = normalize(text, entry.mode);
    return std::any_of(entry.terms.begin(), entry.terms.end(),
                       [&](const auto& term) { return contains_term(norm, term, entry.mode); });
}

Lexicon Lexicon::parse(std::istream& in, std::string_view source) {
    Lexicon lex;
    std::vector<std::pair<std::string, MatchMode>> modes;
    struct Pending {
        std::size_t line;
        std::string language;
        std::string term;
    };
    std::vector<Pending> entries;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        std::vector<std::string> parts;
        std::stringstream ss(line);
        for (std::string part; std::getline(ss, part, '\t');) {
            parts.push_back(trim(part));
        }
        if (parts.front() == "!mode") {
            if (parts.size() != 3 || (parts[2] != "word_boundary" && parts[2] != "substring")) {
                throw ConfigError(fmt::format("{}:{}: expected '!mode<TAB>language<TAB>word_boundary|substring'",
                                              source, number));
            }
            modes.emplace_back(parts[1], parts[2] == "substring" ? MatchMode::substring : MatchMode::word_boundary);
            continue;
        }
        if (parts.size() != 2) {
            throw ConfigError(fmt::format("{}:{}: expected 'language<TAB>term'", source, number));
        }
        entries.push_back({number, parts[0], parts[1]});
    }
    // Modes affect normalization, so they are applied before any term is added.
    for (const auto& [lang, mode] : modes) {
        lex.set_mode(lang, mode);
    }
    for (const auto& e : entries) {
        try {
            lex.add(e.language, e.term);
        } catch (const ConfigError& err) {
            throw ConfigError(fmt::format("{}:{}: {}", source, e.line, err.what()));
        }
    }
    return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open lexicon '{}'", path.string()));
    }
    return parse(in, path.string());
}

std::vector<Post> lexicon_filter(std::span<const Post> posts, const Lexicon& lexicon) {
    std::vector<Post> out;
    for (const auto& p : posts) {
        if (!lexicon.has_language(p.language)) {
            throw ConfigError(fmt::format("post '{}' has language '{}' which the lexicon does not cover", p.id,
                                          p.language));
        }
        if (lexicon.matches(p.language, p.text)) {
            out.push_back(p);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Aggregation

std::vector<TopicSeries> aggregate_monthly(std::span<const Post> posts, const AggregateOptions& options) {
    std::vector<std::string> unlabeled;
    for (const auto& p : posts) {
        if (!p.topic_label || trim(*p.topic_label).empty()) {
            unlabeled.push_back(p.id);
        }
    }
    if (!unlabeled.empty()) {
        throw DegenerateInputError(
            fmt::format("{} posts lack a topic label: {}", unlabeled.size(), fmt::join(unlabeled, ", ")));
    }

    MonthRange window{MonthStamp(1, 1), MonthStamp(1, 1)};
    if (options.window) {
        window = *options.window;
    } else if (!posts.empty()) {
        auto [lo, hi] = std::minmax_element(posts.begin(), posts.end(),
                                            [](const Post& a, const Post& b) { return a.date < b.date; });
        window = {MonthStamp::from_date(lo->date), MonthStamp::from_date(hi->date)};
    } else {
        return {};
    }

    std::map<std::pair<std::string, std::string>, std::vector<double>> counts;
    const auto months = static_cast<std::size_t>(window.size());
    if (!options.pages.empty() && !options.topics.empty()) {
        for (const auto& page : options.pages) {
            for (const auto& topic : options.topics) {
                counts[{page, topic}].assign(months, 0.0);
            }
        }
    }
    for (const auto& p : posts) {
        const MonthStamp m = MonthStamp::from_date(p.date);
        if (!window.contains(m)) {
            throw DomainError(fmt::format("post '{}' dated {} falls outside {}..{}", p.id, format_date(p.date),
                                          window.first.to_string(), window.last.to_string()));
        }
        auto& v = counts[{p.page, *p.topic_label}];
        if (v.empty()) {
            v.assign(months, 0.0);
        }
        v[static_cast<std::size_t>(m.months_since(window.first))] += 1.0;
    }

    std::vector<TopicSeries> out;
    for (auto& [key, values] : counts) {
        out.push_back({key.first, key.second,
                       TimeSeries(fmt::format("{} | {}", key.first, key.second), window.first, std::move(values),
                                  SeriesRole::topic_count)});
    }
    return out;
}

TimeSeries build_interruption(MonthRange window, const InterruptionSpec& spec) {
    if (spec.cutoff < window.first.first_day() || window.last.last_day() < spec.cutoff) {
        throw ConfigError(fmt::format("interruption '{}' cutoff {} lies outside {}..{}", spec.name,
                                      format_date(spec.cutoff), window.first.to_string(), window.last.to_string()));
    }
    std::vector<double> values;
    for (MonthStamp m = window.first; m <= window.last; m = m.plus(1)) {
        values.push_back(m.last_day() >= spec.cutoff ? 1.0 : 0.0);
    }
    return {spec.name, window.first, std::move(values), SeriesRole::dummy};
}

// ---------------------------------------------------------------------------
// Indicators

std::vector<IndicatorObservation> read_indicator_rows(std::istream& in, std::string_view source) {
    const auto records = read_csv(in, source);
    if (records.empty()) {
        throw ParseError(fmt::format("{}: missing header", source));
    }
    const CsvHeader header(records.front(), source);
    const std::size_t c_date = header.require("date");
    const std::size_t c_value = header.require("value");
    std::vector<IndicatorObservation> rows;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size()) {
            throw ParseError(fmt::format("{}: row {} (line {}): expected {} fields, got {}", source, r, rec.line,
                                         header.size(), rec.fields.size()));
        }
        IndicatorObservation obs;
        const std::string date = trim(rec.fields[c_date]);
        try {
            obs.date = date.size() == 7 ? MonthStamp::parse(date).first_day() : parse_iso_date(date);
        } catch (const Error& e) {
            throw ParseError(fmt::format("{}: row {} (line {}), column 'date': {}", source, r, rec.line, e.what()));
        }
        const std::string value = trim(rec.fields[c_value]);
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), obs.value);
        if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(obs.value)) {
            throw ParseError(fmt::format("{}: row {} (line {}), column 'value': invalid number '{}'", source, r,
                                         rec.line, value));
        }
        rows.push_back(obs);
    }
    return rows;
}

std::vector<IndicatorObservation> load_indicator_rows(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open indicator file '{}'", path.string()));
    }
    return read_indicator_rows(in, path.string());
}

std::vector<IndicatorObservation> invert_observations(std::span<const IndicatorObservation> rows) {
    std::vector<IndicatorObservation> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (!(r.value > 0.0)) {
            throw DomainError(fmt::format("rate {} on {} must be strictly positive to invert", r.value,
                                          format_date(r.date)));
        }
        out.push_back({r.date, 1.0 / r.value});
    }
    return out;
}

TimeSeries monthly_indicator(std::span<const IndicatorObservation> rows, IndicatorKind kind, std::string name,
                             std::optional<MonthRange> window, InverseOrder order) {
    if (rows.empty()) {
        throw DegenerateInputError(fmt::format("indicator '{}' has no observations", name));
    }
    std::vector<IndicatorObservation> inverted;
    const bool invert_first = kind == IndicatorKind::inverse_rate && order == InverseOrder::invert_then_average;
    if (kind == IndicatorKind::inverse_rate) {
        inverted = invert_observations(rows);  // validates positivity in both orders
        if (invert_first) {
            rows = inverted;
        }
    }

    std::map<MonthStamp, std::pair<double, int>> sums;
    for (const auto& r : rows) {
        auto& [sum, count] = sums[MonthStamp::from_date(r.date)];
        sum += r.value;
        ++count;
    }
    const MonthRange range = window.value_or(MonthRange{sums.begin()->first, sums.rbegin()->first});
    std::vector<double> values;
    for (MonthStamp m = range.first; m <= range.last; m = m.plus(1)) {
        const auto it = sums.find(m);
        if (it == sums.end()) {
            throw GapError(fmt::format("indicator '{}' has no observation in {}", name, m.to_string()));
        }
        const double mean = it->second.first / it->second.second;
        values.push_back(kind == IndicatorKind::inverse_rate && !invert_first ? 1.0 / mean : mean);
    }
    return {std::move(name), range.first, std::move(values), SeriesRole::indicator};
}

TimeSeries load_indicator(const std::filesystem::path& path, IndicatorKind kind, std::string name,
                          std::optional<MonthRange> window, InverseOrder order) {
    const auto rows = load_indicator_rows(path);
    return monthly_indicator(rows, kind, std::move(name), window, order);
}

}  // namespace varflow
