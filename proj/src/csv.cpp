#include "varflow/csv.hpp"

#include <fmt/core.h>
#include <fstream>
#include <istream>
#include <iterator>

#include "varflow/error.hpp"

namespace varflow {

std::vector<CsvRecord> read_csv(std::istream& in, std::string_view source) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::size_t i = text.starts_with("\xEF\xBB\xBF") ? 3 : 0;

    std::vector<CsvRecord> records;
    std::size_t line = 1;
    while (i < text.size()) {
        CsvRecord rec;
        rec.line = line;
        std::string field;
        bool in_quotes = false;
        bool done = false;
        while (!done) {
            if (i >= text.size()) {
                if (in_quotes) {
                    throw ParseError(fmt::format("{}:{}: unterminated quoted field", source, rec.line));
                }
                rec.fields.push_back(std::move(field));
                break;
            }
            const char c = text[i++];
            if (in_quotes) {
                if (c == '"') {
                    if (i < text.size() && text[i] == '"') {
                        field.push_back('"');
                        ++i;
                    } else {
                        in_quotes = false;
                    }
                } else {
                    if (c == '\n') {
                        ++line;
                    }
                    field.push_back(c);
                }
            } else if (c == '"' && field.empty()) {
                in_quotes = true;
            } else if (c == ',') {
                rec.fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n' || c == '\r') {
                if (c == '\r' && i < text.size() && text[i] == '\n') {
                    ++i;
                }
                ++line;
                rec.fields.push_back(std::move(field));
                done = true;
            } else {
                field.push_back(c);
            }
        }
        const bool blank = rec.fields.size() == 1 && rec.fields.front().empty();
        if (!blank) {
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<CsvRecord> read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    return read_csv(in, path.string());
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

CsvHeader::CsvHeader(const CsvRecord& header, std::string_view source)
    : names_(header.fields), source_(source) {}

std::size_t CsvHeader::require(std::string_view column) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == column) {
            return i;
        }
    }
    throw ParseError(fmt::format("{}: header is missing column '{}'", source_, column));
}

}  // namespace varflow
