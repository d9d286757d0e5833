#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace varflow {

struct CsvRecord {
    std::size_t line = 0;  ///< 1-based line where the record starts
    std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and newlines.
/// A UTF-8 byte-order mark is skipped. Throws ParseError on an unterminated quote.
[[nodiscard]] std::vector<CsvRecord> read_csv(std::istream& in, std::string_view source = "<stream>");
[[nodiscard]] std::vector<CsvRecord> read_csv_file(const std::filesystem::path& path);

/// Quotes a field when it contains a comma, quote, or newline.
[[nodiscard]] std::string csv_escape(std::string_view field);

/// Column index lookup over a header record; throws ParseError naming missing columns.
class CsvHeader {
public:
    CsvHeader(const CsvRecord& header, std::string_view source);
    [[nodiscard]] std::size_t require(std::string_view column) const;
    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::string source_;
};

}  // namespace varflow
