#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mlrgg {

// Minimal RFC 4180 table: CRLF line endings, a mandatory header row, fields
// quoted only when they contain commas, quotes or line breaks. Numeric
// helpers format through the same 17-significant-digit path as the graph
// documents, so emitted files are byte-stable.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& add_row(std::vector<std::string> row);

    static std::string field(double value);
    static std::string field(std::uint64_t value);
    static std::string field(std::int64_t value);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string encode() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Parses RFC 4180 text (CRLF or LF) into rows including the header. Throws
// FormatError on unbalanced quotes or ragged rows.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Encodes and writes atomically; IoError on filesystem failure.
void save_csv(const CsvTable& table, const std::string& path);

}  // namespace mlrgg
