#include "mlrgg/csv.hpp"

#include <charconv>
#include <stdexcept>

#include "mlrgg/errors.hpp"
#include "mlrgg/graph_io.hpp"
#include "mlrgg/io.hpp"

namespace mlrgg {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {
    if (header_.empty())
        throw std::invalid_argument("a table needs at least one column");
}

CsvTable& CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("row width does not match the header");
    rows_.push_back(std::move(row));
    return *this;
}

std::string CsvTable::field(double value) { return format_double(value); }

std::string CsvTable::field(std::uint64_t value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string CsvTable::field(std::int64_t value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string CsvTable::encode() const {
    std::string out;
    const auto emit_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            append_field(out, row[i]);
        }
        out += "\r\n";
    };
    emit_row(header_);
    for (const auto& row : rows_) emit_row(row);
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    const auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_started) {
                    in_quotes = true;
                    field_started = true;
                } else {
                    throw FormatError(
                        "quote in the middle of an unquoted field");
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_row();
                break;
            case '\n':
                end_row();
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (in_quotes) throw FormatError("unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    if (rows.empty()) return rows;

    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            throw FormatError("rows have different widths");
    return rows;
}

void save_csv(const CsvTable& table, const std::string& path) {
    write_file_atomic(path, table.encode());
}

}  // namespace mlrgg
