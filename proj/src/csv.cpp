#include "ig/csv.hpp"

#include <fstream>
#include <istream>
#include <iterator>

#include "ig/errors.hpp"

namespace ig {

namespace {

// One pass over the raw bytes; quotes toggle field-spanning mode.
Table parse(const std::string& text, const std::string& origin) {
    Table table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any_field = false;  // record has content (guards trailing newline)
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        any_field = true;
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            if (record.size() != table.header.size()) {
                throw DataError(origin + ": line " + std::to_string(line) + ": expected " +
                                std::to_string(table.header.size()) + " fields, got " +
                                std::to_string(record.size()));
            }
            table.rows.push_back(std::move(record));
        }
        record.clear();
        any_field = false;
    };

    std::size_t i = 0;
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;

    for (; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field += c;
        }
    }
    if (in_quotes) {
        throw DataError(origin + ": unterminated quoted field at end of input");
    }
    if (any_field || !field.empty()) end_record();

    if (table.header.empty()) {
        throw DataError(origin + ": empty input, no header row");
    }
    return table;
}

}  // namespace

Table read_csv(std::istream& in, const std::string& origin) {
    std::string text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    return parse(text, origin);
}

Table read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return read_csv(in, path);
}

}  // namespace ig
