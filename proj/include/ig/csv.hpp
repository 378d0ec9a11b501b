#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ig {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t columns() const { return header.size(); }
};

// RFC 4180 reader: comma-delimited, double-quote quoting with "" escapes,
// CRLF or LF records, embedded newlines inside quoted fields. The first
// record is the header. A UTF-8 BOM is stripped. Ragged rows are a data
// error.
Table read_csv(std::istream& in, const std::string& origin = "<stream>");
Table read_csv_file(const std::string& path);

}  // namespace ig
