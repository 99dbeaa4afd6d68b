#pragma once

#include <string>
#include <vector>

namespace lcenclf {

/// A parsed delimited table: a header row (may be empty) plus data rows.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parse delimiter-separated text. Handles double-quoted fields with escaped
/// ("") quotes, as used by the UCI bank marketing export. CR/LF tolerant.
Table parse_delimited(const std::string& text, char delimiter, bool has_header);

/// Read a whole file into memory; throws std::runtime_error if unreadable.
std::string read_file(const std::string& path);

}  // namespace lcenclf
