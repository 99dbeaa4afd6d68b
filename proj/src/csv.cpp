#include "lcenclf/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lcenclf {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

namespace {

std::vector<std::string> parse_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

}  // namespace

Table parse_delimited(const std::string& text, char delimiter, bool has_header) {
    Table table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = parse_line(line, delimiter);
        if (first && has_header) {
            table.header = std::move(fields);
        } else {
            if (!table.rows.empty() && fields.size() != table.rows.front().size()) {
                throw std::runtime_error("ragged row in delimited input (row " +
                                         std::to_string(table.rows.size() + 1) + ")");
            }
            table.rows.push_back(std::move(fields));
        }
        first = false;
    }
    return table;
}

}  // namespace lcenclf
