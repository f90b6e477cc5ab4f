#include "hsearch/corpus/csv.hpp"

#include <fstream>
#include <sstream>

#include "hsearch/error.hpp"

namespace hsearch::corpus {

CsvTable parse_csv(std::string_view content) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_quoted = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank_line = record.size() == 1 && record[0].empty();
        if (!blank_line) {
            if (table.header.empty()) {
                table.header = std::move(record);
            } else if (record.size() != table.header.size()) {
                throw IngestionError("malformed CSV: row at line " + std::to_string(record_line) + " has " +
                                     std::to_string(record.size()) + " fields, expected " +
                                     std::to_string(table.header.size()));
            } else {
                table.rows.push_back(std::move(record));
            }
        }
        record.clear();
    };

    std::size_t i = 0;
    if (content.starts_with("\xEF\xBB\xBF")) i = 3;
    for (; i < content.size(); ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_quoted) {
                    throw IngestionError("malformed CSV: stray quote at line " + std::to_string(line));
                }
                in_quotes = true;
                field_quoted = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                if (field_quoted) {
                    throw IngestionError("malformed CSV: text after closing quote at line " +
                                         std::to_string(line));
                }
                field.push_back(c);
        }
    }
    if (in_quotes) {
        throw IngestionError("malformed CSV: unterminated quote in row starting at line " +
                             std::to_string(record_line));
    }
    if (!field.empty() || !record.empty() || field_quoted) end_record();
    if (table.header.empty()) throw IngestionError("malformed CSV: missing header row");
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot read CSV " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_csv(ss.str());
    } catch (const IngestionError& e) {
        throw IngestionError(path.string() + ": " + e.what());
    }
}

}  // namespace hsearch::corpus
