#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hsearch::corpus {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 reader. Throws IngestionError naming the 1-based line of the
/// offending record (unterminated quote, wrong field count).
CsvTable parse_csv(std::string_view content);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace hsearch::corpus
